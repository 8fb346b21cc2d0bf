#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracsta/pulses.hpp"
#include "oracles.hpp"

#include <cfenv>
#include <numbers>
#include <random>

using namespace fracsta;
using std::numbers::pi;

namespace {

LambdaDriveConfig<double> fig2() { return {2.0, 0.7, 1.0, pi / 4, 0.2 * pi}; }
TripodDriveConfig<double> fig6() { return {2.0, 0.7, 1.0, std::acos(1 / std::sqrt(3.0)), pi / 4, 0.2 * pi}; }

} // namespace

TEST_CASE("lambda pulses match the Gaussian formulas")
{
    auto cfg = fig2();
    cfg.alpha = 0;
    CHECK(lambda_pulses(cfg, 0.3).omega_p == 0);

    const auto p = lambda_pulses(fig2(), 0.7);
    CHECK(p.omega_p == doctest::Approx(1.414214).epsilon(1e-6));
    CHECK(p.omega_s == doctest::Approx(2 * (std::exp(-1.96) + std::cos(pi / 4))).epsilon(1e-14));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 50; ++k) {
        const double t = u(rng);
        const auto [op, os] = oracle::lambda_pulses(2.0, 0.7, pi / 4, t);
        const auto q = lambda_pulses(fig2(), t);
        CHECK(q.omega_p == doctest::Approx(op).epsilon(1e-13));
        CHECK(q.omega_s == doctest::Approx(os).epsilon(1e-13));
        const auto c = fig2();
        CHECK(q.d_omega_p == doctest::Approx(oracle::derivative(
                                 [&](double s) { return lambda_pulses(c, s).omega_p; }, t))
                                 .epsilon(1e-7));
        CHECK(q.d_omega_s == doctest::Approx(oracle::derivative(
                                 [&](double s) { return lambda_pulses(c, s).omega_s; }, t))
                                 .epsilon(1e-7));
    }
}

TEST_CASE("lambda pulse ratio is sin(a) r / (1 + cos(a) r) early and sin(a) / (r + cos(a)) late")
{
    for (double alpha : {0.2, pi / 4, 1.2}) {
        for (double tau : {0.3, 0.7, 1.5}) {
            auto cfg = fig2();
            cfg.alpha = alpha;
            cfg.tau = tau;
            const auto early = lambda_pulses(cfg, -5.0);
            const auto late = lambda_pulses(cfg, 5.0);
            const double r = std::exp(-20 * tau);
            CHECK(early.omega_p / early.omega_s
                  == doctest::Approx(std::sin(alpha) * r / (1 + std::cos(alpha) * r)).epsilon(1e-12));
            CHECK(late.omega_p / late.omega_s == doctest::Approx(std::sin(alpha) / (r + std::cos(alpha))).epsilon(1e-12));
        }
    }
}

TEST_CASE("tripod pulses")
{
    auto cfg = fig6();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int k = 0; k < 30; ++k) {
        const double t = u(rng);
        const auto p = tripod_pulses(cfg, t);
        CHECK(p.omega_s == doctest::Approx(p.omega_q).epsilon(1e-15));
        const auto o = oracle::tripod_pulses(2.0, 0.7, cfg.beta, cfg.chi, t);
        CHECK(p.omega_p == doctest::Approx(o.p).epsilon(1e-13));
        CHECK(p.omega_s == doctest::Approx(o.s).epsilon(1e-13));
    }

    cfg.beta = 0;
    cfg.chi = 0.4;
    const auto p = tripod_pulses(cfg, cfg.tau);
    CHECK(p.omega_p == 0);
    CHECK(p.omega_s == doctest::Approx(2.0 * (std::exp(-4 * 0.49) + std::cos(0.4))).epsilon(1e-14));

    const auto early = tripod_pulses(fig6(), -5.0);
    CHECK(early.omega_p / std::hypot(early.omega_s, early.omega_q) < 1e-6);
}

TEST_CASE("pulses stay finite far in the tails without floating-point exceptions")
{
    std::feclearexcept(FE_ALL_EXCEPT);
    for (double t : {-10.0, 10.0}) {
        const auto p = lambda_pulses(fig2(), t);
        CHECK(std::isfinite(p.omega_p));
        CHECK(p.omega_p < 1e-30 * 2.0);
        CHECK(p.omega_s < 1e-30 * 2.0);
        const auto m = lambda_mixing(fig2(), t);
        CHECK(std::isfinite(m.theta));
        CHECK(std::isfinite(m.dtheta));
        CHECK(std::isfinite(m.dphi));
        const auto n = tripod_mixing(fig6(), t);
        CHECK(std::isfinite(n.theta));
        CHECK(std::isfinite(n.eta));
        CHECK(std::isfinite(n.deta));
    }
    CHECK_FALSE(std::fetestexcept(FE_INVALID | FE_DIVBYZERO | FE_OVERFLOW));
}

TEST_CASE("lambda mixing angles")
{
    for (double alpha : {0.1, pi / 4, pi / 2, 2.0}) {
        auto cfg = fig2();
        cfg.alpha = alpha;
        CHECK(lambda_mixing(cfg, 0.0).theta == doctest::Approx(alpha / 2).epsilon(1e-14));
        if (alpha <= pi / 2)
            CHECK(std::abs(lambda_mixing(cfg, 5.0).theta - alpha) < 1e-5);
    }

    auto cfg = fig2();
    cfg.delta = 0;
    const auto m = lambda_mixing(cfg, 0.2);
    CHECK(m.phi == doctest::Approx(pi / 4));
    CHECK(m.dphi == 0);

    // phi = atan(2 Omega / Delta) / 2 from the oracle pulses.
    const auto [op, os] = oracle::lambda_pulses(2.0, 0.7, pi / 4, 0.3);
    CHECK(lambda_mixing(fig2(), 0.3).phi
          == doctest::Approx(0.5 * std::atan(2 * std::hypot(op, os) / (0.2 * pi))).epsilon(1e-14));
}

TEST_CASE("lambda angle derivatives match finite differences on [-3, 3]")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> omega(0.5, 10), tau(0.2, 1.5), alpha(0.05, pi / 2 - 0.05),
        delta(-3, 3);
    for (int draw = 0; draw < 4; ++draw) {
        const LambdaDriveConfig<double> cfg{omega(rng), tau(rng), 1.0, alpha(rng), delta(rng)};
        for (int k = 0; k < 50; ++k) {
            const double t = -3 + 6.0 * k / 49;
            const auto m = lambda_mixing(cfg, t);
            const double fd_theta = oracle::derivative([&](double s) { return lambda_mixing(cfg, s).theta; }, t);
            const double fd_phi = oracle::derivative([&](double s) { return lambda_mixing(cfg, s).phi; }, t);
            CHECK(std::abs(m.dtheta - fd_theta) < 1e-6);
            CHECK(std::abs(m.dphi - fd_phi) < 1e-6);
        }
    }
}

TEST_CASE("tripod mixing angles")
{
    const auto cfg = fig6();
    for (double t = -5; t <= 5; t += 0.25) {
        const auto m = tripod_mixing(cfg, t);
        CHECK(m.eta == doctest::Approx(pi / 4).epsilon(1e-14));
        CHECK(std::abs(m.deta) < 1e-14);
    }

    auto skew = cfg;
    skew.chi = 1.1;
    CHECK(std::abs(tripod_mixing(skew, -5.0).eta - pi / 4) < 1e-5);
    CHECK(std::abs(tripod_mixing(skew, 5.0).eta - 1.1) < 1e-5);
    CHECK(std::abs(tripod_mixing(cfg, 5.0).theta - cfg.beta) < 1e-5);
}

TEST_CASE("tripod angle derivatives match finite differences on [-3, 3]")
{
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> omega(0.5, 10), tau(0.2, 1.5), angle(0.05, pi / 2 - 0.05),
        delta(-3, 3);
    for (int draw = 0; draw < 4; ++draw) {
        const TripodDriveConfig<double> cfg{omega(rng), tau(rng), 1.0, angle(rng), angle(rng), delta(rng)};
        for (int k = 0; k < 50; ++k) {
            const double t = -3 + 6.0 * k / 49;
            const auto m = tripod_mixing(cfg, t);
            auto fd = [&](auto field) {
                return oracle::derivative([&](double s) { return tripod_mixing(cfg, s).*field; }, t);
            };
            CHECK(std::abs(m.dtheta - fd(&MixingAngles<double>::theta)) < 1e-6);
            CHECK(std::abs(m.deta - fd(&MixingAngles<double>::eta)) < 1e-6);
            CHECK(std::abs(m.dphi - fd(&MixingAngles<double>::phi)) < 1e-6);
        }
    }
}

TEST_CASE("theta stays in [0, pi/2] for fraction angles in the validated range")
{
    for (double alpha : {0.0, 0.4, pi / 2}) {
        auto cfg = fig2();
        cfg.alpha = alpha;
        CHECK(cfg.fraction_angle_in_validated_range());
        for (double t = -5; t <= 5; t += 0.05) {
            const double th = lambda_mixing(cfg, t).theta;
            CHECK(th >= 0);
            CHECK(th <= pi / 2);
        }
    }
    auto wide = fig2();
    wide.alpha = 2.5;
    CHECK_FALSE(wide.fraction_angle_in_validated_range());
}

TEST_CASE("angles given as exact multiples of pi/2 switch pulses off exactly")
{
    auto cfg = fig2();
    cfg.alpha = pi;
    for (double t = -1; t <= 1; t += 0.125)
        CHECK(lambda_pulses(cfg, t).omega_p == 0);
    CHECK(lambda_mixing(cfg, 0.0).dtheta == 0);
}

TEST_CASE("drive validation")
{
    auto cfg = fig2();
    cfg.omega0 = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = fig2();
    cfg.alpha = 3.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = fig2();
    cfg.tau = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    auto tri = fig6();
    tri.chi = -0.1;
    CHECK_THROWS_AS(tri.validate(), ConfigError);
    CHECK_NOTHROW(fig6().validate());
}
