#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracsta/evolver.hpp"
#include "fracsta/lambda_system.hpp"
#include "fracsta/tripod_system.hpp"
#include "oracles.hpp"

#include <limits>
#include <numbers>
#include <random>

using namespace fracsta;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

LambdaDriveConfig<double> fig2() { return {2.0, 0.7, 1.0, pi / 4, 0.2 * pi}; }

auto lambda_fn(const LambdaDriveConfig<double>& cfg, Protocol p)
{
    return [model = LambdaModel<double>{cfg, p}](double t) { return lambda_hamiltonian(model, t); };
}

auto tripod_fn(const TripodDriveConfig<double>& cfg, Protocol p)
{
    return [model = TripodModel<double>{cfg, p}](double t) { return tripod_hamiltonian(model, t); };
}

const auto ket1 = StateVector<double, 3>::basis(0);
const auto rho1 = DensityMatrix<double, 3>::pure(ket1);

} // namespace

TEST_CASE("zero Hamiltonian leaves the state untouched")
{
    Eigen::Vector3cd v(0.6, cplx(0, 0.8), 0);
    const StateVector<double, 3> psi(v);
    const auto traj = propagate_state([](double) { return Eigen::Matrix3cd::Zero().eval(); }, psi, TimeGrid{});
    CHECK((traj.final_state.amplitudes() - v).cwiseAbs().maxCoeff() == 0);
    CHECK(traj.times.size() == 4001);
    CHECK(traj.times.front() == -5);
    CHECK(traj.times.back() == 5);
}

TEST_CASE("lambda f-STA trajectory: equal superposition, no intermediate population")
{
    const auto traj = propagate_state(lambda_fn(fig2(), Protocol::FSta), ket1, TimeGrid{});
    const auto p = traj.final_populations();
    CHECK(std::abs(p(0) - 0.5) < 1e-3);
    CHECK(std::abs(p(1)) < 1e-3);
    CHECK(std::abs(p(2) - 0.5) < 1e-3);
    CHECK(traj.max_population(1) < 1e-3);
    CHECK(traj.diagnostics.max_norm_drift < 1e-7);
    CHECK(traj.diagnostics.refined_intervals == 0);
    for (const auto& row : traj.populations)
        CHECK(std::abs(row.sum() - 1) < 1e-6);
}

TEST_CASE("lambda f-STIRAP misses the half transfer")
{
    const auto traj = propagate_state(lambda_fn(fig2(), Protocol::FStirap), ket1, TimeGrid{});
    CHECK(traj.final_populations()(2) < 0.5);
}

TEST_CASE("tripod f-STA reaches 1/6 : 1/3 : 1/2")
{
    const TripodDriveConfig<double> cfg{2.0, 0.7, 1.0, std::acos(1 / std::sqrt(6.0)), std::acos(std::sqrt(0.4)),
                                        0.2 * pi};
    const auto traj = propagate_state(tripod_fn(cfg, Protocol::FSta), StateVector<double, 4>::basis(0), TimeGrid{});
    CHECK((traj.final_populations() - Eigen::Vector4d(1.0 / 6, 0, 1.0 / 3, 0.5)).cwiseAbs().maxCoeff() < 2e-3);
}

TEST_CASE("grid validation")
{
    TimeGrid g;
    g.n_steps = 99;
    CHECK_THROWS_AS(g.validate(), AccuracyError);
    CHECK_THROWS_AS(propagate_state(lambda_fn(fig2(), Protocol::FSta), ket1, g), AccuracyError);
    g = TimeGrid{1, -1, 4000};
    CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("decay configuration")
{
    DecayConfig d;
    d.gamma = 0.5;
    CHECK(d.rates(3) == std::vector<double>{0.5, 0.5});
    CHECK(d.rates(4) == std::vector<double>{0.5, 0.5, 0.5});
    d.per_channel = std::vector<double>{1.0, 2.0};
    CHECK(d.rates(3) == std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(d.rates(4), ConfigError);
    d.per_channel = std::vector<double>{1.0, -2.0};
    CHECK_THROWS_AS(d.rates(3), ConfigError);
}

TEST_CASE("explicit emission dissipator equals the Lindblad form")
{
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 3);
    for (int k = 0; k < 20; ++k) {
        Eigen::Matrix4cd a = Eigen::Matrix4cd::Random();
        Eigen::Matrix4cd rho = a * a.adjoint();
        rho /= rho.trace();
        Eigen::Matrix4cd h = Eigen::Matrix4cd::Random();
        h = (h + h.adjoint()).eval();
        const std::vector<double> rates{u(rng), u(rng), u(rng)};
        const Eigen::Matrix4cd ours = lindblad_rhs<double, 4>(h, rho, rates);
        const Eigen::MatrixXcd ref = oracle::lindblad(h, rho, rates);
        CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(std::abs(ours.trace()) < 1e-14);
    }

    // Component form: rho11' gains G21 rho22, rho22' loses the total, rho2k decays at half the total.
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(1, 1) = 0.4;
    rho(0, 0) = 0.6;
    rho(0, 1) = cplx(0.2, 0.1);
    rho(1, 0) = std::conj(rho(0, 1));
    const auto d = detail::emission_dissipator<double, 3>(rho, {1.0, 3.0});
    CHECK(d(0, 0) == cplx(0.4));
    CHECK(std::abs(d(2, 2) - 1.2) < 1e-15);
    CHECK(d(1, 1) == cplx(-1.6));
    CHECK(d(1, 0) == -2.0 * rho(1, 0));
}

TEST_CASE("Lindblad propagation without decay reproduces unitary populations")
{
    for (Protocol p : {Protocol::FSta, Protocol::FStirap}) {
        const auto h = lambda_fn(fig2(), p);
        const auto pure = propagate_state(h, ket1, TimeGrid{});
        const auto mixed = propagate_density(h, rho1, DecayConfig{}, TimeGrid{});
        double worst = 0;
        for (std::size_t k = 0; k < pure.populations.size(); ++k)
            worst = std::max(worst, (pure.populations[k] - mixed.populations[k]).cwiseAbs().maxCoeff());
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("Lindblad propagation conserves trace and Hermiticity")
{
    for (double gamma : {0.5, 1.0, 2.0, 10.0}) {
        DecayConfig decay;
        decay.gamma = gamma;
        const auto traj = propagate_density(lambda_fn(fig2(), Protocol::FStirap), rho1, decay, TimeGrid{});
        CHECK(traj.diagnostics.max_norm_drift < 1e-7);
        CHECK(traj.diagnostics.max_hermiticity_defect < 1e-9);
        CHECK(traj.diagnostics.warnings.empty());
    }
}

TEST_CASE("f-STA with decay keeps the half transfer")
{
    for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
        DecayConfig decay;
        decay.gamma = gamma;
        const auto p = propagate_density(lambda_fn(fig2(), Protocol::FSta), rho1, decay, TimeGrid{}).final_populations();
        CHECK(std::abs(p(0) - 0.5) < 2e-3);
        CHECK(std::abs(p(2) - 0.5) < 2e-3);
    }
}

TEST_CASE("strong decay keeps tripod f-STIRAP population in |1>")
{
    DecayConfig decay;
    decay.gamma = 10;
    const TripodDriveConfig<double> cfg{2.0, 0.7, 1.0, std::acos(1 / std::sqrt(3.0)), pi / 4, 0.2 * pi};
    const auto p = propagate_density(tripod_fn(cfg, Protocol::FStirap),
                                     DensityMatrix<double, 4>::pure(StateVector<double, 4>::basis(0)), decay,
                                     TimeGrid{})
                       .final_populations();
    Eigen::Index top;
    p.maxCoeff(&top);
    CHECK(top == 0);
}

TEST_CASE("RK4 error drops sixteenfold when the step halves")
{
    // Plain fixed-step RK4 (no interval bisection) on the f-STA configuration.
    auto run = [](int n) {
        TimeGrid g;
        g.n_steps = n;
        g.refine_phase = std::numeric_limits<double>::infinity();
        return propagate_state(lambda_fn(fig2(), Protocol::FSta), ket1, g).final_state.amplitudes();
    };
    const auto reference = run(4000);
    const double coarse = (run(200) - reference).norm();
    const double fine = (run(400) - reference).norm();
    const double ratio = coarse / fine;
    MESSAGE("RK4 error ratio on step halving: " << ratio);
    CHECK(ratio > 12);
    CHECK(ratio < 20);
}

TEST_CASE("doubling the step count changes finals by less than 1e-4")
{
    TimeGrid fine;
    fine.n_steps = 8000;
    for (Protocol p : {Protocol::FSta, Protocol::FStirap}) {
        const auto a = propagate_state(lambda_fn(fig2(), p), ket1, TimeGrid{}).final_populations();
        const auto b = propagate_state(lambda_fn(fig2(), p), ket1, fine).final_populations();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-4);
    }
}

TEST_CASE("narrow counterdiabatic spikes are resolved by bisection")
{
    // alpha just below pi: theta' peaks near 1e6 / T for about 1e-6 T.
    auto cfg = fig2();
    cfg.alpha = 3.14159;
    const auto traj = propagate_state(lambda_fn(cfg, Protocol::FSta), ket1, TimeGrid{});
    CHECK(traj.diagnostics.refined_intervals > 0);
    CHECK(traj.diagnostics.max_norm_drift < 1e-4);
    const double s = std::sin(cfg.alpha);
    CHECK(std::abs(traj.final_populations()(2) - s * s) < 2e-3);

    TimeGrid plain;
    plain.refine_phase = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(propagate_state(lambda_fn(cfg, Protocol::FSta), ket1, plain), AccuracyError);
}

TEST_CASE("long double instantiation agrees with double")
{
    const LambdaDriveConfig<long double> cfg{2.0L, 0.7L, 1.0L, std::numbers::pi_v<long double> / 4,
                                             0.2L * std::numbers::pi_v<long double>};
    const LambdaModel<long double> model{cfg, Protocol::FSta};
    const auto traj = propagate_state([&](long double t) { return lambda_hamiltonian(model, t); },
                                      StateVector<long double, 3>::basis(0), TimeGrid{});
    const auto ref = propagate_state(lambda_fn(fig2(), Protocol::FSta), ket1, TimeGrid{});
    for (int k = 0; k < 3; ++k)
        CHECK(static_cast<double>(traj.final_populations()(k)) == doctest::Approx(ref.final_populations()(k)).epsilon(1e-9));
}
