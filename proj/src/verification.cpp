#include "fracsta/verification.hpp"

#include "fracsta/simulation.hpp"

#include <random>

namespace fracsta {

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const PropertyCheck* VerifyReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed())
            return &c;
    return nullptr;
}

namespace {

constexpr double fd_step = 1e-5;

struct Defects {
    double cd = 0, dark = 0, ortho = 0, norm = 0, trace = 0, herm = 0;
};

template <int N, typename UFn, typename HaFn, typename H0Fn>
void static_checks(const UFn& u_of, const HaFn& ha_of, const H0Fn& h0_of, double t, int n_dark,
                   Defects& d)
{
    const RealMatrix<double, N> u = u_of(t);
    const RealMatrix<double, N> du = (u_of(t + fd_step) - u_of(t - fd_step)) / (2 * fd_step);
    const ComplexMatrix<double, N> fd =
        std::complex<double>(0, 1) * (du * u.transpose()).template cast<std::complex<double>>();
    d.cd = std::max(d.cd, (fd - ha_of(t)).cwiseAbs().maxCoeff());

    const ComplexMatrix<double, N> h0 = h0_of(t);
    for (int c = 0; c < n_dark; ++c)
        d.dark = std::max(d.dark, (h0 * u.col(c).template cast<std::complex<double>>()).cwiseAbs().maxCoeff());
    d.ortho = std::max(d.ortho, (u.transpose() * u - RealMatrix<double, N>::Identity()).cwiseAbs().maxCoeff());
}

} // namespace

VerifyReport verify(SystemKind system, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw ConfigError("verify: trials must be >= 1 (nothing to verify)");

    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const double half_pi = std::numbers::pi / 2;

    Defects d;
    for (int k = 0; k < trials; ++k) {
        DriveParams p;
        p.omega0_T = uniform(0.5, 5.0);
        p.tau_over_T = uniform(0.3, 1.2);
        p.delta_T = uniform(-2.0, 2.0);
        p.alpha = uniform(0.05, half_pi - 0.05);
        p.beta = uniform(0.05, half_pi - 0.05);
        p.chi = uniform(0.05, half_pi - 0.05);

        for (int j = 0; j < 5; ++j) {
            const double t = uniform(-3.0, 3.0);
            if (system == SystemKind::Lambda) {
                const auto cfg = p.lambda();
                static_checks<3>([&](double s) { return lambda_transformation(cfg, s); },
                                 [&](double s) { return lambda_ha(cfg, s).elements; },
                                 [&](double s) { return lambda_h0(cfg, s).elements; }, t, 0, d);
                // The dark state is the middle column of U.
                const auto dark = lambda_dark_state(cfg, t).amplitudes();
                d.dark = std::max(d.dark, (lambda_h0(cfg, t).elements * dark).cwiseAbs().maxCoeff());
            } else {
                const auto cfg = p.tripod();
                static_checks<4>([&](double s) { return tripod_transformation(cfg, s); },
                                 [&](double s) { return tripod_ha(cfg, s).elements; },
                                 [&](double s) { return tripod_h0(cfg, s).elements; }, t, 2, d);
            }
        }

        const RunResult unitary = simulate(system, Protocol::FSta, p, {}, false);
        d.norm = std::max(d.norm, unitary.diagnostics.max_norm_drift);
        DecayConfig decay;
        decay.gamma = uniform(0.0, 3.0);
        const RunResult open = simulate(system, Protocol::FSta, p, decay, true);
        d.trace = std::max(d.trace, open.diagnostics.max_norm_drift);
        d.herm = std::max(d.herm, open.diagnostics.max_hermiticity_defect);
    }

    VerifyReport r;
    r.system = system;
    r.trials = trials;
    r.checks = {{"cd_finite_difference", d.cd, 1e-5},  {"dark_annihilation", d.dark, 1e-12},
                {"orthonormality", d.ortho, 1e-12},    {"norm_conservation", d.norm, 1e-7},
                {"trace_conservation", d.trace, 1e-7}, {"hermiticity", d.herm, 1e-9}};
    return r;
}

} // namespace fracsta
