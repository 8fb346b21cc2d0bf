#ifndef FRACSTA_EVOLVER_HPP
#define FRACSTA_EVOLVER_HPP

#include "fracsta/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace fracsta {

/// Fixed-step integration window, in units of T.
struct TimeGrid {
    double t_start = -5.0;
    double t_end = 5.0;
    int n_steps = 4000;
    /// An interval is bisected while max ||H|| times its width exceeds this
    /// bound; infinity gives plain fixed-step RK4.
    double refine_phase = 0.03;

    static constexpr int min_steps = 100;
    static constexpr int max_refine_depth = 40;

    void validate() const
    {
        if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end))
            throw ConfigError("TimeGrid: requires finite t_start < t_end");
        if (!(refine_phase > 0))
            throw ConfigError("TimeGrid: refine_phase must be > 0");
        if (n_steps < min_steps)
            throw AccuracyError("TimeGrid: n_steps = " + std::to_string(n_steps)
                                + " is below the floor of " + std::to_string(min_steps)
                                + "; increase n_steps");
    }
    double step() const { return (t_end - t_start) / n_steps; }
    double time(int k) const { return k == n_steps ? t_end : t_start + k * step(); }
};

/// Spontaneous emission out of |2>. `gamma` is Gamma*T applied to every channel
/// unless `per_channel` lists (Gamma_21, Gamma_23[, Gamma_24]) explicitly.
struct DecayConfig {
    double gamma = 0.0;
    std::optional<std::vector<double>> per_channel;

    std::vector<double> rates(int dim) const
    {
        const auto channels = static_cast<std::size_t>(dim - 1);
        std::vector<double> out = per_channel ? *per_channel : std::vector<double>(channels, gamma);
        if (out.size() != channels)
            throw ConfigError("DecayConfig: expected " + std::to_string(channels)
                              + " decay channels, got " + std::to_string(out.size()));
        for (double r : out)
            if (!std::isfinite(r) || r < 0)
                throw ConfigError("DecayConfig: decay rates must be finite and >= 0");
        return out;
    }
};

/// Integration diagnostics collected along a run.
struct Diagnostics {
    double max_norm_drift = 0;        ///< |norm^2 - 1| (states) or |tr rho - 1| (density)
    double max_hermiticity_defect = 0; ///< density runs only
    double min_population = 1;
    int refined_intervals = 0;         ///< grid intervals that needed bisection
    std::vector<std::string> warnings;
};

template <typename State>
struct Trajectory {
    using Real = typename State::Scalar;
    std::vector<double> times;
    std::vector<RealVector<Real, State::dim()>> populations;
    State final_state;
    Diagnostics diagnostics;

    /// Largest population of bare state `n` (zero-based) along the run.
    double max_population(int n) const
    {
        double m = 0;
        for (const auto& p : populations)
            m = std::max(m, static_cast<double>(p(n)));
        return m;
    }
    RealVector<Real, State::dim()> final_populations() const { return populations.back(); }
};

namespace detail {

template <typename Real, int N>
const ComplexMatrix<Real, N>& elements_of(const HamiltonianSample<Real, N>& h)
{
    return h.elements;
}

template <typename Real, int N>
const ComplexMatrix<Real, N>& elements_of(const ComplexMatrix<Real, N>& h)
{
    return h;
}

/// rho' contribution of spontaneous emission from |2> (index 1) into the
/// ground states: populations gain Gamma_j rho_22, rho_22 loses the total rate,
/// coherences with |2> decay at half the total rate.
template <typename Real, int N>
ComplexMatrix<Real, N> emission_dissipator(const ComplexMatrix<Real, N>& rho,
                                           const std::vector<double>& rates)
{
    constexpr int excited = 1;
    ComplexMatrix<Real, N> d = ComplexMatrix<Real, N>::Zero();
    Real total = 0;
    int channel = 0;
    for (int g = 0; g < N; ++g) {
        if (g == excited)
            continue;
        const Real rate = static_cast<Real>(rates[static_cast<std::size_t>(channel++)]);
        d(g, g) += rate * rho(excited, excited);
        total += rate;
    }
    d(excited, excited) -= total * rho(excited, excited);
    for (int k = 0; k < N; ++k) {
        if (k == excited)
            continue;
        d(excited, k) -= total / 2 * rho(excited, k);
        d(k, excited) -= total / 2 * rho(k, excited);
    }
    return d;
}

} // namespace detail

/// Lindblad right-hand side -i[H, rho] + D[rho] with emission out of |2>.
template <typename Real, int N>
ComplexMatrix<Real, N> lindblad_rhs(const ComplexMatrix<Real, N>& h, const ComplexMatrix<Real, N>& rho,
                                    const std::vector<double>& rates)
{
    const std::complex<Real> minus_i(0, -1);
    ComplexMatrix<Real, N> out = minus_i * commutator(h, rho);
    out += detail::emission_dissipator<Real, N>(rho, rates);
    return out;
}

namespace detail {

/// Advances y across [t0, t1] with RK4, bisecting while the sampled generator
/// norm (norm_factor * ||H||, 2 for the commutator) times the interval width
/// exceeds grid.refine_phase. `h0` and `h1` are H(t0) and H(t1); `rhs(H, y)` returns dy/dt.
template <typename Real, int N, typename Y, typename HamiltonianFn, typename Rhs>
void advance(const HamiltonianFn& hamiltonian, const Rhs& rhs, Y& y, Real t0, Real t1,
             const ComplexMatrix<Real, N>& h0, const ComplexMatrix<Real, N>& h1, Real norm_factor,
             const TimeGrid& grid, int depth, bool& refined)
{
    const Real h = t1 - t0;
    const Real tm = t0 + h / 2;
    const ComplexMatrix<Real, N> hm = elements_of(hamiltonian(tm));
    using std::abs;
    const Real scale = norm_factor
                           * std::max({h0.template lpNorm<Eigen::Infinity>(),
                                       hm.template lpNorm<Eigen::Infinity>(),
                                       h1.template lpNorm<Eigen::Infinity>()});
    if (abs(h) * scale > Real(grid.refine_phase) && depth < TimeGrid::max_refine_depth) {
        refined = true;
        advance<Real, N>(hamiltonian, rhs, y, t0, tm, h0, hm, norm_factor, grid, depth + 1, refined);
        advance<Real, N>(hamiltonian, rhs, y, tm, t1, hm, h1, norm_factor, grid, depth + 1, refined);
        return;
    }
    const Y k1 = rhs(h0, y);
    const Y k2 = rhs(hm, Y(y + (h / 2) * k1));
    const Y k3 = rhs(hm, Y(y + (h / 2) * k2));
    const Y k4 = rhs(h1, Y(y + h * k3));
    y += (h / 6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);
}

} // namespace detail

/**
 * Integrates i dpsi/dt = H(t) psi with classical RK4 on the fixed grid and
 * records populations at every grid point. Intervals where H is large compared
 * with the step are bisected (see TimeGrid::refine_phase); smooth drives never
 * trigger this. The norm is never renormalized; a drift above 1e-4 raises
 * AccuracyError.
 *
 * `hamiltonian` maps a time to a HamiltonianSample (or bare matrix) and must
 * be a pure function of time.
 */
template <typename Real, int N, typename HamiltonianFn>
Trajectory<StateVector<Real, N>> propagate_state(const HamiltonianFn& hamiltonian,
                                                 const StateVector<Real, N>& psi0,
                                                 const TimeGrid& grid)
{
    grid.validate();
    using Vector = ComplexVector<Real, N>;
    using Matrix = ComplexMatrix<Real, N>;
    const std::complex<Real> minus_i(0, -1);
    auto rhs = [&](const Matrix& h, const Vector& y) -> Vector { return minus_i * (h * y); };

    Trajectory<StateVector<Real, N>> out{{}, {}, psi0, {}};
    out.times.reserve(static_cast<std::size_t>(grid.n_steps) + 1);
    out.populations.reserve(static_cast<std::size_t>(grid.n_steps) + 1);

    Vector psi = psi0.amplitudes();
    auto record = [&](double t) {
        out.times.push_back(t);
        out.populations.push_back(psi.cwiseAbs2());
        const double drift = std::abs(static_cast<double>(psi.squaredNorm()) - 1.0);
        out.diagnostics.max_norm_drift = std::max(out.diagnostics.max_norm_drift, drift);
        out.diagnostics.min_population = std::min(
            out.diagnostics.min_population, static_cast<double>(out.populations.back().minCoeff()));
    };
    record(grid.time(0));

    Matrix h_left = detail::elements_of(hamiltonian(static_cast<Real>(grid.time(0))));
    for (int k = 0; k < grid.n_steps; ++k) {
        const Real t0 = static_cast<Real>(grid.time(k));
        const Real t1 = static_cast<Real>(grid.time(k + 1));
        const Matrix h_right = detail::elements_of(hamiltonian(t1));
        bool refined = false;
        detail::advance<Real, N>(hamiltonian, rhs, psi, t0, t1, h_left, h_right, Real(1), grid, 0,
                                 refined);
        out.diagnostics.refined_intervals += refined;
        h_left = h_right;

        if (!psi.allFinite())
            throw AccuracyError("propagate_state: non-finite amplitudes at t = "
                                + std::to_string(grid.time(k + 1)));
        record(grid.time(k + 1));
    }

    if (out.diagnostics.max_norm_drift > 1e-4)
        throw AccuracyError("propagate_state: norm drift "
                            + std::to_string(out.diagnostics.max_norm_drift)
                            + " exceeds 1e-4; increase n_steps");
    out.final_state = StateVector<Real, N>::unchecked(psi);
    return out;
}

/**
 * Integrates the master equation rho' = -i[H, rho] + D[rho] with the same
 * scheme, where D describes spontaneous emission from |2> into every other
 * level. Trace drift above 1e-4 raises AccuracyError; a diagonal entry below
 * -1e-6 adds a positivity warning to the diagnostics.
 */
template <typename Real, int N, typename HamiltonianFn>
Trajectory<DensityMatrix<Real, N>> propagate_density(const HamiltonianFn& hamiltonian,
                                                     const DensityMatrix<Real, N>& rho0,
                                                     const DecayConfig& decay, const TimeGrid& grid)
{
    grid.validate();
    const std::vector<double> rates = decay.rates(N);
    using Matrix = ComplexMatrix<Real, N>;
    auto rhs = [&](const Matrix& h, const Matrix& y) -> Matrix { return lindblad_rhs<Real, N>(h, y, rates); };

    Trajectory<DensityMatrix<Real, N>> out{{}, {}, rho0, {}};
    out.times.reserve(static_cast<std::size_t>(grid.n_steps) + 1);
    out.populations.reserve(static_cast<std::size_t>(grid.n_steps) + 1);

    Matrix rho = rho0.elements();
    bool warned = false;
    auto record = [&](double t) {
        out.times.push_back(t);
        out.populations.push_back(rho.diagonal().real());
        auto& diag = out.diagnostics;
        diag.max_norm_drift =
            std::max(diag.max_norm_drift, std::abs(static_cast<double>(rho.trace().real()) - 1.0));
        diag.max_hermiticity_defect =
            std::max(diag.max_hermiticity_defect, static_cast<double>(hermiticity_defect(rho)));
        const double lowest = static_cast<double>(out.populations.back().minCoeff());
        diag.min_population = std::min(diag.min_population, lowest);
        if (lowest < -1e-6 && !warned) {
            diag.warnings.push_back("positivity: diagonal entry " + std::to_string(lowest)
                                    + " at t = " + std::to_string(t));
            warned = true;
        }
    };
    record(grid.time(0));

    Matrix h_left = detail::elements_of(hamiltonian(static_cast<Real>(grid.time(0))));
    for (int k = 0; k < grid.n_steps; ++k) {
        const Real t0 = static_cast<Real>(grid.time(k));
        const Real t1 = static_cast<Real>(grid.time(k + 1));
        const Matrix h_right = detail::elements_of(hamiltonian(t1));
        bool refined = false;
        detail::advance<Real, N>(hamiltonian, rhs, rho, t0, t1, h_left, h_right, Real(2), grid, 0,
                                 refined);
        out.diagnostics.refined_intervals += refined;
        h_left = h_right;

        if (!rho.allFinite())
            throw AccuracyError("propagate_density: non-finite entries at t = "
                                + std::to_string(grid.time(k + 1)));
        record(grid.time(k + 1));
    }

    if (out.diagnostics.max_norm_drift > 1e-4)
        throw AccuracyError("propagate_density: trace drift "
                            + std::to_string(out.diagnostics.max_norm_drift)
                            + " exceeds 1e-4; increase n_steps");
    out.final_state = DensityMatrix<Real, N>::unchecked(rho);
    return out;
}

} // namespace fracsta

#endif // FRACSTA_EVOLVER_HPP
