#ifndef FRACSTA_TRIPOD_SYSTEM_HPP
#define FRACSTA_TRIPOD_SYSTEM_HPP

#include "fracsta/protocol.hpp"
#include "fracsta/pulses.hpp"
#include "fracsta/quadrature.hpp"
#include "fracsta/quantum_core.hpp"

#include <cmath>

namespace fracsta {

/// Bare tripod Hamiltonian: |2> couples to |1>, |3>, |4> through P, S, Q.
template <typename Real>
HamiltonianSample<Real, 4> tripod_h0(const TripodDriveConfig<Real>& cfg, Real t)
{
    const auto p = tripod_pulses(cfg, t);
    ComplexMatrix<Real, 4> h = ComplexMatrix<Real, 4>::Zero();
    h(0, 1) = h(1, 0) = p.omega_p / Real(2);
    h(1, 2) = h(2, 1) = p.omega_s / Real(2);
    h(1, 3) = h(3, 1) = p.omega_q / Real(2);
    h(1, 1) = cfg.delta / Real(2);
    return {h, t};
}

/// Columns [D1, D2, B1, B2]: two zero-energy dark states then two bright states.
template <typename Real>
RealMatrix<Real, 4> tripod_transformation_from_angles(Real theta, Real eta, Real phi)
{
    using std::cos;
    using std::sin;
    const Real st = sin(theta), ct = cos(theta);
    const Real se = sin(eta), ce = cos(eta);
    const Real sp = sin(phi), cp = cos(phi);
    RealMatrix<Real, 4> u;
    // clang-format off
    u <<  ct,       0,   sp * st,       cp * st,
          0,        0,   cp,           -sp,
         -st * ce,  se,  sp * ct * ce,  cp * ct * ce,
         -st * se, -ce,  sp * ct * se,  cp * ct * se;
    // clang-format on
    return u;
}

template <typename Real>
RealMatrix<Real, 4> tripod_transformation(const TripodDriveConfig<Real>& cfg, Real t)
{
    const auto m = tripod_mixing(cfg, t);
    return tripod_transformation_from_angles(m.theta, m.eta, m.phi);
}

template <typename Real>
struct TripodDressedStates {
    StateVector<Real, 4> dark1, dark2, bright1, bright2;
};

template <typename Real>
TripodDressedStates<Real> tripod_dressed_states(const TripodDriveConfig<Real>& cfg, Real t)
{
    const RealMatrix<Real, 4> u = tripod_transformation(cfg, t);
    auto column = [&](int c) {
        return StateVector<Real, 4>(u.col(c).template cast<std::complex<Real>>());
    };
    return {column(0), column(1), column(2), column(3)};
}

/**
 * Counterdiabatic term for the tripod. The six couplings are positional
 * labels of the antisymmetric matrix:
 *   Omega_12 = phi' sin theta,            Omega_13 = theta' cos eta,
 *   Omega_14 = theta' sin eta,            Omega_23 = -phi' cos theta cos eta,
 *   Omega_24 = -phi' cos theta sin eta,   Omega_34 = -eta'.
 */
template <typename Real>
HamiltonianSample<Real, 4> tripod_ha(const TripodDriveConfig<Real>& cfg, Real t)
{
    using std::cos;
    using std::sin;
    const auto m = tripod_mixing(cfg, t);
    const Real st = sin(m.theta), ct = cos(m.theta);
    const Real se = sin(m.eta), ce = cos(m.eta);
    const Real o12 = m.dphi * st;
    const Real o13 = m.dtheta * ce;
    const Real o14 = m.dtheta * se;
    const Real o23 = -m.dphi * ct * ce;
    const Real o24 = -m.dphi * ct * se;
    const Real o34 = -m.deta;

    RealMatrix<Real, 4> a;
    // clang-format off
    a <<  0,    o12,  o13,  o14,
         -o12,  0,    o23,  o24,
         -o13, -o23,  0,    o34,
         -o14, -o24, -o34,  0;
    // clang-format on
    return {std::complex<Real>(0, 1) * a.template cast<std::complex<Real>>(), t};
}

/// sin^2 of the integral of eta'(t) sin(theta(t)) over [t_start, t_end]; the
/// dark-dark leakage of bare f-STIRAP.
template <typename Real>
Real dark_dark_transition_probability(const TripodDriveConfig<Real>& cfg, Real t_start = Real(-5),
                                      Real t_end = Real(5), Real tol = Real(1e-8))
{
    using std::sin;
    auto integrand = [&](Real t) {
        const auto m = tripod_mixing(cfg, t);
        return m.deta * sin(m.theta);
    };
    const Real phase = adaptive_simpson(integrand, t_start * cfg.T, t_end * cfg.T, tol);
    const Real s = sin(phase);
    return s * s;
}

template <typename Real = double>
struct TripodModel {
    TripodDriveConfig<Real> cfg;
    Protocol protocol = Protocol::FSta;
};

template <typename Real>
HamiltonianSample<Real, 4> tripod_hamiltonian(const TripodModel<Real>& model, Real t)
{
    auto h = tripod_h0(model.cfg, t);
    if (model.protocol == Protocol::FSta)
        h.elements += tripod_ha(model.cfg, t).elements;
    return h;
}

} // namespace fracsta

#endif // FRACSTA_TRIPOD_SYSTEM_HPP
