#ifndef FRACSTA_LAMBDA_SYSTEM_HPP
#define FRACSTA_LAMBDA_SYSTEM_HPP

#include "fracsta/protocol.hpp"
#include "fracsta/pulses.hpp"
#include "fracsta/quantum_core.hpp"

#include <cmath>

namespace fracsta {

/// Bare RWA Hamiltonian (1/2)[[0, P, 0], [P, Delta, S], [0, S, 0]].
template <typename Real>
HamiltonianSample<Real, 3> lambda_h0(const LambdaDriveConfig<Real>& cfg, Real t)
{
    const auto p = lambda_pulses(cfg, t);
    ComplexMatrix<Real, 3> h = ComplexMatrix<Real, 3>::Zero();
    h(0, 1) = h(1, 0) = p.omega_p / Real(2);
    h(1, 2) = h(2, 1) = p.omega_s / Real(2);
    h(1, 1) = cfg.delta / Real(2);
    return {h, t};
}

/// Zero-energy dressed state [cos theta, 0, -sin theta].
template <typename Real>
StateVector<Real, 3> lambda_dark_state(const LambdaDriveConfig<Real>& cfg, Real t)
{
    using std::cos;
    using std::sin;
    const Real theta = lambda_mixing(cfg, t).theta;
    ComplexVector<Real, 3> v;
    v << cos(theta), Real(0), -sin(theta);
    return StateVector<Real, 3>(v);
}

/// Columns [bright+, dark, bright-] of the dressed basis.
template <typename Real>
RealMatrix<Real, 3> lambda_transformation_from_angles(Real theta, Real phi)
{
    using std::cos;
    using std::sin;
    const Real st = sin(theta), ct = cos(theta), sp = sin(phi), cp = cos(phi);
    RealMatrix<Real, 3> u;
    // clang-format off
    u << sp * st,  ct,  cp * st,
         cp,       0,  -sp,
         sp * ct, -st,  cp * ct;
    // clang-format on
    return u;
}

template <typename Real>
RealMatrix<Real, 3> lambda_transformation(const LambdaDriveConfig<Real>& cfg, Real t)
{
    const auto m = lambda_mixing(cfg, t);
    return lambda_transformation_from_angles(m.theta, m.phi);
}

/// Counterdiabatic term i(dU/dt)U^dagger in closed form:
/// Omega_12 = phi' sin theta, Omega_23 = -phi' cos theta, Omega_13 = theta'.
template <typename Real>
HamiltonianSample<Real, 3> lambda_ha(const LambdaDriveConfig<Real>& cfg, Real t)
{
    using std::cos;
    using std::sin;
    const auto m = lambda_mixing(cfg, t);
    const Real o12 = m.dphi * sin(m.theta);
    const Real o23 = -m.dphi * cos(m.theta);
    const Real o13 = m.dtheta;

    RealMatrix<Real, 3> a;
    // clang-format off
    a <<  0,    o12, o13,
         -o12,  0,   o23,
         -o13, -o23, 0;
    // clang-format on
    return {std::complex<Real>(0, 1) * a.template cast<std::complex<Real>>(), t};
}

template <typename Real = double>
struct LambdaModel {
    LambdaDriveConfig<Real> cfg;
    Protocol protocol = Protocol::FSta;
};

template <typename Real>
HamiltonianSample<Real, 3> lambda_hamiltonian(const LambdaModel<Real>& model, Real t)
{
    auto h = lambda_h0(model.cfg, t);
    if (model.protocol == Protocol::FSta)
        h.elements += lambda_ha(model.cfg, t).elements;
    return h;
}

} // namespace fracsta

#endif // FRACSTA_LAMBDA_SYSTEM_HPP
