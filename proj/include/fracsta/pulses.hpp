#ifndef FRACSTA_PULSES_HPP
#define FRACSTA_PULSES_HPP

#include "fracsta/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fracsta {

/// Drive parameters of the Lambda system. Times in units of T, rates in 1/T.
template <typename Real = double>
struct LambdaDriveConfig {
    Real omega0 = Real(2);                         ///< peak Rabi frequency
    Real tau = Real(0.7);                          ///< half delay between the pulse pairs
    Real T = Real(1);                              ///< common pulse duration
    Real alpha = std::numbers::pi_v<Real> / 4;     ///< fraction angle, final tan(theta)
    Real delta = Real(0.2) * std::numbers::pi_v<Real>; ///< one-photon detuning

    void validate() const;
    /// alpha inside [0, pi/2], where the dark state ends exactly at (cos^2, 0, sin^2).
    bool fraction_angle_in_validated_range() const
    {
        return alpha >= 0 && alpha <= std::numbers::pi_v<Real> / 2;
    }
};

/// Drive parameters of the tripod system.
template <typename Real = double>
struct TripodDriveConfig {
    Real omega0 = Real(2);
    Real tau = Real(0.7);
    Real T = Real(1);
    Real beta = std::acos(Real(1) / std::sqrt(Real(3)));
    Real chi = std::numbers::pi_v<Real> / 4;
    Real delta = Real(0.2) * std::numbers::pi_v<Real>;

    void validate() const;
    bool fraction_angles_in_validated_range() const
    {
        const Real half_pi = std::numbers::pi_v<Real> / 2;
        return beta >= 0 && beta <= half_pi && chi >= 0 && chi <= half_pi;
    }
};

namespace detail {

template <typename Real>
void validate_common(Real omega0, Real tau, Real T, Real delta)
{
    if (!std::isfinite(omega0) || !(omega0 > 0))
        throw ConfigError("omega0 must be finite and > 0");
    if (!std::isfinite(tau) || tau < 0)
        throw ConfigError("tau must be finite and >= 0");
    if (!std::isfinite(T) || !(T > 0))
        throw ConfigError("T must be finite and > 0");
    if (!std::isfinite(delta))
        throw ConfigError("delta must be finite");
}

template <typename Real>
void validate_angle(Real angle, const char* name)
{
    if (!std::isfinite(angle) || angle < 0 || angle > std::numbers::pi_v<Real>)
        throw ConfigError(std::string(name) + " must lie in [0, pi]");
}

/// sin and cos with rounding-level values snapped to zero, so an angle given
/// as pi or pi/2 switches a pulse component off exactly.
template <typename Real>
void exact_sincos(Real angle, Real& s, Real& c)
{
    using std::abs;
    const Real eps = Real(8) * std::numeric_limits<Real>::epsilon();
    s = std::sin(angle);
    c = std::cos(angle);
    if (abs(s) < eps)
        s = 0;
    if (abs(c) < eps)
        c = 0;
}

/// The two Gaussians e^{-(t-tau)^2/T^2} (late) and e^{-(t+tau)^2/T^2} (early),
/// stored relative to the larger of the two so that ratios never see 0/0.
template <typename Real>
struct GaussianPair {
    Real late;       ///< late Gaussian / scale
    Real early;      ///< early Gaussian / scale
    Real d_late;     ///< d/dt of late Gaussian / scale
    Real d_early;
    Real log_scale;  ///< scale = exp(log_scale)

    GaussianPair(Real t, Real tau, Real T)
    {
        using std::exp;
        const Real a_late = -((t - tau) / T) * ((t - tau) / T);
        const Real a_early = -((t + tau) / T) * ((t + tau) / T);
        log_scale = std::max(a_late, a_early);
        late = exp(a_late - log_scale);
        early = exp(a_early - log_scale);
        d_late = late * (Real(-2) * (t - tau) / (T * T));
        d_early = early * (Real(-2) * (t + tau) / (T * T));
    }
};

template <typename Real>
struct ScaledLambdaPulses {
    Real p, s, dp, ds, log_scale;
};

template <typename Real>
ScaledLambdaPulses<Real> scaled_lambda_pulses(const LambdaDriveConfig<Real>& cfg, Real t)
{
    const GaussianPair<Real> g(t, cfg.tau, cfg.T);
    Real sa, ca;
    exact_sincos(cfg.alpha, sa, ca);
    return {cfg.omega0 * sa * g.late, cfg.omega0 * (g.early + ca * g.late),
            cfg.omega0 * sa * g.d_late, cfg.omega0 * (g.d_early + ca * g.d_late), g.log_scale};
}

template <typename Real>
struct ScaledTripodPulses {
    Real p, s, q, dp, ds, dq, log_scale;
};

template <typename Real>
ScaledTripodPulses<Real> scaled_tripod_pulses(const TripodDriveConfig<Real>& cfg, Real t)
{
    const GaussianPair<Real> g(t, cfg.tau, cfg.T);
    Real sb, cb, sc, cc;
    exact_sincos(cfg.beta, sb, cb);
    exact_sincos(cfg.chi, sc, cc);
    return {cfg.omega0 * sb * g.late,
            cfg.omega0 * (g.early + cb * cc * g.late),
            cfg.omega0 * (g.early + cb * sc * g.late),
            cfg.omega0 * sb * g.d_late,
            cfg.omega0 * (g.d_early + cb * cc * g.d_late),
            cfg.omega0 * (g.d_early + cb * sc * g.d_late),
            g.log_scale};
}

/// phi = atan(2 Omega / Delta) / 2 and its derivative. `weighted_rate` is
/// sum_k Omega_k dOmega_k / dt in scaled units, `omega_scaled` the scaled rms
/// amplitude; the physical values are exp(log_scale) times those.
template <typename Real>
void detuning_angle(Real delta, Real omega_scaled, Real weighted_rate, Real log_scale,
                    Real& phi, Real& dphi)
{
    using std::atan;
    using std::exp;
    if (delta == Real(0)) {
        phi = std::numbers::pi_v<Real> / 4;
        dphi = 0;
        return;
    }
    const Real scale = exp(log_scale);
    const Real omega = scale * omega_scaled;
    phi = atan(Real(2) * omega / delta) / Real(2);
    if (omega_scaled == Real(0)) {
        dphi = 0;
        return;
    }
    dphi = delta * scale * weighted_rate / (omega_scaled * (delta * delta + Real(4) * omega * omega));
}

} // namespace detail

template <typename Real>
void LambdaDriveConfig<Real>::validate() const
{
    detail::validate_common(omega0, tau, T, delta);
    detail::validate_angle(alpha, "alpha");
}

template <typename Real>
void TripodDriveConfig<Real>::validate() const
{
    detail::validate_common(omega0, tau, T, delta);
    detail::validate_angle(beta, "beta");
    detail::validate_angle(chi, "chi");
}

template <typename Real>
struct LambdaPulses {
    Real omega_p{}, omega_s{};
    Real d_omega_p{}, d_omega_s{};
};

template <typename Real>
struct TripodPulses {
    Real omega_p{}, omega_s{}, omega_q{};
    Real d_omega_p{}, d_omega_s{}, d_omega_q{};
};

/// Mixing angles of the dressed basis and their time derivatives.
/// `eta` and `deta` stay zero for the Lambda system.
template <typename Real>
struct MixingAngles {
    Real theta{}, phi{}, eta{};
    Real dtheta{}, dphi{}, deta{};
};

/// Pump and Stokes pulses with closed-form time derivatives.
template <typename Real>
LambdaPulses<Real> lambda_pulses(const LambdaDriveConfig<Real>& cfg, Real t)
{
    const auto sp = detail::scaled_lambda_pulses(cfg, t);
    const Real k = std::exp(sp.log_scale);
    return {k * sp.p, k * sp.s, k * sp.dp, k * sp.ds};
}

/// Pump and the two Stokes pulses of the tripod.
template <typename Real>
TripodPulses<Real> tripod_pulses(const TripodDriveConfig<Real>& cfg, Real t)
{
    const auto sp = detail::scaled_tripod_pulses(cfg, t);
    const Real k = std::exp(sp.log_scale);
    return {k * sp.p, k * sp.s, k * sp.q, k * sp.dp, k * sp.ds, k * sp.dq};
}

/**
 * Lambda mixing angles: tan(theta) = Omega_P / Omega_S and
 * tan(2 phi) = 2 Omega / Delta with Omega = sqrt(Omega_P^2 + Omega_S^2).
 *
 * theta and dtheta are homogeneous of degree zero in the pulses, so they are
 * evaluated from the rescaled pulses and stay well defined deep in the tails.
 */
template <typename Real>
MixingAngles<Real> lambda_mixing(const LambdaDriveConfig<Real>& cfg, Real t)
{
    using std::atan2;
    using std::sqrt;
    const auto sp = detail::scaled_lambda_pulses(cfg, t);
    MixingAngles<Real> m;
    const Real norm2 = sp.p * sp.p + sp.s * sp.s;
    m.theta = atan2(sp.p, sp.s);
    m.dtheta = norm2 > 0 ? (sp.dp * sp.s - sp.ds * sp.p) / norm2 : Real(0);
    detail::detuning_angle(cfg.delta, sqrt(norm2), sp.dp * sp.p + sp.ds * sp.s, sp.log_scale,
                           m.phi, m.dphi);
    return m;
}

/**
 * Tripod mixing angles: tan(theta) = Omega_P / sqrt(Omega_S^2 + Omega_Q^2),
 * tan(eta) = Omega_Q / Omega_S, and phi as for the Lambda system with
 * Omega^2 = Omega_P^2 + Omega_S^2 + Omega_Q^2.
 */
template <typename Real>
MixingAngles<Real> tripod_mixing(const TripodDriveConfig<Real>& cfg, Real t)
{
    using std::atan2;
    using std::sqrt;
    const auto sp = detail::scaled_tripod_pulses(cfg, t);
    MixingAngles<Real> m;
    const Real stokes2 = sp.s * sp.s + sp.q * sp.q;
    const Real stokes = sqrt(stokes2);
    const Real norm2 = stokes2 + sp.p * sp.p;

    m.theta = atan2(sp.p, stokes);
    m.eta = atan2(sp.q, sp.s);
    if (stokes2 > 0) {
        m.dtheta = (sp.dp * stokes2 - sp.p * (sp.s * sp.ds + sp.q * sp.dq)) / (norm2 * stokes);
        m.deta = (sp.dq * sp.s - sp.ds * sp.q) / stokes2;
    }
    detail::detuning_angle(cfg.delta, sqrt(norm2),
                           sp.dp * sp.p + sp.ds * sp.s + sp.dq * sp.q, sp.log_scale, m.phi,
                           m.dphi);
    return m;
}

} // namespace fracsta

#endif // FRACSTA_PULSES_HPP
