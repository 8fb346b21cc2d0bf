// Independent reference computations used only by the tests. Nothing here
// calls into the library's pulse or dissipator code.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double gauss(double t, double centre) { return std::exp(-(t - centre) * (t - centre)); }

/// Lambda pump and Stokes evaluated straight from the Gaussian formulas (T = 1).
inline std::pair<double, double> lambda_pulses(double omega0, double tau, double alpha, double t)
{
    return {omega0 * std::sin(alpha) * gauss(t, tau),
            omega0 * (gauss(t, -tau) + std::cos(alpha) * gauss(t, tau))};
}

struct Tripod {
    double p, s, q;
};

inline Tripod tripod_pulses(double omega0, double tau, double beta, double chi, double t)
{
    return {omega0 * std::sin(beta) * gauss(t, tau),
            omega0 * (gauss(t, -tau) + std::cos(beta) * std::cos(chi) * gauss(t, tau)),
            omega0 * (gauss(t, -tau) + std::cos(beta) * std::sin(chi) * gauss(t, tau))};
}

/// Central finite difference with step h.
inline double derivative(const std::function<double(double)>& f, double t, double h = 1e-5)
{
    return (f(t + h) - f(t - h)) / (2 * h);
}

/// i (dU/dt) U^T by central differences.
template <typename UFn>
auto cd_by_finite_difference(const UFn& u_of, double t, double h = 1e-5)
{
    const auto u = u_of(t);
    const auto du = ((u_of(t + h) - u_of(t - h)) / (2 * h)).eval();
    return (cplx(0, 1) * (du * u.transpose()).template cast<cplx>()).eval();
}

/// Textbook Lindblad generator with jump operators |g><2| (index 1 is |2>).
inline Eigen::MatrixXcd lindblad(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& rho,
                                 const std::vector<double>& rates)
{
    const auto n = h.rows();
    Eigen::MatrixXcd out = cplx(0, -1) * (h * rho - rho * h);
    int channel = 0;
    for (Eigen::Index g = 0; g < n; ++g) {
        if (g == 1)
            continue;
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
        l(g, 1) = 1;
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        out += rates[static_cast<std::size_t>(channel++)]
               * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

/// Left Riemann sum of f over [a, b] with n points.
inline double riemann(const std::function<double(double)>& f, double a, double b, long n)
{
    const double h = (b - a) / static_cast<double>(n);
    double s = 0;
    for (long k = 0; k < n; ++k)
        s += f(a + (static_cast<double>(k) + 0.5) * h);
    return s * h;
}

} // namespace oracle
