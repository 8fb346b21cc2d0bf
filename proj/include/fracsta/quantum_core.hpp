#ifndef FRACSTA_QUANTUM_CORE_HPP
#define FRACSTA_QUANTUM_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracsta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or inconsistent shapes.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The integrator could not keep norm/trace within tolerance.
class AccuracyError : public Error {
public:
    using Error::Error;
};

template <typename Real, int N>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, N, N>;

template <typename Real, int N>
using ComplexVector = Eigen::Matrix<std::complex<Real>, N, 1>;

template <typename Real, int N>
using RealMatrix = Eigen::Matrix<Real, N, N>;

template <typename Real, int N>
using RealVector = Eigen::Matrix<Real, N, 1>;

namespace tolerance {
inline constexpr double norm = 1e-9;
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-9;
} // namespace tolerance

/// Largest elementwise |M - M^dagger|.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m)
{
    if (m.rows() != m.cols())
        throw ConfigError("hermiticity_defect: matrix is not square");
    if (m.size() == 0)
        return 0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// AB - BA.
template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw ConfigError("commutator: operands must be square with equal dimension");
    using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                        typename DerivedB::Scalar>::ReturnType;
    using Result = Eigen::Matrix<Scalar, DerivedA::RowsAtCompileTime, DerivedA::ColsAtCompileTime>;
    Result out = a * b;
    out.noalias() -= b * a;
    return out;
}

/// Pure state c(t) over the bare basis |1>..|N>.
template <typename Real, int N>
class StateVector {
public:
    static_assert(N == 3 || N == 4, "only three- and four-level systems are modelled");
    using Scalar = Real;
    using Vector = ComplexVector<Real, N>;

    /// Throws ConfigError when the amplitudes are not normalized to tolerance::norm.
    explicit StateVector(const Vector& amplitudes) : amplitudes_(amplitudes)
    {
        const Real defect = std::abs(amplitudes_.squaredNorm() - Real(1));
        if (!(defect <= Real(tolerance::norm)))
            throw ConfigError("StateVector: amplitudes are not normalized (|norm^2 - 1| = "
                              + std::to_string(static_cast<double>(defect)) + ")");
    }

    /// |n>, zero-based.
    static StateVector basis(int n)
    {
        if (n < 0 || n >= N)
            throw ConfigError("StateVector::basis: index out of range");
        Vector v = Vector::Zero();
        v(n) = Real(1);
        return StateVector(v);
    }

    /// Wraps propagated amplitudes without the normalization check; norm drift is
    /// reported by the integrator instead.
    static StateVector unchecked(const Vector& amplitudes)
    {
        StateVector s;
        s.amplitudes_ = amplitudes;
        return s;
    }

    const Vector& amplitudes() const { return amplitudes_; }
    static constexpr int dim() { return N; }
    Real norm_defect() const { return std::abs(amplitudes_.squaredNorm() - Real(1)); }

private:
    StateVector() = default;
    Vector amplitudes_;
};

/// Density operator rho(t).
template <typename Real, int N>
class DensityMatrix {
public:
    static_assert(N == 3 || N == 4, "only three- and four-level systems are modelled");
    using Scalar = Real;
    using Matrix = ComplexMatrix<Real, N>;

    explicit DensityMatrix(const Matrix& elements) : elements_(elements)
    {
        if (!(hermiticity_defect(elements_) <= Real(tolerance::hermitian)))
            throw ConfigError("DensityMatrix: not Hermitian");
        if (!(std::abs(elements_.trace().real() - Real(1)) <= Real(tolerance::trace)))
            throw ConfigError("DensityMatrix: trace differs from 1");
        for (int i = 0; i < N; ++i) {
            const Real d = elements_(i, i).real();
            if (d < -Real(tolerance::trace) || d > Real(1) + Real(tolerance::trace))
                throw ConfigError("DensityMatrix: diagonal entry outside [0, 1]");
        }
    }

    static DensityMatrix pure(const StateVector<Real, N>& psi)
    {
        return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
    }

    static DensityMatrix unchecked(const Matrix& elements)
    {
        DensityMatrix r;
        r.elements_ = elements;
        return r;
    }

    const Matrix& elements() const { return elements_; }
    static constexpr int dim() { return N; }
    Real trace_defect() const { return std::abs(elements_.trace().real() - Real(1)); }

private:
    DensityMatrix() = default;
    Matrix elements_;
};

/// H(t) at a single instant, in units of 1/T (hbar = 1).
template <typename Real, int N>
struct HamiltonianSample {
    ComplexMatrix<Real, N> elements;
    Real time{};
};

template <typename Real, int N>
RealVector<Real, N> populations(const StateVector<Real, N>& s)
{
    return s.amplitudes().cwiseAbs2();
}

template <typename Real, int N>
RealVector<Real, N> populations(const DensityMatrix<Real, N>& rho)
{
    return rho.elements().diagonal().real();
}

template <typename Derived>
std::vector<double> to_std_vector(const Eigen::MatrixBase<Derived>& v)
{
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[static_cast<std::size_t>(i)] = static_cast<double>(v(i));
    return out;
}

} // namespace fracsta

#endif // FRACSTA_QUANTUM_CORE_HPP
