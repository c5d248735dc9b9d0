#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "irred/errors.hpp"

namespace irred {

using Complex = std::complex<double>;
/// Rectangular complex matrix; used where operands need not be square.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default relative threshold for rank, kernel and Hermitian decisions.
inline constexpr double kDefaultTol = 1e-10;

/// Dense square complex matrix with finite entries and dim >= 1.
class CMatrix {
public:
    /// Throws InvalidMatrix when `m` is empty, non-square or has non-finite entries.
    explicit CMatrix(Matrix m);

    static CMatrix identity(Eigen::Index n);
    static CMatrix zero(Eigen::Index n);
    static CMatrix diagonal(std::span<const Complex> d);
    static CMatrix diagonal(std::span<const double> d);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    CMatrix adjoint() const;

    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(Complex s, const CMatrix& a);
    friend bool operator==(const CMatrix& a, const CMatrix& b) { return a.m_ == b.m_; }

private:
    Matrix m_;
};

/// Self-adjoint idempotent, checked against `tol`.
struct Projection {
    CMatrix matrix;
    double tol;

    /// True when ||P - P*|| <= tol and ||P^2 - P|| <= tol.
    bool valid() const;
    double rank() const; ///< trace of P, real part
};

/// Contiguous block partition of 0..n: offsets[0] = 0 < offsets[1] < ... < offsets.back() = n.
class BlockIndex {
public:
    BlockIndex() : offsets_{0} {}
    explicit BlockIndex(std::vector<Eigen::Index> offsets);
    static BlockIndex from_sizes(std::span<const Eigen::Index> sizes);

    std::size_t count() const noexcept { return offsets_.size() - 1; }
    Eigen::Index start(std::size_t b) const { return offsets_.at(b); }
    Eigen::Index size(std::size_t b) const { return offsets_.at(b + 1) - offsets_.at(b); }
    Eigen::Index total() const noexcept { return offsets_.back(); }
    const std::vector<Eigen::Index>& offsets() const noexcept { return offsets_; }

private:
    std::vector<Eigen::Index> offsets_;
};

struct HermitianParts {
    CMatrix real; ///< A = (T + T*) / 2
    CMatrix imag; ///< B = (T - T*) / 2i
};

/// Splits T = A + iB with A, B exactly Hermitian.
HermitianParts hermitian_parts(const CMatrix& t);

/// Largest singular value.
double operator_norm(const Matrix& m);
inline double operator_norm(const CMatrix& m) { return operator_norm(m.matrix()); }

struct Svd {
    Eigen::VectorXd values; ///< descending
    Matrix u;               ///< empty unless requested
    Matrix v;               ///< empty unless requested
};

/// Divide-and-conquer SVD. Falls back to one-sided Jacobi when the former
/// produces non-finite output (it can on heavily repeated singular values).
/// `options` takes Eigen's ComputeThinU / ComputeFullV / ... flags.
Svd svd(const Matrix& m, unsigned int options = 0);

/// All singular values, descending.
Eigen::VectorXd singular_values(const Matrix& m);

/// 1e-10 * (1 + ||A||): the band inside which a matrix counts as Hermitian.
double hermitian_tol(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol);

struct EigenDecomposition {
    std::vector<double> values; ///< ascending
    Matrix vectors;             ///< unitary, columns match `values`
};

/// Hermitian eigendecomposition. Each eigenvector is scaled so that its first
/// nonzero component is real and positive. Throws NotHermitian.
EigenDecomposition eigh(const CMatrix& a);
EigenDecomposition eigh(const Matrix& a);

/// Orthonormal basis (as columns) of {v : ||Mv|| <= tol * max(sigma_max(M), scale)}.
/// For M = 0 the whole space is returned. `scale` lets callers whose M is
/// assembled from operands of known size treat rounding-level M as zero.
Matrix null_space(const Matrix& m, double tol = kDefaultTol, double scale = 0.0);

/// Diagonal similarity scaling (Parlett-Reinsch, radix 2) that equalises row
/// and column norms. Eigenvalues are unchanged.
Matrix balance(const Matrix& m);

/// Eigenvalues of a general square matrix, computed after balancing.
std::vector<Complex> eigenvalues(const Matrix& m);

/// Column-major vec(X) and its inverse.
Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Copy of the (r, c) block of `m` under the partition `blocks`.
Matrix block(const Matrix& m, const BlockIndex& blocks, std::size_t r, std::size_t c);

} // namespace irred
