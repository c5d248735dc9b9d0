#include "irred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irred {

namespace {

bool all_finite(const Matrix& m)
{
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
                return false;
    return true;
}

} // namespace

CMatrix::CMatrix(Matrix m) : m_(std::move(m))
{
    if (m_.rows() < 1)
        throw InvalidMatrix("matrix dimension must be at least 1");
    if (m_.rows() != m_.cols())
        throw InvalidMatrix("matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                            std::to_string(m_.cols()));
    if (!all_finite(m_))
        throw InvalidMatrix("matrix has non-finite entries");
}

CMatrix CMatrix::identity(Eigen::Index n) { return CMatrix(Matrix::Identity(n, n)); }
CMatrix CMatrix::zero(Eigen::Index n) { return CMatrix(Matrix::Zero(n, n)); }

CMatrix CMatrix::diagonal(std::span<const Complex> d)
{
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return CMatrix(std::move(m));
}

CMatrix CMatrix::diagonal(std::span<const double> d)
{
    std::vector<Complex> z(d.begin(), d.end());
    return diagonal(std::span<const Complex>(z));
}

CMatrix CMatrix::adjoint() const { return CMatrix(m_.adjoint()); }

CMatrix operator+(const CMatrix& a, const CMatrix& b) { return CMatrix(a.m_ + b.m_); }
CMatrix operator-(const CMatrix& a, const CMatrix& b) { return CMatrix(a.m_ - b.m_); }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return CMatrix(a.m_ * b.m_); }
CMatrix operator*(Complex s, const CMatrix& a) { return CMatrix(s * a.m_); }

bool Projection::valid() const
{
    const Matrix& p = matrix.matrix();
    return operator_norm(p - p.adjoint()) <= tol && operator_norm(p * p - p) <= tol;
}

double Projection::rank() const { return matrix.matrix().trace().real(); }

BlockIndex::BlockIndex(std::vector<Eigen::Index> offsets) : offsets_(std::move(offsets))
{
    if (offsets_.empty() || offsets_.front() != 0)
        throw InvalidMatrix("block offsets must start at 0");
    for (std::size_t i = 1; i < offsets_.size(); ++i)
        if (offsets_[i] <= offsets_[i - 1])
            throw InvalidMatrix("block offsets must be strictly increasing");
}

BlockIndex BlockIndex::from_sizes(std::span<const Eigen::Index> sizes)
{
    std::vector<Eigen::Index> offsets{0};
    for (auto s : sizes)
        offsets.push_back(offsets.back() + s);
    return BlockIndex(std::move(offsets));
}

HermitianParts hermitian_parts(const CMatrix& t)
{
    const Matrix& m = t.matrix();
    Matrix a = (m + m.adjoint()) / 2.0;
    Matrix b = (m - m.adjoint()) / Complex(0.0, 2.0);
    // Symmetrize so both parts are Hermitian bit-for-bit.
    a = ((a + a.adjoint()) / 2.0).eval();
    b = ((b + b.adjoint()) / 2.0).eval();
    return {CMatrix(std::move(a)), CMatrix(std::move(b))};
}

namespace {

template <typename Solver>
Svd unpack(const Solver& s, unsigned int options)
{
    Svd out{s.singularValues(), Matrix(), Matrix()};
    if (options & (Eigen::ComputeThinU | Eigen::ComputeFullU))
        out.u = s.matrixU();
    if (options & (Eigen::ComputeThinV | Eigen::ComputeFullV))
        out.v = s.matrixV();
    return out;
}

bool all_finite(const Svd& s) { return s.values.allFinite() && s.u.allFinite() && s.v.allFinite(); }

} // namespace

Svd svd(const Matrix& m, unsigned int options)
{
    Svd out = unpack(Eigen::BDCSVD<Matrix>(m, options), options);
    if (!all_finite(out))
        out = unpack(Eigen::JacobiSVD<Matrix>(m, options), options);
    return out;
}

Eigen::VectorXd singular_values(const Matrix& m)
{
    if (m.size() == 0)
        return Eigen::VectorXd();
    return svd(m).values;
}

double operator_norm(const Matrix& m)
{
    if (m.size() == 0)
        return 0.0;
    if (m.rows() == 1 || m.cols() == 1)
        return m.norm();
    return singular_values(m)(0);
}

double hermitian_tol(const Matrix& a) { return 1e-10 * (1.0 + operator_norm(a)); }

bool is_hermitian(const Matrix& a, double tol)
{
    if (a.rows() != a.cols())
        return false;
    const Matrix d = a - a.adjoint();
    // Frobenius norm bounds the operator norm from above; only fall back to the SVD when needed.
    const double frob = d.norm();
    if (frob <= tol)
        return true;
    return operator_norm(d) <= tol;
}

EigenDecomposition eigh(const Matrix& a)
{
    if (a.rows() != a.cols())
        throw ShapeMismatch("eigh: matrix must be square");
    if (!is_hermitian(a, hermitian_tol(a)))
        throw NotHermitian("eigh: matrix is not Hermitian within 1e-10*(1+||A||)");

    const Matrix sym = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw Error("eigh: eigensolver did not converge");

    EigenDecomposition out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = solver.eigenvectors();
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
            const double mag = std::abs(out.vectors(r, c));
            if (mag > 1e-12) {
                out.vectors.col(c) *= std::conj(out.vectors(r, c)) / mag;
                out.vectors(r, c) = Complex(out.vectors(r, c).real(), 0.0);
                break;
            }
        }
    }
    return out;
}

EigenDecomposition eigh(const CMatrix& a) { return eigh(a.matrix()); }

Matrix null_space(const Matrix& m, double tol, double scale)
{
    const Eigen::Index n = m.cols();
    if (n == 0)
        return Matrix(0, 0);
    if (m.rows() == 0)
        return Matrix::Identity(n, n);

    const Svd dec = svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = dec.values;
    const double thresh = tol * std::max(sv(0), scale);

    std::vector<Eigen::Index> kernel_cols;
    for (Eigen::Index j = 0; j < n; ++j)
        if (j >= sv.size() || sv(j) <= thresh)
            kernel_cols.push_back(j);

    Matrix basis(n, static_cast<Eigen::Index>(kernel_cols.size()));
    for (std::size_t k = 0; k < kernel_cols.size(); ++k)
        basis.col(static_cast<Eigen::Index>(k)) = dec.v.col(kernel_cols[k]);
    return basis;
}

Matrix balance(const Matrix& m)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    Matrix a = m;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

std::vector<Complex> eigenvalues(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw ShapeMismatch("eigenvalues: matrix must be square");
    if (m.rows() == 0)
        return {};
    Eigen::ComplexEigenSolver<Matrix> solver(balance(m), false);
    if (solver.info() != Eigen::Success)
        throw Error("eigenvalues: eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Vector vectorize(const Matrix& x)
{
    return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols)
{
    if (v.size() != rows * cols)
        throw ShapeMismatch("unvectorize: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix block(const Matrix& m, const BlockIndex& blocks, std::size_t r, std::size_t c)
{
    return m.block(blocks.start(r), blocks.start(c), blocks.size(r), blocks.size(c));
}

} // namespace irred
