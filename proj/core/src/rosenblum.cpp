#include "irred/rosenblum.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace irred {

double spectral_gap(const CMatrix& a, const CMatrix& b)
{
    const auto ea = eigenvalues(a.matrix());
    const auto eb = eigenvalues(b.matrix());
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& alpha : ea)
        for (const auto& beta : eb)
            gap = std::min(gap, std::abs(alpha - beta));
    return gap;
}

double gap_floor(const CMatrix& a, const CMatrix& b)
{
    return 1e-8 * (1.0 + operator_norm(a) + operator_norm(b));
}

SylvesterProblem make_sylvester_problem(CMatrix a, CMatrix b, Matrix c)
{
    if (c.rows() != a.dim() || c.cols() != b.dim()) {
        std::ostringstream msg;
        msg << "sylvester: C must be " << a.dim() << "x" << b.dim() << ", got " << c.rows() << "x"
            << c.cols();
        throw ShapeMismatch(msg.str());
    }
    const double gap = spectral_gap(a, b);
    return SylvesterProblem{std::move(a), std::move(b), std::move(c), gap};
}

Matrix rosenblum_apply(const CMatrix& a, const CMatrix& b, const Matrix& x)
{
    if (x.rows() != a.dim() || x.cols() != b.dim())
        throw ShapeMismatch("rosenblum_apply: X must be dim(A) x dim(B)");
    return a.matrix() * x - x * b.matrix();
}

Matrix rosenblum_matrix(const CMatrix& a, const CMatrix& b)
{
    const Eigen::Index m = a.dim();
    const Eigen::Index k = b.dim();
    return kron(Matrix::Identity(k, k), a.matrix()) - kron(b.matrix().transpose(), Matrix::Identity(m, m));
}

namespace {

void require_solvable(const SylvesterProblem& p, double tol)
{
    if (!(tol > 0.0))
        throw Error("sylvester_solve: tol must be positive");
    const double floor = gap_floor(p.a, p.b);
    if (!(p.spectral_gap > floor)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "SpectraOverlap: spectral gap " << p.spectral_gap << " <= gap floor " << floor;
        throw SpectraOverlap(msg.str());
    }
}

} // namespace

Matrix sylvester_solve(const SylvesterProblem& p, double tol)
{
    require_solvable(p, tol);
    const Eigen::Index m = p.a.dim();
    const Eigen::Index k = p.b.dim();

    // A = U Ta U*, B = V Tb V*; solve Ta Y - Y Tb = U* C V column by column.
    const Eigen::ComplexSchur<Matrix> sa(p.a.matrix());
    const Eigen::ComplexSchur<Matrix> sb(p.b.matrix());
    if (sa.info() != Eigen::Success || sb.info() != Eigen::Success)
        throw Error("sylvester_solve: Schur decomposition did not converge");
    const Matrix& u = sa.matrixU();
    const Matrix& ta = sa.matrixT();
    const Matrix& v = sb.matrixU();
    const Matrix& tb = sb.matrixT();

    const Matrix f = u.adjoint() * p.c * v;
    Matrix y(m, k);
    const Matrix eye = Matrix::Identity(m, m);
    for (Eigen::Index j = 0; j < k; ++j) {
        Vector rhs = f.col(j);
        for (Eigen::Index i = 0; i < j; ++i)
            rhs += tb(i, j) * y.col(i);
        const Matrix shifted = ta - tb(j, j) * eye;
        y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return u * y * v.adjoint();
}

Matrix sylvester_solve_dense(const SylvesterProblem& p, double tol)
{
    require_solvable(p, tol);
    const Matrix op = rosenblum_matrix(p.a, p.b);
    const Vector x = op.partialPivLu().solve(vectorize(p.c));
    return unvectorize(x, p.a.dim(), p.b.dim());
}

double sylvester_residual(const SylvesterProblem& p, const Matrix& x)
{
    return operator_norm(rosenblum_apply(p.a, p.b, x) - p.c);
}

double sylvester_residual_bound(const SylvesterProblem& p, const Matrix& x, double tol)
{
    return tol * (operator_norm(p.a) + operator_norm(p.b)) * operator_norm(x) + tol * operator_norm(p.c);
}

int rosenblum_kernel_dim(const CMatrix& a, const CMatrix& b, double tol)
{
    if (!(tol > 0.0))
        throw Error("rosenblum_kernel_dim: tol must be positive");
    // ||tau_{A,B}|| <= ||A|| + ||B||; anything below tol times that is rounding.
    const double scale = operator_norm(a) + operator_norm(b);
    return static_cast<int>(null_space(rosenblum_matrix(a, b), tol, scale).cols());
}

} // namespace irred
