#include "support.hpp"

#include "irred/sampling.hpp"

namespace testing_support {

using irred::CMatrix;
using irred::Matrix;

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    return irred::ginibre(rows, cols, rng);
}

CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng)
{
    const Matrix g = random_matrix(n, n, rng);
    return CMatrix((g + g.adjoint()) / 2.0);
}

Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) { return irred::haar_unitary(n, rng); }

CMatrix hermitian_with_spectrum(const std::vector<double>& values, std::mt19937_64& rng)
{
    const auto n = static_cast<Eigen::Index>(values.size());
    const Matrix u = random_unitary(n, rng);
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = values[static_cast<std::size_t>(i)];
    Matrix h = u * d.asDiagonal() * u.adjoint();
    return CMatrix((h + h.adjoint()) / 2.0);
}

CMatrix to_cmatrix(const oracle::IntMatrix& m)
{
    Matrix out(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            out(i, j) = irred::Complex(static_cast<double>(m.r(i, j)), static_cast<double>(m.c(i, j)));
    return CMatrix(std::move(out));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing_support
