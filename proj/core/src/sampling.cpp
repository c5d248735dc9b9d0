#include "irred/sampling.hpp"

#include <cmath>
#include <string>

namespace irred {

std::string_view to_string(Ensemble e)
{
    switch (e) {
    case Ensemble::Ginibre:
        return "ginibre";
    case Ensemble::BlockDiagonalConjugated:
        return "block_diagonal_conjugated";
    case Ensemble::Hermitian:
        return "hermitian";
    }
    return "unknown";
}

Ensemble parse_ensemble(std::string_view name)
{
    if (name == "ginibre")
        return Ensemble::Ginibre;
    if (name == "block_diagonal_conjugated")
        return Ensemble::BlockDiagonalConjugated;
    if (name == "hermitian")
        return Ensemble::Hermitian;
    throw FormatError("unknown ensemble '" + std::string(name) + "'");
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = Complex(re, im);
        }
    return m;
}

Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng)
{
    const Matrix g = ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0)
            q.col(j) *= r(j, j) / mag;
    }
    return q;
}

CMatrix sample_matrix(Ensemble ensemble, Eigen::Index dim, std::uint64_t seed)
{
    if (dim < 1)
        throw InvalidMatrix("sample_matrix: dim must be at least 1");
    std::mt19937_64 rng(seed);
    switch (ensemble) {
    case Ensemble::Ginibre:
        return CMatrix(ginibre(dim, dim, rng));
    case Ensemble::Hermitian: {
        const Matrix g = ginibre(dim, dim, rng);
        return CMatrix((g + g.adjoint()) / 2.0);
    }
    case Ensemble::BlockDiagonalConjugated: {
        const Eigen::Index first = (dim + 1) / 2;
        const Eigen::Index second = dim / 2;
        Matrix d = Matrix::Zero(dim, dim);
        d.topLeftCorner(first, first) = ginibre(first, first, rng);
        if (second > 0)
            d.bottomRightCorner(second, second) = ginibre(second, second, rng);
        const Matrix u = haar_unitary(dim, rng);
        return CMatrix(u * d * u.adjoint());
    }
    }
    throw FormatError("sample_matrix: unknown ensemble");
}

} // namespace irred
