#pragma once

#include <cstdint>
#include <random>

#include "irred/linalg.hpp"
#include "oracle.hpp"

namespace testing_support {

irred::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
irred::CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng);
irred::Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// U diag(values) U* for a random unitary U.
irred::CMatrix hermitian_with_spectrum(const std::vector<double>& values, std::mt19937_64& rng);

irred::CMatrix to_cmatrix(const oracle::IntMatrix& m);

double max_abs(const irred::Matrix& m);

} // namespace testing_support
