#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "irred/linalg.hpp"

namespace irred {

enum class Ensemble { Ginibre, BlockDiagonalConjugated, Hermitian };

std::string_view to_string(Ensemble e);
/// Accepts "ginibre", "block_diagonal_conjugated", "hermitian". Throws FormatError.
Ensemble parse_ensemble(std::string_view name);

/// rows x cols matrix of independent standard complex Gaussians (E|z|^2 = 1).
Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's diagonal divided out.
Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Deterministic per (ensemble, dim, seed).
///  - ginibre: independent standard complex Gaussian entries
///  - block_diagonal_conjugated: Ginibre blocks of sizes ceil(n/2), floor(n/2)
///    conjugated by a Haar unitary (reducible for n >= 2)
///  - hermitian: (G + G*) / 2
CMatrix sample_matrix(Ensemble ensemble, Eigen::Index dim, std::uint64_t seed);

} // namespace irred
