#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irred/linalg.hpp"
#include "irred/sampling.hpp"

namespace irred {

struct ExperimentConfig {
    Eigen::Index dim = 1;
    int trials = 1;
    /// Perturbation radii relative to ||T||.
    std::vector<double> epsilons;
    std::uint64_t seed = 0;
    Ensemble ensemble = Ensemble::Ginibre;
    double tol = kDefaultTol;

    /// Throws FormatError on dim < 1, trials < 1 or a missing/non-positive epsilon.
    void validate() const;
};

/// One (trial, epsilon) run.
struct TrialRecord {
    int trial = 0;
    double epsilon = 0.0;       ///< relative
    double abs_epsilon = 0.0;   ///< epsilon * ||T||
    double distance = 0.0;      ///< measured ||T - T3||
    int commutant_dim = 0;
    std::string verdict;        ///< certificate verdict, or "CertificateFailed"
    bool success = false;       ///< every certified inequality and the certificate held
    bool initially_irreducible = false; ///< T itself was Irreducible with margin > 10
    double initial_margin = 0.0;
    long long millis = 0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records; ///< ordered by (trial, epsilon index)

    double success_fraction() const;
    /// Fraction of trials (not rows) whose input was already robustly irreducible.
    double already_irreducible_fraction() const;
    /// `trial,epsilon,distance,commutant_dim,verdict,millis`
    std::string csv() const;
    std::string summary() const;
};

inline constexpr const char* kCsvHeader = "trial,epsilon,distance,commutant_dim,verdict,millis";

/// Per-trial seed is cfg.seed + trial index. CertificateFailed becomes a failure row.
ExperimentResult run_density_experiment(const ExperimentConfig& cfg);

} // namespace irred
