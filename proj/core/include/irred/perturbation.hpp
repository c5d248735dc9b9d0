#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irred/commutant.hpp"
#include "irred/linalg.hpp"

namespace irred {

/// Slack applied to every clustering radius and budget so measured norms
/// satisfy the strict inequalities.
inline constexpr double kRadiusSlack = 1.0 - 1e-6;

/// A Hermitian matrix approximated by sum_j reps[j] * projections[j].
struct SpectralClustering {
    std::vector<double> reps;              ///< strictly increasing, each a computed eigenvalue
    std::vector<Projection> projections;   ///< pairwise orthogonal, summing to I (or to E_i)
    std::vector<Matrix> frames;            ///< orthonormal columns spanning each projection's range
    double approx_error = 0.0;             ///< max in-cluster deviation from the representative

    std::size_t count() const noexcept { return reps.size(); }
};

/// Greedy left-to-right grouping of the spectrum: a cluster starts at its
/// smallest eigenvalue and absorbs every following eigenvalue strictly
/// within `radius`. Throws NotHermitian.
SpectralClustering cluster_spectrum(const CMatrix& a, double radius);

/// Two-level block structure {F_ij}: outer clusters E_i of Re T, and inside
/// each range(E_i) the clusters F_ij of the compressed Im T.
struct RefinedDecomposition {
    SpectralClustering outer;
    /// inner[i] clusters E_i B E_i; its projections live in the full space.
    std::vector<SpectralClustering> inner;
    /// lambda_ij, strictly increasing in (i, j) order.
    std::vector<std::vector<double>> relabeled;
    /// Unitary whose column blocks span F_11, F_12, ..., F_{n m_n} in order.
    CMatrix rotation = CMatrix::identity(1);
    BlockIndex blocks;

    std::size_t block_count() const noexcept { return blocks.count(); }
    std::vector<double> flat_lambdas() const;
    std::vector<double> flat_etas() const;
};

struct Refinement {
    RefinedDecomposition decomposition;
    CMatrix a1;
    CMatrix b1;
    CMatrix t1; ///< a1 + i b1
};

/// Spread rule: lambda_ij = lambda_i + j * s_i (j from 0) with
/// s_i = min(eps / (16 m_i), gap_i / (4 m_i)).
std::vector<std::vector<double>> spread_labels(const std::vector<double>& reps,
                                               const std::vector<std::size_t>& block_counts, double eps);

/// Builds E_i, F_ij, the relabeled table and T1. Throws Error when eps <= 0.
Refinement refine_decomposition(const CMatrix& t, double eps);

/// A2 = sum lambda_ij F_ij.
CMatrix relabel_eigenvalues(const RefinedDecomposition& dec, double eps);

struct OffDiagonalFill {
    CMatrix b2;
    double gamma = 0.0;       ///< corner value inserted into each filled pair
    double block_floor = 0.0; ///< every off-diagonal block of b2 has norm >= this
    int filled_pairs = 0;
};

/// Makes every off-diagonal F-block pair of B1 nonzero with a Hermitian
/// corner-entry perturbation of total norm < eps / 8. The fill is
/// deterministic; `rng_seed` is accepted for interface stability only.
OffDiagonalFill fill_offdiagonal(const RefinedDecomposition& dec, const CMatrix& b1, double eps,
                                 std::uint64_t rng_seed);

/// Positive pair with trivial joint commutant in M_d:
/// X = diag(1..d) / d and Y = (J_d + d I) / (2d).
struct GeneratorPair {
    CMatrix x;
    CMatrix y;
    Eigen::Index d;
};

GeneratorPair build_generator_pair(Eigen::Index d);

/// dim {Z : ZX = XZ, ZY = YZ} for Hermitian X, Y (the commutant of X + iY).
int joint_commutant_dim(const GeneratorPair& pair, double tol = kDefaultTol);

struct Injection {
    CMatrix a3;
    CMatrix b3;
    CMatrix t3;
    double delta = 0.0;
    /// Measured spectra of the diagonal A3 blocks occupy disjoint intervals.
    bool spectra_disjoint = false;
};

/// A3 = A2 + delta diag(X_ij), B3 = B2 + delta diag(Y_ij) with
/// delta = min(g / 2, eps / 16). Throws DegenerateGap when g = 0.
Injection inject_generators(const RefinedDecomposition& dec, const CMatrix& a2, const CMatrix& b2, double eps);

struct StageBounds {
    double t_t1 = 0.0;  ///< ||T - T1|| < eps/2
    double t_t2 = 0.0;  ///< ||T - T2|| < 3 eps/4
    double t2_t3 = 0.0; ///< ||T2 - T3|| < eps/4
    double t_t3 = 0.0;  ///< ||T - T3|| < eps
};

struct PerturbationTrace {
    CMatrix t;
    double epsilon = 0.0;
    double tol = kDefaultTol;
    std::uint64_t rng_seed = 0;
    /// Absent when T was already robustly irreducible.
    std::optional<RefinedDecomposition> decomposition;
    CMatrix t1;
    CMatrix t2;
    CMatrix t3;
    double delta = 0.0;
    StageBounds bounds;
    CommutantResult certificate;
    bool shortcut = false;
};

/// Perturbs T into an irreducible T3 with ||T - T3|| < eps. Throws
/// CertificateFailed when any certified inequality or the final
/// irreducibility check does not hold. `initial`, when given, must be
/// commutant_basis(t, tol) and saves recomputing it.
PerturbationTrace perturb_to_irreducible(const CMatrix& t, double eps, std::uint64_t rng_seed,
                                         double tol = kDefaultTol,
                                         std::optional<CommutantResult> initial = std::nullopt);

struct TraceCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct TraceReport {
    std::vector<TraceCheck> checks;
    Verdict certificate_verdict = Verdict::Reducible;
    int certificate_dimension = 0;
    double certificate_margin = 0.0;
    bool certificate_pass = false;

    bool all_pass() const;
};

/// Re-measures every inequality from the stored matrices and re-runs the
/// commutant certificate on T3.
TraceReport verify_trace(const PerturbationTrace& trace);

} // namespace irred
