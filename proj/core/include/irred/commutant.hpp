#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irred/linalg.hpp"

namespace irred {

enum class Verdict { Irreducible, Reducible, Borderline };

std::string_view to_string(Verdict v);

/// Basis of W*(S)' (or of its restriction to a subalgebra), with the
/// irreducibility verdict.
struct CommutantResult {
    int dimension = 0;
    /// Orthonormal under <X, Y> = tr(X* Y) / n.
    std::vector<CMatrix> basis;
    Verdict verdict = Verdict::Reducible;
    double tol = kDefaultTol;
    /// Smallest kept singular value over largest discarded one; +inf when
    /// either side is empty or the discarded side is exactly zero.
    double singular_value_margin = 0.0;
};

/// A *-closed subspace of M_n, given by a spanning set.
struct SubalgebraSpec {
    std::vector<CMatrix> generators;
    std::string label;

    /// Ambient dimension n; throws ShapeMismatch when generators disagree or are absent.
    Eigen::Index dim() const;
    /// Adjoint of every generator lies in the span within `tol` (relative).
    bool star_closed(double tol = kDefaultTol) const;
};

/// M_k (x) I_m inside M_{k*m}, spanned by matrix units.
SubalgebraSpec tensor_embedding(Eigen::Index k, Eigen::Index m);

/// Full matrix algebra M_n, spanned by matrix units.
SubalgebraSpec full_algebra(Eigen::Index n);

/// Stacked linearisation [I (x) S - S^T (x) I ; I (x) S* - conj(S) (x) I] acting on vec(X).
Matrix commutation_system(const CMatrix& s);

CommutantResult commutant_basis(const CMatrix& s, double tol = kDefaultTol);

Verdict is_irreducible(const CMatrix& s, double tol = kDefaultTol);

/// Nontrivial projection commuting with S, or nullopt when the commutant is
/// the scalars. Throws DegenerateCommutant when the commutant has dimension
/// >= 2 yet contains no usable non-scalar Hermitian element.
std::optional<Projection> reducing_projection(const CMatrix& s, double tol = kDefaultTol);

/// Commutant of {S, S*} inside span(amb.generators). Throws NotInAlgebra when
/// S is not in that span.
CommutantResult relative_commutant(const CMatrix& s, const SubalgebraSpec& amb, double tol = kDefaultTol);

} // namespace irred
