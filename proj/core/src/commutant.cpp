#include "irred/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace irred {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KernelAnalysis {
    Matrix basis;          // orthonormal columns spanning the numerical kernel
    Eigen::VectorXd sv;    // all singular values, padded with zeros to the column count
    double margin = kInf;
    bool borderline = false;
};

/// Numerical kernel of `k` relative to tol * max(sigma_max, scale). When the kernel turns
/// out one-dimensional and `known` is supplied (a unit vector known to lie in
/// the exact kernel), it is used as the basis and no singular vectors are formed.
KernelAnalysis analyse_kernel(const Matrix& k, double tol, double scale, const Vector* known = nullptr)
{
    const Eigen::Index n = k.cols();
    KernelAnalysis out;
    out.sv = Eigen::VectorXd::Zero(n);

    // Tall systems share singular values and right singular vectors with their R factor.
    Matrix r_factor;
    if (k.rows() > n) {
        Eigen::HouseholderQR<Matrix> qr(k);
        r_factor = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    }
    const Matrix& target = k.rows() > n ? r_factor : k;

    const Eigen::VectorXd s = svd(target).values;
    out.sv.head(s.size()) = s;

    const double smax = n > 0 ? std::max(out.sv(0), scale) : 0.0;
    if (smax == 0.0) {
        out.basis = Matrix::Identity(n, n);
        return out;
    }
    const double thresh = tol * smax;

    std::vector<Eigen::Index> cols;
    double min_kept = kInf;
    double max_discarded = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double v = out.sv(j);
        if (v <= thresh) {
            cols.push_back(j);
            max_discarded = std::max(max_discarded, v);
        } else {
            min_kept = std::min(min_kept, v);
        }
        if (v >= 0.1 * thresh && v <= 10.0 * thresh)
            out.borderline = true;
    }
    if (!cols.empty() && max_discarded > 0.0 && std::isfinite(min_kept))
        out.margin = min_kept / max_discarded;

    if (cols.size() == 1 && known != nullptr) {
        out.basis = *known;
        return out;
    }
    out.basis.resize(n, static_cast<Eigen::Index>(cols.size()));
    if (cols.empty())
        return out;
    const Matrix v = svd(target, Eigen::ComputeFullV).v;
    for (std::size_t c = 0; c < cols.size(); ++c)
        out.basis.col(static_cast<Eigen::Index>(c)) = v.col(cols[c]);
    return out;
}

Verdict verdict_for(int dimension, bool borderline)
{
    if (borderline)
        return Verdict::Borderline;
    return dimension == 1 ? Verdict::Irreducible : Verdict::Reducible;
}

/// Turns kernel vectors (vec form, unit Frobenius norm) into matrices with unit normalised trace norm.
std::vector<CMatrix> to_matrices(const Matrix& vecs, Eigen::Index n)
{
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(vecs.cols()));
    const double scale = std::sqrt(static_cast<double>(n));
    for (Eigen::Index c = 0; c < vecs.cols(); ++c)
        out.emplace_back(scale * unvectorize(vecs.col(c), n, n));
    return out;
}

/// Orthonormal basis of the column span of `g`.
Matrix range_basis(const Matrix& g, double tol)
{
    const Svd dec = svd(g, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = dec.values;
    if (s.size() == 0 || s(0) == 0.0)
        return Matrix(g.rows(), 0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol * s(0))
        ++rank;
    return dec.u.leftCols(rank);
}

Matrix generator_columns(const SubalgebraSpec& amb, Eigen::Index n)
{
    Matrix g(n * n, static_cast<Eigen::Index>(amb.generators.size()));
    for (std::size_t i = 0; i < amb.generators.size(); ++i)
        g.col(static_cast<Eigen::Index>(i)) = vectorize(amb.generators[i].matrix());
    return g;
}

} // namespace

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Irreducible:
        return "Irreducible";
    case Verdict::Reducible:
        return "Reducible";
    case Verdict::Borderline:
        return "Borderline";
    }
    return "Unknown";
}

Eigen::Index SubalgebraSpec::dim() const
{
    if (generators.empty())
        throw ShapeMismatch("subalgebra '" + label + "' has no generators");
    const Eigen::Index n = generators.front().dim();
    for (const auto& g : generators)
        if (g.dim() != n)
            throw ShapeMismatch("subalgebra '" + label + "' mixes generator dimensions");
    return n;
}

bool SubalgebraSpec::star_closed(double tol) const
{
    const Eigen::Index n = dim();
    const Matrix q = range_basis(generator_columns(*this, n), tol);
    for (const auto& g : generators) {
        const Vector v = vectorize(g.matrix().adjoint());
        const Vector resid = v - q * (q.adjoint() * v);
        if (resid.norm() > tol * (1.0 + v.norm()))
            return false;
    }
    return true;
}

SubalgebraSpec tensor_embedding(Eigen::Index k, Eigen::Index m)
{
    SubalgebraSpec spec;
    spec.label = "M" + std::to_string(k) + " (x) I" + std::to_string(m);
    const Matrix eye = Matrix::Identity(m, m);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Matrix unit = Matrix::Zero(k, k);
            unit(a, b) = 1.0;
            spec.generators.emplace_back(kron(unit, eye));
        }
    }
    return spec;
}

SubalgebraSpec full_algebra(Eigen::Index n)
{
    SubalgebraSpec spec = tensor_embedding(n, 1);
    spec.label = "M" + std::to_string(n);
    return spec;
}

Matrix commutation_system(const CMatrix& s)
{
    const Eigen::Index n = s.dim();
    const Matrix eye = Matrix::Identity(n, n);
    const Matrix& m = s.matrix();
    const Matrix madj = m.adjoint();
    const Eigen::Index nn = n * n;

    Matrix k(2 * nn, nn);
    k.topRows(nn) = kron(eye, m) - kron(m.transpose(), eye);
    k.bottomRows(nn) = kron(eye, madj) - kron(m.conjugate(), eye);
    return k;
}

CommutantResult commutant_basis(const CMatrix& s, double tol)
{
    if (!(tol > 0.0))
        throw Error("commutant_basis: tol must be positive");
    const Eigen::Index n = s.dim();

    CommutantResult out;
    out.tol = tol;
    if (n == 1) {
        out.dimension = 1;
        out.basis.push_back(CMatrix::identity(1));
        out.verdict = Verdict::Irreducible;
        out.singular_value_margin = kInf;
        return out;
    }

    // The identity always commutes; it is the whole kernel in the irreducible case.
    const Vector identity = vectorize(Matrix::Identity(n, n)) / std::sqrt(static_cast<double>(n));
    const KernelAnalysis ka = analyse_kernel(commutation_system(s), tol, operator_norm(s), &identity);
    out.dimension = static_cast<int>(ka.basis.cols());
    out.basis = to_matrices(ka.basis, n);
    out.singular_value_margin = ka.margin;
    out.verdict = verdict_for(out.dimension, ka.borderline);
    return out;
}

Verdict is_irreducible(const CMatrix& s, double tol)
{
    if (s.dim() == 1)
        return Verdict::Irreducible;
    return commutant_basis(s, tol).verdict;
}

std::optional<Projection> reducing_projection(const CMatrix& s, double tol)
{
    const CommutantResult res = commutant_basis(s, tol);
    if (res.dimension <= 1)
        return std::nullopt;

    const Eigen::Index n = s.dim();
    const Eigen::Index ideal = (n - 1) / 2; // split between sorted positions ideal and ideal+1

    // Best (relative gap, eigenvectors, split) over all Hermitian candidates.
    double best_quality = 0.0;
    Matrix best_vectors;
    Eigen::Index best_split = -1;

    for (const auto& x : res.basis) {
        const Matrix& xm = x.matrix();
        const Matrix candidates[2] = {xm + xm.adjoint(), Complex(0.0, 1.0) * (xm - xm.adjoint())};
        for (const auto& h : candidates) {
            const EigenDecomposition ed = eigh(h);
            const double scale = 1.0 + std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
            const double gap_floor = 1e-8 * scale;

            // Among real gaps, prefer the one nearest the median; break ties by size.
            Eigen::Index split = -1;
            for (Eigen::Index k = 0; k + 1 < n; ++k) {
                const double gap = ed.values[k + 1] - ed.values[k];
                if (gap <= gap_floor)
                    continue;
                if (split < 0) {
                    split = k;
                    continue;
                }
                const auto dist_new = std::abs(k - ideal);
                const auto dist_old = std::abs(split - ideal);
                const double gap_old = ed.values[split + 1] - ed.values[split];
                if (dist_new < dist_old || (dist_new == dist_old && gap > gap_old))
                    split = k;
            }
            if (split < 0)
                continue;
            const double quality = (ed.values[split + 1] - ed.values[split]) / scale;
            if (quality > best_quality) {
                best_quality = quality;
                best_vectors = ed.vectors;
                best_split = split;
            }
        }
    }

    if (best_split < 0)
        throw DegenerateCommutant("commutant has dimension " + std::to_string(res.dimension) +
                                  " but every Hermitian element is scalar within tolerance");

    const Matrix upper = best_vectors.rightCols(n - 1 - best_split);
    Matrix p = upper * upper.adjoint();
    p = ((p + p.adjoint()) / 2.0).eval();
    return Projection{CMatrix(std::move(p)), tol};
}

CommutantResult relative_commutant(const CMatrix& s, const SubalgebraSpec& amb, double tol)
{
    if (!(tol > 0.0))
        throw Error("relative_commutant: tol must be positive");
    const Eigen::Index n = amb.dim();
    if (s.dim() != n)
        throw ShapeMismatch("relative_commutant: operator and ambient algebra dimensions differ");

    const Matrix q = range_basis(generator_columns(amb, n), tol);
    const Vector vs = vectorize(s.matrix());
    const Vector resid = vs - q * (q.adjoint() * vs);
    if (resid.norm() > tol * (1.0 + vs.norm()))
        throw NotInAlgebra("operator does not lie in the span of '" + amb.label + "'");

    CommutantResult out;
    out.tol = tol;
    if (q.cols() == 0) {
        out.singular_value_margin = kInf;
        return out;
    }
    const KernelAnalysis ka = analyse_kernel(commutation_system(s) * q, tol, operator_norm(s));
    out.dimension = static_cast<int>(ka.basis.cols());
    out.basis = to_matrices(q * ka.basis, n);
    out.singular_value_margin = ka.margin;
    out.verdict = verdict_for(out.dimension, ka.borderline);
    return out;
}

} // namespace irred
