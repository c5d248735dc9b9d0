#include "irred/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace irred {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI{0.0, 1.0};

Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Matrix outer_product(const Matrix& frame) { return frame * frame.adjoint(); }

/// Greedy clustering of an ascending spectrum; returns cluster start indices.
std::vector<std::size_t> cluster_starts(const std::vector<double>& values, double radius)
{
    std::vector<std::size_t> starts;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (starts.empty() || !(values[k] - values[starts.back()] < radius))
            starts.push_back(k);
    return starts;
}

SpectralClustering cluster_decomposition(const EigenDecomposition& ed, double radius)
{
    const auto starts = cluster_starts(ed.values, radius);
    SpectralClustering out;
    for (std::size_t c = 0; c < starts.size(); ++c) {
        const std::size_t first = starts[c];
        const std::size_t last = c + 1 < starts.size() ? starts[c + 1] : ed.values.size();
        out.reps.push_back(ed.values[first]);
        out.approx_error = std::max(out.approx_error, ed.values[last - 1] - ed.values[first]);
        Matrix frame = ed.vectors.middleCols(static_cast<Eigen::Index>(first),
                                             static_cast<Eigen::Index>(last - first));
        out.projections.push_back(Projection{CMatrix(hermitize(outer_product(frame))), kDefaultTol});
        out.frames.push_back(std::move(frame));
    }
    return out;
}

/// Q diag(values over blocks) Q*.
Matrix block_scalar(const RefinedDecomposition& dec, const std::vector<double>& per_block)
{
    const Matrix& q = dec.rotation.matrix();
    Eigen::VectorXcd diag(q.cols());
    for (std::size_t b = 0; b < dec.blocks.count(); ++b)
        diag.segment(dec.blocks.start(b), dec.blocks.size(b)).setConstant(per_block[b]);
    return hermitize(q * diag.asDiagonal() * q.adjoint());
}

std::vector<TraceCheck> distance_checks(const PerturbationTrace& trace)
{
    const double eps = trace.epsilon;
    std::vector<TraceCheck> checks;
    const auto add = [&](std::string name, const CMatrix& lhs, const CMatrix& rhs, double bound) {
        const double measured = lhs.dim() == rhs.dim() ? operator_norm(lhs - rhs) : kInf;
        checks.push_back({std::move(name), measured, bound, measured < bound});
    };
    add("||T-T1|| < eps/2", trace.t, trace.t1, eps / 2.0);
    add("||T-T2|| < 3eps/4", trace.t, trace.t2, 0.75 * eps);
    add("||T2-T3|| < eps/4", trace.t2, trace.t3, eps / 4.0);
    add("||T-T3|| < eps", trace.t, trace.t3, eps);
    return checks;
}

void require_positive(double eps, const char* who)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(std::string(who) + ": epsilon must be positive and finite");
}

} // namespace

std::vector<double> RefinedDecomposition::flat_lambdas() const
{
    std::vector<double> out;
    for (const auto& row : relabeled)
        out.insert(out.end(), row.begin(), row.end());
    return out;
}

std::vector<double> RefinedDecomposition::flat_etas() const
{
    std::vector<double> out;
    for (const auto& in : inner)
        out.insert(out.end(), in.reps.begin(), in.reps.end());
    return out;
}

SpectralClustering cluster_spectrum(const CMatrix& a, double radius)
{
    if (!(radius > 0.0))
        throw Error("cluster_spectrum: radius must be positive");
    return cluster_decomposition(eigh(a), radius);
}

std::vector<std::vector<double>> spread_labels(const std::vector<double>& reps,
                                               const std::vector<std::size_t>& block_counts, double eps)
{
    if (reps.size() != block_counts.size())
        throw ShapeMismatch("spread_labels: one block count per representative required");
    std::vector<std::vector<double>> out(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        double gap = kInf;
        if (i > 0)
            gap = std::min(gap, reps[i] - reps[i - 1]);
        if (i + 1 < reps.size())
            gap = std::min(gap, reps[i + 1] - reps[i]);
        const auto m = static_cast<double>(block_counts[i]);
        const double step = std::min(eps / (16.0 * m), gap / (4.0 * m));
        for (std::size_t j = 0; j < block_counts[i]; ++j)
            out[i].push_back(reps[i] + static_cast<double>(j) * step);
    }
    return out;
}

Refinement refine_decomposition(const CMatrix& t, double eps)
{
    require_positive(eps, "refine_decomposition");
    const double radius = 0.25 * eps * kRadiusSlack;
    const Eigen::Index n = t.dim();
    const auto [a, b] = hermitian_parts(t);

    RefinedDecomposition dec;
    dec.outer = cluster_spectrum(a, radius);

    Matrix rotation(n, n);
    std::vector<Eigen::Index> sizes;
    std::vector<std::size_t> counts;
    Matrix b1 = b.matrix();
    Matrix a1 = Matrix::Zero(n, n);
    Eigen::Index col = 0;

    for (std::size_t i = 0; i < dec.outer.count(); ++i) {
        const Matrix& v = dec.outer.frames[i];
        a1 += dec.outer.reps[i] * dec.outer.projections[i].matrix.matrix();

        const Matrix compressed = hermitize(v.adjoint() * b.matrix() * v);
        SpectralClustering local = cluster_decomposition(eigh(compressed), radius);

        // Replace E_i B E_i by sum_j eta_ij F_ij; off-diagonal E-blocks are untouched.
        b1 -= v * compressed * v.adjoint();
        SpectralClustering embedded;
        embedded.reps = local.reps;
        embedded.approx_error = local.approx_error;
        for (std::size_t j = 0; j < local.count(); ++j) {
            Matrix frame = v * local.frames[j];
            Matrix proj = hermitize(outer_product(frame));
            b1 += local.reps[j] * proj;
            rotation.middleCols(col, frame.cols()) = frame;
            col += frame.cols();
            sizes.push_back(frame.cols());
            embedded.projections.push_back(Projection{CMatrix(std::move(proj)), kDefaultTol});
            embedded.frames.push_back(std::move(frame));
        }
        counts.push_back(local.count());
        dec.inner.push_back(std::move(embedded));
    }

    dec.rotation = CMatrix(std::move(rotation));
    dec.blocks = BlockIndex::from_sizes(sizes);
    dec.relabeled = spread_labels(dec.outer.reps, counts, eps);

    CMatrix a1m(hermitize(a1));
    CMatrix b1m(hermitize(b1));
    CMatrix t1(a1m.matrix() + kI * b1m.matrix());
    return Refinement{std::move(dec), std::move(a1m), std::move(b1m), std::move(t1)};
}

CMatrix relabel_eigenvalues(const RefinedDecomposition& dec, double eps)
{
    require_positive(eps, "relabel_eigenvalues");
    std::vector<std::size_t> counts;
    for (const auto& in : dec.inner)
        counts.push_back(in.count());
    const auto labels = spread_labels(dec.outer.reps, counts, eps);

    std::vector<double> flat;
    for (const auto& row : labels)
        flat.insert(flat.end(), row.begin(), row.end());
    return CMatrix(block_scalar(dec, flat));
}

OffDiagonalFill fill_offdiagonal(const RefinedDecomposition& dec, const CMatrix& b1, double eps,
                                 [[maybe_unused]] std::uint64_t rng_seed)
{
    require_positive(eps, "fill_offdiagonal");
    const Matrix& q = dec.rotation.matrix();
    const Matrix rotated = q.adjoint() * b1.matrix() * q;
    const std::size_t k = dec.blocks.count();

    struct Pair {
        std::size_t a;
        std::size_t b;
        double norm;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            pairs.push_back({a, b, operator_norm(block(rotated, dec.blocks, a, b))});

    // Smallest z for which at most z pairs fall below the floor eps / (32 z).
    const auto below = [&](double floor) {
        return static_cast<std::size_t>(
            std::count_if(pairs.begin(), pairs.end(), [&](const Pair& p) { return p.norm < floor; }));
    };
    const auto floor_for = [&](std::size_t z) { return eps / (32.0 * static_cast<double>(std::max<std::size_t>(z, 1))); };
    std::size_t z = 0;
    while (z < pairs.size() && below(floor_for(z)) > z)
        ++z;

    OffDiagonalFill out{b1, 0.0, 0.0, 0};
    out.gamma = 2.0 * floor_for(z);
    out.block_floor = floor_for(z);

    Matrix delta = Matrix::Zero(q.rows(), q.cols());
    for (const auto& p : pairs) {
        if (!(p.norm < out.block_floor))
            continue;
        delta(dec.blocks.start(p.a), dec.blocks.start(p.b)) += out.gamma;
        delta(dec.blocks.start(p.b), dec.blocks.start(p.a)) += out.gamma;
        ++out.filled_pairs;
    }
    if (out.filled_pairs > 0)
        out.b2 = CMatrix(hermitize(b1.matrix() + q * delta * q.adjoint()));
    return out;
}

GeneratorPair build_generator_pair(Eigen::Index d)
{
    if (d < 1)
        throw Error("build_generator_pair: d must be at least 1");
    const auto dd = static_cast<double>(d);
    Matrix x = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        x(i, i) = static_cast<double>(i + 1) / dd;
    Matrix y = (Matrix::Ones(d, d) + dd * Matrix::Identity(d, d)) / (2.0 * dd);
    return GeneratorPair{CMatrix(std::move(x)), CMatrix(std::move(y)), d};
}

int joint_commutant_dim(const GeneratorPair& pair, double tol)
{
    return commutant_basis(CMatrix(pair.x.matrix() + kI * pair.y.matrix()), tol).dimension;
}

Injection inject_generators(const RefinedDecomposition& dec, const CMatrix& a2, const CMatrix& b2, double eps)
{
    require_positive(eps, "inject_generators");
    const auto lambdas = dec.flat_lambdas();
    if (lambdas.size() != dec.blocks.count())
        throw ShapeMismatch("inject_generators: label table does not match block structure");

    double gap = kInf;
    for (std::size_t a = 0; a + 1 < lambdas.size(); ++a)
        gap = std::min(gap, lambdas[a + 1] - lambdas[a]);
    if (!(gap > 0.0))
        throw DegenerateGap("inject_generators: consecutive labels are not strictly increasing");

    Injection out{a2, b2, a2, std::min(gap / 2.0, eps / 16.0), false};

    const Matrix& q = dec.rotation.matrix();
    const Eigen::Index n = q.rows();
    Matrix xd = Matrix::Zero(n, n);
    Matrix yd = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < dec.blocks.count(); ++b) {
        const auto pair = build_generator_pair(dec.blocks.size(b));
        const Eigen::Index s = dec.blocks.start(b);
        xd.block(s, s, pair.d, pair.d) = pair.x.matrix();
        yd.block(s, s, pair.d, pair.d) = pair.y.matrix();
    }
    out.a3 = CMatrix(hermitize(a2.matrix() + out.delta * (q * xd * q.adjoint())));
    out.b3 = CMatrix(hermitize(b2.matrix() + out.delta * (q * yd * q.adjoint())));
    out.t3 = CMatrix(out.a3.matrix() + kI * out.b3.matrix());

    // Measured spectra of the diagonal A3 blocks, in label order.
    const Matrix rotated = q.adjoint() * out.a3.matrix() * q;
    out.spectra_disjoint = true;
    double prev_max = -kInf;
    for (std::size_t b = 0; b < dec.blocks.count(); ++b) {
        const auto ev = eigh(hermitize(block(rotated, dec.blocks, b, b))).values;
        if (!(ev.front() > prev_max))
            out.spectra_disjoint = false;
        prev_max = ev.back();
    }
    return out;
}

PerturbationTrace perturb_to_irreducible(const CMatrix& t, double eps, std::uint64_t rng_seed, double tol,
                                         std::optional<CommutantResult> initial)
{
    require_positive(eps, "perturb_to_irreducible");

    if (!initial)
        initial = commutant_basis(t, tol);
    if (initial->verdict == Verdict::Irreducible && initial->singular_value_margin > 10.0) {
        return PerturbationTrace{t, eps, tol, rng_seed, std::nullopt, t, t, t, 0.0, StageBounds{},
                                 std::move(*initial), true};
    }

    Refinement ref = refine_decomposition(t, eps);
    const RefinedDecomposition& dec = ref.decomposition;
    const CMatrix a2 = relabel_eigenvalues(dec, eps);
    const OffDiagonalFill fill = fill_offdiagonal(dec, ref.b1, eps, rng_seed);
    Injection inj = inject_generators(dec, a2, fill.b2, eps);
    CMatrix t2(a2.matrix() + kI * fill.b2.matrix());

    StageBounds bounds;
    bounds.t_t1 = operator_norm(t - ref.t1);
    bounds.t_t2 = operator_norm(t - t2);
    bounds.t2_t3 = operator_norm(t2 - inj.t3);
    bounds.t_t3 = operator_norm(t - inj.t3);

    CommutantResult cert = commutant_basis(inj.t3, tol);

    PerturbationTrace trace{t,      eps,     tol,        rng_seed, std::move(ref.decomposition), std::move(ref.t1),
                            std::move(t2), std::move(inj.t3), inj.delta, bounds, std::move(cert), false};

    const auto checks = distance_checks(trace);
    const bool bounds_ok = std::all_of(checks.begin(), checks.end(), [](const TraceCheck& c) { return c.pass; });
    if (!bounds_ok || trace.certificate.verdict != Verdict::Irreducible || !inj.spectra_disjoint) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "CertificateFailed: verdict " << to_string(trace.certificate.verdict) << ", dimension "
            << trace.certificate.dimension << ", spectra disjoint " << inj.spectra_disjoint;
        for (const auto& c : checks)
            if (!c.pass)
                msg << "; " << c.name << " = " << c.measured << " (bound " << c.bound << ")";
        throw CertificateFailed(msg.str());
    }
    return trace;
}

bool TraceReport::all_pass() const
{
    return certificate_pass && std::all_of(checks.begin(), checks.end(), [](const TraceCheck& c) { return c.pass; });
}

TraceReport verify_trace(const PerturbationTrace& trace)
{
    TraceReport report;
    report.checks = distance_checks(trace);
    const CommutantResult cert = commutant_basis(trace.t3, trace.tol);
    report.certificate_verdict = cert.verdict;
    report.certificate_dimension = cert.dimension;
    report.certificate_margin = cert.singular_value_margin;
    report.certificate_pass = cert.verdict == Verdict::Irreducible;
    return report;
}

} // namespace irred
