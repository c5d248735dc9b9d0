// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "irred/commutant.hpp"
#include "irred/perturbation.hpp"
#include "irred/rosenblum.hpp"
#include "irred/sampling.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace irred;

namespace {

constexpr std::uint64_t kMasterSeed = 20240611;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail, double seconds)
{
    std::printf("criterion %d: %s  %s  [%s] (%.1fs)\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---- criteria 1, 2, 8 ---------------------------------------------------

struct SweepRow {
    Eigen::Index dim;
    int trial;
    double rel;
    double eps;
    double distance;
    Verdict verdict;
    bool theorem_ok;   // ||T - T3|| < eps, certificate Irreducible, independently re-verified
    bool stages_ok;    // the three stage bounds, re-measured
    std::string note;
};

std::vector<SweepRow> theorem_sweep(std::uint64_t master)
{
    std::vector<SweepRow> rows;
    for (Eigen::Index dim : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 200; ++trial) {
            const std::uint64_t seed = master + static_cast<std::uint64_t>(1000 * dim + trial);
            const CMatrix t = sample_matrix(Ensemble::BlockDiagonalConjugated, dim, seed);
            const double norm = operator_norm(t);
            const CommutantResult initial = commutant_basis(t);
            for (double rel : {0.5, 0.1, 0.01}) {
                SweepRow row{dim, trial, rel, rel * norm, 0.0, Verdict::Reducible, false, false, {}};
                try {
                    const auto trace = perturb_to_irreducible(t, row.eps, seed, kDefaultTol, initial);
                    const auto rep = verify_trace(trace);
                    row.distance = rep.checks[3].measured;
                    row.verdict = rep.certificate_verdict;
                    row.theorem_ok = rep.checks[3].pass && rep.certificate_pass && row.distance < row.eps;
                    row.stages_ok = rep.checks[0].pass && rep.checks[1].pass && rep.checks[2].pass;
                } catch (const std::exception& e) {
                    row.note = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

bool same_double(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// ---- criterion 3 --------------------------------------------------------

oracle::IntMatrix planted_int(const std::vector<int>& values, std::mt19937_64& rng)
{
    const int n = static_cast<int>(values.size());
    oracle::IntMatrix d(n);
    for (int i = 0; i < n; ++i)
        d.r(i, i) = values[static_cast<std::size_t>(i)];
    const auto [v, vinv] = oracle::random_unimodular(n, 2, rng);
    return oracle::multiply(oracle::multiply(v, d), vinv);
}

CMatrix normal_with_spectrum(const std::vector<Complex>& values, std::mt19937_64& rng)
{
    const auto n = static_cast<Eigen::Index>(values.size());
    const Matrix u = testing_support::random_unitary(n, rng);
    Vector d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = values[static_cast<std::size_t>(i)];
    return CMatrix(u * d.asDiagonal() * u.adjoint());
}

// ---- criterion 4 --------------------------------------------------------

oracle::IntMatrix oracle_sample(int index, std::mt19937_64& rng)
{
    const int n = 1 + index % 4;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    switch ((index / 4) % 6) {
    case 0: // generic
        return oracle::random_int_matrix(n, 3, rng);
    case 1: { // direct sum of two random blocks
        if (n == 1)
            return oracle::random_int_matrix(1, 3, rng);
        const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        return oracle::permute(
            oracle::direct_sum(oracle::random_int_matrix(k, 2, rng), oracle::random_int_matrix(n - k, 2, rng)), perm);
    }
    case 2: { // repeated block
        if (n % 2 != 0)
            return oracle::random_int_matrix(n, 1, rng);
        const auto a = oracle::random_int_matrix(n / 2, 2, rng);
        return oracle::permute(oracle::direct_sum(a, a), perm);
    }
    case 3: { // diagonal with repeats
        oracle::IntMatrix d(n);
        for (int i = 0; i < n; ++i) {
            d.r(i, i) = static_cast<std::int64_t>(rng() % 3);
            d.c(i, i) = static_cast<std::int64_t>(rng() % 2);
        }
        return d;
    }
    case 4: { // upper triangular, integer entries
        oracle::IntMatrix u = oracle::random_int_matrix(n, 2, rng);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < r; ++c)
                u.r(r, c) = u.c(r, c) = 0;
        return u;
    }
    default: { // sparse: most entries zero
        oracle::IntMatrix s(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (rng() % 3 == 0)
                    s.r(r, c) = static_cast<std::int64_t>(rng() % 5) - 2;
        return s;
    }
    }
}

// ---- criterion 6 --------------------------------------------------------

CMatrix reducible_input(int index, std::mt19937_64& rng)
{
    const Eigen::Index n = 2 + index % 15;
    if (index % 3 != 2)
        return sample_matrix(Ensemble::BlockDiagonalConjugated, n, kMasterSeed + 5000 + static_cast<std::uint64_t>(index));
    // Repeated irreducible block, conjugated: commutant contains M_2.
    const Eigen::Index k = std::max<Eigen::Index>(1, n / 2);
    const Matrix j = testing_support::random_matrix(k, k, rng);
    Matrix s = Matrix::Zero(2 * k, 2 * k);
    s.topLeftCorner(k, k) = j;
    s.bottomRightCorner(k, k) = j;
    const Matrix u = testing_support::random_unitary(2 * k, rng);
    return CMatrix(u * s * u.adjoint());
}

} // namespace

int main()
{
    std::printf("irred acceptance (master seed %llu)\n", static_cast<unsigned long long>(kMasterSeed));

    // 1 and 2
    auto t0 = std::chrono::steady_clock::now();
    const auto sweep = theorem_sweep(kMasterSeed);
    const double sweep_seconds = seconds_since(t0);
    {
        std::size_t ok = 0, stage_ok = 0;
        const SweepRow* first_bad = nullptr;
        for (const auto& r : sweep) {
            ok += r.theorem_ok ? 1 : 0;
            stage_ok += r.stages_ok ? 1 : 0;
            if (!r.theorem_ok && first_bad == nullptr)
                first_bad = &r;
        }
        std::string detail = fmt("%zu/%zu traces with ||T-T3|| < eps and Irreducible certificate", ok, sweep.size());
        if (first_bad != nullptr)
            detail += fmt("; first failure dim %ld trial %d eps %g: %s", static_cast<long>(first_bad->dim),
                          first_bad->trial, first_bad->rel, first_bad->note.c_str());
        report(1, ok == sweep.size() && sweep.size() == 2400,
               "end-to-end theorem check, dims {2,4,8,16} x 200 trials x eps/||T|| {0.5,0.1,0.01}", detail,
               sweep_seconds);
        report(2, stage_ok == sweep.size() && sweep.size() == 2400,
               "stage bounds ||T-T1|| < eps/2, ||T-T2|| < 3eps/4, ||T2-T3|| < eps/4",
               fmt("%zu violations over %zu traces", sweep.size() - stage_ok, sweep.size()), 0.0);
    }

    // 3
    t0 = std::chrono::steady_clock::now();
    {
        std::mt19937_64 rng(kMasterSeed + 3);
        int separated_ok = 0;
        for (int i = 0; i < 500; ++i) {
            const Eigen::Index m = 1 + i % 8;
            const Eigen::Index k = 1 + (i / 8) % 8;
            const bool hermitian = i % 2 == 0;
            const CMatrix a = hermitian ? testing_support::random_hermitian(m, rng)
                                        : CMatrix(testing_support::random_matrix(m, m, rng));
            const Matrix b0 = hermitian ? testing_support::random_hermitian(k, rng).matrix()
                                        : testing_support::random_matrix(k, k, rng);
            // Spectral radius <= norm, so this shift separates the spectra.
            const double shift = 2.0 + operator_norm(a) + operator_norm(b0);
            const CMatrix b(b0 + shift * Matrix::Identity(k, k));
            separated_ok += rosenblum_kernel_dim(a, b) == 0 ? 1 : 0;
        }
        int planted_ok = 0;
        int oracle_checked = 0;
        for (int i = 0; i < 100; ++i) {
            const int p = 1 + i % 3;
            const int q = 1 + (i / 3) % 3;
            const int m = p + static_cast<int>(rng() % static_cast<unsigned>(7 - p));
            const int k = q + static_cast<int>(rng() % static_cast<unsigned>(7 - q));
            int got = -1;
            if (i % 2 == 0) {
                // Non-normal, integer: V diag V^-1 with unimodular V.
                std::vector<int> av(static_cast<std::size_t>(m), 0), bv(static_cast<std::size_t>(k), 0);
                for (int r = p; r < m; ++r)
                    av[static_cast<std::size_t>(r)] = 2 * (r - p + 1);
                for (int r = q; r < k; ++r)
                    bv[static_cast<std::size_t>(r)] = -2 * (r - q + 1);
                const auto ai = planted_int(av, rng);
                const auto bi = planted_int(bv, rng);
                got = rosenblum_kernel_dim(testing_support::to_cmatrix(ai), testing_support::to_cmatrix(bi));
                if (m * k <= 16) {
                    ++oracle_checked;
                    if (oracle::exact_rosenblum_kernel_dim(ai, bi) != p * q)
                        got = -2;
                }
            } else {
                // Normal, complex spectrum; shared eigenvalue z, others well apart.
                const Complex z(0.3, -0.7);
                std::vector<Complex> av(static_cast<std::size_t>(m), z), bv(static_cast<std::size_t>(k), z);
                for (int r = p; r < m; ++r)
                    av[static_cast<std::size_t>(r)] = Complex(1.0 + r, 0.5 * r);
                for (int r = q; r < k; ++r)
                    bv[static_cast<std::size_t>(r)] = Complex(-1.0 - r, 0.25 * r);
                got = rosenblum_kernel_dim(normal_with_spectrum(av, rng), normal_with_spectrum(bv, rng));
            }
            if (got != p * q && std::getenv("IRRED_ACCEPTANCE_VERBOSE"))
                std::printf("  planted %d: p=%d q=%d m=%d k=%d got %d\n", i, p, q, m, k, got);
            planted_ok += got == p * q ? 1 : 0;
        }
        report(3, separated_ok == 500 && planted_ok == 100,
               "Rosenblum kernel: 500 separated pairs give 0, 100 planted (p,q) pairs give p*q",
               fmt("separated %d/500, planted %d/100 (%d also exact-oracle checked)", separated_ok, planted_ok,
                   oracle_checked),
               seconds_since(t0));
    }

    // 4
    t0 = std::chrono::steady_clock::now();
    {
        std::mt19937_64 rng(kMasterSeed + 4);
        int mismatches = 0;
        int nontrivial = 0;
        for (int i = 0; i < 300; ++i) {
            const auto s = oracle_sample(i, rng);
            const int exact = oracle::exact_commutant_dim(s);
            const int lib = commutant_basis(testing_support::to_cmatrix(s), 1e-10).dimension;
            mismatches += exact != lib ? 1 : 0;
            nontrivial += exact > 1 ? 1 : 0;
        }
        report(4, mismatches == 0, "commutant dimension vs exact stacked-kernel oracle, 300 samples, dims <= 4",
               fmt("%d mismatches, %d samples with dimension > 1", mismatches, nontrivial), seconds_since(t0));
    }

    // 5
    t0 = std::chrono::steady_clock::now();
    {
        int ok = 0;
        for (Eigen::Index d = 1; d <= 16; ++d)
            ok += joint_commutant_dim(build_generator_pair(d)) == 1 ? 1 : 0;
        report(5, ok == 16, "generator pair joint commutant dimension 1 for d = 1..16", fmt("%d/16", ok),
               seconds_since(t0));
    }

    // 6
    t0 = std::chrono::steady_clock::now();
    {
        std::mt19937_64 rng(kMasterSeed + 6);
        int ok = 0;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const CMatrix s = reducible_input(i, rng);
            const double bound = 1e-8 * (1.0 + operator_norm(s));
            const auto p = reducing_projection(s);
            if (!p)
                continue;
            const Matrix& pm = p->matrix.matrix();
            const double e1 = operator_norm(pm * pm - pm);
            const double e2 = operator_norm(pm - pm.adjoint());
            const double e3 = operator_norm(pm * s.matrix() - s.matrix() * pm);
            const double tr = pm.trace().real();
            worst = std::max({worst, e1 / bound, e2 / bound, e3 / bound});
            ok += e1 <= bound && e2 <= bound && e3 <= bound && tr > 0.5 &&
                          tr < static_cast<double>(s.dim()) - 0.5
                      ? 1
                      : 0;
        }
        report(6, ok == 100, "reducing projection certificate on 100 constructed reducible inputs",
               fmt("%d/100, worst residual / bound %.2e", ok, worst), seconds_since(t0));
    }

    // 7
    t0 = std::chrono::steady_clock::now();
    {
        int ok = 0;
        double min_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 200; ++i) {
            const auto r = commutant_basis(sample_matrix(Ensemble::Ginibre, 8, kMasterSeed + 7000 + static_cast<std::uint64_t>(i)));
            min_margin = std::min(min_margin, r.singular_value_margin);
            ok += r.verdict == Verdict::Irreducible && r.singular_value_margin > 10.0 ? 1 : 0;
        }
        report(7, ok == 200, "200 Ginibre dim-8 samples Irreducible with margin > 10",
               fmt("%d/200, smallest margin %.3e", ok, min_margin), seconds_since(t0));
    }

    // 8
    t0 = std::chrono::steady_clock::now();
    {
        const auto again = theorem_sweep(kMasterSeed);
        std::size_t differ = again.size() == sweep.size() ? 0 : sweep.size();
        for (std::size_t i = 0; i < std::min(again.size(), sweep.size()); ++i)
            if (!same_double(again[i].distance, sweep[i].distance) || again[i].verdict != sweep[i].verdict)
                ++differ;
        report(8, differ == 0, "criterion 1 rerun with the same master seed is identical",
               fmt("%zu of %zu rows differ (distance bits or verdict)", differ, sweep.size()), seconds_since(t0));
    }

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
