#include "oracle.hpp"

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

namespace oracle {

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) { return {a.re + b.re, a.im + b.im}; }
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
{
    const Rational d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
GaussianRational conj(const GaussianRational& a) { return {a.re, -a.im}; }

int exact_rank(ExactMatrix m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t p = pivot_row;
        while (p < rows && m[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[pivot_row]);
        const GaussianRational piv = m[pivot_row][c];
        for (std::size_t r = pivot_row + 1; r < rows; ++r) {
            if (m[r][c].is_zero())
                continue;
            const GaussianRational f = m[r][c] / piv;
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] = m[r][k] - f * m[pivot_row][k];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

namespace {

GaussianRational entry(const IntMatrix& s, int i, int j) { return {Rational(s.r(i, j)), Rational(s.c(i, j))}; }

/// Equations for AX - XB = 0 with X of shape m x k, unknown X_rs at column r*k + s.
void add_rosenblum_rows(ExactMatrix& rows, const std::vector<std::vector<GaussianRational>>& a,
                        const std::vector<std::vector<GaussianRational>>& b)
{
    const int m = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < k; ++q) {
            std::vector<GaussianRational> row(static_cast<std::size_t>(m * k));
            // (AX)_pq = sum_r A_pr X_rq
            for (int r = 0; r < m; ++r)
                row[static_cast<std::size_t>(r * k + q)] = row[static_cast<std::size_t>(r * k + q)] + a[p][r];
            // (XB)_pq = sum_s X_ps B_sq
            for (int s = 0; s < k; ++s)
                row[static_cast<std::size_t>(p * k + s)] = row[static_cast<std::size_t>(p * k + s)] - b[s][q];
            rows.push_back(std::move(row));
        }
    }
}

std::vector<std::vector<GaussianRational>> dense(const IntMatrix& s, bool adjoint)
{
    std::vector<std::vector<GaussianRational>> out(static_cast<std::size_t>(s.n),
                                                   std::vector<GaussianRational>(static_cast<std::size_t>(s.n)));
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            out[i][j] = adjoint ? conj(entry(s, j, i)) : entry(s, i, j);
    return out;
}

} // namespace

ExactMatrix commutation_equations(const IntMatrix& s)
{
    ExactMatrix rows;
    const auto sm = dense(s, false);
    const auto sa = dense(s, true);
    add_rosenblum_rows(rows, sm, sm);
    add_rosenblum_rows(rows, sa, sa);
    return rows;
}

int exact_commutant_dim(const IntMatrix& s) { return s.n * s.n - exact_rank(commutation_equations(s)); }

int exact_rosenblum_kernel_dim(const IntMatrix& a, const IntMatrix& b)
{
    ExactMatrix rows;
    add_rosenblum_rows(rows, dense(a, false), dense(b, false));
    return a.n * b.n - exact_rank(std::move(rows));
}

IntMatrix random_int_matrix(int n, int range, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> u(-range, range);
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.r(i, j) = u(rng);
            m.c(i, j) = u(rng);
        }
    return m;
}

IntMatrix permute(const IntMatrix& s, const std::vector<int>& perm)
{
    IntMatrix out(s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
            out.r(perm[i], perm[j]) = s.r(i, j);
            out.c(perm[i], perm[j]) = s.c(i, j);
        }
    return out;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix out(a.n + b.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            out.r(i, j) = a.r(i, j);
            out.c(i, j) = a.c(i, j);
        }
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) {
            out.r(a.n + i, a.n + j) = b.r(i, j);
            out.c(a.n + i, a.n + j) = b.c(i, j);
        }
    return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix out(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            for (int k = 0; k < a.n; ++k) {
                out.r(i, j) += a.r(i, k) * b.r(k, j) - a.c(i, k) * b.c(k, j);
                out.c(i, j) += a.r(i, k) * b.c(k, j) + a.c(i, k) * b.r(k, j);
            }
    return out;
}

std::pair<IntMatrix, IntMatrix> random_unimodular(int n, int shears, std::mt19937_64& rng)
{
    IntMatrix v(n);
    IntMatrix vinv(n);
    for (int i = 0; i < n; ++i)
        v.r(i, i) = vinv.r(i, i) = 1;
    if (n < 2)
        return {v, vinv};
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int s = 0; s < shears; ++s) {
        int i = idx(rng);
        int j = idx(rng);
        while (j == i)
            j = idx(rng);
        const int c = sign(rng) ? 1 : -1;
        IntMatrix e(n);
        IntMatrix einv(n);
        for (int k = 0; k < n; ++k)
            e.r(k, k) = einv.r(k, k) = 1;
        e.r(i, j) = c;
        einv.r(i, j) = -c;
        v = multiply(v, e);
        vinv = multiply(einv, vinv);
    }
    return {v, vinv};
}

int jacobi_commutant_dim(const std::vector<std::vector<std::complex<double>>>& s, double tol)
{
    const int n = static_cast<int>(s.size());
    const int nn = n * n;
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(2 * nn, nn);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const int row = p * n + q;
            for (int r = 0; r < n; ++r) {
                sys(row, r * n + q) += s[p][r];
                sys(nn + row, r * n + q) += std::conj(s[r][p]);
            }
            for (int t = 0; t < n; ++t) {
                sys(row, p * n + t) -= s[t][q];
                sys(nn + row, p * n + t) -= std::conj(s[q][t]);
            }
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0)
        return nn;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > tol * sv(0))
            ++rank;
    return nn - rank;
}

} // namespace oracle
