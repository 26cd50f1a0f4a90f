#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pathsig/lie.hpp"
#include "pathsig/series.hpp"
#include "pathsig/tensor.hpp"

namespace pathsig {

/// Element of the truncated symmetric algebra: coefficients indexed by
/// multisets of letters, stored as sorted words.
template <typename S>
using SymSeries = GradedSeries<S, SymmetricProduct>;

template <typename S>
SymSeries<S> sym_mul(const SymSeries<S>& a, const SymSeries<S>& b) {
    return a * b;
}

template <typename S>
SymSeries<S> sym_exp(const SymSeries<S>& x) {
    return exp(x);
}

template <typename S>
SymSeries<S> sym_log(const SymSeries<S>& s) {
    return log(s);
}

/// Forgets the order of letters: sums tensor coefficients over all words
/// with the same multiset.
template <typename S>
SymSeries<S> tensor_to_sym(const TensorSeries<S>& t) {
    SymSeries<S> out(t.dim(), t.level());
    for (int k = 0; k <= t.level(); ++k)
        for (const auto& [w, c] : t.level_coeffs(k)) out.add_coeff(w, c);
    out.prune();
    return out;
}

/// Mean vector and covariance matrix of a Gaussian variable on R^d.
template <typename S>
struct GaussianSpec {
    std::vector<S> mean;
    std::vector<std::vector<S>> cov;

    int dim() const { return static_cast<int>(mean.size()); }

    void validate() const {
        const std::size_t d = mean.size();
        if (d == 0) throw std::invalid_argument("Gaussian dimension must be >= 1");
        if (cov.size() != d) throw std::invalid_argument("covariance must be square of the mean's dimension");
        for (const auto& row : cov)
            if (row.size() != d) throw std::invalid_argument("covariance must be square");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (!(cov[i][j] == cov[j][i]))
                    throw std::invalid_argument("covariance must be symmetric");
    }
};

namespace detail {

/// Exact determinant by fraction-free elimination is overkill at these
/// sizes; plain Gaussian elimination over the field is fine.
template <typename S>
S determinant(std::vector<std::vector<S>> m) {
    const std::size_t n = m.size();
    S det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == S(0)) ++pivot;
        if (pivot == n) return S(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == S(0)) continue;
            const S f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace detail

/// Exact positive-semidefiniteness test: every principal minor is >= 0.
/// Advisory only — the moment/cumulant identities are algebraic and hold
/// for any symmetric matrix.
template <typename S>
bool is_positive_semidefinite(const std::vector<std::vector<S>>& a) {
    const int d = static_cast<int>(a.size());
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        std::vector<std::vector<S>> sub(idx.size(), std::vector<S>(idx.size()));
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = a[idx[r]][idx[c]];
        if (detail::determinant(std::move(sub)) < S(0)) return false;
    }
    return true;
}

/// Cumulant series of N(b, a): the degree-two polynomial b + a/2. The
/// multiset {i,j} with i < j collects the two symmetric halves a_ij/2 and
/// a_ji/2, so its coefficient is a_ij; the diagonal keeps a_ii/2.
template <typename S>
SymSeries<S> gaussian_cumulant(const GaussianSpec<S>& g, int level) {
    g.validate();
    if (level < 2) throw std::invalid_argument("cumulant needs level >= 2");
    const int d = g.dim();
    SymSeries<S> out(d, level);
    for (int i = 0; i < d; ++i) out.set_coeff(Word{i + 1}, g.mean[i]);
    for (int i = 0; i < d; ++i) {
        out.set_coeff(Word{i + 1, i + 1}, g.cov[i][i] / S(2));
        for (int j = i + 1; j < d; ++j) out.set_coeff(Word{i + 1, j + 1}, g.cov[i][j]);
    }
    out.prune();
    return out;
}

namespace detail {

template <typename S>
const S& gaussian_moment(const GaussianSpec<S>& g, const Word& sorted, std::map<Word, S>& memo) {
    auto it = memo.find(sorted);
    if (it != memo.end()) return it->second;
    S value(0);
    if (sorted.empty()) {
        value = S(1);
    } else {
        const Letter l = sorted.front();
        Word rest(sorted.begin() + 1, sorted.end());
        value = g.mean[l - 1] * gaussian_moment(g, rest, memo);
        for (std::size_t j = 0; j < rest.size(); ++j) {
            Word sub = rest;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
            value += g.cov[l - 1][rest[j] - 1] * gaussian_moment(g, sub, memo);
        }
    }
    return memo.emplace(sorted, std::move(value)).first->second;
}

template <typename F>
void for_each_multiset(int dim, int size, Word& scratch, F&& visit) {
    if (static_cast<int>(scratch.size()) == size) {
        visit(scratch);
        return;
    }
    const Letter lo = scratch.empty() ? 1 : scratch.back();
    for (Letter l = lo; l <= dim; ++l) {
        scratch.push_back(l);
        for_each_multiset(dim, size, scratch, visit);
        scratch.pop_back();
    }
}

}  // namespace detail

/// Moment series E(exp(X)) of X ~ N(b, a), computed independently of the
/// closed form: the joint moment E(X_{i1} ... X_{ik}) expands by the
/// pair-partition recursion
///   E(X_l P) = b_l E(P) + sum_j a_{l, j} E(P / X_j),
/// and the coefficient of the multiset M is E(prod M) / prod(multiplicity!)
/// because a size-k multiset appears in X^k/k! once per ordering.
template <typename S>
SymSeries<S> isserlis_moments(const GaussianSpec<S>& g, int N) {
    g.validate();
    if (N < 0) throw std::invalid_argument("moment level must be >= 0");
    SymSeries<S> out(g.dim(), N);
    out.set_coeff(Word{}, S(1));
    std::map<Word, S> memo;
    Word scratch;
    for (int k = 1; k <= N; ++k) {
        detail::for_each_multiset(g.dim(), k, scratch, [&](const Word& m) {
            S denom(1);
            std::size_t run = 1;
            for (std::size_t i = 1; i <= m.size(); ++i) {
                if (i < m.size() && m[i] == m[i - 1]) {
                    ++run;
                    denom *= S(static_cast<int>(run));
                } else {
                    run = 1;
                }
            }
            const S moment = detail::gaussian_moment(g, m, memo);
            if (!(moment == S(0))) out.set_coeff(m, moment / denom);
        });
    }
    out.prune();
    return out;
}

/// b + a/2 as an element of the tensor algebra: b at level 1, a/2 spread
/// over ordered pairs at level 2.
template <typename S>
TensorSeries<S> gaussian_tensor_cumulant(const GaussianSpec<S>& g, int level) {
    g.validate();
    if (level < 2) throw std::invalid_argument("cumulant needs level >= 2");
    const int d = g.dim();
    TensorSeries<S> out(d, level);
    for (int i = 0; i < d; ++i) out.set_coeff(Word{i + 1}, g.mean[i]);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.set_coeff(Word{i + 1, j + 1}, g.cov[i][j] / S(2));
    out.prune();
    return out;
}

/// Expected signature of Brownian motion with drift b and covariance a over
/// unit time: exp(b + a/2) in the tensor algebra.
template <typename S>
TensorSeries<S> brownian_expected_signature(const GaussianSpec<S>& g, int N) {
    if (N < 0) throw std::invalid_argument("level must be >= 0");
    return exp(gaussian_tensor_cumulant(g, std::max(N, 2)).resized(N));
}

/// Signature cumulant of the concatenation of two independent Brownian
/// motions with covariances a1, a2: log(exp(a1/2) ⊗ exp(a2/2)) — the
/// combination-of-exponentials formula applied to the level-2 cumulants,
/// which are symmetric tensors rather than Lie elements. Both arguments sit
/// in level 2, so the series is supported on even levels; its level-4 part
/// is [a1, a2]/8, nonzero unless a1 and a2 are collinear.
template <typename S>
TensorSeries<S> concat_brownian_cumulant(const std::vector<std::vector<S>>& a1,
                                         const std::vector<std::vector<S>>& a2, int N) {
    if (N < 2) throw std::invalid_argument("concatenated cumulant needs level >= 2");
    const int d = static_cast<int>(a1.size());
    if (static_cast<int>(a2.size()) != d) throw std::invalid_argument("covariance dimension mismatch");
    GaussianSpec<S> g1{std::vector<S>(static_cast<std::size_t>(d), S(0)), a1};
    GaussianSpec<S> g2{std::vector<S>(static_cast<std::size_t>(d), S(0)), a2};
    return log(exp(gaussian_tensor_cumulant(g1, N)) * exp(gaussian_tensor_cumulant(g2, N)));
}

}  // namespace pathsig
