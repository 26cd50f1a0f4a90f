#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pathsig/lie.hpp"
#include "pathsig/tensor.hpp"

namespace pathsig {

/// Piecewise-linear path, stored by its increment vectors (the basepoint is
/// irrelevant to everything computed here).
template <typename S>
struct PiecewisePath {
    int dim = 0;
    std::vector<std::vector<S>> pieces;

    void validate() const {
        if (dim < 1) throw std::invalid_argument("path dimension must be >= 1");
        for (const auto& p : pieces)
            if (static_cast<int>(p.size()) != dim)
                throw std::invalid_argument("piece dimension mismatch");
    }
};

/// Path given by sampled points, interpreted linearly between consecutive
/// samples. Input carrier for the numeric integrator.
struct SampledPath {
    int dim = 0;
    std::vector<std::vector<double>> samples;

    void validate() const {
        if (dim < 1) throw std::invalid_argument("path dimension must be >= 1");
        if (samples.size() < 2) throw std::invalid_argument("sampled path needs at least 2 points");
        for (const auto& p : samples)
            if (static_cast<int>(p.size()) != dim)
                throw std::invalid_argument("sample dimension mismatch");
    }

    /// The corresponding increment path.
    PiecewisePath<double> increments() const {
        validate();
        PiecewisePath<double> out{dim, {}};
        out.pieces.reserve(samples.size() - 1);
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            std::vector<double> v(static_cast<std::size_t>(dim));
            for (int j = 0; j < dim; ++j) v[j] = samples[i + 1][j] - samples[i][j];
            out.pieces.push_back(std::move(v));
        }
        return out;
    }
};

/// Signature of one straight-line piece with increment v: exp(v) has the
/// closed form <exp(v), w> = v_{w_1} ... v_{w_k} / k!.
template <typename S>
TensorSeries<S> line_signature(const std::vector<S>& v, int level) {
    const int dim = static_cast<int>(v.size());
    TensorSeries<S> out = TensorSeries<S>::unit(dim, level);
    std::map<Word, S> prev{{Word{}, S(1)}};
    for (int k = 1; k <= level; ++k) {
        std::map<Word, S> cur;
        for (const auto& [w, c] : prev) {
            for (Letter l = 1; l <= dim; ++l) {
                if (v[l - 1] == S(0)) continue;
                Word wl = w;
                wl.push_back(l);
                cur.emplace(std::move(wl), c * v[l - 1] / S(k));
            }
        }
        for (const auto& [w, c] : cur) out.set_coeff(w, c);
        prev = std::move(cur);
    }
    out.prune();
    return out;
}

/// Signature of the whole path, by the multiplicative property over
/// concatenation: the product of the segment signatures.
template <typename S>
TensorSeries<S> signature(const PiecewisePath<S>& path, int level) {
    path.validate();
    auto acc = TensorSeries<S>::unit(path.dim, level);
    for (const auto& v : path.pieces) acc = acc * line_signature(v, level);
    return acc;
}

/// log(signature) as a tensor series.
template <typename S>
TensorSeries<S> log_signature_tensor(const PiecewisePath<S>& path, int level) {
    return log(signature(path, level));
}

/// log(signature) in Lyndon coordinates.
template <typename S>
LieSeries<S> log_signature(const PiecewisePath<S>& path, int level) {
    if (level < 1) throw std::invalid_argument("log-signature needs level >= 1");
    return tensor_to_lyndon(log_signature_tensor(path, level));
}

template <typename S>
PiecewisePath<S> concat(const PiecewisePath<S>& a, const PiecewisePath<S>& b) {
    if (a.dim != b.dim) throw std::invalid_argument("path dimension mismatch");
    PiecewisePath<S> out = a;
    out.pieces.insert(out.pieces.end(), b.pieces.begin(), b.pieces.end());
    return out;
}

/// Time reversal: the increments in reverse order, each negated.
template <typename S>
PiecewisePath<S> reversed(const PiecewisePath<S>& path) {
    PiecewisePath<S> out{path.dim, {}};
    out.pieces.reserve(path.pieces.size());
    for (auto it = path.pieces.rbegin(); it != path.pieces.rend(); ++it) {
        auto v = *it;
        for (auto& c : v) c = -c;
        out.pieces.push_back(std::move(v));
    }
    return out;
}

namespace detail {

template <typename S>
bool piece_is_zero(const std::vector<S>& v) {
    for (const auto& c : v)
        if (!(c == S(0))) return false;
    return true;
}

}  // namespace detail

/// Tree-reduction for piecewise-linear paths: repeatedly drop zero pieces
/// and cancel or merge adjacent pieces lying on one line, until a fixpoint.
/// Adjacent collinear pieces always merge (u then v with v = t u combine to
/// (1+t) u, which is zero exactly when the second retraces the first).
template <typename S>
PiecewisePath<S> reduce(const PiecewisePath<S>& path) {
    path.validate();
    std::vector<std::vector<S>> stack;
    for (const auto& piece : path.pieces) {
        if (detail::piece_is_zero(piece)) continue;
        std::vector<S> cur = piece;
        while (!stack.empty()) {
            const auto& top = stack.back();
            bool parallel = true;
            const int d = path.dim;
            for (int i = 0; i < d && parallel; ++i)
                for (int j = i + 1; j < d && parallel; ++j)
                    if (!(top[i] * cur[j] - top[j] * cur[i] == S(0))) parallel = false;
            if (!parallel) break;
            for (int i = 0; i < d; ++i) cur[i] += top[i];
            stack.pop_back();
            if (detail::piece_is_zero(cur)) break;
        }
        if (!detail::piece_is_zero(cur)) stack.push_back(std::move(cur));
    }
    return PiecewisePath<S>{path.dim, std::move(stack)};
}

template <typename S>
bool is_reduced(const PiecewisePath<S>& path) {
    path.validate();
    for (const auto& p : path.pieces)
        if (detail::piece_is_zero(p)) return false;
    for (std::size_t i = 0; i + 1 < path.pieces.size(); ++i) {
        const auto& u = path.pieces[i];
        const auto& v = path.pieces[i + 1];
        bool parallel = true;
        for (int a = 0; a < path.dim && parallel; ++a)
            for (int b = a + 1; b < path.dim && parallel; ++b)
                if (!(u[a] * v[b] - u[b] * v[a] == S(0))) parallel = false;
        if (parallel) return false;
    }
    return true;
}

/// Level-2 part of the log-signature in closed form:
/// (1/2) sum_{i<j} (v_i ⊗ v_j - v_j ⊗ v_i).
template <typename S>
TensorSeries<S> level2_closed_form(const PiecewisePath<S>& path) {
    path.validate();
    const auto& v = path.pieces;
    const std::size_t m = v.size();
    TensorSeries<S> out(path.dim, 2);
    const S half = S(1) / S(2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (Letter a = 1; a <= path.dim; ++a)
                for (Letter b = 1; b <= path.dim; ++b)
                    out.add_coeff(Word{a, b},
                                  half * (v[i][a - 1] * v[j][b - 1] - v[j][a - 1] * v[i][b - 1]));
    out.prune();
    return out;
}

/// Level-3 part of the log-signature in closed form. With x_i = v_i as
/// level-1 tensors,
///   (1/12) sum_{i != j} (x_i x_i x_j + x_i x_j x_j)
/// + (1/3)  sum over monotone triples i<j<k or i>j>k of x_i x_j x_k
/// - (1/6)  sum over peak/valley triples i<j>k or i>j<k (i = k allowed).
template <typename S>
TensorSeries<S> level3_closed_form(const PiecewisePath<S>& path) {
    path.validate();
    const auto& v = path.pieces;
    const std::size_t m = v.size();
    const int d = path.dim;
    TensorSeries<S> out(d, 3);
    const S c12 = S(1) / S(12), c3 = S(1) / S(3), c6 = S(-1) / S(6);
    auto add_triple = [&](std::size_t i, std::size_t j, std::size_t k, const S& c) {
        for (Letter a = 1; a <= d; ++a) {
            if (v[i][a - 1] == S(0)) continue;
            for (Letter b = 1; b <= d; ++b) {
                if (v[j][b - 1] == S(0)) continue;
                const S cab = c * v[i][a - 1] * v[j][b - 1];
                for (Letter e = 1; e <= d; ++e) {
                    if (v[k][e - 1] == S(0)) continue;
                    out.add_coeff(Word{a, b, e}, cab * v[k][e - 1]);
                }
            }
        }
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            add_triple(i, i, j, c12);
            add_triple(i, j, j, c12);
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                if (i == j || j == k) continue;
                if ((i < j && j < k) || (i > j && j > k))
                    add_triple(i, j, k, c3);
                else if ((i < j && j > k) || (i > j && j < k))
                    add_triple(i, j, k, c6);
            }
    out.prune();
    return out;
}

/// First-order Euler evaluation of the signature as the solution of
/// dS = S ⊗ dγ: S <- S ⊗ (1 + Δγ) at the left endpoint of each subinterval,
/// with `steps` subintervals per sample interval. Converges to the exact
/// signature at first order in the step size, which makes it an independent
/// check of the algebraic computation.
inline TensorSeries<double> signature_numeric_oracle(const SampledPath& path, int level,
                                                     int steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    const auto pieces = path.increments();
    auto acc = TensorSeries<double>::unit(path.dim, level);
    for (const auto& v : pieces.pieces) {
        TensorSeries<double> step = TensorSeries<double>::unit(path.dim, level);
        for (int i = 0; i < path.dim; ++i) step.set_coeff(Word{i + 1}, v[i] / steps);
        for (int s = 0; s < steps; ++s) acc = acc * step;
    }
    return acc;
}

/// Group-like element exp(x) of a Lie polynomial x: the signature of the
/// formal path whose whole log-signature is x. The truncation level must
/// cover the degree of x.
template <typename S>
TensorSeries<S> grouplike_exp(const LieSeries<S>& x, int level) {
    if (level < x.degree())
        throw std::invalid_argument("truncation level below the degree of the Lie element");
    LieSeries<S> lifted(x.dim(), level);
    for (const auto& [w, c] : x.coords()) lifted.set_coord(w, c);
    return exp(lyndon_to_tensor(lifted));
}

}  // namespace pathsig
