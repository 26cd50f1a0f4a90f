#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathsig/tensor.hpp"

namespace pathsig {

/// Thrown when a tensor series that should lie in the free Lie algebra
/// (e.g. the input of a basis conversion) has a non-Lie component. `level`
/// is the lowest level at which the defect appears.
class not_lie_error : public std::domain_error {
public:
    not_lie_error(int level, const std::string& what)
        : std::domain_error(what), level_(level) {}
    int level() const noexcept { return level_; }

private:
    int level_;
};

inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    const std::size_t n = w.size();
    for (std::size_t i = 1; i < n; ++i) {
        // w must be strictly smaller than each of its proper rotations,
        // equivalently than each proper suffix.
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
    }
    return true;
}

/// All Lyndon words over letters 1..dim of length 1..max_len, by Duval's
/// generation, returned grouped by length (index k-1 holds length k, each
/// group in lexicographic order).
inline std::vector<std::vector<Word>> lyndon_words(int dim, int max_len) {
    if (dim < 1) throw std::invalid_argument("alphabet size must be >= 1");
    if (max_len < 0) throw std::invalid_argument("max length must be >= 0");
    std::vector<std::vector<Word>> out(static_cast<std::size_t>(max_len));
    Word w{1};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) <= max_len) out[w.size() - 1].push_back(w);
        // extend periodically up to max_len, then roll the last letter forward
        const std::size_t n = w.size();
        while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() % n]);
        while (!w.empty() && w.back() == dim) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

/// Index of the start of the right factor in the standard factorization
/// w = uv of a Lyndon word of length >= 2: v is the longest proper suffix of
/// w that is itself Lyndon, and u is then Lyndon with u < v.
inline std::size_t standard_factorization(const Word& w) {
    if (w.size() < 2) throw std::invalid_argument("standard factorization needs length >= 2");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (is_lyndon(Word(w.begin() + i, w.end()))) return i;
    throw std::invalid_argument("not a Lyndon word: " + word_to_string(w));
}

/// Renders the bracketing of a Lyndon word determined by iterated standard
/// factorization, e.g. (1,1,2) -> "[1,[1,2]]".
inline std::string bracketing_string(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word has no bracketing");
    if (w.size() == 1) return std::to_string(w[0]);
    const std::size_t split = standard_factorization(w);
    return "[" + bracketing_string(Word(w.begin(), w.begin() + split)) + "," +
           bracketing_string(Word(w.begin() + split, w.end())) + "]";
}

/// Commutator [a, b] = ab - ba in the truncated tensor algebra.
template <typename S>
TensorSeries<S> bracket(const TensorSeries<S>& a, const TensorSeries<S>& b) {
    return a * b - b * a;
}

namespace detail {

/// Expansion of the bracketed Lyndon word psi(w) (single letters map to
/// themselves, psi(uv) = [psi(u), psi(v)] on the standard factorization) as
/// integer word coefficients. The leading term is w itself with coefficient 1
/// and every other term is lexicographically greater of the same length.
inline const std::map<Word, std::int64_t>& lyndon_bracket_expansion(const Word& w) {
    static std::map<Word, std::map<Word, std::int64_t>> cache;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    std::map<Word, std::int64_t> result;
    if (w.size() == 1) {
        result[w] = 1;
    } else {
        const std::size_t split = standard_factorization(w);
        const auto& left = lyndon_bracket_expansion(Word(w.begin(), w.begin() + split));
        const auto& right = lyndon_bracket_expansion(Word(w.begin() + split, w.end()));
        for (const auto& [u, cu] : left) {
            for (const auto& [v, cv] : right) {
                result[ConcatProduct::combine(u, v)] += cu * cv;
                result[ConcatProduct::combine(v, u)] -= cu * cv;
            }
        }
        for (auto jt = result.begin(); jt != result.end();)
            jt = jt->second == 0 ? result.erase(jt) : std::next(jt);
    }
    return cache.emplace(w, std::move(result)).first->second;
}

}  // namespace detail

/// A Lie element stored by its coordinates in the Lyndon basis, i.e. as a
/// map Lyndon word -> coefficient, graded by word length up to `level`.
template <typename S>
class LieSeries {
public:
    LieSeries(int dim, int level) : dim_(dim), level_(level) {
        if (dim < 1) throw std::invalid_argument("series dimension must be >= 1");
        if (level < 0) throw std::invalid_argument("series level must be >= 0");
    }

    int dim() const noexcept { return dim_; }
    int level() const noexcept { return level_; }

    const std::map<Word, S, GradedLexLess>& coords() const noexcept { return coords_; }

    S coord(const Word& w) const {
        const auto it = coords_.find(w);
        return it == coords_.end() ? S(0) : it->second;
    }

    void set_coord(const Word& w, S c) {
        if (w.empty() || static_cast<int>(w.size()) > level_)
            throw std::invalid_argument("Lyndon coordinate length out of range");
        if (!is_lyndon(w)) throw std::invalid_argument("not a Lyndon word: " + word_to_string(w));
        for (const Letter l : w)
            if (l < 1 || l > dim_)
                throw std::invalid_argument("letter " + std::to_string(l) + " out of range [1," +
                                            std::to_string(dim_) + "]");
        if (c == S(0))
            coords_.erase(w);
        else
            coords_[w] = std::move(c);
    }

    /// Length of the longest stored word (0 when the element is zero).
    int degree() const {
        int deg = 0;
        for (const auto& [w, c] : coords_) deg = std::max(deg, static_cast<int>(w.size()));
        return deg;
    }

    bool operator==(const LieSeries&) const = default;

private:
    int dim_;
    int level_;
    std::map<Word, S, GradedLexLess> coords_;
};

/// Expands Lyndon coordinates into the corresponding tensor series
/// sum_w c_w psi(w).
template <typename S>
TensorSeries<S> lyndon_to_tensor(const LieSeries<S>& lie) {
    TensorSeries<S> out(lie.dim(), lie.level());
    for (const auto& [w, c] : lie.coords())
        for (const auto& [u, m] : detail::lyndon_bracket_expansion(w)) out.add_coeff(u, c * S(m));
    out.prune();
    return out;
}

/// Extracts Lyndon coordinates from a tensor series that lies in the free
/// Lie algebra. Works level by level: since psi(w) = w + (lex-greater words),
/// scanning words in lexicographic order and eliminating makes the
/// coordinates unique; a nonzero remainder means the input was not Lie, and
/// the error reports the offending level.
template <typename S>
LieSeries<S> tensor_to_lyndon(const TensorSeries<S>& t) {
    const S scale = S(1) + t.max_abs();
    if (!ScalarOps<S>::negligible(t.constant_term(), scale))
        throw not_lie_error(0, "not a Lie element at level 0: nonzero constant term");
    LieSeries<S> out(t.dim(), t.level());
    const auto lyndon = lyndon_words(t.dim(), t.level());
    for (int k = 1; k <= t.level(); ++k) {
        std::map<Word, S> residual(t.level_coeffs(k).begin(), t.level_coeffs(k).end());
        for (const Word& w : lyndon[k - 1]) {
            const auto it = residual.find(w);
            if (it == residual.end()) continue;
            const S c = it->second;
            if (ScalarOps<S>::negligible(c, scale)) {
                residual.erase(it);
                continue;
            }
            for (const auto& [u, m] : detail::lyndon_bracket_expansion(w)) {
                auto [jt, inserted] = residual.try_emplace(u, S(0));
                jt->second -= c * S(m);
                if (jt->second == S(0)) residual.erase(jt);
            }
            out.set_coord(w, c);
        }
        for (const auto& [u, r] : residual)
            if (!ScalarOps<S>::negligible(r, scale))
                throw not_lie_error(k, "not a Lie element at level " + std::to_string(k) +
                                           ": residual at word " + word_to_string(u));
    }
    return out;
}

namespace detail {

/// Right-to-left bracketing map on each level: a word l1 l2 ... lk goes to
/// [l1, [l2, [..., lk]]].
template <typename S>
TensorSeries<S> right_bracketing(const TensorSeries<S>& t) {
    TensorSeries<S> out(t.dim(), t.level());
    for (int k = 1; k <= t.level(); ++k) {
        for (const auto& [w, c] : t.level_coeffs(k)) {
            auto acc = TensorSeries<S>(t.dim(), t.level());
            acc.set_coeff(Word{w.back()}, S(1));
            for (std::size_t i = w.size() - 1; i-- > 0;) {
                TensorSeries<S> letter(t.dim(), t.level());
                letter.set_coeff(Word{w[i]}, S(1));
                acc = bracket(letter, acc);
            }
            out += acc * c;
        }
    }
    return out;
}

}  // namespace detail

/// Criterion for membership in the free Lie algebra: a series with zero
/// constant term is Lie iff right-bracketing each homogeneous part of degree
/// k reproduces it scaled by k.
template <typename S>
bool is_lie_series(const TensorSeries<S>& t) {
    const S scale = S(1) + t.max_abs();
    if (!ScalarOps<S>::negligible(t.constant_term(), scale)) return false;
    for (int k = 1; k <= t.level(); ++k) {
        TensorSeries<S> part(t.dim(), t.level());
        for (const auto& [w, c] : t.level_coeffs(k)) part.set_coeff(w, c);
        auto diff = detail::right_bracketing(part) - part * S(k);
        diff.prune();
        for (const auto& [w, c] : diff.level_coeffs(k))
            if (!ScalarOps<S>::negligible(c, scale)) return false;
    }
    return true;
}

/// Baker–Campbell–Hausdorff product log(exp(a) exp(b)) in the truncated
/// algebra, always evaluated through the product of exponentials rather
/// than coefficient tables. Inputs must be Lie series; the result is again
/// one.
template <typename S>
TensorSeries<S> bch(const TensorSeries<S>& a, const TensorSeries<S>& b) {
    if (!is_lie_series(a) || !is_lie_series(b))
        throw std::invalid_argument("bch requires Lie elements");
    return log(exp(a) * exp(b));
}

template <typename S>
TensorSeries<S> bch(const TensorSeries<S>& a, const TensorSeries<S>& b, int level) {
    return bch(a.resized(level), b.resized(level));
}

/// Iterated product log(exp(v1) ... exp(vm)) of level-1 vectors, in Lyndon
/// coordinates. A single vector maps to itself.
template <typename S>
LieSeries<S> bch_iterated(const std::vector<std::vector<S>>& vs, int level) {
    if (vs.empty()) throw std::invalid_argument("bch_iterated needs at least one vector");
    const int dim = static_cast<int>(vs.front().size());
    auto acc = TensorSeries<S>::unit(dim, level);
    for (const auto& v : vs) {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("vector dimension mismatch");
        acc = acc * exp(tensor_from_vector(v, level));
    }
    return tensor_to_lyndon(log(acc));
}

}  // namespace pathsig
