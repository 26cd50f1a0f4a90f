#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathsig/scalar.hpp"
#include "pathsig/word.hpp"

namespace pathsig {

/// Product policy for the free (noncommutative) algebra: concatenation of words.
struct ConcatProduct {
    static Word combine(const Word& u, const Word& v) {
        Word w;
        w.reserve(u.size() + v.size());
        w.insert(w.end(), u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        return w;
    }
    static Word normalize(Word w) { return w; }
};

/// Product policy for the symmetric algebra: keys are sorted words (multisets),
/// the product merges them.
struct SymmetricProduct {
    static Word combine(const Word& u, const Word& v) {
        Word w;
        w.resize(u.size() + v.size());
        std::merge(u.begin(), u.end(), v.begin(), v.end(), w.begin());
        return w;
    }
    static Word normalize(Word w) {
        std::sort(w.begin(), w.end());
        return w;
    }
};

/// Graded truncated series: a sparse word -> coefficient table per level
/// 0..N. Immutable in normal use; every operation returns a new value in
/// canonical form (no stored zeros, where "zero" is exact for Rational and
/// relative to the largest coefficient for double).
template <typename S, typename P>
class GradedSeries {
public:
    GradedSeries(int dim, int level) : dim_(dim), level_(level) {
        if (dim < 1) throw std::invalid_argument("series dimension must be >= 1");
        if (level < 0) throw std::invalid_argument("series level must be >= 0");
        levels_.resize(static_cast<std::size_t>(level) + 1);
    }

    static GradedSeries unit(int dim, int level) {
        GradedSeries s(dim, level);
        s.levels_[0][Word{}] = S(1);
        return s;
    }

    int dim() const noexcept { return dim_; }
    int level() const noexcept { return level_; }

    const std::map<Word, S>& level_coeffs(int k) const {
        if (k < 0 || k > level_) throw std::invalid_argument("level index out of range");
        return levels_[static_cast<std::size_t>(k)];
    }

    /// Coefficient of a word; absent words (including words beyond the
    /// truncation level) read as zero.
    S coeff(const Word& w) const {
        check_letters(w);
        if (static_cast<int>(w.size()) > level_) return S(0);
        const auto& lvl = levels_[w.size()];
        const auto it = lvl.find(P::normalize(w));
        return it == lvl.end() ? S(0) : it->second;
    }

    void set_coeff(const Word& w, S c) {
        check_letters(w);
        if (static_cast<int>(w.size()) > level_)
            throw std::invalid_argument("word exceeds truncation level " + std::to_string(level_));
        Word key = P::normalize(w);
        auto& lvl = levels_[w.size()];
        if (c == S(0)) {
            lvl.erase(key);
        } else {
            lvl[std::move(key)] = std::move(c);
        }
    }

    void add_coeff(const Word& w, const S& c) {
        check_letters(w);
        if (static_cast<int>(w.size()) > level_)
            throw std::invalid_argument("word exceeds truncation level " + std::to_string(level_));
        Word key = P::normalize(w);
        auto& lvl = levels_[w.size()];
        auto [it, inserted] = lvl.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == S(0)) lvl.erase(it);
        }
    }

    S constant_term() const {
        const auto it = levels_[0].find(Word{});
        return it == levels_[0].end() ? S(0) : it->second;
    }

    bool is_zero() const {
        for (const auto& lvl : levels_)
            if (!lvl.empty()) return false;
        return true;
    }

    S max_abs() const {
        S m(0);
        for (const auto& lvl : levels_)
            for (const auto& [w, c] : lvl) m = std::max(m, ScalarOps<S>::abs(c));
        return m;
    }

    /// Canonical form: drop coefficients that count as zero. For the float
    /// backend the threshold is relative to the series' largest magnitude.
    void prune() {
        const S scale = S(1) + max_abs();
        for (auto& lvl : levels_) {
            for (auto it = lvl.begin(); it != lvl.end();) {
                if (ScalarOps<S>::negligible(it->second, scale))
                    it = lvl.erase(it);
                else
                    ++it;
            }
        }
    }

    GradedSeries& operator+=(const GradedSeries& o) {
        check_same_shape(o);
        for (int k = 0; k <= level_; ++k)
            for (const auto& [w, c] : o.levels_[k]) raw_add(k, w, c);
        prune();
        return *this;
    }

    GradedSeries& operator-=(const GradedSeries& o) {
        check_same_shape(o);
        for (int k = 0; k <= level_; ++k)
            for (const auto& [w, c] : o.levels_[k]) raw_add(k, w, S(-c));
        prune();
        return *this;
    }

    friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
    friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }

    GradedSeries operator-() const {
        GradedSeries out(*this);
        for (auto& lvl : out.levels_)
            for (auto& [w, c] : lvl) c = -c;
        return out;
    }

    friend GradedSeries operator*(const GradedSeries& a, const S& s) {
        GradedSeries out(a);
        for (auto& lvl : out.levels_)
            for (auto& [w, c] : lvl) c *= s;
        out.prune();
        return out;
    }
    friend GradedSeries operator*(const S& s, const GradedSeries& a) { return a * s; }

    /// Graded truncated product: the level-k part of the result collects
    /// products of level-i and level-(k-i) terms; everything above the common
    /// truncation level is discarded.
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        a.check_same_shape(b);
        GradedSeries out(a.dim_, a.level_);
        for (int i = 0; i <= a.level_; ++i) {
            if (a.levels_[i].empty()) continue;
            for (int j = 0; i + j <= a.level_; ++j) {
                if (b.levels_[j].empty()) continue;
                for (const auto& [u, ca] : a.levels_[i])
                    for (const auto& [v, cb] : b.levels_[j]) out.raw_add(i + j, P::combine(u, v), ca * cb);
            }
        }
        out.prune();
        return out;
    }

    bool operator==(const GradedSeries& o) const = default;

    /// Reinterprets the stored polynomial data at a different truncation
    /// level: extension pads with zeros, shrinking projects away the top levels.
    GradedSeries resized(int new_level) const {
        GradedSeries out(dim_, new_level);
        const int top = std::min(level_, new_level);
        for (int k = 0; k <= top; ++k) out.levels_[k] = levels_[k];
        return out;
    }

private:
    void check_letters(const Word& w) const {
        for (const Letter l : w)
            if (l < 1 || l > dim_)
                throw std::invalid_argument("letter " + std::to_string(l) + " out of range [1," +
                                            std::to_string(dim_) + "]");
    }

    void check_same_shape(const GradedSeries& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("series dimension mismatch");
        if (level_ != o.level_) throw std::invalid_argument("series truncation level mismatch");
    }

    void raw_add(int k, Word w, const S& c) {
        auto& lvl = levels_[static_cast<std::size_t>(k)];
        auto [it, inserted] = lvl.try_emplace(std::move(w), c);
        if (!inserted) it->second += c;
    }

    int dim_;
    int level_;
    std::vector<std::map<Word, S>> levels_;
};

/// exp(x) = sum_{k=0}^{N} x^k / k!, evaluated as Horner-style nested
/// truncated products (N series multiplications). Requires zero constant term.
template <typename S, typename P>
GradedSeries<S, P> exp(const GradedSeries<S, P>& x) {
    const S c0 = x.constant_term();
    if (!ScalarOps<S>::negligible(c0, S(1) + x.max_abs()))
        throw std::invalid_argument("exp requires a zero constant term");
    auto acc = GradedSeries<S, P>::unit(x.dim(), x.level());
    for (int k = x.level(); k >= 1; --k) {
        acc = x * acc;
        acc = acc * (S(1) / S(k));
        acc.add_coeff(Word{}, S(1));
    }
    return acc;
}

/// log(1 + y) = sum_{k=1}^{N} (-1)^{k-1} y^k / k, same Horner scheme.
/// Requires constant term 1.
template <typename S, typename P>
GradedSeries<S, P> log(const GradedSeries<S, P>& s) {
    const S c0 = s.constant_term();
    if (!ScalarOps<S>::negligible(c0 - S(1), S(1) + s.max_abs()))
        throw std::invalid_argument("log requires a constant term equal to 1");
    auto y = s;
    y.add_coeff(Word{}, -c0);
    const int n = s.level();
    auto acc = GradedSeries<S, P>(s.dim(), s.level());
    if (n >= 1) acc.set_coeff(Word{}, S(1) / S(n));
    for (int k = n - 1; k >= 1; --k) {
        acc = -(y * acc);
        acc.add_coeff(Word{}, S(1) / S(k));
    }
    return y * acc;
}

/// Inverse of a series with constant term 1, via the geometric series in (1 - s).
template <typename S, typename P>
GradedSeries<S, P> inverse(const GradedSeries<S, P>& s) {
    const S c0 = s.constant_term();
    if (!ScalarOps<S>::negligible(c0 - S(1), S(1) + s.max_abs()))
        throw std::invalid_argument("inverse requires a constant term equal to 1");
    auto y = s;
    y.add_coeff(Word{}, -c0);
    auto acc = GradedSeries<S, P>::unit(s.dim(), s.level());
    for (int k = 0; k < s.level(); ++k) {
        acc = -(y * acc);
        acc.add_coeff(Word{}, S(1));
    }
    return acc;
}

}  // namespace pathsig
