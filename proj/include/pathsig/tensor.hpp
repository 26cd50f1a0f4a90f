#pragma once

#include <stdexcept>
#include <vector>

#include "pathsig/series.hpp"

namespace pathsig {

/// Element of the truncated free tensor algebra over letters 1..dim.
template <typename S>
using TensorSeries = GradedSeries<S, ConcatProduct>;

/// Embeds a vector as the level-1 tensor sum_i v[i] e_i.
template <typename S>
TensorSeries<S> tensor_from_vector(const std::vector<S>& v, int level) {
    const int dim = static_cast<int>(v.size());
    TensorSeries<S> t(dim, level);
    for (int i = 0; i < dim; ++i) t.set_coeff(Word{i + 1}, v[i]);
    return t;
}

/// Shuffle product of two tensor series: the bilinear extension of the
/// shuffle of words. The result keeps the common truncation level.
template <typename S>
TensorSeries<S> shuffle_product(const TensorSeries<S>& a, const TensorSeries<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("series dimension mismatch");
    if (a.level() != b.level()) throw std::invalid_argument("series truncation level mismatch");
    TensorSeries<S> out(a.dim(), a.level());
    for (int i = 0; i <= a.level(); ++i) {
        for (const auto& [u, ca] : a.level_coeffs(i)) {
            for (int j = 0; i + j <= a.level(); ++j) {
                for (const auto& [v, cb] : b.level_coeffs(j)) {
                    const S cab = ca * cb;
                    for (const auto& [w, mult] : shuffle(u, v)) out.add_coeff(w, cab * S(mult));
                }
            }
        }
    }
    out.prune();
    return out;
}

/// A series with constant term 1 is group-like when shuffles of coefficients
/// multiply: <T,u><T,v> = sum over the shuffle u ⧢ v of <T,w>, for all u, v
/// with |u|+|v| <= level. Equivalently T is the exponential of a Lie series.
template <typename S>
bool is_grouplike(const TensorSeries<S>& t) {
    const S scale = S(1) + t.max_abs() * t.max_abs();
    if (!ScalarOps<S>::negligible(t.constant_term() - S(1), scale)) return false;
    for (int i = 1; i <= t.level() - 1; ++i) {
        const auto u_words = all_words(t.dim(), i);
        for (int j = i; i + j <= t.level(); ++j) {
            const auto v_words = all_words(t.dim(), j);
            for (const Word& u : u_words) {
                for (const Word& v : v_words) {
                    S lhs = t.coeff(u) * t.coeff(v);
                    for (const auto& [w, mult] : shuffle(u, v)) lhs -= S(mult) * t.coeff(w);
                    if (!ScalarOps<S>::negligible(lhs, scale)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace pathsig
