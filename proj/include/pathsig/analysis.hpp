#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pathsig/path.hpp"

namespace pathsig {

/// splitmix64 step; used to derive independent per-trial seeds from a master
/// seed so that trial t is reproducible in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic uniform sampling. std::uniform_int_distribution is
/// implementation-defined, so bounded draws are done by rejection on the raw
/// mt19937_64 stream; results are identical on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("empty sampling range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

private:
    std::mt19937_64 engine_;
};

/// Random rational with numerator uniform in [-9, 9] and denominator uniform
/// in [1, 9]: small heights keep exact arithmetic cheap while avoiding
/// degenerate lattices.
inline Rational random_rational(SeededRng& rng) {
    const std::int64_t num = rng.uniform_int(-9, 9);
    const std::int64_t den = rng.uniform_int(1, 9);
    return Rational(num) / Rational(den);
}

inline std::vector<Rational> random_vector(SeededRng& rng, int dim) {
    std::vector<Rational> v(static_cast<std::size_t>(dim));
    for (auto& c : v) c = random_rational(rng);
    return v;
}

inline std::vector<Rational> random_nonzero_vector(SeededRng& rng, int dim) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto v = random_vector(rng, dim);
        for (const auto& c : v)
            if (!(c == Rational(0))) return v;
    }
    throw std::runtime_error("nonzero vector sampling failed");
}

inline PiecewisePath<Rational> random_path(SeededRng& rng, int dim, int pieces) {
    PiecewisePath<Rational> p{dim, {}};
    p.pieces.reserve(static_cast<std::size_t>(pieces));
    for (int i = 0; i < pieces; ++i) p.pieces.push_back(random_vector(rng, dim));
    return p;
}

/// Random path that is already reduced: each new piece is resampled until it
/// is nonzero and not parallel to its predecessor. Requires dim >= 2 when
/// pieces >= 2, since on a line consecutive segments are always parallel.
inline PiecewisePath<Rational> random_reduced_path(SeededRng& rng, int dim, int pieces) {
    if (dim < 2 && pieces >= 2)
        throw std::invalid_argument("reduced paths with several pieces need dim >= 2");
    PiecewisePath<Rational> p{dim, {}};
    p.pieces.reserve(static_cast<std::size_t>(pieces));
    while (static_cast<int>(p.pieces.size()) < pieces) {
        auto v = random_nonzero_vector(rng, dim);
        if (!p.pieces.empty()) {
            const auto& u = p.pieces.back();
            bool parallel = true;
            for (int i = 0; i < dim && parallel; ++i)
                for (int j = i + 1; j < dim && parallel; ++j)
                    if (!(u[i] * v[j] - u[j] * v[i] == Rational(0))) parallel = false;
            if (parallel) continue;
        }
        p.pieces.push_back(std::move(v));
    }
    return p;
}

/// Vanishing pattern of a path's log-signature over a checked range of
/// levels [n1, K]. `first_nonzero` is empty when every checked level is zero.
template <typename S>
struct VanishingReport {
    PiecewisePath<S> path;
    int n1 = 1;
    int K = 1;
    std::vector<int> zero_levels;
    std::vector<int> nonzero_levels;
    std::optional<int> first_nonzero;
    std::uint64_t seed = 0;

    /// Number of consecutive zero levels starting at n1.
    int initial_zero_run() const {
        int run = 0;
        for (int k = n1; k <= K; ++k) {
            if (std::find(zero_levels.begin(), zero_levels.end(), k) == zero_levels.end()) break;
            ++run;
        }
        return run;
    }
};

/// Computes the log-signature to level K exactly and classifies each level
/// in [n1, K] as zero or nonzero.
template <typename S>
VanishingReport<S> vanishing_report(const PiecewisePath<S>& path, int n1, int K) {
    if (n1 < 1 || n1 > K) throw std::invalid_argument("need 1 <= n1 <= K");
    VanishingReport<S> rep;
    rep.path = path;
    rep.n1 = n1;
    rep.K = K;
    const auto ls = log_signature_tensor(path, K);
    const S scale = S(1) + ls.max_abs();
    for (int k = n1; k <= K; ++k) {
        bool zero = true;
        for (const auto& [w, c] : ls.level_coeffs(k))
            if (!ScalarOps<S>::negligible(c, scale)) {
                zero = false;
                break;
            }
        if (zero) {
            rep.zero_levels.push_back(k);
        } else {
            rep.nonzero_levels.push_back(k);
            if (!rep.first_nonzero) rep.first_nonzero = k;
        }
    }
    return rep;
}

namespace detail {

/// Structured candidate families with built-in cancellations, tried
/// alongside the generic samples when the (n1, m) pattern matches:
///   - n1 = 2, m = 3, d = 2: pieces (1,1), (1,-1), (a,1) with a random,
///     whose level-2 log-signature vanishes for every a;
///   - n1 = 3, m = 3: the closing relation v3 = -v1 - 3 v2, which kills
///     level 3.
inline std::optional<PiecewisePath<Rational>> structured_candidate(SeededRng& rng, int n1, int m,
                                                                   int d) {
    if (n1 == 2 && m == 3 && d == 2) {
        const Rational a = random_rational(rng);
        PiecewisePath<Rational> p{2,
                                  {{Rational(1), Rational(1)},
                                   {Rational(1), Rational(-1)},
                                   {a, Rational(1)}}};
        if (is_reduced(p)) return p;
        return std::nullopt;
    }
    if (n1 == 3 && m == 3 && d >= 2) {
        auto v1 = random_nonzero_vector(rng, d);
        auto v2 = random_nonzero_vector(rng, d);
        std::vector<Rational> v3(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) v3[i] = -v1[i] - Rational(3) * v2[i];
        PiecewisePath<Rational> p{d, {std::move(v1), std::move(v2), std::move(v3)}};
        if (is_reduced(p)) return p;
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

/// Searches for reduced m-piece paths in dimension d whose log-signature
/// vanishes on an initial run of levels starting at n1. Each trial draws a
/// generic reduced path (and a structured candidate when the family
/// matches) from a seed derived from (seed, trial); the report with the
/// longest initial zero run wins, ties going to the earliest trial — so the
/// result is a pure function of the arguments.
inline VanishingReport<Rational> vanish_search(int n1, int m, int d, int K, int trials,
                                               std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("need at least one piece");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    std::optional<VanishingReport<Rational>> best;
    auto consider = [&](const PiecewisePath<Rational>& p) {
        auto rep = vanishing_report(p, n1, K);
        rep.seed = seed;
        if (!best || rep.initial_zero_run() > best->initial_zero_run()) best = std::move(rep);
    };
    for (int t = 0; t < trials; ++t) {
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        consider(random_reduced_path(rng, d, m));
        if (const auto s = detail::structured_candidate(rng, n1, m, d)) consider(*s);
    }
    return *best;
}

/// Euclidean length of the path: the sum of the piece lengths.
template <typename S>
double path_length(const PiecewisePath<S>& path) {
    path.validate();
    double total = 0.0;
    for (const auto& v : path.pieces) {
        double sq = 0.0;
        for (const auto& c : v) {
            const double x = ScalarOps<S>::to_double(c);
            sq += x * x;
        }
        total += std::sqrt(sq);
    }
    return total;
}

/// 1-variation of the path measured in the l1 norm on R^d: sum_i ||v_i||_1,
/// exact. This is the length compatible with the coordinate-l1 tensor norms
/// (||a (x) b||_1 = ||a||_1 ||b||_1 holds letter by letter), so it is the
/// right-hand side of the signature growth bound
///   (k! ||pi_k Sig||_1)^(1/k) <= sum_i ||v_i||_1;
/// the Euclidean length is smaller and does not satisfy the bound.
template <typename S>
S path_variation_l1(const PiecewisePath<S>& path) {
    path.validate();
    S total(0);
    for (const auto& v : path.pieces)
        for (const auto& c : v) total += ScalarOps<S>::abs(c);
    return total;
}

/// l1 norm of the level-k part, as a float.
template <typename S>
double level_l1_norm(const TensorSeries<S>& t, int k) {
    if (k > t.level()) return 0.0;
    double sum = 0.0;
    for (const auto& [w, c] : t.level_coeffs(k)) sum += std::abs(ScalarOps<S>::to_double(c));
    return sum;
}

/// Normalized growth profile of a tensor series.
struct LpProfile {
    double p = 1.0;
    std::vector<double> values;  // index k-1 holds level k
};

/// values[k-1] = (Gamma(k/p + 1) * ||pi_k(T)||_1)^(p/k) for k = 1..N. For
/// the signature of a rectifiable path at p = 1 every value is bounded by
/// the path's length.
template <typename S>
LpProfile lp_profile(const TensorSeries<S>& t, double p, int N) {
    if (!(p >= 1.0)) throw std::invalid_argument("profile exponent must be >= 1");
    if (N < 1) throw std::invalid_argument("profile needs at least one level");
    if (N > t.level())
        throw std::invalid_argument("profile level exceeds the series truncation");
    LpProfile prof;
    prof.p = p;
    prof.values.reserve(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        const double norm = level_l1_norm(t, k);
        const double gamma = std::tgamma(static_cast<double>(k) / p + 1.0);
        prof.values.push_back(std::pow(gamma * norm, p / static_cast<double>(k)));
    }
    return prof;
}

}  // namespace pathsig
