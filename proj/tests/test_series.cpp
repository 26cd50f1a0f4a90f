#include "doctest.h"
#include "pathsig/analysis.hpp"
#include "pathsig/series.hpp"
#include "pathsig/tensor.hpp"

using namespace pathsig;

namespace {

Rational rat(long num, long den = 1) { return Rational(num) / Rational(den); }

// independent quadratic-time product: concatenate every pair of words
TensorSeries<Rational> naive_product(const TensorSeries<Rational>& a,
                                     const TensorSeries<Rational>& b) {
    TensorSeries<Rational> out(a.dim(), a.level());
    for (int i = 0; i <= a.level(); ++i)
        for (const auto& [u, cu] : a.level_coeffs(i))
            for (int j = 0; i + j <= a.level(); ++j)
                for (const auto& [v, cv] : b.level_coeffs(j)) {
                    Word w = u;
                    w.insert(w.end(), v.begin(), v.end());
                    out.add_coeff(w, cu * cv);
                }
    return out;
}

TensorSeries<Rational> random_series(SeededRng& rng, int dim, int level, Rational c0) {
    TensorSeries<Rational> t(dim, level);
    t.set_coeff(Word{}, c0);
    for (int k = 1; k <= level; ++k)
        for (const auto& w : all_words(dim, k))
            if (rng.uniform_int(0, 2) == 0) t.set_coeff(w, random_rational(rng));
    return t;
}

}  // namespace

TEST_CASE("unit series is the multiplicative identity") {
    SeededRng rng(11);
    const auto t = random_series(rng, 2, 4, rat(3));
    const auto one = TensorSeries<Rational>::unit(2, 4);
    CHECK(t * one == t);
    CHECK(one * t == t);
}

TEST_CASE("graded product agrees with the quadratic-time oracle") {
    SeededRng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 1 + static_cast<int>(rng.uniform_int(1, 3));
        const int level = 1 + static_cast<int>(rng.uniform_int(1, 4));
        const auto a = random_series(rng, dim, level, random_rational(rng));
        const auto b = random_series(rng, dim, level, random_rational(rng));
        CHECK(a * b == naive_product(a, b));
    }
}

TEST_CASE("product truncates at the common level") {
    TensorSeries<Rational> a(2, 2), b(2, 2);
    a.set_coeff(Word{1, 2}, rat(1));
    b.set_coeff(Word{2}, rat(1));
    CHECK((a * b).is_zero());  // degree 3 exceeds the truncation
}

TEST_CASE("product requires matching dim and level") {
    TensorSeries<Rational> a(2, 3), b(3, 3), c(2, 2);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
}

TEST_CASE("coeff validates letters and length") {
    TensorSeries<Rational> t(2, 2);
    CHECK_THROWS_AS(t.set_coeff(Word{3}, rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(t.set_coeff(Word{0}, rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(t.set_coeff(Word{1, 1, 1}, rat(1)), std::invalid_argument);
    CHECK(t.coeff(Word{1, 2}) == 0);
}

TEST_CASE("exp and log are mutually inverse") {
    SeededRng rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        const int dim = 1 + static_cast<int>(rng.uniform_int(1, 2));
        auto x = random_series(rng, dim, 4, rat(0));
        CHECK(log(exp(x)) == x);
        auto g = random_series(rng, dim, 4, rat(1));
        CHECK(exp(log(g)) == g);
    }
}

TEST_CASE("exp of commuting elements multiplies") {
    auto e1 = tensor_from_vector(std::vector<Rational>{rat(1), rat(0)}, 5);
    CHECK(exp(e1) * exp(e1 * rat(2)) == exp(e1 * rat(3)));
}

TEST_CASE("exp of a single letter has factorial reciprocals") {
    const auto e = exp(tensor_from_vector(std::vector<Rational>{rat(1)}, 6));
    Rational fact(1);
    for (int k = 1; k <= 6; ++k) {
        fact *= Rational(k);
        CHECK(e.coeff(Word(static_cast<std::size_t>(k), 1)) == Rational(1) / fact);
    }
}

TEST_CASE("inverse multiplies to the unit") {
    SeededRng rng(14);
    for (int trial = 0; trial < 6; ++trial) {
        const auto g = random_series(rng, 2, 4, rat(1));
        const auto one = TensorSeries<Rational>::unit(2, 4);
        CHECK(g * inverse(g) == one);
        CHECK(inverse(g) * g == one);
    }
}

TEST_CASE("exp requires zero constant term, log and inverse a unit one") {
    TensorSeries<Rational> x(2, 3);
    x.set_coeff(Word{}, rat(1));
    CHECK_THROWS_AS(exp(x), std::invalid_argument);
    TensorSeries<Rational> y(2, 3);
    CHECK_THROWS_AS(log(y), std::invalid_argument);
    CHECK_THROWS_AS(inverse(y), std::invalid_argument);
    y.set_coeff(Word{}, rat(2));
    CHECK_THROWS_AS(log(y), std::invalid_argument);
}

TEST_CASE("linear operations act coefficientwise") {
    SeededRng rng(15);
    const auto a = random_series(rng, 2, 3, rat(2));
    const auto b = random_series(rng, 2, 3, rat(-1));
    auto s = a;
    s += b;
    CHECK(s.coeff(Word{1, 2}) == a.coeff(Word{1, 2}) + b.coeff(Word{1, 2}));
    s -= b;
    CHECK(s == a);
    CHECK((-a) * rat(-1) == a);
    CHECK(a * rat(0) == TensorSeries<Rational>(2, 3));
}

TEST_CASE("resized truncates or zero-extends") {
    SeededRng rng(16);
    const auto a = random_series(rng, 2, 4, rat(1));
    const auto cut = a.resized(2);
    CHECK(cut.level() == 2);
    for (int k = 0; k <= 2; ++k) CHECK(cut.level_coeffs(k) == a.level_coeffs(k));
    const auto grown = cut.resized(5);
    CHECK(grown.level() == 5);
    CHECK(grown.level_coeffs(5).empty());
}

TEST_CASE("float backend prunes relative noise") {
    TensorSeries<double> t(2, 2);
    t.set_coeff(Word{1}, 100.0);
    t.set_coeff(Word{2}, 1e-12);
    t.prune();
    CHECK(t.coeff(Word{2}) == 0.0);
    CHECK(t.coeff(Word{1}) == 100.0);
    // a genuinely small but isolated value survives against a unit scale
    TensorSeries<double> s(2, 2);
    s.set_coeff(Word{1}, 1e-6);
    s.prune();
    CHECK(s.coeff(Word{1}) == 1e-6);
}

TEST_CASE("float exp and log round trip within tolerance") {
    TensorSeries<double> x(2, 4);
    x.set_coeff(Word{1}, 0.5);
    x.set_coeff(Word{2}, -1.25);
    x.set_coeff(Word{1, 2}, 2.0);
    auto y = log(exp(x));
    y -= x;
    CHECK(y.max_abs() < 1e-12);
}
