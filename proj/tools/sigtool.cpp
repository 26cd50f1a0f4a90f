// Command-line front end: signatures and log-signatures of piecewise-linear
// paths, BCH products, path reduction, a numeric integrator cross-check,
// vanishing searches, growth profiles, and Gaussian moment/cumulant
// transforms. JSON in, JSON (or pretty text) out; stdout carries results,
// stderr carries the resolved configuration and diagnostics.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathsig/pathsig.hpp"

using namespace pathsig;

namespace {

Json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open '" + file + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw std::runtime_error("invalid JSON in '" + file + "': " + e.what());
    }
    return j;
}

void announce(const std::string& config) { std::cerr << "# " << config << "\n"; }

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

template <typename S, typename P>
void emit_series_pretty(const GradedSeries<S, P>& t) {
    std::cout << "dim " << t.dim() << " level " << t.level() << "\n";
    for (int k = 0; k <= t.level(); ++k)
        for (const auto& [w, c] : t.level_coeffs(k))
            std::cout << (w.empty() ? std::string("()") : word_to_string(w)) << " = "
                      << ScalarOps<S>::format(c) << "\n";
}

template <typename S>
void emit_lie_pretty(const LieSeries<S>& x) {
    std::cout << "dim " << x.dim() << " level " << x.level() << "\n";
    for (const auto& [w, c] : x.coords())
        std::cout << bracketing_string(w) << " = " << ScalarOps<S>::format(c) << "\n";
}

template <typename S>
void emit_path_pretty(const PiecewisePath<S>& p) {
    std::cout << "dim " << p.dim << ", " << p.pieces.size() << " piece(s)\n";
    for (const auto& v : p.pieces) {
        std::cout << "(";
        for (std::size_t i = 0; i < v.size(); ++i)
            std::cout << (i ? ", " : "") << ScalarOps<S>::format(v[i]);
        std::cout << ")\n";
    }
}

struct CommonOpts {
    int level = 4;
    std::string format = "json";
    std::string backend = "rational";
};

template <typename S>
int run_sig(const std::string& path_file, const CommonOpts& opt) {
    const auto path = path_from_json<S>(read_json_file(path_file));
    const auto sig = signature(path, opt.level);
    if (opt.format == "json")
        emit(series_to_json(sig));
    else
        emit_series_pretty(sig);
    return 0;
}

template <typename S>
int run_logsig(const std::string& path_file, const std::string& basis, const CommonOpts& opt) {
    const auto path = path_from_json<S>(read_json_file(path_file));
    if (basis == "tensor") {
        const auto ls = log_signature_tensor(path, opt.level);
        if (opt.format == "json")
            emit(series_to_json(ls));
        else
            emit_series_pretty(ls);
    } else {
        const auto ls = log_signature(path, opt.level);
        if (opt.format == "json")
            emit(lie_to_json(ls));
        else
            emit_lie_pretty(ls);
    }
    return 0;
}

template <typename S>
int run_bch(const std::string& a_file, const std::string& b_file, const std::string& basis,
            const CommonOpts& opt) {
    const auto a = tensor_from_json<S>(read_json_file(a_file));
    const auto b = tensor_from_json<S>(read_json_file(b_file));
    const auto c = bch(a, b, opt.level);
    if (basis == "tensor") {
        if (opt.format == "json")
            emit(series_to_json(c));
        else
            emit_series_pretty(c);
    } else {
        const auto lie = tensor_to_lyndon(c);
        if (opt.format == "json")
            emit(lie_to_json(lie));
        else
            emit_lie_pretty(lie);
    }
    return 0;
}

template <typename S>
int run_reduce(const std::string& path_file, const CommonOpts& opt) {
    const auto path = path_from_json<S>(read_json_file(path_file));
    const auto red = reduce(path);
    if (opt.format == "json")
        emit(path_to_json(red));
    else
        emit_path_pretty(red);
    return 0;
}

int run_oracle(const std::string& path_file, int steps, const CommonOpts& opt) {
    const auto path = sampled_path_from_json(read_json_file(path_file));
    const auto sig = signature_numeric_oracle(path, opt.level, steps);
    if (opt.format == "json")
        emit(series_to_json(sig));
    else
        emit_series_pretty(sig);
    return 0;
}

int run_vanish_search(int n1, int pieces, int dim, int max_level, int trials, std::uint64_t seed,
                      const CommonOpts& opt) {
    const auto rep = vanish_search(n1, pieces, dim, max_level, trials, seed);
    if (opt.format == "json") {
        emit(report_to_json(rep));
    } else {
        std::cout << "checked levels " << rep.n1 << ".." << rep.K << "\n";
        std::cout << "zero levels:";
        for (int k : rep.zero_levels) std::cout << " " << k;
        std::cout << "\nnonzero levels:";
        for (int k : rep.nonzero_levels) std::cout << " " << k;
        std::cout << "\ninitial zero run: " << rep.initial_zero_run() << "\n";
        emit_path_pretty(rep.path);
        std::cout << "seed " << rep.seed << "\n";
    }
    return 0;
}

template <typename S>
int run_lp_profile(const std::string& path_file, const std::string& tensor_file, double p,
                   const CommonOpts& opt) {
    Json out;
    LpProfile prof;
    if (!path_file.empty()) {
        const auto path = path_from_json<S>(read_json_file(path_file));
        const auto sig = signature(path, opt.level);
        prof = lp_profile(sig, p, opt.level);
        out = Json{{"p", prof.p},
                   {"values", prof.values},
                   {"path_length", path_length(path)},
                   {"variation_l1", ScalarOps<S>::format(path_variation_l1(path))}};
    } else {
        const auto t = tensor_from_json<S>(read_json_file(tensor_file));
        prof = lp_profile(t, p, opt.level);
        out = Json{{"p", prof.p}, {"values", prof.values}};
    }
    if (opt.format == "json") {
        emit(out);
    } else {
        std::cout << "p = " << prof.p << "\n";
        for (std::size_t i = 0; i < prof.values.size(); ++i)
            std::cout << "k=" << (i + 1) << ": " << prof.values[i] << "\n";
        if (!path_file.empty())
            std::cout << "path length " << out["path_length"].get<double>() << ", l1 variation "
                      << out["variation_l1"].get<std::string>() << "\n";
    }
    return 0;
}

template <typename S>
int run_moments(const std::string& gaussian_file, const std::string& second_file,
                const std::string& kind, const CommonOpts& opt) {
    if (kind == "concat-cumulant") {
        if (second_file.empty())
            throw std::runtime_error("concat-cumulant needs --gaussian2");
        const auto g1 = gaussian_from_json<S>(read_json_file(gaussian_file));
        const auto g2 = gaussian_from_json<S>(read_json_file(second_file));
        for (const auto& g : {std::cref(g1), std::cref(g2)})
            for (const auto& c : g.get().mean)
                if (!(c == S(0)))
                    throw std::runtime_error("concat-cumulant takes centered Gaussians");
        const auto t = concat_brownian_cumulant(g1.cov, g2.cov, std::max(opt.level, 2));
        if (opt.format == "json")
            emit(series_to_json(t));
        else
            emit_series_pretty(t);
        return 0;
    }
    const auto g = gaussian_from_json<S>(read_json_file(gaussian_file));
    if (!is_positive_semidefinite(g.cov))
        std::cerr << "warning: covariance is not positive semidefinite\n";
    if (kind == "moments") {
        const auto m = isserlis_moments(g, opt.level);
        if (opt.format == "json")
            emit(series_to_json(m));
        else
            emit_series_pretty(m);
    } else if (kind == "cumulant") {
        const auto c = gaussian_cumulant(g, std::max(opt.level, 2));
        if (opt.format == "json")
            emit(series_to_json(c));
        else
            emit_series_pretty(c);
    } else {  // brownian-sig
        const auto t = brownian_expected_signature(g, opt.level);
        if (opt.format == "json")
            emit(series_to_json(t));
        else
            emit_series_pretty(t);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify: reproduces the library's reference identities end to end and
// prints PASS/FAIL per check.

Rational rat(long num, long den = 1) { return Rational(num) / Rational(den); }

std::vector<Rational> rvec(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

TensorSeries<Rational> letter(int i, int dim, int level) {
    TensorSeries<Rational> t(dim, level);
    t.set_coeff(Word{i}, Rational(1));
    return t;
}

int run_verify() {
    struct Check {
        std::string name;
        std::function<bool()> fn;
    };
    std::vector<Check> checks;
    const auto add = [&](std::string name, std::function<bool()> fn) {
        checks.push_back({std::move(name), std::move(fn)});
    };

    add("exponential of a single letter: 1 + e1 + e1e1/2", [] {
        const auto e = exp(letter(1, 2, 2));
        return e.coeff(Word{}) == 1 && e.coeff(Word{1}) == 1 && e.coeff(Word{1, 1}) == rat(1, 2) &&
               e.coeff(Word{2}) == 0;
    });
    add("level-2 part of log(exp(e1) exp(e2)) is the half commutator", [] {
        const auto l = log(exp(letter(1, 2, 2)) * exp(letter(2, 2, 2)));
        return l.coeff(Word{1, 2}) == rat(1, 2) && l.coeff(Word{2, 1}) == rat(-1, 2);
    });
    add("signatures satisfy the shuffle product rule (group-like)", [] {
        SeededRng rng(1001);
        for (int i = 0; i < 5; ++i)
            if (!is_grouplike(signature(random_reduced_path(rng, 2, 3), 4))) return false;
        return true;
    });
    add("bch(e1,e2) through level 3: 1/2 and 1/12 coefficients", [] {
        const auto c = bch(letter(1, 2, 3), letter(2, 2, 3));
        const auto lie = tensor_to_lyndon(c);
        return lie.coord(Word{1}) == 1 && lie.coord(Word{2}) == 1 &&
               lie.coord(Word{1, 2}) == rat(1, 2) && lie.coord(Word{1, 1, 2}) == rat(1, 12) &&
               lie.coord(Word{1, 2, 2}) == rat(1, 12);
    });
    add("bch of collinear arguments collapses to the sum", [] {
        const auto a = tensor_from_vector(rvec({2, -1}), 5);
        const auto c = bch(a, a * Rational(3));
        return c == a * Rational(4);
    });
    add("log-signature of [e1, e2] in Lyndon coordinates: {1:1, 2:1, 12:1/2}", [] {
        PiecewisePath<Rational> p{2, {{rat(1), rat(0)}, {rat(0), rat(1)}}};
        const auto ls = log_signature(p, 2);
        return ls.coord(Word{1}) == 1 && ls.coord(Word{2}) == 1 &&
               ls.coord(Word{1, 2}) == rat(1, 2) && ls.coords().size() == 3;
    });
    add("log-signature of a random 3-piece path is a Lie series", [] {
        SeededRng rng(1002);
        const auto p = random_reduced_path(rng, 2, 3);
        return is_lie_series(log_signature_tensor(p, 6));
    });
    add("signature of one piece is the exponential of its increment", [] {
        const auto v = rvec({3, -2});
        PiecewisePath<Rational> p{2, {v}};
        return signature(p, 5) == exp(tensor_from_vector(v, 5));
    });
    add("signature of the empty path is the unit series", [] {
        PiecewisePath<Rational> p{2, {}};
        return signature(p, 5) == TensorSeries<Rational>::unit(2, 5);
    });
    add("level-2 log-signature matrix is antisymmetric", [] {
        SeededRng rng(1003);
        const auto lt = log_signature_tensor(random_reduced_path(rng, 3, 4), 2);
        for (Letter i = 1; i <= 3; ++i)
            for (Letter j = 1; j <= 3; ++j)
                if (!(lt.coeff(Word{i, j}) == -lt.coeff(Word{j, i}))) return false;
        return true;
    });
    add("reduction preserves the signature and removes cancellations", [] {
        const auto v = rvec({1, 2});
        const auto w = rvec({-1, 1});
        PiecewisePath<Rational> p{2, {v, w, {-w[0], -w[1]}, v}};
        const auto red = reduce(p);
        return is_reduced(red) && red.pieces.size() == 1 && red.pieces[0] == rvec({2, 4}) &&
               signature(red, 4) == signature(p, 4);
    });
    add("(1,1),(1,-1),(5,1) is a reduced path", [] {
        PiecewisePath<Rational> p{2, {{rat(1), rat(1)}, {rat(1), rat(-1)}, {rat(5), rat(1)}}};
        return is_reduced(p);
    });
    add("closed-form level 2 of [e1, e2] is the half area tensor", [] {
        PiecewisePath<Rational> p{2, {{rat(1), rat(0)}, {rat(0), rat(1)}}};
        const auto l2 = level2_closed_form(p);
        return l2.coeff(Word{1, 2}) == rat(1, 2) && l2.coeff(Word{2, 1}) == rat(-1, 2);
    });
    add("(1,1),(1,-1),(a,1) has vanishing level-2 log-signature for every a", [] {
        for (long num : {-7L, -1L, 0L, 2L, 9L}) {
            PiecewisePath<Rational> p{
                2, {{rat(1), rat(1)}, {rat(1), rat(-1)}, {rat(num, 3), rat(1)}}};
            if (!level2_closed_form(p).is_zero()) return false;
            const auto lt = log_signature_tensor(p, 2);
            if (!lt.level_coeffs(2).empty()) return false;
        }
        return true;
    });
    add("v1 + 3 v2 + v3 = 0 kills the level-3 log-signature", [] {
        SeededRng rng(1004);
        for (int i = 0; i < 5; ++i) {
            const auto v1 = random_nonzero_vector(rng, 2);
            const auto v2 = random_nonzero_vector(rng, 2);
            std::vector<Rational> v3{-v1[0] - Rational(3) * v2[0], -v1[1] - Rational(3) * v2[1]};
            PiecewisePath<Rational> p{2, {v1, v2, v3}};
            if (!level3_closed_form(p).is_zero()) return false;
        }
        return true;
    });
    add("numeric integrator converges to exp of the chord on a line", [] {
        SampledPath sp{2, {{0.0, 0.0}, {0.5, 0.25}, {1.0, 0.5}}};
        const auto approx = signature_numeric_oracle(sp, 3, 4000);
        PiecewisePath<double> line{2, {{1.0, 0.5}}};
        const auto exact = signature(line, 3);
        for (int k = 0; k <= 3; ++k)
            for (const auto& [w, c] : exact.level_coeffs(k))
                if (std::fabs(c - approx.coeff(w)) > 1e-3) return false;
        return true;
    });
    add("exp of the area element [e1,e2] has zero level 1 and the commutator at level 2", [] {
        LieSeries<Rational> area(2, 2);
        area.set_coord(Word{1, 2}, Rational(1));
        const auto g = grouplike_exp(area, 4);
        return g.level_coeffs(1).empty() && g.coeff(Word{1, 2}) == 1 &&
               g.coeff(Word{2, 1}) == -1 && is_grouplike(g);
    });
    add("straight lines have log-signature zero above level 1", [] {
        PiecewisePath<Rational> p{2, {{rat(7, 2), rat(-4, 3)}}};
        const auto rep = vanishing_report(p, 2, 8);
        return rep.zero_levels.size() == 7 && !rep.first_nonzero;
    });
    add("two non-collinear pieces: levels 2 and 3 both nonzero", [] {
        PiecewisePath<Rational> p{2, {{rat(1), rat(1)}, {rat(1), rat(-1)}}};
        const auto rep = vanishing_report(p, 2, 3);
        return rep.nonzero_levels == std::vector<int>{2, 3};
    });
    add("search over 2-piece paths never finds level-2 vanishing", [] {
        const auto rep = vanish_search(2, 2, 2, 3, 100, 42);
        return rep.initial_zero_run() == 0;
    });
    add("search over 3-piece paths: level 2 vanishes, levels 2+3 never", [] {
        const auto rep = vanish_search(2, 3, 2, 3, 200, 42);
        return rep.initial_zero_run() == 1;
    });
    add("search with the closing relation finds level-3 vanishing", [] {
        const auto rep = vanish_search(3, 3, 2, 4, 100, 42);
        return rep.initial_zero_run() >= 1;
    });
    add("signature growth profile at p=1 is bounded by the l1 variation", [] {
        SeededRng rng(1005);
        for (int i = 0; i < 5; ++i) {
            const auto p = random_reduced_path(rng, 2, 3);
            const auto prof = lp_profile(signature(p, 8), 1.0, 8);
            const double bound = ScalarOps<Rational>::to_double(path_variation_l1(p)) + 1e-9;
            for (double v : prof.values)
                if (v > bound) return false;
        }
        return true;
    });
    add("standard Gaussian cumulant on R^2 is (e1e1 + e2e2)/2", [] {
        GaussianSpec<Rational> g{rvec({0, 0}), {rvec({1, 0}), rvec({0, 1})}};
        const auto c = gaussian_cumulant(g, 4);
        return c.coeff(Word{1, 1}) == rat(1, 2) && c.coeff(Word{2, 2}) == rat(1, 2) &&
               c.coeff(Word{1, 2}) == 0 && c.level_coeffs(1).empty();
    });
    add("scalar Gaussian cumulant is sigma^2/2 at {1,1}", [] {
        GaussianSpec<Rational> g{rvec({0}), {rvec({9})}};
        return gaussian_cumulant(g, 2).coeff(Word{1, 1}) == rat(9, 2);
    });
    add("moment transform equals exp of the cumulant", [] {
        SeededRng rng(1006);
        for (int i = 0; i < 5; ++i) {
            const int d = 1 + static_cast<int>(rng.uniform_int(1, 2));
            GaussianSpec<Rational> g;
            g.mean = random_vector(rng, d);
            g.cov.assign(d, std::vector<Rational>(d, Rational(0)));
            for (int r = 0; r < d; ++r)
                for (int c = r; c < d; ++c) g.cov[r][c] = g.cov[c][r] = random_rational(rng);
            if (isserlis_moments(g, 4) != sym_exp(gaussian_cumulant(g, 4))) return false;
        }
        return true;
    });
    add("expected Brownian signature at level 2 is 1 + (e1e1 + e2e2)/2", [] {
        GaussianSpec<Rational> g{rvec({0, 0}), {rvec({1, 0}), rvec({0, 1})}};
        const auto t = brownian_expected_signature(g, 2);
        return t.coeff(Word{}) == 1 && t.coeff(Word{1, 1}) == rat(1, 2) &&
               t.coeff(Word{2, 2}) == rat(1, 2) && t.level_coeffs(1).empty();
    });
    add("log of the expected Brownian signature is b + a/2", [] {
        GaussianSpec<Rational> g{rvec({1, -2}), {rvec({2, 1}), rvec({1, 3})}};
        return log(brownian_expected_signature(g, 4)) == gaussian_tensor_cumulant(g, 4);
    });
    add("concatenated Brownian cumulant of collinear covariances stops at level 2", [] {
        std::vector<std::vector<Rational>> a1{rvec({2, 1}), rvec({1, 4})};
        std::vector<std::vector<Rational>> a2{rvec({6, 3}), rvec({3, 12})};
        const auto t = concat_brownian_cumulant(a1, a2, 6);
        for (int k = 3; k <= 6; ++k)
            if (!t.level_coeffs(k).empty()) return false;
        return true;
    });
    add("concatenated Brownian cumulant has level-4 part [a1,a2]/8", [] {
        std::vector<std::vector<Rational>> a1{rvec({1, 0}), rvec({0, 2})};
        std::vector<std::vector<Rational>> a2{rvec({2, 1}), rvec({1, 1})};
        const auto t = concat_brownian_cumulant(a1, a2, 4);
        TensorSeries<Rational> t1(2, 4), t2(2, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                t1.set_coeff(Word{i + 1, j + 1}, a1[i][j]);
                t2.set_coeff(Word{i + 1, j + 1}, a2[i][j]);
            }
        const auto expected = bracket(t1, t2) * rat(1, 8);
        TensorSeries<Rational> level4(2, 4);
        for (const auto& [w, c] : t.level_coeffs(4)) level4.set_coeff(w, c);
        return !expected.is_zero() && level4 == expected;
    });

    int failed = 0;
    std::string first_failure;
    for (const auto& check : checks) {
        bool ok = false;
        try {
            ok = check.fn();
        } catch (const std::exception& e) {
            std::cerr << "error in '" << check.name << "': " << e.what() << "\n";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " " << check.name << "\n";
        if (!ok && first_failure.empty()) first_failure = check.name;
        failed += ok ? 0 : 1;
    }
    std::cout << (checks.size() - static_cast<std::size_t>(failed)) << "/" << checks.size()
              << " checks passed\n";
    if (failed) {
        std::cerr << "first failing check: " << first_failure << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact signatures of piecewise-linear paths"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string path_file, tensor_file, a_file, b_file, gaussian_file, gaussian2_file;
    std::string basis = "lyndon";
    std::string kind = "moments";
    int steps = 10000, n1 = 2, pieces = 2, dim = 2, max_level = 4, trials = 100;
    std::uint64_t seed = 42;
    double p_exponent = 1.0;

    const auto add_common = [&](CLI::App* cmd, bool with_backend = true) {
        cmd->add_option("--level", opt.level, "truncation level")->capture_default_str();
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "pretty"}))
            ->capture_default_str();
        if (with_backend)
            cmd->add_option("--backend", opt.backend, "coefficient arithmetic")
                ->check(CLI::IsMember({"rational", "float"}))
                ->capture_default_str();
    };

    auto* sig_cmd = app.add_subcommand("sig", "signature of a piecewise-linear path");
    sig_cmd->add_option("--path", path_file, "path JSON file")->required();
    add_common(sig_cmd);

    auto* logsig_cmd = app.add_subcommand("logsig", "log-signature of a piecewise-linear path");
    logsig_cmd->add_option("--path", path_file, "path JSON file")->required();
    logsig_cmd->add_option("--basis", basis, "output basis")
        ->check(CLI::IsMember({"lyndon", "tensor"}))
        ->capture_default_str();
    add_common(logsig_cmd);

    auto* bch_cmd = app.add_subcommand("bch", "log of the product of two exponentials");
    bch_cmd->add_option("--a", a_file, "first Lie element (tensor JSON)")->required();
    bch_cmd->add_option("--b", b_file, "second Lie element (tensor JSON)")->required();
    bch_cmd->add_option("--basis", basis, "output basis")
        ->check(CLI::IsMember({"lyndon", "tensor"}))
        ->capture_default_str();
    add_common(bch_cmd);

    auto* reduce_cmd = app.add_subcommand("reduce", "cancel and merge collinear pieces");
    reduce_cmd->add_option("--path", path_file, "path JSON file")->required();
    reduce_cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();
    reduce_cmd->add_option("--backend", opt.backend, "coefficient arithmetic")
        ->check(CLI::IsMember({"rational", "float"}))
        ->capture_default_str();

    auto* oracle_cmd =
        app.add_subcommand("oracle", "first-order numeric signature of a sampled path");
    oracle_cmd->add_option("--path", path_file, "sampled-path JSON file")->required();
    oracle_cmd->add_option("--steps", steps, "substeps per sample interval")
        ->capture_default_str();
    add_common(oracle_cmd, false);

    auto* vanish_cmd =
        app.add_subcommand("vanish-search", "search reduced paths for vanishing log-signature levels");
    vanish_cmd->add_option("--n1", n1, "first level of the checked range")->capture_default_str();
    vanish_cmd->add_option("--pieces", pieces, "number of pieces")->required();
    vanish_cmd->add_option("--dim", dim, "path dimension")->capture_default_str();
    vanish_cmd->add_option("--max-level", max_level, "last level of the checked range")
        ->capture_default_str();
    vanish_cmd->add_option("--trials", trials, "number of sampled paths")->capture_default_str();
    vanish_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    vanish_cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    auto* lp_cmd = app.add_subcommand("lp-profile", "normalized growth profile of a signature");
    lp_cmd->add_option("--path", path_file, "path JSON file (signature is computed)");
    lp_cmd->add_option("--tensor", tensor_file, "tensor JSON file");
    lp_cmd->add_option("--p", p_exponent, "profile exponent")->capture_default_str();
    add_common(lp_cmd);

    auto* moments_cmd =
        app.add_subcommand("moments", "Gaussian moment and cumulant transforms");
    moments_cmd->add_option("--gaussian", gaussian_file, "Gaussian JSON file")->required();
    moments_cmd->add_option("--gaussian2", gaussian2_file,
                            "second Gaussian JSON file (concat-cumulant)");
    moments_cmd->add_option("--kind", kind, "which transform")
        ->check(CLI::IsMember({"moments", "cumulant", "brownian-sig", "concat-cumulant"}))
        ->capture_default_str();
    add_common(moments_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run the reference identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const bool rational = opt.backend == "rational";
    std::ostringstream cfg;
    try {
        if (app.got_subcommand(sig_cmd)) {
            cfg << "sig --path " << path_file << " --level " << opt.level << " --backend "
                << opt.backend << " --format " << opt.format;
            announce(cfg.str());
            return rational ? run_sig<Rational>(path_file, opt) : run_sig<double>(path_file, opt);
        }
        if (app.got_subcommand(logsig_cmd)) {
            cfg << "logsig --path " << path_file << " --level " << opt.level << " --basis "
                << basis << " --backend " << opt.backend << " --format " << opt.format;
            announce(cfg.str());
            return rational ? run_logsig<Rational>(path_file, basis, opt)
                            : run_logsig<double>(path_file, basis, opt);
        }
        if (app.got_subcommand(bch_cmd)) {
            cfg << "bch --a " << a_file << " --b " << b_file << " --level " << opt.level
                << " --basis " << basis << " --backend " << opt.backend << " --format "
                << opt.format;
            announce(cfg.str());
            return rational ? run_bch<Rational>(a_file, b_file, basis, opt)
                            : run_bch<double>(a_file, b_file, basis, opt);
        }
        if (app.got_subcommand(reduce_cmd)) {
            cfg << "reduce --path " << path_file << " --backend " << opt.backend << " --format "
                << opt.format;
            announce(cfg.str());
            return rational ? run_reduce<Rational>(path_file, opt)
                            : run_reduce<double>(path_file, opt);
        }
        if (app.got_subcommand(oracle_cmd)) {
            cfg << "oracle --path " << path_file << " --level " << opt.level << " --steps "
                << steps << " --format " << opt.format;
            announce(cfg.str());
            return run_oracle(path_file, steps, opt);
        }
        if (app.got_subcommand(vanish_cmd)) {
            cfg << "vanish-search --n1 " << n1 << " --pieces " << pieces << " --dim " << dim
                << " --max-level " << max_level << " --trials " << trials << " --seed " << seed
                << " --format " << opt.format;
            announce(cfg.str());
            return run_vanish_search(n1, pieces, dim, max_level, trials, seed, opt);
        }
        if (app.got_subcommand(lp_cmd)) {
            if (path_file.empty() == tensor_file.empty())
                throw std::runtime_error("lp-profile needs exactly one of --path/--tensor");
            cfg << "lp-profile " << (path_file.empty() ? "--tensor " + tensor_file
                                                       : "--path " + path_file)
                << " --p " << p_exponent << " --level " << opt.level << " --backend "
                << opt.backend << " --format " << opt.format;
            announce(cfg.str());
            return rational ? run_lp_profile<Rational>(path_file, tensor_file, p_exponent, opt)
                            : run_lp_profile<double>(path_file, tensor_file, p_exponent, opt);
        }
        if (app.got_subcommand(moments_cmd)) {
            cfg << "moments --gaussian " << gaussian_file;
            if (!gaussian2_file.empty()) cfg << " --gaussian2 " << gaussian2_file;
            cfg << " --kind " << kind << " --level " << opt.level << " --backend " << opt.backend
                << " --format " << opt.format;
            announce(cfg.str());
            return rational
                       ? run_moments<Rational>(gaussian_file, gaussian2_file, kind, opt)
                       : run_moments<double>(gaussian_file, gaussian2_file, kind, opt);
        }
        if (app.got_subcommand(verify_cmd)) {
            announce("verify");
            return run_verify();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
