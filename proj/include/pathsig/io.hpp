#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathsig/analysis.hpp"
#include "pathsig/cumulants.hpp"
#include "pathsig/lie.hpp"
#include "pathsig/path.hpp"
#include "pathsig/tensor.hpp"

namespace pathsig {

// Insertion-ordered JSON keeps serialization byte-deterministic.
using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const char* what) {
    if (!j.is_object()) throw std::runtime_error(std::string(what) + ": expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string(what) + ": missing field '" + key + "'");
    return *it;
}

inline int require_int(const Json& j, const char* key, const char* what) {
    const Json& f = require_field(j, key, what);
    if (!f.is_number_integer())
        throw std::runtime_error(std::string(what) + ": field '" + key + "' must be an integer");
    return f.get<int>();
}

inline std::string require_scalar_string(const Json& j, const char* what) {
    if (!j.is_string())
        throw std::runtime_error(std::string(what) + ": coefficients must be strings");
    return j.get<std::string>();
}

}  // namespace detail

template <typename S, typename P>
Json series_to_json(const GradedSeries<S, P>& t) {
    Json coeffs = Json::object();
    for (int k = 0; k <= t.level(); ++k)
        for (const auto& [w, c] : t.level_coeffs(k)) coeffs[word_to_string(w)] = ScalarOps<S>::format(c);
    return Json{{"dim", t.dim()}, {"level", t.level()}, {"coeffs", std::move(coeffs)}};
}

template <typename S, typename P>
GradedSeries<S, P> series_from_json(const Json& j, const char* what = "series") {
    const int dim = detail::require_int(j, "dim", what);
    const int level = detail::require_int(j, "level", what);
    if (dim < 1) throw std::runtime_error(std::string(what) + ": dim must be >= 1");
    if (level < 0) throw std::runtime_error(std::string(what) + ": level must be >= 0");
    const Json& coeffs = detail::require_field(j, "coeffs", what);
    if (!coeffs.is_object())
        throw std::runtime_error(std::string(what) + ": 'coeffs' must be an object");
    GradedSeries<S, P> out(dim, level);
    for (const auto& [key, value] : coeffs.items()) {
        Word w;
        S c{};
        try {
            w = parse_word(key, dim);
            c = ScalarOps<S>::parse(detail::require_scalar_string(value, what));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string(what) + ": " + e.what());
        }
        if (static_cast<int>(w.size()) > level)
            throw std::runtime_error(std::string(what) + ": word '" + key +
                                     "' exceeds level " + std::to_string(level));
        out.add_coeff(w, c);
    }
    out.prune();
    return out;
}

template <typename S>
Json tensor_to_json(const TensorSeries<S>& t) {
    return series_to_json(t);
}

template <typename S>
TensorSeries<S> tensor_from_json(const Json& j) {
    return series_from_json<S, ConcatProduct>(j, "tensor");
}

template <typename S>
Json sym_to_json(const SymSeries<S>& t) {
    return series_to_json(t);
}

template <typename S>
SymSeries<S> sym_from_json(const Json& j) {
    return series_from_json<S, SymmetricProduct>(j, "symmetric series");
}

template <typename S>
Json lie_to_json(const LieSeries<S>& x) {
    Json coeffs = Json::object();
    for (const auto& [w, c] : x.coords()) coeffs[word_to_string(w)] = ScalarOps<S>::format(c);
    return Json{{"dim", x.dim()}, {"level", x.level()}, {"coeffs", std::move(coeffs)}};
}

template <typename S>
LieSeries<S> lie_from_json(const Json& j) {
    const char* what = "Lie series";
    const int dim = detail::require_int(j, "dim", what);
    const int level = detail::require_int(j, "level", what);
    if (dim < 1) throw std::runtime_error(std::string(what) + ": dim must be >= 1");
    if (level < 0) throw std::runtime_error(std::string(what) + ": level must be >= 0");
    const Json& coeffs = detail::require_field(j, "coeffs", what);
    if (!coeffs.is_object())
        throw std::runtime_error(std::string(what) + ": 'coeffs' must be an object");
    LieSeries<S> out(dim, level);
    for (const auto& [key, value] : coeffs.items()) {
        try {
            const Word w = parse_word(key, dim);
            const S c = ScalarOps<S>::parse(detail::require_scalar_string(value, what));
            out.set_coord(w, c);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(what) + ": " + e.what());
        }
    }
    return out;
}

template <typename S>
Json path_to_json(const PiecewisePath<S>& p) {
    Json pieces = Json::array();
    for (const auto& v : p.pieces) {
        Json piece = Json::array();
        for (const auto& c : v) piece.push_back(ScalarOps<S>::format(c));
        pieces.push_back(std::move(piece));
    }
    return Json{{"dim", p.dim}, {"pieces", std::move(pieces)}};
}

template <typename S>
PiecewisePath<S> path_from_json(const Json& j) {
    const char* what = "path";
    const int dim = detail::require_int(j, "dim", what);
    const Json& pieces = detail::require_field(j, "pieces", what);
    if (!pieces.is_array()) throw std::runtime_error("path: 'pieces' must be an array");
    PiecewisePath<S> out{dim, {}};
    for (const Json& piece : pieces) {
        if (!piece.is_array() || static_cast<int>(piece.size()) != dim)
            throw std::runtime_error("path: each piece must be an array of dim entries");
        std::vector<S> v;
        v.reserve(piece.size());
        for (const Json& entry : piece) {
            try {
                v.push_back(ScalarOps<S>::parse(detail::require_scalar_string(entry, what)));
            } catch (const std::runtime_error& e) {
                throw std::runtime_error(std::string("path: ") + e.what());
            }
        }
        out.pieces.push_back(std::move(v));
    }
    out.validate();
    return out;
}

inline Json sampled_path_to_json(const SampledPath& p) {
    Json samples = Json::array();
    for (const auto& pt : p.samples) {
        Json row = Json::array();
        for (const double c : pt) row.push_back(c);
        samples.push_back(std::move(row));
    }
    return Json{{"dim", p.dim}, {"samples", std::move(samples)}};
}

inline SampledPath sampled_path_from_json(const Json& j) {
    const char* what = "sampled path";
    const int dim = detail::require_int(j, "dim", what);
    const Json& samples = detail::require_field(j, "samples", what);
    if (!samples.is_array()) throw std::runtime_error("sampled path: 'samples' must be an array");
    SampledPath out{dim, {}};
    for (const Json& pt : samples) {
        if (!pt.is_array() || static_cast<int>(pt.size()) != dim)
            throw std::runtime_error("sampled path: each sample must be an array of dim numbers");
        std::vector<double> row;
        row.reserve(pt.size());
        for (const Json& c : pt) {
            if (!c.is_number())
                throw std::runtime_error("sampled path: sample entries must be numbers");
            row.push_back(c.get<double>());
        }
        out.samples.push_back(std::move(row));
    }
    try {
        out.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("sampled path: ") + e.what());
    }
    return out;
}

template <typename S>
Json gaussian_to_json(const GaussianSpec<S>& g) {
    Json mean = Json::array();
    for (const auto& c : g.mean) mean.push_back(ScalarOps<S>::format(c));
    Json cov = Json::array();
    for (const auto& row : g.cov) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(ScalarOps<S>::format(c));
        cov.push_back(std::move(r));
    }
    return Json{{"mean", std::move(mean)}, {"cov", std::move(cov)}};
}

template <typename S>
GaussianSpec<S> gaussian_from_json(const Json& j) {
    const char* what = "Gaussian";
    const Json& mean = detail::require_field(j, "mean", what);
    const Json& cov = detail::require_field(j, "cov", what);
    if (!mean.is_array() || !cov.is_array())
        throw std::runtime_error("Gaussian: 'mean' and 'cov' must be arrays");
    GaussianSpec<S> g;
    for (const Json& c : mean) {
        try {
            g.mean.push_back(ScalarOps<S>::parse(detail::require_scalar_string(c, what)));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string("Gaussian: ") + e.what());
        }
    }
    for (const Json& row : cov) {
        if (!row.is_array())
            throw std::runtime_error("Gaussian: 'cov' must be an array of arrays");
        std::vector<S> r;
        for (const Json& c : row) {
            try {
                r.push_back(ScalarOps<S>::parse(detail::require_scalar_string(c, what)));
            } catch (const std::runtime_error& e) {
                throw std::runtime_error(std::string("Gaussian: ") + e.what());
            }
        }
        g.cov.push_back(std::move(r));
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("Gaussian: ") + e.what());
    }
    return g;
}

template <typename S>
Json report_to_json(const VanishingReport<S>& rep) {
    return Json{{"n1", rep.n1},
                {"K", rep.K},
                {"zero_levels", rep.zero_levels},
                {"nonzero_levels", rep.nonzero_levels},
                {"path", path_to_json(rep.path)},
                {"seed", rep.seed}};
}

}  // namespace pathsig
