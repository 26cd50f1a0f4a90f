#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathsig {

/// Letters are 1-based indices into {1, ..., d}.
using Letter = int;

/// A word is a finite sequence of letters; the empty word has level 0.
using Word = std::vector<Letter>;

/// Orders words by length first, then lexicographically. Used wherever words
/// of different levels share one container (Lyndon coefficient maps, JSON output).
struct GradedLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(w[i]);
    }
    return out;
}

inline Word parse_word(const std::string& text, int dim) {
    Word w;
    if (text.empty()) return w;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        int letter = 0;
        try {
            letter = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("invalid word key: '" + text + "'");
        }
        if (used != part.size()) throw std::runtime_error("invalid word key: '" + text + "'");
        if (letter < 1 || letter > dim)
            throw std::runtime_error("letter " + std::to_string(letter) + " out of range [1," +
                                     std::to_string(dim) + "] in word '" + text + "'");
        w.push_back(letter);
    }
    if (text.back() == ',') throw std::runtime_error("invalid word key: '" + text + "'");
    return w;
}

namespace detail {

inline void shuffle_rec(const Word& u, const Word& v, std::size_t i, std::size_t j, Word& current,
                        std::map<Word, std::int64_t>& out) {
    if (i == u.size() && j == v.size()) {
        ++out[current];
        return;
    }
    if (i < u.size()) {
        current.push_back(u[i]);
        shuffle_rec(u, v, i + 1, j, current, out);
        current.pop_back();
    }
    if (j < v.size()) {
        current.push_back(v[j]);
        shuffle_rec(u, v, i, j + 1, current, out);
        current.pop_back();
    }
}

}  // namespace detail

/// Shuffle product of two words: every interleaving that preserves the
/// internal order of each factor, counted with multiplicity. The total count
/// (with multiplicity) is binomial(|u|+|v|, |u|).
inline std::map<Word, std::int64_t> shuffle(const Word& u, const Word& v) {
    std::map<Word, std::int64_t> out;
    Word current;
    current.reserve(u.size() + v.size());
    detail::shuffle_rec(u, v, 0, 0, current, out);
    return out;
}

/// All words of exactly length k over {1..d}, in lexicographic order.
inline std::vector<Word> all_words(int dim, int k) {
    std::vector<Word> out{Word{}};
    for (int step = 0; step < k; ++step) {
        std::vector<Word> next;
        next.reserve(out.size() * static_cast<std::size_t>(dim));
        for (const Word& w : out) {
            for (Letter l = 1; l <= dim; ++l) {
                Word e = w;
                e.push_back(l);
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace pathsig
