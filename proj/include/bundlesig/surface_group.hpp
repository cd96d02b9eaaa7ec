#pragma once

// Closed surface groups <a1,b1,...,ah,bh | [a1,b1]...[ah,bh]> with
// [a,b] = a b a^-1 b^-1, words over the generators, and a fundamental 2-cycle
// in the (unnormalized) bar resolution.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bundlesig {

/// Generator index 2i is a_{i+1}, 2i+1 is b_{i+1}.
struct Letter {
    int generator = 0;
    bool inverted = false;
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline std::string generator_name(int generator) {
    return std::string(generator % 2 == 0 ? "a" : "b") + std::to_string(generator / 2 + 1);
}

inline std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& l : w) {
        if (!s.empty()) s += ' ';
        s += generator_name(l.generator);
        if (l.inverted) s += "^-1";
    }
    return s;
}

inline Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().generator == l.generator && out.back().inverted != l.inverted)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) l.inverted = !l.inverted;
    return out;
}

struct SurfaceGroupPresentation {
    int genus = 1;

    explicit SurfaceGroupPresentation(int h) : genus(h) {
        if (h < 1) throw ConfigError("surface genus must be at least 1");
    }

    int generator_count() const { return 2 * genus; }

    /// a1 b1 a1^-1 b1^-1 ... ah bh ah^-1 bh^-1, length 4h.
    Word relator() const {
        Word r;
        r.reserve(4 * static_cast<std::size_t>(genus));
        for (int i = 0; i < genus; ++i) {
            r.push_back({2 * i, false});
            r.push_back({2 * i + 1, false});
            r.push_back({2 * i, true});
            r.push_back({2 * i + 1, true});
        }
        return r;
    }
};

/// coefficient * [left | right] in the bar resolution.
struct BarSimplex {
    std::int64_t coefficient = 1;
    Word left;
    Word right;
};

struct FundamentalCycle {
    int genus = 1;
    std::vector<BarSimplex> simplices;

    std::int64_t coefficient_sum() const {
        std::int64_t s = 0;
        for (const auto& b : simplices) s += b.coefficient;
        return s;
    }
};

/// Fan cycle of the relator polygon. With x_1...x_m the relator letters and
/// w_k their prefix products:
///
///     sum_{k=1}^{m-1} [w_k | x_{k+1}]  -  sum_{x_k = g^-1} [g | g^-1]  -  (2h-1) [1 | 1].
///
/// The middle terms close up the inverse letters in the bar complex and the
/// degenerate term cancels the leftover multiple of [1]. Pairing a central
/// extension cocycle c(g,h) = s(gh)^-1 s(g) s(h) with this cycle returns the
/// product of the lifted relator where generator lifts are inverted in the
/// extension.
inline FundamentalCycle build_fundamental_cycle(int h) {
    const SurfaceGroupPresentation pres(h);
    const Word r = pres.relator();
    FundamentalCycle z;
    z.genus = h;
    Word prefix;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        prefix.push_back(r[k]);
        z.simplices.push_back({1, prefix, Word{r[k + 1]}});
    }
    for (const auto& l : r)
        if (l.inverted) z.simplices.push_back({-1, Word{{l.generator, false}}, Word{l}});
    z.simplices.push_back({-(2 * h - 1), Word{}, Word{}});
    return z;
}

/// Name of the group element represented by a word, for the words that occur
/// in the fan cycle: the free reduction, with the full relator sent to "1".
inline std::string group_key(const Word& w, int genus) {
    const Word r = free_reduce(w);
    if (r == SurfaceGroupPresentation(genus).relator()) return "1";
    return to_string(r);
}

/// The pairing of the cycle with the coboundary of a 1-cochain b,
/// (delta b)(g, h) = b(h) - b(gh) + b(g). Zero for every b exactly when the
/// cycle has no boundary.
inline std::int64_t pair_with_coboundary(const FundamentalCycle& z,
                                         const std::function<std::int64_t(const std::string&)>& b) {
    std::int64_t total = 0;
    for (const auto& s : z.simplices) {
        Word gh = s.left;
        gh.insert(gh.end(), s.right.begin(), s.right.end());
        const std::int64_t v = b(group_key(s.right, z.genus)) - b(group_key(gh, z.genus)) +
                               b(group_key(s.left, z.genus));
        total += s.coefficient * v;
    }
    return total;
}

}  // namespace bundlesig
