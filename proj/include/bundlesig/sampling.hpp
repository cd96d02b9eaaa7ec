#pragma once

// Deterministic random generators for circle maps, wreath elements, surface
// group representations and twist words. Every sample is drawn from its own
// engine seeded by (run seed, sample index), so a record is reproducible
// without replaying the stream before it.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fuchsian.hpp"
#include "meyer.hpp"

namespace bundlesig {

using Rng = std::mt19937_64;

inline Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform in [0, bound); plain modulo keeps the stream identical across
/// standard libraries (the bias is below 2^-50 for the bounds used here).
inline std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

inline std::int64_t between(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline constexpr std::int64_t kMaxRotationDenominator = 64;
inline constexpr std::int64_t kMaxGridDenominator = 12;
inline constexpr int kMaxBreakpoints = 4;

inline CircleMap random_rotation(Rng& rng) {
    const auto q = between(rng, 1, kMaxRotationDenominator);
    return CircleMap::rotation(make_rational(between(rng, 0, q - 1), q));
}

namespace detail {

/// k distinct sorted points of (1/den)Z in (0, 1).
inline std::vector<Rational> grid_points(Rng& rng, std::int64_t den, std::size_t k) {
    std::vector<std::int64_t> cells(static_cast<std::size_t>(den - 1));
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<std::int64_t>(i) + 1;
    for (std::size_t i = 0; i < k; ++i) std::swap(cells[i], cells[i + below(rng, cells.size() - i)]);
    cells.resize(k);
    std::sort(cells.begin(), cells.end());
    std::vector<Rational> out;
    for (auto c : cells) out.push_back(make_rational(c, den));
    return out;
}

}  // namespace detail

/// Piecewise linear homeomorphism with at most four breakpoints on grids of
/// denominator <= 12, slopes in [1/3, 3], followed by a grid rotation.
/// Falls back to a rotation when no admissible grid pair is drawn.
inline CircleMap random_pl(Rng& rng) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        const auto k = static_cast<std::size_t>(between(rng, 1, kMaxBreakpoints - 1));
        const auto dx = between(rng, static_cast<std::int64_t>(k) + 1, kMaxGridDenominator);
        const auto dy = between(rng, static_cast<std::int64_t>(k) + 1, kMaxGridDenominator);
        std::vector<Rational> xs{0}, ys{0};
        for (auto& v : detail::grid_points(rng, dx, k)) xs.push_back(v);
        for (auto& v : detail::grid_points(rng, dy, k)) ys.push_back(v);
        xs.push_back(1);
        ys.push_back(1);
        const Rational shift = make_rational(between(rng, 0, kMaxGridDenominator - 1), kMaxGridDenominator);
        std::vector<Breakpoint> pts;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const Rational slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            if (slope < make_rational(1, 3) || slope > 3) {
                ok = false;
                break;
            }
            pts.push_back({xs[i], ys[i] + shift, slope});
        }
        if (ok) return CircleMap::piecewise_linear(std::move(pts));
    }
    return random_rotation(rng);
}

enum class MapClass { Identity, Rotation, PiecewiseLinear, Exact, Numeric };

inline MapClass parse_map_class(const std::string& s) {
    if (s == "identity") return MapClass::Identity;
    if (s == "rotation") return MapClass::Rotation;
    if (s == "pl") return MapClass::PiecewiseLinear;
    if (s == "exact") return MapClass::Exact;
    if (s == "numeric") return MapClass::Numeric;
    throw ConfigError("unknown exactness class '" + s + "'");
}

/// Random SL(2,R) element with entries built from a rotation, a diagonal
/// stretch of ratio at most 4 and another rotation.
inline CircleMap random_moebius(Rng& rng) {
    const double turns1 = double(below(rng, 1024)) / 1024;
    const double turns2 = double(below(rng, 1024)) / 1024;
    const double stretch = std::exp(double(below(rng, 1024)) / 1024 * std::log(2.0));
    const auto r1 = std::get<Moebius>(elliptic_moebius(turns1).variant());
    const auto r2 = std::get<Moebius>(elliptic_moebius(turns2).variant());
    const Moebius d{{stretch, 0, 0, 1 / stretch}};
    return CircleMap::moebius_unchecked(detail::multiply(detail::multiply(r1, d), r2));
}

inline CircleMap random_circle_map(Rng& rng, MapClass cls) {
    switch (cls) {
        case MapClass::Identity: return CircleMap::identity();
        case MapClass::Rotation: return random_rotation(rng);
        case MapClass::PiecewiseLinear: return random_pl(rng);
        case MapClass::Exact: return below(rng, 2) ? random_pl(rng) : random_rotation(rng);
        case MapClass::Numeric: return random_moebius(rng);
    }
    return CircleMap::identity();
}

inline Permutation random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[below(rng, i)]);
    return Permutation(std::move(img));
}

inline WreathElement random_wreath(Rng& rng, std::size_t n, MapClass cls) {
    WreathElement a{cls == MapClass::Identity ? Permutation(n) : random_permutation(rng, n), {}};
    for (std::size_t j = 0; j < n; ++j) a.maps.push_back(random_circle_map(rng, cls));
    return a;
}

template <class G>
G power(const G& x, std::int64_t p) {
    const G base = p < 0 ? GroupOps<G>::inverse(x) : x;
    G out = GroupOps<G>::identity_like(x);
    for (std::int64_t i = 0; i < (p < 0 ? -p : p); ++i) out = GroupOps<G>::multiply(out, base);
    return out;
}

inline Permutation power_permutation(const Permutation& p, std::int64_t k) {
    Permutation out(p.size());
    for (std::int64_t i = 0; i < k; ++i) out = then(out, p);
    return out;
}

/// Which blocks the representation sampler may use.
enum class RepClass { Rotation, Exact, Mixed, Fuchsian };

inline RepClass parse_rep_class(const std::string& s) {
    if (s == "rotation") return RepClass::Rotation;
    if (s == "exact") return RepClass::Exact;
    if (s == "mixed") return RepClass::Mixed;
    if (s == "fuchsian") return RepClass::Fuchsian;
    throw ConfigError("unknown representation class '" + s + "'");
}

struct SampledRepresentation {
    Representation<WreathElement> rep;
    std::string family;
    bool numeric = false;
};

namespace detail {

/// Orbits of the group generated by `gens` acting on {0..n-1}.
inline std::vector<int> orbit_labels(const std::vector<Permutation>& gens, std::size_t n) {
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const auto& p : gens)
                if (label[p(v)] < 0) {
                    label[p(v)] = next;
                    stack.push_back(p(v));
                }
        }
        ++next;
    }
    return label;
}

/// A homomorphism pi_1(S_h) -> Homeo+(S^1) for one orbit block.
inline std::vector<CircleMap> block_representation(Rng& rng, int h, bool numeric, RepClass cls,
                                                   std::string& kind) {
    const auto gens = static_cast<std::size_t>(2 * h);
    std::vector<CircleMap> out(gens, CircleMap::identity());
    if (cls == RepClass::Fuchsian) {
        kind = "fuchsian";
        return fuchsian_representation(h, false).images;
    }
    const auto choice = below(rng, 4);
    if (numeric) {
        if (h >= 2 && choice <= 1) {
            kind = choice == 0 ? "fuchsian" : "fuchsian-mirrored";
            return fuchsian_representation(h, choice == 1).images;
        }
        if (choice == 2) {
            kind = "elliptic";
            for (auto& m : out) m = elliptic_moebius(double(below(rng, 64)) / 64);
            return out;
        }
        kind = "trivial";
        return out;
    }
    if (cls == RepClass::Rotation || choice <= 1) {
        kind = "rotation";
        for (auto& m : out) m = random_rotation(rng);
        return out;
    }
    if (choice == 2) {
        kind = "pl-power";
        const CircleMap f = random_pl(rng);
        for (auto& m : out) m = power(f, between(rng, -2, 2));
        return out;
    }
    kind = "trivial";
    return out;
}

}  // namespace detail

/// Random representation pi_1(S_h) -> S_n wreath Homeo+(S^1)^n from one of
/// three families:
///   commuting   each handle is (x^p, x^q) for a random element x;
///   cancelling  consecutive handles (x, y), (y, x) cancel in the relator;
///   blocks      a_i = alpha_i, b_i = alpha_i^k in S_n, with one circle
///               representation per orbit applied diagonally on the orbit.
/// The Fuchsian class uses only the blocks family with identity permutations
/// and a Fuchsian block on every coordinate.
inline SampledRepresentation random_representation(Rng& rng, std::size_t n, int h, RepClass cls) {
    SampledRepresentation out;
    out.rep.genus = h;
    const bool numeric = cls == RepClass::Fuchsian || (cls == RepClass::Mixed && below(rng, 2) == 1);
    out.numeric = numeric;
    const MapClass element_class =
        cls == RepClass::Rotation ? MapClass::Rotation : (numeric ? MapClass::Numeric : MapClass::Exact);
    const auto family = cls == RepClass::Fuchsian ? 2 : below(rng, 3);

    if (family == 0 || family == 1) {
        out.family = family == 0 ? "commuting" : "cancelling";
        // Numeric elements here are elliptic so that relator residuals stay
        // at rounding level.
        auto element = [&]() {
            if (!numeric) return random_wreath(rng, n, element_class);
            WreathElement a{random_permutation(rng, n), {}};
            for (std::size_t j = 0; j < n; ++j) a.maps.push_back(elliptic_moebius(double(below(rng, 64)) / 64));
            return a;
        };
        int i = 0;
        while (i < h) {
            if (family == 1 && i + 1 < h) {
                const WreathElement x = element(), y = element();
                out.rep.images.insert(out.rep.images.end(), {x, y, y, x});
                i += 2;
            } else {
                const WreathElement x = element();
                out.rep.images.push_back(power(x, between(rng, -2, 2)));
                out.rep.images.push_back(power(x, between(rng, -2, 2)));
                i += 1;
            }
        }
        return out;
    }

    out.family = "blocks";
    std::vector<Permutation> perms;
    for (int i = 0; i < h; ++i) {
        const Permutation alpha = cls == RepClass::Fuchsian ? Permutation(n) : random_permutation(rng, n);
        perms.push_back(alpha);
        perms.push_back(power_permutation(alpha, between(rng, 0, 2)));
    }
    const auto label = detail::orbit_labels(perms, n);
    const int orbits = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<CircleMap>> blocks;
    for (int o = 0; o < orbits; ++o) {
        std::string kind;
        blocks.push_back(detail::block_representation(rng, h, numeric, cls, kind));
        out.family += (o ? "," : ":") + kind;
    }
    for (std::size_t gen = 0; gen < perms.size(); ++gen) {
        WreathElement a{perms[gen], {}};
        for (std::size_t j = 0; j < n; ++j) a.maps.push_back(blocks[static_cast<std::size_t>(label[j])][gen]);
        out.rep.images.push_back(std::move(a));
    }
    out.rep.geometric = cls == RepClass::Fuchsian;
    return out;
}

/// Random conjugator of the same exactness as the representation.
inline WreathElement random_conjugator(Rng& rng, std::size_t n, bool numeric, RepClass cls) {
    if (numeric) {
        WreathElement a{random_permutation(rng, n), {}};
        for (std::size_t j = 0; j < n; ++j) a.maps.push_back(elliptic_moebius(double(below(rng, 64)) / 64));
        return a;
    }
    return random_wreath(rng, n, cls == RepClass::Rotation ? MapClass::Rotation : MapClass::Exact);
}

inline constexpr int kMaxTwistWordLength = 12;
inline constexpr std::int64_t kMaxTwistEntry = 2;

inline std::vector<std::int64_t> random_nonzero_class(Rng& rng, int g) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(2 * g));
    for (;;) {
        bool nonzero = false;
        for (auto& v : c) {
            v = between(rng, -kMaxTwistEntry, kMaxTwistEntry);
            nonzero |= v != 0;
        }
        if (nonzero) return c;
    }
}

/// Word of length 1..12 with class entries in [-2, 2] and powers in [-2, 2].
inline TwistWord random_twist_word(Rng& rng, int g) {
    TwistWord w;
    w.g = g;
    const auto len = between(rng, 1, kMaxTwistWordLength);
    for (std::int64_t i = 0; i < len; ++i) w.letters.push_back({random_nonzero_class(rng, g), between(rng, -2, 2)});
    return w;
}

}  // namespace bundlesig
