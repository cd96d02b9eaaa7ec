#pragma once

// JSON encoding of circle maps, wreath elements, cocycle values, twist words
// and surface group representations. Rationals travel as "p/q" strings, reals
// as decimal strings (plain JSON numbers are accepted on input).

#include <cstdio>
#include <string>
#include <variant>

#include <json.hpp>

#include "euler.hpp"
#include "meyer.hpp"

namespace bundlesig {

using Json = nlohmann::json;

namespace detail {

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw ParseError("expected a rational as \"p/q\" or an integer");
}

inline double real_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ParseError("bad real '" + s + "'");
        }
        if (used != s.size()) throw ParseError("bad real '" + s + "'");
        return v;
    }
    throw ParseError("expected a real number");
}

inline std::string real_to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace detail

inline Json to_json(const CircleMap& f) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rotation>) {
                return {{"kind", "rotation"}, {"theta", format_rational(v.theta)}};
            } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
                Json pts = Json::array();
                for (const auto& b : v.breakpoints())
                    pts.push_back({format_rational(b.x), format_rational(b.y), format_rational(b.slope)});
                return {{"kind", "pl"}, {"breakpoints", pts}};
            } else {
                const auto& m = v.m;
                // Explicit arrays: a braced pair of strings would become an object.
                const Json matrix = Json::array(
                    {Json::array({detail::real_to_string(m[0]), detail::real_to_string(m[1])}),
                     Json::array({detail::real_to_string(m[2]), detail::real_to_string(m[3])})});
                return {{"kind", "moebius"}, {"matrix", matrix}};
            }
        },
        f.variant());
}

inline CircleMap circle_map_from_json(const Json& j) {
    const auto kind = detail::field(j, "kind").get<std::string>();
    if (kind == "rotation") return CircleMap::rotation(detail::rational_from_json(detail::field(j, "theta")));
    if (kind == "pl") {
        std::vector<Breakpoint> pts;
        for (const auto& p : detail::field(j, "breakpoints")) {
            if (!p.is_array() || p.size() != 3) throw ParseError("breakpoint must be [x, y, slope]");
            pts.push_back({detail::rational_from_json(p[0]), detail::rational_from_json(p[1]),
                           detail::rational_from_json(p[2])});
        }
        return CircleMap::piecewise_linear(std::move(pts));
    }
    if (kind == "moebius") {
        const auto& m = detail::field(j, "matrix");
        if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
            throw ParseError("moebius matrix must be 2x2");
        return CircleMap::moebius(detail::real_from_json(m[0][0]), detail::real_from_json(m[0][1]),
                                  detail::real_from_json(m[1][0]), detail::real_from_json(m[1][1]));
    }
    throw ParseError("unknown circle map kind '" + kind + "'");
}

inline Json to_json(const WreathElement& a) {
    Json maps = Json::array();
    for (const auto& m : a.maps) maps.push_back(to_json(m));
    return {{"n", a.n()}, {"sigma", a.sigma.images()}, {"maps", maps}};
}

inline WreathElement wreath_from_json(const Json& j) {
    const auto n = detail::field(j, "n").get<std::size_t>();
    const auto sigma = detail::field(j, "sigma").get<std::vector<std::size_t>>();
    const auto& maps = detail::field(j, "maps");
    if (sigma.size() != n || maps.size() != n) throw ParseError("wreath element size mismatch");
    WreathElement a{Permutation(sigma), {}};
    for (const auto& m : maps) a.maps.push_back(circle_map_from_json(m));
    return a;
}

inline Json to_json(const CocycleValue& c) {
    return {{"raw", c.raw}, {"shifted", c.shifted}, {"n", c.n}, {"basepoint", format_rational(c.basepoint)}};
}

inline Json to_json(const TwistWord& w) {
    Json letters = Json::array();
    for (const auto& l : w.letters) letters.push_back({{"c", l.c}, {"k", l.k}});
    return {{"g", w.g}, {"letters", letters}};
}

inline TwistWord twist_word_from_json(const Json& j) {
    TwistWord w;
    w.g = detail::field(j, "g").get<int>();
    if (w.g < 1) throw ParseError("twist word genus must be positive");
    for (const auto& l : detail::field(j, "letters")) {
        TwistLetter t{detail::field(l, "c").get<std::vector<std::int64_t>>(), detail::field(l, "k").get<std::int64_t>()};
        if (static_cast<int>(t.c.size()) != 2 * w.g) throw ParseError("twist class has wrong length");
        w.letters.push_back(std::move(t));
    }
    return w;
}

inline Json to_json(const SpMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(format_rational(m(i, j)));
        rows.push_back(row);
    }
    return {{"matrix", rows}};
}

/// Either a twist word or {"matrix": [[...], ...]}; matrices must be symplectic.
inline SpMatrix sp_from_json(const Json& j) {
    if (j.is_object() && j.contains("letters")) return twist_word_from_json(j).matrix();
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : detail::field(j, "matrix")) {
        std::vector<Rational> row;
        for (const auto& v : r) row.push_back(detail::rational_from_json(v));
        rows.push_back(std::move(row));
    }
    SpMatrix m = SpMatrix::from_rows(rows);
    if (!is_symplectic(m)) throw ParseError("matrix is not symplectic");
    return m;
}

using AnyRepresentation =
    std::variant<Representation<WreathElement>, Representation<CircleMap>, Representation<SpMatrix>>;

namespace detail {

template <class G, class Parse>
Representation<G> representation_from_json(const Json& j, int genus, Parse parse) {
    Representation<G> rep;
    rep.genus = genus;
    rep.geometric = j.value("geometric", false);
    const auto& images = field(j, "images");
    for (int gen = 0; gen < 2 * genus; ++gen) {
        const auto name = generator_name(gen);
        if (!images.contains(name)) throw ParseError("missing image of " + name);
        rep.images.push_back(parse(images.at(name)));
    }
    return rep;
}

}  // namespace detail

inline AnyRepresentation representation_from_json(const Json& j) {
    const int genus = detail::field(j, "genus").get<int>();
    if (genus < 1) throw ParseError("genus must be at least 1");
    const auto target = detail::field(j, "target").get<std::string>();
    if (target == "wreath") return detail::representation_from_json<WreathElement>(j, genus, wreath_from_json);
    if (target == "circle") return detail::representation_from_json<CircleMap>(j, genus, circle_map_from_json);
    if (target == "sp") return detail::representation_from_json<SpMatrix>(j, genus, sp_from_json);
    throw ParseError("unknown target '" + target + "'");
}

template <class G>
Json to_json(const Representation<G>& rep) {
    Json images = Json::object();
    for (int gen = 0; gen < 2 * rep.genus; ++gen) images[generator_name(gen)] = to_json(rep.image(gen));
    return {{"genus", rep.genus}, {"target", GroupOps<G>::name}, {"geometric", rep.geometric}, {"images", images}};
}

inline Json to_json(const EulerNumberResult& r) {
    Json j = {{"e", r.e},
              {"method", r.method},
              {"target", r.target},
              {"n", r.n},
              {"h", r.h},
              {"bound", r.bound},
              {"basepoint", format_rational(r.basepoint)},
              {"chi_total_space", r.chi_total_space}};
    j["signature_interpretation"] =
        r.signature_interpretation ? Json(*r.signature_interpretation) : Json(nullptr);
    return j;
}

inline Json to_json(const SignatureReport& r) {
    return {{"g", r.g},       {"h", r.h},       {"sigma", r.sigma}, {"chiE", r.chi_e},
            {"v3", r.verdict_3}, {"v2", r.verdict_2}, {"mod4", r.mod4},
            {"cert", to_string(r.certification)}};
}

}  // namespace bundlesig
