#pragma once

// Orientation preserving circle homeomorphisms on R/Z in three closed
// representation classes: exact piecewise linear maps, exact rotations and
// numeric Moebius maps (boundary action of SL(2,R) on RP^1).
//
// Every CircleMap carries a fixed "base lift" F : R -> R with F(x+1) = F(x)+1.
// For the exact classes F(0) lies in [0,1); for Moebius maps F is the
// displacement lift described at moebius_lift(). A LiftedMap is a base plus an
// integer deck translation.
//
// Composition is written left to right: compose(f, g) applies f first.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace bundlesig {

/// Tolerance for recognizing a numeric map as the identity and for the
/// half-open canonical lift condition.
inline constexpr double kLiftTolerance = 1e-9;
/// Tolerance on integer rounding of numeric lift offsets.
inline constexpr double kOffsetTolerance = 1e-6;
inline constexpr double kDeterminantTolerance = 1e-12;

struct Breakpoint {
    Rational x;      // in [0,1)
    Rational y;      // value of the lift at x
    Rational slope;  // slope on [x, next x)
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct Rotation {
    Rational theta;  // in [0,1)
    friend bool operator==(const Rotation&, const Rotation&) = default;
};

class PiecewiseLinear {
public:
    /// Validates continuity, monotonicity and degree one, then normalizes so
    /// that the first breakpoint sits at 0, F(0) is in [0,1) and no two
    /// adjacent segments share a slope.
    static PiecewiseLinear from_breakpoints(std::vector<Breakpoint> pts) {
        if (pts.empty()) throw InvalidCircleMap("no breakpoints");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const auto& p = pts[k];
            if (p.x < 0 || p.x >= 1) throw InvalidCircleMap("breakpoint x outside [0,1)");
            if (p.slope <= 0) throw InvalidCircleMap("non-positive slope");
            if (k > 0 && !(pts[k - 1].x < p.x))
                throw InvalidCircleMap("breakpoints not strictly increasing");
        }
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const auto& p = pts[k];
            if (p.y + p.slope * (pts[k + 1].x - p.x) != pts[k + 1].y)
                throw InvalidCircleMap("discontinuous at x = " + format_rational(pts[k + 1].x));
        }
        const auto& last = pts.back();
        if (last.y + last.slope * (pts.front().x + 1 - last.x) != pts.front().y + 1)
            throw InvalidCircleMap("total rise over one period is not 1");
        return normalized(std::move(pts));
    }

    const std::vector<Breakpoint>& breakpoints() const { return pts_; }

    Rational lift(const Rational& x) const {
        const BigInt k = floor_of(x);
        const Rational t = x - Rational(k);
        const auto& p = pts_[segment_of(t)];
        return p.y + p.slope * (t - p.x) + Rational(k);
    }

    double lift(double x) const {
        const double k = std::floor(x);
        const double t = x - k;
        std::size_t j = 0;
        for (std::size_t i = 1; i < xs_.size(); ++i)
            if (xs_[i] <= t) j = i;
        return ys_[j] + slopes_[j] * (t - xs_[j]) + k;
    }

    /// Slope of the lift on [x, x + epsilon).
    Rational right_slope(const Rational& x) const { return pts_[segment_of(frac(x))].slope; }

    bool is_rigid() const { return pts_.size() == 1; }

    friend bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b) {
        return a.pts_ == b.pts_;
    }

    /// Builds the normalized form from consistent lift data whose x values
    /// lie in [0,1) in any order.
    static PiecewiseLinear normalized(std::vector<Breakpoint> pts) {
        std::sort(pts.begin(), pts.end(),
                  [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
        if (pts.front().x != 0) {
            const auto& last = pts.back();
            Rational y0 = last.y + last.slope * (1 - last.x) - 1;
            pts.insert(pts.begin(), Breakpoint{Rational(0), y0, last.slope});
        }
        const Rational shift(floor_of(pts.front().y));
        std::vector<Breakpoint> merged;
        merged.reserve(pts.size());
        for (auto& p : pts) {
            p.y -= shift;
            if (!merged.empty() && merged.back().slope == p.slope) continue;
            merged.push_back(std::move(p));
        }
        PiecewiseLinear out;
        out.pts_ = std::move(merged);
        out.cache_doubles();
        return out;
    }

private:
    std::size_t segment_of(const Rational& t) const {
        auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                                   [](const Rational& v, const Breakpoint& p) { return v < p.x; });
        return static_cast<std::size_t>(std::distance(pts_.begin(), it)) - 1;
    }

    void cache_doubles() {
        xs_.clear();
        ys_.clear();
        slopes_.clear();
        for (const auto& p : pts_) {
            xs_.push_back(to_double(p.x));
            ys_.push_back(to_double(p.y));
            slopes_.push_back(to_double(p.slope));
        }
    }

    std::vector<Breakpoint> pts_;
    std::vector<double> xs_, ys_, slopes_;
};

/// Element of SL(2,R) acting on RP^1 = R/Z.
///
/// Chart: the circle point u in [0,1) is the projective point [t : 1] with
/// t = tan(pi (u - 1/2)), i.e. u = arctan(t)/pi + 1/2, and u = 0 is the point
/// at infinity. Equivalently u corresponds to the line through the vector
/// w(u) = (-cos(pi u), sin(pi u)). The matrix is stored with trace >= 0, which
/// does not change the projective action.
struct Moebius {
    std::array<double, 4> m{1, 0, 0, 1};  // a b c d

    double det() const { return m[0] * m[3] - m[1] * m[2]; }
    friend bool operator==(const Moebius&, const Moebius&) = default;
};

inline Moebius make_moebius(double a, double b, double c, double d) {
    Moebius out{{a, b, c, d}};
    if (a + d < 0) out.m = {-a, -b, -c, -d};
    return out;
}

/// Displacement lift: F(u) = u - D(u)/pi where D(u) in (-pi, pi) is the angle
/// from w(u) to M w(u). With trace >= 0 the vector M w(u) is never a negative
/// multiple of w(u), so D is continuous and F is a lift with |F(u) - u| < 1.
inline double moebius_lift(const Moebius& g, double u) {
    const double s = std::sin(std::numbers::pi * u);
    const double c = std::cos(std::numbers::pi * u);
    const double wx = -c, wy = s;
    const double vx = g.m[0] * wx + g.m[1] * wy;
    const double vy = g.m[2] * wx + g.m[3] * wy;
    const double d = std::atan2(wx * vy - wy * vx, wx * vx + wy * vy);
    return u - d / std::numbers::pi;
}

class CircleMap {
public:
    enum class Kind { PiecewiseLinear, Rotation, Moebius };
    using Variant = std::variant<PiecewiseLinear, Rotation, Moebius>;

    CircleMap() : v_(Rotation{Rational(0)}) {}

    static CircleMap identity() { return CircleMap(); }

    static CircleMap rotation(const Rational& theta) {
        return CircleMap(Rotation{frac(theta)});
    }

    static CircleMap piecewise_linear(std::vector<Breakpoint> pts) {
        return simplify(PiecewiseLinear::from_breakpoints(std::move(pts)));
    }

    /// Throws InvalidCircleMap unless |det - 1| <= 1e-12.
    static CircleMap moebius(double a, double b, double c, double d) {
        Moebius g{{a, b, c, d}};
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d) ||
            std::abs(g.det() - 1) > kDeterminantTolerance)
            throw InvalidCircleMap("Moebius matrix must have determinant 1");
        return CircleMap(make_moebius(a, b, c, d));
    }

    /// Unchecked; used for products of already valid matrices.
    static CircleMap moebius_unchecked(const Moebius& g) {
        return CircleMap(make_moebius(g.m[0], g.m[1], g.m[2], g.m[3]));
    }

    static CircleMap simplify(PiecewiseLinear pl) {
        if (pl.is_rigid()) return CircleMap(Rotation{pl.breakpoints().front().y});
        return CircleMap(std::move(pl));
    }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_exact() const { return kind() != Kind::Moebius; }
    const Variant& variant() const { return v_; }

    bool is_identity() const {
        if (auto r = std::get_if<Rotation>(&v_)) return r->theta == 0;
        return false;
    }

    /// Identity up to kLiftTolerance for numeric maps.
    bool is_numeric_identity(double tol = kLiftTolerance) const {
        if (auto g = std::get_if<Moebius>(&v_))
            return std::abs(g->m[0] - 1) <= tol && std::abs(g->m[1]) <= tol &&
                   std::abs(g->m[2]) <= tol && std::abs(g->m[3] - 1) <= tol;
        return is_identity();
    }

    /// Base lift at an exact point. Exact classes only.
    Rational lift(const Rational& x) const {
        switch (kind()) {
            case Kind::Rotation: return x + std::get<Rotation>(v_).theta;
            case Kind::PiecewiseLinear: return std::get<PiecewiseLinear>(v_).lift(x);
            case Kind::Moebius: break;
        }
        throw MixedExactnessError("exact evaluation of a numeric Moebius map");
    }

    double lift(double x) const {
        switch (kind()) {
            case Kind::Rotation: return x + to_double(std::get<Rotation>(v_).theta);
            case Kind::PiecewiseLinear: return std::get<PiecewiseLinear>(v_).lift(x);
            case Kind::Moebius: return moebius_lift(std::get<Moebius>(v_), x);
        }
        return x;
    }

    /// Action on the circle, result in [0,1).
    Rational apply(const Rational& x) const { return frac(lift(x)); }
    double apply(double x) const {
        double y = lift(x);
        y -= std::floor(y);
        return y >= 1.0 ? 0.0 : y;
    }

    friend bool operator==(const CircleMap& a, const CircleMap& b) { return a.v_ == b.v_; }

private:
    explicit CircleMap(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

inline const char* kind_name(CircleMap::Kind k) {
    switch (k) {
        case CircleMap::Kind::PiecewiseLinear: return "pl";
        case CircleMap::Kind::Rotation: return "rotation";
        case CircleMap::Kind::Moebius: return "moebius";
    }
    return "?";
}

/// Whether f and g may appear in one composition chain. The identity is
/// compatible with every class.
inline bool compatible(const CircleMap& f, const CircleMap& g) {
    return f.is_exact() == g.is_exact() || f.is_identity() || g.is_identity();
}

namespace detail {

inline PiecewiseLinear as_pl(const CircleMap& f) {
    if (auto pl = std::get_if<PiecewiseLinear>(&f.variant())) return *pl;
    const auto& r = std::get<Rotation>(f.variant());
    return PiecewiseLinear::normalized({Breakpoint{Rational(0), r.theta, Rational(1)}});
}

inline PiecewiseLinear invert_pl(const PiecewiseLinear& f) {
    std::vector<Breakpoint> pts;
    pts.reserve(f.breakpoints().size());
    for (const auto& p : f.breakpoints()) {
        const Rational m(floor_of(p.y));
        pts.push_back(Breakpoint{p.y - m, p.x - m, 1 / p.slope});
    }
    return PiecewiseLinear::normalized(std::move(pts));
}

/// Lift of "f then g", i.e. x -> G(F(x)).
inline PiecewiseLinear compose_pl(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    const PiecewiseLinear finv = invert_pl(f);
    std::vector<Rational> cuts;
    for (const auto& p : f.breakpoints()) cuts.push_back(p.x);
    for (const auto& q : g.breakpoints()) cuts.push_back(frac(finv.lift(q.x)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Breakpoint> pts;
    pts.reserve(cuts.size());
    for (const auto& c : cuts) {
        const Rational fc = f.lift(c);
        pts.push_back(Breakpoint{c, g.lift(fc), f.right_slope(c) * g.right_slope(fc)});
    }
    return PiecewiseLinear::normalized(std::move(pts));
}

inline Moebius multiply(const Moebius& first, const Moebius& second) {
    // Acting on column vectors, "first then second" is second * first.
    const auto& a = second.m;
    const auto& b = first.m;
    return make_moebius(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]);
}

}  // namespace detail

/// The composite "apply first, then second". Exact classes never degrade;
/// mixing an exact non-identity map with a Moebius map throws.
inline CircleMap compose(const CircleMap& first, const CircleMap& second) {
    if (first.is_identity()) return second;
    if (second.is_identity()) return first;
    if (!compatible(first, second))
        throw MixedExactnessError("cannot compose exact and numeric circle maps");
    using K = CircleMap::Kind;
    if (first.kind() == K::Moebius)
        return CircleMap::moebius_unchecked(detail::multiply(std::get<Moebius>(first.variant()),
                                                             std::get<Moebius>(second.variant())));
    if (first.kind() == K::Rotation && second.kind() == K::Rotation)
        return CircleMap::rotation(std::get<Rotation>(first.variant()).theta +
                                   std::get<Rotation>(second.variant()).theta);
    return CircleMap::simplify(detail::compose_pl(detail::as_pl(first), detail::as_pl(second)));
}

inline CircleMap inverse(const CircleMap& f) {
    switch (f.kind()) {
        case CircleMap::Kind::Rotation:
            return CircleMap::rotation(-std::get<Rotation>(f.variant()).theta);
        case CircleMap::Kind::PiecewiseLinear:
            return CircleMap::simplify(detail::invert_pl(std::get<PiecewiseLinear>(f.variant())));
        case CircleMap::Kind::Moebius: {
            const auto& m = std::get<Moebius>(f.variant()).m;
            return CircleMap::moebius_unchecked(Moebius{{m[3], -m[1], -m[2], m[0]}});
        }
    }
    return f;
}

/// Approximate equality: exact classes compare structurally; Moebius maps
/// compare projectively entrywise.
inline bool approx_equal(const CircleMap& f, const CircleMap& g, double tol = 1e-9) {
    if (f.is_exact() && g.is_exact()) return f == g;
    if (f.kind() == CircleMap::Kind::Moebius && g.kind() == CircleMap::Kind::Moebius) {
        const auto& a = std::get<Moebius>(f.variant()).m;
        const auto& b = std::get<Moebius>(g.variant()).m;
        double plus = 0, minus = 0;
        for (int i = 0; i < 4; ++i) {
            plus = std::max(plus, std::abs(a[i] - b[i]));
            minus = std::max(minus, std::abs(a[i] + b[i]));
        }
        return std::min(plus, minus) <= tol;
    }
    if (f.is_identity()) return g.is_numeric_identity(tol);
    if (g.is_identity()) return f.is_numeric_identity(tol);
    return false;
}

/// A degree-one increasing self map of R: x -> base.lift(x) + offset.
struct LiftedMap {
    CircleMap base;
    std::int64_t offset = 0;
    Rational basepoint{0};

    Rational operator()(const Rational& x) const { return base.lift(x) + offset; }
    double operator()(double x) const { return base.lift(x) + static_cast<double>(offset); }
};

inline Rational lift_evaluate(const LiftedMap& L, const Rational& x) { return L(x); }
inline double lift_evaluate(const LiftedMap& L, double x) { return L(x); }

/// The unique lift with L(x0) - x0 in [0,1).
///
/// A numeric map within kLiftTolerance of the identity gets the identity
/// lift; otherwise a numeric map whose displacement at x0 is within
/// kLiftTolerance of an integer throws AmbiguousLift.
inline LiftedMap canonical_lift(const CircleMap& h, const Rational& x0) {
    if (h.is_exact()) {
        const Rational d = h.lift(x0) - x0;
        return LiftedMap{h, to_int64(-floor_of(d)), x0};
    }
    const double x = to_double(x0);
    const double d = h.lift(x) - x;
    if (h.is_numeric_identity()) return LiftedMap{h, -std::llround(d), x0};
    const double fl = std::floor(d);
    const double r = d - fl;
    if (r < kLiftTolerance || r > 1 - kLiftTolerance)
        throw AmbiguousLift("displacement " + std::to_string(d) + " at basepoint " +
                            format_rational(x0) + " is too close to an integer");
    return LiftedMap{h, -static_cast<std::int64_t>(fl), x0};
}

namespace detail {

inline std::int64_t certified_round(double v, const char* what) {
    const double r = std::round(v);
    if (std::abs(v - r) > kOffsetTolerance)
        throw InternalConsistency(std::string(what) + ": numeric offset " + std::to_string(v) +
                                  " is not close to an integer");
    return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// Group law of the lifted group (apply first, then second).
inline LiftedMap compose_lifts(const LiftedMap& first, const LiftedMap& second) {
    CircleMap h = compose(first.base, second.base);
    std::int64_t m;
    if (h.is_exact() && first.base.is_exact() && second.base.is_exact()) {
        const Rational diff = second.base.lift(first.base.lift(Rational(0))) - h.lift(Rational(0));
        if (!is_integer(diff)) throw InternalConsistency("lift composition is not a deck translation");
        m = to_int64(boost::multiprecision::numerator(diff));
    } else {
        m = detail::certified_round(second.base.lift(first.base.lift(0.0)) - h.lift(0.0),
                                    "compose_lifts");
    }
    return LiftedMap{std::move(h), first.offset + second.offset + m, first.basepoint};
}

inline LiftedMap inverse_lift(const LiftedMap& L) {
    CircleMap inv = inverse(L.base);
    std::int64_t j;
    if (inv.is_exact()) {
        const Rational diff = inv.lift(L.base.lift(Rational(0)));
        if (!is_integer(diff)) throw InternalConsistency("inverse lift is not a deck translation");
        j = to_int64(boost::multiprecision::numerator(diff));
    } else {
        j = detail::certified_round(inv.lift(L.base.lift(0.0)), "inverse_lift");
    }
    return LiftedMap{std::move(inv), -L.offset - j, L.basepoint};
}

/// If L is an integer translation, its amount; otherwise nullopt.
inline std::optional<std::int64_t> translation_amount(const LiftedMap& L) {
    if (L.base.is_identity()) return L.offset;
    if (L.base.kind() == CircleMap::Kind::Moebius && L.base.is_numeric_identity(kOffsetTolerance))
        return detail::certified_round(L(0.0), "translation_amount");
    return std::nullopt;
}

/// The classical Euler cocycle s(gh)^{-1} s(g) s(h) for canonical lifts at x0,
/// an integer in {0, 1}.
inline std::int64_t classical_euler_cocycle(const CircleMap& g, const CircleMap& h,
                                            const Rational& x0) {
    const LiftedMap sg = canonical_lift(g, x0);
    const LiftedMap sh = canonical_lift(h, x0);
    const LiftedMap sgh = canonical_lift(compose(g, h), x0);
    const LiftedMap defect = compose_lifts(inverse_lift(sgh), compose_lifts(sg, sh));
    auto t = translation_amount(defect);
    if (!t) throw InternalConsistency("Euler cocycle defect is not a translation");
    return *t;
}

template <class T>
struct Interval {
    T lo;
    T hi;
    bool contains(const T& v) const { return lo <= v && v <= hi; }
    T width() const { return hi - lo; }
};

/// Encloses the translation number of L using n iterates from the basepoint.
inline Interval<Rational> translation_number(const LiftedMap& L, int iterations) {
    if (iterations < 1) throw ConfigError("translation_number needs iterations >= 1");
    Rational x = L.basepoint;
    for (int i = 0; i < iterations; ++i) x = L(x);
    const Rational d = x - L.basepoint;
    return {(d - 1) / iterations, (d + 1) / iterations};
}

inline Interval<double> translation_number_numeric(const LiftedMap& L, int iterations) {
    if (iterations < 1) throw ConfigError("translation_number needs iterations >= 1");
    const double x0 = to_double(L.basepoint);
    double x = x0;
    for (int i = 0; i < iterations; ++i) x = L(x);
    const double d = x - x0;
    return {(d - 1) / iterations, (d + 1) / iterations};
}

}  // namespace bundlesig
