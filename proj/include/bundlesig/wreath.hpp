#pragma once

// The wreath type group S_n x| Top+(S^1)^n, its lift to S_n x| (lifted maps)^n,
// the coordinate sum rho : Z^n -> Z and the bounded cocycle obtained from the
// canonical section.
//
// Element (sigma, h) acts on the torus by
//     (sigma, h)(x)_{sigma(j)} = h^j(x^j),
// i.e. apply h componentwise, then move coordinate j to slot sigma(j).
// Products are left to right: a * b applies a first. With that reading
//     (sigma, g) * (eta, h) = (sigma then eta, u),  u^j = g^j then h^{sigma(j)},
// where u is indexed by the source coordinate j.

#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "circle_map.hpp"
#include "permutation.hpp"

namespace bundlesig {

struct WreathElement {
    Permutation sigma;
    std::vector<CircleMap> maps;

    std::size_t n() const { return maps.size(); }

    static WreathElement identity(std::size_t n) {
        return {Permutation(n), std::vector<CircleMap>(n, CircleMap::identity())};
    }

    bool is_identity() const {
        if (!sigma.is_identity()) return false;
        for (const auto& m : maps)
            if (!m.is_identity()) return false;
        return true;
    }

    /// False if any coordinate is a numeric Moebius map.
    bool is_exact() const {
        for (const auto& m : maps)
            if (!m.is_exact()) return false;
        return true;
    }

    friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

namespace detail {

inline void check_element(const WreathElement& a) {
    if (a.sigma.size() != a.maps.size()) throw DimensionMismatch("permutation and map count differ");
    for (std::size_t i = 0; i < a.maps.size(); ++i)
        for (std::size_t j = i + 1; j < a.maps.size(); ++j)
            if (!compatible(a.maps[i], a.maps[j]))
                throw MixedExactnessError("wreath element mixes exact and numeric maps");
}

inline void check_pair(const WreathElement& a, const WreathElement& b) {
    if (a.n() != b.n() || a.sigma.size() != b.sigma.size())
        throw DimensionMismatch("wreath elements of different rank");
}

}  // namespace detail

inline WreathElement wreath_multiply(const WreathElement& a, const WreathElement& b) {
    detail::check_pair(a, b);
    std::vector<CircleMap> u;
    u.reserve(a.n());
    for (std::size_t j = 0; j < a.n(); ++j) u.push_back(compose(a.maps[j], b.maps[a.sigma(j)]));
    return {then(a.sigma, b.sigma), std::move(u)};
}

inline WreathElement wreath_inverse(const WreathElement& a) {
    const Permutation inv = a.sigma.inverse();
    std::vector<CircleMap> v(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) v[i] = inverse(a.maps[inv(i)]);
    return {inv, std::move(v)};
}

/// Component sigma(j) of the output is h^j(x^j).
template <class Point>
std::vector<Point> wreath_action(const WreathElement& a, const std::vector<Point>& x) {
    if (x.size() != a.n()) throw DimensionMismatch("point has wrong number of coordinates");
    std::vector<Point> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[a.sigma(j)] = a.maps[j].apply(x[j]);
    return y;
}

/// Element of S_n x| (lifted maps)^n; same multiplication rule as above.
struct LiftedWreathElement {
    Permutation sigma;
    std::vector<LiftedMap> lifts;

    std::size_t n() const { return lifts.size(); }

    static LiftedWreathElement identity(std::size_t n) {
        return {Permutation(n), std::vector<LiftedMap>(n)};
    }

    /// Projection theta to the wreath group.
    WreathElement project() const {
        std::vector<CircleMap> maps;
        maps.reserve(n());
        for (const auto& l : lifts) maps.push_back(l.base);
        return {sigma, std::move(maps)};
    }
};

inline LiftedWreathElement lifted_multiply(const LiftedWreathElement& a,
                                           const LiftedWreathElement& b) {
    if (a.n() != b.n()) throw DimensionMismatch("lifted wreath elements of different rank");
    std::vector<LiftedMap> u;
    u.reserve(a.n());
    for (std::size_t j = 0; j < a.n(); ++j) u.push_back(compose_lifts(a.lifts[j], b.lifts[a.sigma(j)]));
    return {then(a.sigma, b.sigma), std::move(u)};
}

inline LiftedWreathElement lifted_inverse(const LiftedWreathElement& a) {
    const Permutation inv = a.sigma.inverse();
    std::vector<LiftedMap> v(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) v[i] = inverse_lift(a.lifts[inv(i)]);
    return {inv, std::move(v)};
}

/// Canonical section s_{x0}: lifts every coordinate map canonically.
inline LiftedWreathElement section(const WreathElement& a, const Rational& x0) {
    detail::check_element(a);
    std::vector<LiftedMap> lifts;
    lifts.reserve(a.n());
    for (const auto& m : a.maps) lifts.push_back(canonical_lift(m, x0));
    return {a.sigma, std::move(lifts)};
}

/// An element of the kernel of theta, as the vector of deck translations.
using CentralVector = std::vector<std::int64_t>;

inline std::int64_t rho(const CentralVector& v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

/// Reads off the translation vector of a theta-trivial lifted element.
/// Throws InternalConsistency when the element is not theta-trivial.
inline CentralVector as_central(const LiftedWreathElement& z) {
    if (!z.sigma.is_identity())
        throw InternalConsistency("lifted element has nontrivial permutation part");
    CentralVector v;
    v.reserve(z.n());
    for (const auto& l : z.lifts) {
        auto t = translation_amount(l);
        if (!t) throw InternalConsistency("lifted element is not an integer translation");
        v.push_back(*t);
    }
    return v;
}

/// A multiplication rule for the base wreath group; swappable so that the
/// sweep harness can inject a faulty law and check that it is detected.
using WreathProduct = std::function<WreathElement(const WreathElement&, const WreathElement&)>;

/// s(ab)^{-1} s(a) s(b), with components in {0,1}.
inline CentralVector kernel_defect(const WreathElement& a, const WreathElement& b,
                                   const Rational& x0,
                                   const WreathProduct& product = wreath_multiply) {
    detail::check_pair(a, b);
    const LiftedWreathElement sa = section(a, x0);
    const LiftedWreathElement sb = section(b, x0);
    const LiftedWreathElement sab = section(product(a, b), x0);
    return as_central(lifted_multiply(lifted_inverse(sab), lifted_multiply(sa, sb)));
}

struct CocycleValue {
    std::int64_t raw = 0;      // rho of the kernel defect, in {0,...,n}
    std::int64_t shifted = 0;  // raw - n/2, in {-n/2,...,n/2}
    std::size_t n = 0;
    Rational basepoint{0};
};

inline CocycleValue cocycle(const WreathElement& a, const WreathElement& b, const Rational& x0,
                            const WreathProduct& product = wreath_multiply) {
    if (a.n() % 2 != 0) throw DimensionMismatch("cocycle needs an even number of factors");
    const std::int64_t raw = rho(kernel_defect(a, b, x0, product));
    const auto half = static_cast<std::int64_t>(a.n() / 2);
    return {raw, raw - half, a.n(), x0};
}

/// Monomial matrix: entry (j, perm(j)) holds weight[j], all others vanish.
/// Row vector convention, so rep(a * b) = rep(a) rep(b) for the left to right
/// product.
template <class Weight>
struct MonomialMatrix {
    Permutation perm;
    std::vector<Weight> weight;

    friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
};

/// Product of monomial matrices, combining weights with `op`.
template <class Weight, class Op>
MonomialMatrix<Weight> monomial_multiply(const MonomialMatrix<Weight>& a,
                                         const MonomialMatrix<Weight>& b, Op op) {
    std::vector<Weight> w(a.weight.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = op(a.weight[j], b.weight[a.perm(j)]);
    return {then(a.perm, b.perm), std::move(w)};
}

using DenseMatrix = std::vector<std::vector<std::complex<double>>>;

/// Monomial image of (sigma, diag(scalars)) in GL(n, C).
inline DenseMatrix monomial_rep(const Permutation& sigma,
                                std::span<const std::complex<double>> scalars) {
    if (scalars.size() != sigma.size()) throw DimensionMismatch("monomial_rep: size mismatch");
    const std::size_t n = sigma.size();
    DenseMatrix m(n, std::vector<std::complex<double>>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        if (scalars[j] == 0.0) throw DimensionMismatch("monomial_rep: zero scalar");
        m[j][sigma(j)] = scalars[j];
    }
    return m;
}

/// Formal monomial image of a rotation-class element: each rotation by theta
/// contributes the formal exponent theta (standing for exp(2 pi i theta)),
/// and exponents add mod 1 under multiplication. Non-rotation maps are not
/// summarized by this invariant and throw.
inline MonomialMatrix<Rational> monomial_rep(const WreathElement& a) {
    std::vector<Rational> w;
    w.reserve(a.n());
    for (const auto& m : a.maps) {
        auto r = std::get_if<Rotation>(&m.variant());
        if (!r) throw MixedExactnessError("monomial_rep needs rotation-class maps");
        w.push_back(r->theta);
    }
    return {a.sigma, std::move(w)};
}

inline MonomialMatrix<Rational> monomial_multiply(const MonomialMatrix<Rational>& a,
                                                  const MonomialMatrix<Rational>& b) {
    return monomial_multiply(a, b, [](const Rational& x, const Rational& y) { return frac(x + y); });
}

inline DenseMatrix to_dense(const MonomialMatrix<Rational>& m) {
    std::vector<std::complex<double>> s;
    s.reserve(m.weight.size());
    for (const auto& t : m.weight) s.push_back(std::polar(1.0, 2 * std::numbers::pi * to_double(t)));
    return monomial_rep(m.perm, s);
}

inline DenseMatrix dense_multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    DenseMatrix c(n, std::vector<std::complex<double>>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace bundlesig
