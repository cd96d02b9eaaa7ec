#pragma once

// Uniform group interface for the three target groups of surface group
// representations. Products are left to right for circle maps and wreath
// elements (a * b applies a first) and plain matrix products for SpMatrix.

#include <cmath>
#include <limits>
#include <vector>

#include "circle_map.hpp"
#include "symplectic.hpp"
#include "wreath.hpp"

namespace bundlesig {

template <class G>
struct GroupOps;

namespace detail {

inline double circle_distance(double x, double y) {
    double d = std::abs(x - y);
    d -= std::floor(d);
    return std::min(d, 1 - d);
}

inline constexpr int kResidualSamples = 32;

}  // namespace detail

template <>
struct GroupOps<CircleMap> {
    static constexpr const char* name = "circle";
    static CircleMap identity_like(const CircleMap&) { return CircleMap::identity(); }
    static CircleMap multiply(const CircleMap& a, const CircleMap& b) { return compose(a, b); }
    static CircleMap inverse(const CircleMap& a) { return bundlesig::inverse(a); }

    /// 0 for the exact identity, +inf for any other exact map, otherwise the
    /// max displacement of 32 sample points.
    static double residual(const CircleMap& a) {
        if (a.is_exact()) return a.is_identity() ? 0.0 : std::numeric_limits<double>::infinity();
        double worst = 0;
        for (int i = 0; i < detail::kResidualSamples; ++i) {
            const double x = (i + 0.5) / detail::kResidualSamples;
            worst = std::max(worst, detail::circle_distance(a.apply(x), x));
        }
        return worst;
    }
};

template <>
struct GroupOps<WreathElement> {
    static constexpr const char* name = "wreath";
    static WreathElement identity_like(const WreathElement& a) { return WreathElement::identity(a.n()); }
    static WreathElement multiply(const WreathElement& a, const WreathElement& b) {
        return wreath_multiply(a, b);
    }
    static WreathElement inverse(const WreathElement& a) { return wreath_inverse(a); }

    static double residual(const WreathElement& a) {
        if (a.is_exact()) return a.is_identity() ? 0.0 : std::numeric_limits<double>::infinity();
        double worst = 0;
        for (int i = 0; i < detail::kResidualSamples; ++i) {
            std::vector<double> x(a.n());
            for (std::size_t j = 0; j < a.n(); ++j) {
                const double t = (i + 0.5) / detail::kResidualSamples + 0.6180339887 * double(j);
                x[j] = t - std::floor(t);
            }
            const auto y = wreath_action(a, x);
            for (std::size_t j = 0; j < a.n(); ++j)
                worst = std::max(worst, detail::circle_distance(y[j], x[j]));
        }
        return worst;
    }
};

template <>
struct GroupOps<SpMatrix> {
    static constexpr const char* name = "sp";
    static SpMatrix identity_like(const SpMatrix& a) { return SpMatrix::identity(a.genus()); }
    static SpMatrix multiply(const SpMatrix& a, const SpMatrix& b) { return a * b; }
    static SpMatrix inverse(const SpMatrix& a) { return bundlesig::inverse(a); }
    static double residual(const SpMatrix& a) {
        return a.is_identity() ? 0.0 : std::numeric_limits<double>::infinity();
    }
};

}  // namespace bundlesig
