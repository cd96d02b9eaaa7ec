#pragma once

// Fuchsian representations of closed surface groups from the regular
// hyperbolic 4h-gon with all interior angles 2 pi / 4h, as numeric Moebius
// circle maps.

#include <array>
#include <cmath>
#include <numbers>

#include "euler.hpp"

namespace bundlesig {

namespace detail {

using Mat2 = std::array<double, 4>;

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

/// Elliptic rotation by angle phi about i in the upper half plane.
inline Mat2 rotation_about_i(double phi) {
    return {std::cos(phi / 2), std::sin(phi / 2), -std::sin(phi / 2), std::cos(phi / 2)};
}

}  // namespace detail

/// Isometry of the upper half plane taking side `from` of the regular
/// 4h-gon centered at i onto side `to`, carrying the polygon across `to`.
/// Side k has its midpoint in direction 2 pi k / 4h as seen from i.
inline std::array<double, 4> polygon_side_pairing(int h, int from, int to) {
    const int sides = 4 * h;
    const double pi = std::numbers::pi;
    // Center-to-side distance d: cosh d = cot(pi / sides); translating by 2d
    // along the vertical geodesic through i moves the bottom side to the top.
    const double d = std::acosh(1 / std::tan(pi / sides));
    const detail::Mat2 shift{std::exp(d), 0, 0, std::exp(-d)};
    auto dir = [&](int k) { return 2 * pi * k / sides; };
    return detail::mat_mul(detail::rotation_about_i(dir(to) - pi / 2),
                           detail::mat_mul(shift, detail::rotation_about_i(-pi / 2 - dir(from))));
}

/// Boundary word a1 b1 a1^-1 b1^-1 ... read counterclockwise from side 0.
/// a_i maps side 4i onto side 4i+2 and b_i maps side 4i+3 onto side 4i+1.
/// With `mirrored`, every image is conjugated by diag(1,-1), which reverses
/// the orientation of RP^1 and flips the sign of the Euler number.
inline Representation<CircleMap> fuchsian_representation(int h, bool mirrored = false) {
    if (h < 2) throw ConfigError("Fuchsian representations need genus >= 2");
    Representation<CircleMap> rep;
    rep.genus = h;
    auto as_map = [&](std::array<double, 4> m) {
        if (mirrored) m = {m[0], -m[1], -m[2], m[3]};
        return CircleMap::moebius_unchecked(Moebius{m});
    };
    for (int i = 0; i < h; ++i) {
        rep.images.push_back(as_map(polygon_side_pairing(h, 4 * i, 4 * i + 2)));
        rep.images.push_back(as_map(polygon_side_pairing(h, 4 * i + 3, 4 * i + 1)));
    }
    return rep;
}

/// Elliptic Moebius map rotating RP^1 around the point i by angle 2 pi t
/// (t in turns); these commute with each other.
inline CircleMap elliptic_moebius(double turns) {
    const auto m = detail::rotation_about_i(2 * std::numbers::pi * turns);
    return CircleMap::moebius_unchecked(Moebius{m});
}

}  // namespace bundlesig
