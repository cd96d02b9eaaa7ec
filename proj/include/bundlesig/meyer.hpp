#pragma once

// Signature of a surface bundle over a surface from its symplectic
// monodromy: the pairing of Meyer's cocycle with the fundamental bar cycle
// of the base, plus the bundle inequalities checked against chi(E).

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "euler.hpp"
#include "symplectic.hpp"

namespace bundlesig {

enum class Certification { CertifiedBundle, SpOnly };

inline const char* to_string(Certification c) {
    return c == Certification::CertifiedBundle ? "certified-bundle" : "sp-only";
}

struct SignatureReport {
    std::int64_t sigma = 0;
    std::int64_t chi_e = 0;  // (2g - 2)(2h - 2)
    int g = 1;
    int h = 1;
    bool verdict_3 = true;  // 3|sigma| <= |chi|
    bool verdict_2 = true;  // 2|sigma| <= |chi|
    bool mod4 = true;       // sigma = 0 mod 4, informational
    Certification certification = Certification::SpOnly;
};

inline SignatureReport make_signature_report(std::int64_t sigma, int g, int h, Certification cert) {
    SignatureReport r;
    r.sigma = sigma;
    r.g = g;
    r.h = h;
    r.chi_e = std::int64_t(2 * g - 2) * std::int64_t(2 * h - 2);
    const std::int64_t s = sigma < 0 ? -sigma : sigma;
    const std::int64_t c = r.chi_e < 0 ? -r.chi_e : r.chi_e;
    r.verdict_3 = 3 * s <= c;
    r.verdict_2 = 2 * s <= c;
    r.mod4 = sigma % 4 == 0;
    r.certification = cert;
    return r;
}

/// sigma(E) = sum of coefficient * meyer_cocycle over the fundamental cycle.
/// The sign relative to the orientation of E is a fixed convention.
inline SignatureReport signature_from_monodromy(const Representation<SpMatrix>& rep,
                                                const FundamentalCycle& z,
                                                Certification cert = Certification::SpOnly) {
    if (rep.images.empty()) throw RelatorViolation("empty representation");
    const std::int64_t sigma = evaluate_cocycle_bar(
        [](const SpMatrix& a, const SpMatrix& b) { return meyer_cocycle(a, b); }, rep, z);
    return make_signature_report(sigma, rep.images.front().genus(), rep.genus, cert);
}

inline SignatureReport signature_from_monodromy(const Representation<SpMatrix>& rep,
                                                Certification cert = Certification::SpOnly) {
    return signature_from_monodromy(rep, build_fundamental_cycle(rep.genus), cert);
}

/// Homology classes of pairwise disjoint simple closed curves on S_g:
/// a_1, ..., a_g and, for g >= 2, a curve in the class a_1 + a_2 cobounding
/// a pair of pants with a_1 and a_2. Twists about them commute in Mod(S_g).
inline std::vector<std::vector<std::int64_t>> disjoint_curve_classes(int g) {
    std::vector<std::vector<std::int64_t>> out;
    for (int i = 0; i < g; ++i) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(2 * g), 0);
        c[static_cast<std::size_t>(i)] = 1;
        out.push_back(std::move(c));
    }
    if (g >= 2) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(2 * g), 0);
        c[0] = c[1] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

/// Multitwist prod_j T_{c_j}^{powers_j} over the disjoint family.
inline TwistWord multitwist(int g, const std::vector<std::int64_t>& powers) {
    const auto classes = disjoint_curve_classes(g);
    if (powers.size() != classes.size()) throw DimensionMismatch("one power per disjoint curve");
    TwistWord w;
    w.g = g;
    for (std::size_t j = 0; j < classes.size(); ++j) w.letters.push_back({classes[j], powers[j]});
    return w;
}

}  // namespace bundlesig
