#pragma once

// Surface group representations and the two evaluations of the Euler class:
// pairing a 2-cocycle with the fundamental bar cycle, and lifting the
// relator into the central extension.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "surface_group.hpp"

namespace bundlesig {

inline constexpr double kRelatorTolerance = 1e-6;

template <class G>
struct Representation {
    int genus = 1;
    /// Images of a1, b1, ..., ah, bh.
    std::vector<G> images;
    /// Externally certified to come from the geometry (enables the signature
    /// reading of the Euler number).
    bool geometric = false;

    const G& image(int generator) const { return images.at(static_cast<std::size_t>(generator)); }

    G image_of(const Letter& l) const {
        return l.inverted ? GroupOps<G>::inverse(image(l.generator)) : image(l.generator);
    }

    G image_of(const Word& w) const {
        G out = GroupOps<G>::identity_like(images.front());
        for (const auto& l : w) out = GroupOps<G>::multiply(out, image_of(l));
        return out;
    }

    G relator_image() const { return image_of(SurfaceGroupPresentation(genus).relator()); }

    double relator_residual() const { return GroupOps<G>::residual(relator_image()); }

    /// Throws RelatorViolation unless the relator maps to the identity
    /// (exactly, or within 1e-6 for numeric images).
    void check() const {
        if (genus < 1) throw RelatorViolation("genus must be at least 1");
        if (images.size() != static_cast<std::size_t>(2 * genus))
            throw RelatorViolation("expected " + std::to_string(2 * genus) + " generator images");
        const double r = relator_residual();
        if (!(r <= kRelatorTolerance))
            throw RelatorViolation("relator residual " + std::to_string(r));
    }
};

/// g^-1 x g applied to every image.
template <class G>
Representation<G> conjugate(const Representation<G>& rep, const G& g) {
    Representation<G> out = rep;
    const G ginv = GroupOps<G>::inverse(g);
    for (auto& x : out.images) x = GroupOps<G>::multiply(GroupOps<G>::multiply(ginv, x), g);
    return out;
}

/// Sum of coefficient * c(image(left), image(right)) over the cycle.
template <class G, class Cocycle>
std::int64_t evaluate_cocycle_bar(const Cocycle& c, const Representation<G>& rep,
                                  const FundamentalCycle& z) {
    rep.check();
    if (z.genus != rep.genus) throw DimensionMismatch("cycle and representation genus differ");
    std::map<std::string, G> cache;
    auto img = [&](const Word& w) -> const G& {
        auto key = to_string(w);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(std::move(key), rep.image_of(w)).first;
        return it->second;
    };
    std::int64_t total = 0;
    for (const auto& s : z.simplices) total += s.coefficient * std::int64_t(c(img(s.left), img(s.right)));
    return total;
}

struct EulerNumberResult {
    std::int64_t e = 0;
    std::string method;  // "bar" or "relator-lift"
    std::string target;  // "wreath" or "circle"
    std::size_t n = 1;
    int h = 1;
    std::int64_t bound = 0;  // n (2h - 2)
    Rational basepoint{0};
    /// sigma(E) = -e/3, only for certified geometric input with 3 | e.
    std::optional<std::int64_t> signature_interpretation;
    /// |chi(E)| = (2g-2)(2h-2) with 2g - 2 = n.
    std::int64_t chi_total_space = 0;
};

namespace detail {

inline EulerNumberResult make_result(std::int64_t e, const char* method, const char* target,
                                     std::size_t n, int h, const Rational& x0, bool geometric) {
    EulerNumberResult r;
    r.e = e;
    r.method = method;
    r.target = target;
    r.n = n;
    r.h = h;
    r.bound = static_cast<std::int64_t>(n) * (2 * h - 2);
    r.chi_total_space = r.bound;
    r.basepoint = x0;
    if (geometric && e % 3 == 0) r.signature_interpretation = -e / 3;
    return r;
}

}  // namespace detail

/// Euler number e = rho(lifted relator), where each generator is lifted by
/// the canonical section at x0 (plus an optional per-generator integer
/// perturbation of its coordinate lifts) and inverse letters use the inverse
/// lift. Products are left to right.
inline EulerNumberResult evaluate_euler_relator_lift(
    const Representation<WreathElement>& rep, const Rational& x0,
    const std::vector<CentralVector>& perturbations = {}) {
    rep.check();
    const std::size_t n = rep.images.front().n();
    std::vector<LiftedWreathElement> lifts;
    for (int gen = 0; gen < 2 * rep.genus; ++gen) {
        LiftedWreathElement s = section(rep.image(gen), x0);
        if (static_cast<std::size_t>(gen) < perturbations.size()) {
            const auto& v = perturbations[static_cast<std::size_t>(gen)];
            if (v.size() != n) throw DimensionMismatch("perturbation has wrong length");
            for (std::size_t j = 0; j < n; ++j) s.lifts[j].offset += v[j];
        }
        lifts.push_back(std::move(s));
    }
    LiftedWreathElement acc = LiftedWreathElement::identity(n);
    for (const auto& l : SurfaceGroupPresentation(rep.genus).relator()) {
        const auto& s = lifts[static_cast<std::size_t>(l.generator)];
        acc = lifted_multiply(acc, l.inverted ? lifted_inverse(s) : s);
    }
    const CentralVector v = as_central(acc);
    return detail::make_result(rho(v), "relator-lift", "wreath", n, rep.genus, x0, rep.geometric);
}

/// Bar pairing of the raw wreath cocycle with the fan cycle.
inline EulerNumberResult evaluate_euler_bar(const Representation<WreathElement>& rep,
                                            const Rational& x0) {
    const FundamentalCycle z = build_fundamental_cycle(rep.genus);
    auto c = [&](const WreathElement& a, const WreathElement& b) {
        return rho(kernel_defect(a, b, x0));
    };
    const std::int64_t e = evaluate_cocycle_bar(c, rep, z);
    return detail::make_result(e, "bar", "wreath", rep.images.front().n(), rep.genus, x0,
                               rep.geometric);
}

/// Bar pairing of the shifted cocycle (raw - n/2); equals the raw pairing
/// minus (n/2) * coefficient_sum(), and the fan cycle's coefficients sum to 0.
inline std::int64_t evaluate_euler_bar_shifted(const Representation<WreathElement>& rep,
                                               const Rational& x0) {
    const FundamentalCycle z = build_fundamental_cycle(rep.genus);
    auto c = [&](const WreathElement& a, const WreathElement& b) { return cocycle(a, b, x0).shifted; };
    return evaluate_cocycle_bar(c, rep, z);
}

inline Representation<WreathElement> as_wreath(const Representation<CircleMap>& rep) {
    Representation<WreathElement> w;
    w.genus = rep.genus;
    w.geometric = rep.geometric;
    for (const auto& m : rep.images) w.images.push_back({Permutation(1), {m}});
    return w;
}

inline EulerNumberResult evaluate_euler_relator_lift(const Representation<CircleMap>& rep,
                                                     const Rational& x0) {
    auto r = evaluate_euler_relator_lift(as_wreath(rep), x0);
    r.target = "circle";
    return r;
}

/// Bar pairing of the classical one-factor Euler cocycle.
inline EulerNumberResult evaluate_euler_bar(const Representation<CircleMap>& rep,
                                            const Rational& x0) {
    const FundamentalCycle z = build_fundamental_cycle(rep.genus);
    auto c = [&](const CircleMap& a, const CircleMap& b) { return classical_euler_cocycle(a, b, x0); };
    const std::int64_t e = evaluate_cocycle_bar(c, rep, z);
    return detail::make_result(e, "bar", "circle", 1, rep.genus, x0, rep.geometric);
}

struct MilnorWoodVerdict {
    bool pass = true;
    std::int64_t e = 0;
    std::int64_t bound = 0;
    std::int64_t slack = 0;  // bound - |e|
};

inline MilnorWoodVerdict milnor_wood_check(const EulerNumberResult& r) {
    MilnorWoodVerdict v;
    v.e = r.e;
    v.bound = r.bound;
    v.slack = r.bound - (r.e < 0 ? -r.e : r.e);
    v.pass = v.slack >= 0;
    return v;
}

}  // namespace bundlesig
