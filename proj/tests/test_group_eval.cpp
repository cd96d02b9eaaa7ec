#include <map>
#include <string>

#include <gtest/gtest.h>

#include <bundlesig/euler.hpp>
#include <bundlesig/fuchsian.hpp>
#include <bundlesig/sampling.hpp>

using namespace bundlesig;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

// Lazily drawn random integer 1-cochain on group elements.
struct RandomCochain {
    Rng rng;
    std::map<std::string, std::int64_t> values;
    std::int64_t operator()(const std::string& key) {
        auto it = values.find(key);
        if (it == values.end()) it = values.emplace(key, between(rng, -1000, 1000)).first;
        return it->second;
    }
};

// Euler number of an exact wreath representation, computed by pushing a
// point of R^n through the lifted relator. Inverse letters invert each
// coordinate lift by correcting inverse(f).lift with the integer that
// makes it a right inverse.
std::int64_t oracle_relator_euler(const Representation<WreathElement>& rep, const Rational& x0) {
    const std::size_t n = rep.images.front().n();
    std::vector<Rational> X;
    for (std::size_t j = 0; j < n; ++j) X.push_back(q(static_cast<std::int64_t>(2 * j + 1), 2 * static_cast<std::int64_t>(n) + 3));
    std::vector<Rational> Y = X;
    auto lift = [&](const CircleMap& f, const Rational& x) {
        return f.lift(x) - Rational(floor_of(f.lift(x0) - x0));
    };
    for (const auto& l : SurfaceGroupPresentation(rep.genus).relator()) {
        const auto& a = rep.image(l.generator);
        std::vector<Rational> Z(n);
        if (!l.inverted) {
            for (std::size_t j = 0; j < n; ++j) Z[a.sigma(j)] = lift(a.maps[j], Y[j]);
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& y = Y[a.sigma(j)];
                const Rational guess = inverse(a.maps[j]).lift(y);
                const Rational fix = y - lift(a.maps[j], guess);
                EXPECT_TRUE(is_integer(fix));
                Z[j] = guess + fix;
            }
        }
        Y = std::move(Z);
    }
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) total += Y[j] - X[j];
    EXPECT_TRUE(is_integer(total));
    return to_int64(floor_of(total));
}

Representation<WreathElement> product_rep(const Representation<CircleMap>& first,
                                          const Representation<CircleMap>& second) {
    Representation<WreathElement> rep;
    rep.genus = first.genus;
    for (std::size_t i = 0; i < first.images.size(); ++i)
        rep.images.push_back({Permutation(2), {first.images[i], second.images[i]}});
    return rep;
}

Representation<CircleMap> trivial_circle_rep(int h, bool numeric) {
    Representation<CircleMap> rep;
    rep.genus = h;
    rep.images.assign(static_cast<std::size_t>(2 * h), numeric ? elliptic_moebius(0.0) : CircleMap::identity());
    return rep;
}

}  // namespace

TEST(FundamentalCycle, ShapeAndCoefficientSum) {
    for (int h = 1; h <= 4; ++h) {
        const auto z = build_fundamental_cycle(h);
        EXPECT_EQ(z.simplices.size(), static_cast<std::size_t>(6 * h));
        EXPECT_EQ(z.coefficient_sum(), 0);
    }
    EXPECT_THROW(build_fundamental_cycle(0), ConfigError);
}

TEST(FundamentalCycle, CoboundariesVanish) {
    for (int h = 1; h <= 3; ++h) {
        const auto z = build_fundamental_cycle(h);
        for (std::uint64_t s = 0; s < 20; ++s) {
            RandomCochain b{sample_rng(100 + h, s), {}};
            EXPECT_EQ(pair_with_coboundary(z, std::ref(b)), 0) << "h = " << h << " cochain " << s;
        }
    }
}

TEST(FundamentalCycle, CertificationDetectsBrokenChain) {
    auto z = build_fundamental_cycle(2);
    z.simplices.erase(z.simplices.begin() + 3);
    int nonzero = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        RandomCochain b{sample_rng(7, s), {}};
        if (pair_with_coboundary(z, std::ref(b)) != 0) ++nonzero;
    }
    EXPECT_GT(nonzero, 0);
}

TEST(Representation, RelatorIsChecked) {
    Representation<CircleMap> rep;
    rep.genus = 1;
    const auto f = CircleMap::piecewise_linear({{q(0), q(0), q(3, 2)}, {q(1, 2), q(3, 4), q(1, 2)}});
    rep.images = {f, CircleMap::rotation(q(1, 3))};
    EXPECT_THROW(rep.check(), RelatorViolation);
    rep.images = {f, f};
    EXPECT_NO_THROW(rep.check());
    rep.images = {f};
    EXPECT_THROW(rep.check(), RelatorViolation);
    EXPECT_THROW(SurfaceGroupPresentation(0), ConfigError);
}

TEST(EvaluateCocycleBar, TrivialRepresentationGivesZero) {
    for (int h = 1; h <= 3; ++h) {
        const auto rep = trivial_circle_rep(h, false);
        EXPECT_EQ(evaluate_euler_bar(rep, q(0)).e, 0);
        EXPECT_EQ(evaluate_euler_relator_lift(rep, q(0)).e, 0);
        Representation<WreathElement> w;
        w.genus = h;
        w.images.assign(static_cast<std::size_t>(2 * h), WreathElement::identity(4));
        EXPECT_EQ(evaluate_euler_bar(w, q(0)).e, 0);
        EXPECT_EQ(evaluate_euler_bar_shifted(w, q(0)), 0);
    }
}

TEST(EvaluateCocycleBar, CommutingRotationsOnTorus) {
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            Representation<CircleMap> rep;
            rep.genus = 1;
            rep.images = {CircleMap::rotation(q(a, 6)), CircleMap::rotation(q(b, 6))};
            EXPECT_EQ(evaluate_euler_bar(rep, q(0)).e, 0);
            EXPECT_EQ(evaluate_euler_relator_lift(rep, q(1, 3)).e, 0);
        }
}

TEST(Fuchsian, ExtremalEulerNumberAndFrozenSign) {
    for (int h = 2; h <= 3; ++h) {
        const auto rep = fuchsian_representation(h);
        EXPECT_LE(rep.relator_residual(), kRelatorTolerance);
        const auto bar = evaluate_euler_bar(rep, q(0));
        const auto lift = evaluate_euler_relator_lift(rep, q(0));
        EXPECT_EQ(bar.e, -(2 * h - 2));
        EXPECT_EQ(lift.e, -(2 * h - 2));
        EXPECT_EQ(milnor_wood_check(bar).slack, 0);
        const auto mirrored = fuchsian_representation(h, true);
        EXPECT_EQ(evaluate_euler_relator_lift(mirrored, q(0)).e, 2 * h - 2);
        EXPECT_EQ(evaluate_euler_bar(mirrored, q(1, 3)).e, 2 * h - 2);
    }
    EXPECT_THROW(fuchsian_representation(1), ConfigError);
}

TEST(Fuchsian, WreathProductSaturatesBound) {
    const auto fuchs = fuchsian_representation(2);
    const auto one = product_rep(fuchs, trivial_circle_rep(2, true));
    EXPECT_EQ(std::abs(evaluate_euler_relator_lift(one, q(0)).e), 2);
    EXPECT_EQ(std::abs(evaluate_euler_bar(one, q(0)).e), 2);

    const auto two = product_rep(fuchs, fuchs);
    const auto r = evaluate_euler_relator_lift(two, q(0));
    EXPECT_EQ(std::abs(r.e), 4);
    EXPECT_EQ(evaluate_euler_bar(two, q(0)).e, r.e);
    EXPECT_EQ(evaluate_euler_bar_shifted(two, q(0)), r.e);
    const auto v = milnor_wood_check(r);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.bound, 4);
    EXPECT_EQ(v.slack, 0);
    EXPECT_EQ(r.chi_total_space, 4);
}

TEST(Fuchsian, SignatureReadingNeedsGeometricTagAndDivisibility) {
    auto rep = fuchsian_representation(4);
    EXPECT_FALSE(rep.geometric);
    rep.geometric = true;
    const auto r = evaluate_euler_relator_lift(rep, q(0));
    EXPECT_EQ(r.e, -6);
    ASSERT_TRUE(r.signature_interpretation.has_value());
    EXPECT_EQ(*r.signature_interpretation, 2);
    rep.geometric = false;
    EXPECT_FALSE(evaluate_euler_relator_lift(rep, q(0)).signature_interpretation.has_value());
    auto genus_two = fuchsian_representation(2);
    genus_two.geometric = true;
    EXPECT_FALSE(evaluate_euler_relator_lift(genus_two, q(0)).signature_interpretation.has_value());
}

TEST(MethodAgreement, RandomRepresentations) {
    for (std::uint64_t s = 0; s < 120; ++s) {
        Rng rng = sample_rng(61, s);
        const std::size_t n = 2 + 2 * below(rng, 2);
        const int h = static_cast<int>(between(rng, 1, 3));
        const auto cls = s % 2 ? RepClass::Mixed : RepClass::Exact;
        const auto sample = random_representation(rng, n, h, cls);
        const auto& rep = sample.rep;
        const auto lift = evaluate_euler_relator_lift(rep, q(0));
        EXPECT_EQ(evaluate_euler_bar(rep, q(0)).e, lift.e) << sample.family;
        EXPECT_EQ(evaluate_euler_bar_shifted(rep, q(0)), lift.e) << sample.family;
        EXPECT_TRUE(milnor_wood_check(lift).pass);
        if (h == 1) {
            EXPECT_EQ(lift.e, 0);
        }
        if (!sample.numeric) {
            EXPECT_EQ(oracle_relator_euler(rep, q(0)), lift.e) << sample.family;
        }
    }
}

TEST(Invariance, LiftPerturbationBasepointAndConjugation) {
    for (std::uint64_t s = 0; s < 80; ++s) {
        Rng rng = sample_rng(67, s);
        const std::size_t n = 2 + 2 * below(rng, 2);
        const int h = static_cast<int>(between(rng, 2, 3));
        const auto cls = s % 2 ? RepClass::Mixed : RepClass::Exact;
        const auto sample = random_representation(rng, n, h, cls);
        const auto e = evaluate_euler_relator_lift(sample.rep, q(0)).e;

        std::vector<CentralVector> shifts;
        for (int g = 0; g < 2 * h; ++g) {
            CentralVector v;
            for (std::size_t j = 0; j < n; ++j) v.push_back(between(rng, -3, 3));
            shifts.push_back(v);
        }
        EXPECT_EQ(evaluate_euler_relator_lift(sample.rep, q(0), shifts).e, e);

        for (const auto& x0 : {q(1, 3), q(1, 2)}) {
            EXPECT_EQ(evaluate_euler_relator_lift(sample.rep, x0).e, e);
            EXPECT_EQ(evaluate_euler_bar(sample.rep, x0).e, e);
        }

        const auto g = random_conjugator(rng, n, sample.numeric, cls);
        EXPECT_EQ(evaluate_euler_relator_lift(conjugate(sample.rep, g), q(0)).e, e);
    }
}

TEST(Invariance, RotationClassHasZeroEulerNumber) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        Rng rng = sample_rng(71, s);
        const auto sample = random_representation(rng, 4, 2 + static_cast<int>(below(rng, 2)), RepClass::Rotation);
        EXPECT_EQ(evaluate_euler_relator_lift(sample.rep, q(0)).e, 0);
        EXPECT_EQ(oracle_relator_euler(sample.rep, q(0)), 0);
    }
}

TEST(MilnorWood, Verdicts) {
    EulerNumberResult r;
    r.n = 4;
    r.h = 3;
    r.bound = 16;
    r.e = 0;
    auto v = milnor_wood_check(r);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.slack, 16);
    r.e = -16;
    EXPECT_TRUE(milnor_wood_check(r).pass);
    r.e = 17;
    v = milnor_wood_check(r);
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.slack, -1);
    r.e = -17;
    EXPECT_FALSE(milnor_wood_check(r).pass);
}
