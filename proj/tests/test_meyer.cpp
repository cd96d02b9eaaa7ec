#include <cmath>

#include <gtest/gtest.h>

#include <bundlesig/meyer.hpp>
#include <bundlesig/sampling.hpp>

using namespace bundlesig;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

std::vector<Rational> act(const SpMatrix& m, const std::vector<Rational>& x) {
    std::vector<Rational> y(x.size(), Rational(0));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

// Signature from the eigenvalues of a small symmetric matrix (cyclic Jacobi).
int eigen_signature(const RationalMatrix& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = to_double(s[i][j]);
    for (int sweep = 0; sweep < 100; ++sweep)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r) {
                if (std::abs(a[p][r]) < 1e-15) continue;
                const double theta = (a[r][r] - a[p][p]) / (2 * a[p][r]);
                const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akr = a[k][r];
                    a[k][p] = c * akp - sn * akr;
                    a[k][r] = sn * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], ark = a[r][k];
                    a[p][k] = c * apk - sn * ark;
                    a[r][k] = sn * apk + c * ark;
                }
            }
    int sig = 0;
    for (std::size_t i = 0; i < n; ++i) sig += a[i][i] > 1e-9 ? 1 : (a[i][i] < -1e-9 ? -1 : 0);
    return sig;
}

SpMatrix random_sp(Rng& rng, int g) { return random_twist_word(rng, g).matrix(); }

Representation<SpMatrix> rep_from(int h, std::vector<SpMatrix> images) {
    Representation<SpMatrix> rep;
    rep.genus = h;
    rep.images = std::move(images);
    return rep;
}

}  // namespace

TEST(Transvection, BasisExample) {
    // <e2, e1> = -1, so e2 -> e2 - e1 and e1 is fixed.
    const auto t = transvection({1, 0}, 1, 1);
    EXPECT_EQ(t, SpMatrix::from_rows({{q(1), q(-1)}, {q(0), q(1)}}));
    EXPECT_EQ(transvection({0, 1}, 1, 1), SpMatrix::from_rows({{q(1), q(0)}, {q(1), q(1)}}));
    EXPECT_TRUE(transvection({1, 0}, 0, 1).is_identity());
    EXPECT_THROW(transvection({0, 0}, 1, 1), ZeroVector);
    EXPECT_THROW(transvection({1, 0, 0}, 1, 1), DimensionMismatch);
}

TEST(Transvection, MatchesDefiningFormulaAndIsSymplectic) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng = sample_rng(101, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const auto c = random_nonzero_class(rng, g);
        const std::int64_t k = between(rng, -3, 3);
        const auto t = transvection(c, k, g);
        EXPECT_TRUE(is_symplectic(t));
        std::vector<Rational> x, cr;
        for (int i = 0; i < 2 * g; ++i) {
            x.push_back(q(between(rng, -9, 9), between(rng, 1, 3)));
            cr.push_back(q(c[static_cast<std::size_t>(i)]));
        }
        const Rational pair = symplectic_pairing(x, cr, g);
        auto expected = x;
        for (int i = 0; i < 2 * g; ++i) expected[i] += k * pair * cr[i];
        EXPECT_EQ(act(t, x), expected);
    }
}

TEST(SpMatrix, WordsAreSymplecticWithExactInverse) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        Rng rng = sample_rng(103, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const auto m = random_sp(rng, g);
        EXPECT_TRUE(is_symplectic(m));
        EXPECT_TRUE((m * inverse(m)).is_identity());
        EXPECT_TRUE((inverse(m) * m).is_identity());
    }
    EXPECT_FALSE(is_symplectic(SpMatrix::from_rows({{q(2), q(0)}, {q(0), q(1)}})));
}

TEST(Signature, MatchesEigenvalueCount) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng = sample_rng(107, s);
        const auto n = static_cast<std::size_t>(between(rng, 1, 6));
        RationalMatrix m(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = q(between(rng, -3, 3));
        // Force some rank deficiency now and then.
        if (n > 2 && s % 3 == 0) {
            for (std::size_t j = 0; j < n; ++j) m[n - 1][j] = m[0][j] + m[1][j];
            for (std::size_t j = 0; j < n; ++j) m[j][n - 1] = m[n - 1][j];
            m[n - 1][n - 1] = m[0][0] + 2 * m[0][1] + m[1][1];
        }
        EXPECT_EQ(signature(m), eigen_signature(m)) << "sample " << s;
    }
    EXPECT_EQ(signature({{q(0), q(1)}, {q(1), q(0)}}), 0);
    EXPECT_EQ(signature({{q(0), q(0)}, {q(0), q(0)}}), 0);
}

TEST(MeyerCocycle, NormalizationAndInverses) {
    for (std::uint64_t s = 0; s < 80; ++s) {
        Rng rng = sample_rng(109, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const auto a = random_sp(rng, g);
        EXPECT_EQ(meyer_cocycle(SpMatrix::identity(g), a), 0);
        EXPECT_EQ(meyer_cocycle(a, SpMatrix::identity(g)), 0);
        EXPECT_EQ(meyer_cocycle(a, inverse(a)), 0);
    }
    EXPECT_THROW(meyer_cocycle(SpMatrix::identity(1), SpMatrix::identity(2)), DimensionMismatch);
}

TEST(MeyerCocycle, CocycleIdentityRangeSymmetryAndConjugation) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng = sample_rng(113, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const auto a = random_sp(rng, g), b = random_sp(rng, g), c = random_sp(rng, g);
        const int ab = meyer_cocycle(a, b);
        EXPECT_EQ(ab + meyer_cocycle(a * b, c), meyer_cocycle(a, b * c) + meyer_cocycle(b, c));
        EXPECT_LE(std::abs(ab), 2 * g);
        EXPECT_EQ(meyer_cocycle(b, a), ab);
        const auto ci = inverse(c);
        EXPECT_EQ(meyer_cocycle(ci * a * c, ci * b * c), ab);
    }
}

TEST(SignatureReport, Verdicts) {
    const auto r = make_signature_report(4, 3, 2, Certification::SpOnly);
    EXPECT_EQ(r.chi_e, 8);
    EXPECT_FALSE(r.verdict_3);
    EXPECT_TRUE(r.verdict_2);
    EXPECT_TRUE(r.mod4);
    const auto t = make_signature_report(-2, 3, 3, Certification::CertifiedBundle);
    EXPECT_EQ(t.chi_e, 16);
    EXPECT_TRUE(t.verdict_3);
    EXPECT_FALSE(t.mod4);
    EXPECT_STREQ(to_string(Certification::CertifiedBundle), "certified-bundle");
    EXPECT_STREQ(to_string(Certification::SpOnly), "sp-only");
}

TEST(SignatureFromMonodromy, TrivialMonodromy) {
    for (int g = 1; g <= 3; ++g)
        for (int h = 1; h <= 3; ++h) {
            const auto r = signature_from_monodromy(
                rep_from(h, std::vector<SpMatrix>(static_cast<std::size_t>(2 * h), SpMatrix::identity(g))),
                Certification::CertifiedBundle);
            EXPECT_EQ(r.sigma, 0);
            EXPECT_TRUE(r.verdict_3);
            EXPECT_TRUE(r.verdict_2);
        }
}

TEST(SignatureFromMonodromy, FreeFactoringGivesZero) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng = sample_rng(127, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const int h = static_cast<int>(between(rng, 1, 3));
        std::vector<SpMatrix> images;
        for (int i = 0; i < h; ++i) {
            images.push_back(random_sp(rng, g));
            images.push_back(SpMatrix::identity(g));
        }
        EXPECT_EQ(signature_from_monodromy(rep_from(h, images)).sigma, 0);
    }
}

TEST(SignatureFromMonodromy, CommutingMultitwistsOverTorus) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng = sample_rng(131, s);
        const int g = static_cast<int>(between(rng, 1, 3));
        const auto curves = disjoint_curve_classes(g).size();
        std::vector<std::int64_t> p1, p2;
        for (std::size_t j = 0; j < curves; ++j) {
            p1.push_back(between(rng, -2, 2));
            p2.push_back(between(rng, -2, 2));
        }
        const auto rep = rep_from(1, {multitwist(g, p1).matrix(), multitwist(g, p2).matrix()});
        const auto r = signature_from_monodromy(rep, Certification::CertifiedBundle);
        EXPECT_EQ(r.sigma, 0);
        EXPECT_EQ(r.chi_e, 0);
        EXPECT_EQ(r.certification, Certification::CertifiedBundle);
    }
}

TEST(SignatureFromMonodromy, CertifiedHigherGenusBasesRespectBounds) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng = sample_rng(137, s);
        const int g = static_cast<int>(between(rng, 2, 3));
        const int h = static_cast<int>(between(rng, 2, 3));
        const auto curves = disjoint_curve_classes(g).size();
        std::vector<SpMatrix> images;
        for (int i = 0; i < 2 * h; ++i) {
            std::vector<std::int64_t> p;
            for (std::size_t j = 0; j < curves; ++j) p.push_back(between(rng, -2, 2));
            images.push_back(multitwist(g, p).matrix());
        }
        const auto r = signature_from_monodromy(rep_from(h, images), Certification::CertifiedBundle);
        EXPECT_TRUE(r.verdict_3);
        EXPECT_TRUE(r.verdict_2);
    }
}

TEST(SignatureFromMonodromy, RelatorMustHoldExactly) {
    const auto rep = rep_from(1, {transvection({1, 0}, 1, 1), transvection({0, 1}, 1, 1)});
    EXPECT_THROW(signature_from_monodromy(rep), RelatorViolation);
}

TEST(DisjointCurves, PairwiseOrthogonal) {
    for (int g = 1; g <= 4; ++g) {
        const auto cs = disjoint_curve_classes(g);
        for (const auto& a : cs)
            for (const auto& b : cs) {
                std::vector<Rational> x(a.begin(), a.end()), y(b.begin(), b.end());
                EXPECT_EQ(symplectic_pairing(x, y, g), 0);
            }
    }
}
