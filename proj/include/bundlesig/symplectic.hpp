#pragma once

// Integral symplectic matrices, symplectic transvections and Meyer's
// signature cocycle, all in exact rational arithmetic.
//
// Basis (a_1..a_g, b_1..b_g), column vectors, symplectic form
//     <x, y> = x^T J y,   J = [[0, I], [-I, 0]],
// so for g = 1, <x, y> = x1 y2 - x2 y1.

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace bundlesig {

class SpMatrix {
public:
    SpMatrix() : SpMatrix(1) {}
    explicit SpMatrix(int g) : g_(g), a_(static_cast<std::size_t>(4 * g * g), Rational(0)) {
        if (g < 1) throw DimensionMismatch("genus must be positive");
        for (int i = 0; i < dim(); ++i) (*this)(i, i) = 1;
    }

    static SpMatrix identity(int g) { return SpMatrix(g); }

    /// The standard form J itself (not symplectic-preserving check here).
    static SpMatrix standard_form(int g) {
        SpMatrix j(g);
        for (int i = 0; i < j.dim(); ++i) j(i, i) = 0;
        for (int i = 0; i < g; ++i) {
            j(i, g + i) = 1;
            j(g + i, i) = -1;
        }
        return j;
    }

    /// Rows of length 2g. Does not check the symplectic identity.
    static SpMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        const auto d = rows.size();
        if (d == 0 || d % 2 != 0) throw DimensionMismatch("symplectic matrix needs even size");
        SpMatrix m(static_cast<int>(d / 2));
        for (std::size_t i = 0; i < d; ++i) {
            if (rows[i].size() != d) throw DimensionMismatch("matrix is not square");
            for (std::size_t j = 0; j < d; ++j) m(int(i), int(j)) = rows[i][j];
        }
        return m;
    }

    int genus() const { return g_; }
    int dim() const { return 2 * g_; }

    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim() + j)]; }
    const Rational& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i * dim() + j)];
    }

    bool is_identity() const { return *this == identity(g_); }

    friend bool operator==(const SpMatrix&, const SpMatrix&) = default;

private:
    int g_;
    std::vector<Rational> a_;
};

inline SpMatrix operator*(const SpMatrix& a, const SpMatrix& b) {
    if (a.genus() != b.genus()) throw DimensionMismatch("symplectic matrices of different genus");
    SpMatrix c(a.genus());
    const int d = a.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rational s = 0;
            for (int k = 0; k < d; ++k)
                if (a(i, k) != 0 && b(k, j) != 0) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline SpMatrix transpose(const SpMatrix& a) {
    SpMatrix t(a.genus());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) t(i, j) = a(j, i);
    return t;
}

inline bool is_symplectic(const SpMatrix& a) {
    const SpMatrix j = SpMatrix::standard_form(a.genus());
    return transpose(a) * j * a == j;
}

/// A^-1 = -J A^T J for symplectic A.
inline SpMatrix inverse(const SpMatrix& a) {
    const SpMatrix j = SpMatrix::standard_form(a.genus());
    SpMatrix inv = j * transpose(a) * j;
    for (int r = 0; r < inv.dim(); ++r)
        for (int c = 0; c < inv.dim(); ++c) inv(r, c) = -inv(r, c);
    return inv;
}

inline Rational symplectic_pairing(const std::vector<Rational>& x, const std::vector<Rational>& y,
                                   int g) {
    Rational s = 0;
    for (int i = 0; i < g; ++i) s += x[i] * y[g + i] - x[g + i] * y[i];
    return s;
}

/// x -> x + k <x, c> c.
inline SpMatrix transvection(const std::vector<std::int64_t>& c, std::int64_t k, int g) {
    if (static_cast<int>(c.size()) != 2 * g) throw DimensionMismatch("class has wrong length");
    bool nonzero = false;
    for (auto v : c) nonzero |= (v != 0);
    if (!nonzero) throw ZeroVector("transvection along the zero class");
    // <x, c> = sum_j x_j (Jc)_j, so T = I + k c (Jc)^T.
    std::vector<Rational> jc(c.size());
    for (int i = 0; i < g; ++i) {
        jc[i] = Rational(c[g + i]);
        jc[g + i] = Rational(-c[i]);
    }
    SpMatrix t(g);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j) t(i, j) += Rational(k) * Rational(c[i]) * jc[j];
    return t;
}

struct TwistLetter {
    std::vector<std::int64_t> c;
    std::int64_t k = 1;
};

/// Word of twist powers acting on H_1; letters are multiplied in order,
/// product T_1 T_2 ... T_r.
struct TwistWord {
    int g = 1;
    std::vector<TwistLetter> letters;

    SpMatrix matrix() const {
        SpMatrix m = SpMatrix::identity(g);
        for (const auto& l : letters)
            if (l.k != 0) m = m * transvection(l.c, l.k, g);
        return m;
    }
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Basis of the right kernel of m (rows x cols) by exact row reduction.
inline std::vector<std::vector<Rational>> kernel_basis(RationalMatrix m, std::size_t cols) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rational inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Signature of a symmetric rational matrix by symmetric Gaussian reduction
/// (Sylvester's law of inertia).
inline int signature(RationalMatrix s) {
    int sig = 0;
    std::size_t n = s.size();
    while (n > 0) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (s[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (s[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;  // zero form
            // Congruence e_i -> e_i + e_j makes the (i,i) entry 2 s_ij.
            for (std::size_t k = 0; k < n; ++k) s[pi][k] += s[pj][k];
            for (std::size_t k = 0; k < n; ++k) s[k][pi] += s[k][pj];
            piv = pi;
        }
        const Rational d = s[piv][piv];
        sig += d > 0 ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == piv || s[i][piv] == 0) continue;
            const Rational f = s[i][piv] / d;
            for (std::size_t j = 0; j < n; ++j)
                if (s[piv][j] != 0) s[i][j] -= f * s[piv][j];
        }
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(piv));
        for (auto& row : s) row.erase(row.begin() + static_cast<std::ptrdiff_t>(piv));
        --n;
    }
    return sig;
}

/// Meyer's signature cocycle: the signature of the symmetrized form
///     <(x,y), (x',y')> = (x + y)^T J (I - B) y'
/// on V = {(x, y) : (A^-1 - I) x + (B - I) y = 0}.
inline int meyer_cocycle(const SpMatrix& a, const SpMatrix& b) {
    if (a.genus() != b.genus()) throw DimensionMismatch("meyer_cocycle: genus mismatch");
    const int g = a.genus();
    const int d = 2 * g;
    const SpMatrix ainv = inverse(a);
    RationalMatrix constraint(static_cast<std::size_t>(d), std::vector<Rational>(2 * d, Rational(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            constraint[i][j] = ainv(i, j) - (i == j ? 1 : 0);
            constraint[i][d + j] = b(i, j) - (i == j ? 1 : 0);
        }
    const auto basis = kernel_basis(std::move(constraint), static_cast<std::size_t>(2 * d));
    if (basis.empty()) return 0;
    // For each basis vector: u = x + y and w = (I - B) y.
    std::vector<std::vector<Rational>> u, w;
    for (const auto& v : basis) {
        std::vector<Rational> uu(d), ww(d);
        for (int i = 0; i < d; ++i) uu[i] = v[i] + v[d + i];
        for (int i = 0; i < d; ++i) {
            Rational s = v[d + i];
            for (int j = 0; j < d; ++j)
                if (b(i, j) != 0 && v[d + j] != 0) s -= b(i, j) * v[d + j];
            ww[i] = s;
        }
        u.push_back(std::move(uu));
        w.push_back(std::move(ww));
    }
    const std::size_t m = basis.size();
    RationalMatrix gram(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) gram[i][j] = symplectic_pairing(u[i], w[j], g);
    RationalMatrix sym(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) sym[i][j] = gram[i][j] + gram[j][i];
    return signature(std::move(sym));
}

}  // namespace bundlesig
