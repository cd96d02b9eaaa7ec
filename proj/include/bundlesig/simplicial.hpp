#pragma once

// Finite simplicial complexes, simplicial maps, combinatorial local degree,
// validation of unfolded simplicial branched coverings and the transfer on
// rational simplicial cochains.
//
// Simplices are sorted vertex tuples; the sorted order fixes the reference
// orientation used by chains and cochains.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace bundlesig {

using Simplex = std::vector<int>;

inline std::string to_string(const Simplex& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out + ")";
}

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closes `generators` under taking faces. Vertices not in any generator
    /// are still present as 0-simplices.
    SimplicialComplex(int vertex_count, const std::vector<Simplex>& generators)
        : vertex_count_(vertex_count) {
        if (vertex_count < 0) throw ParseError("negative vertex count");
        std::set<Simplex> all;
        for (int v = 0; v < vertex_count; ++v) all.insert({v});
        for (Simplex s : generators) {
            std::sort(s.begin(), s.end());
            if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end())
                throw ParseError("simplex with repeated vertices " + to_string(s));
            if (s.front() < 0 || s.back() >= vertex_count)
                throw ParseError("simplex vertex out of range " + to_string(s));
            maximal_input_.push_back(s);
            const auto k = s.size();
            for (unsigned mask = 1; mask < (1u << k); ++mask) {
                Simplex f;
                for (std::size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) f.push_back(s[i]);
                all.insert(std::move(f));
            }
        }
        for (const auto& s : all) {
            const auto d = s.size() - 1;
            if (by_dim_.size() <= d) {
                by_dim_.resize(d + 1);
                index_.resize(d + 1);
            }
            index_[d][s] = by_dim_[d].size();
            by_dim_[d].push_back(s);
        }
    }

    int vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    const std::vector<Simplex>& simplices(int k) const {
        static const std::vector<Simplex> none;
        return (k < 0 || k > dimension()) ? none : by_dim_[static_cast<std::size_t>(k)];
    }

    std::size_t count(int k) const { return simplices(k).size(); }

    std::optional<std::size_t> index_of(const Simplex& s) const {
        if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
        const auto& idx = index_[s.size() - 1];
        auto it = idx.find(s);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Every simplex lies in a simplex of top dimension.
    bool is_homogeneous() const {
        const int n = dimension();
        if (n < 0) return false;
        std::set<Simplex> covered;
        for (const auto& top : simplices(n)) {
            const auto k = top.size();
            for (unsigned mask = 1; mask < (1u << k); ++mask) {
                Simplex f;
                for (std::size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) f.push_back(top[i]);
                covered.insert(std::move(f));
            }
        }
        for (int d = 0; d <= n; ++d)
            for (const auto& s : simplices(d))
                if (!covered.count(s)) return false;
        return true;
    }

    /// All simplices containing s (the open star as a set of open cells).
    std::vector<Simplex> open_star(const Simplex& s) const {
        std::vector<Simplex> out;
        for (int d = static_cast<int>(s.size()) - 1; d <= dimension(); ++d)
            for (const auto& t : simplices(d))
                if (std::includes(t.begin(), t.end(), s.begin(), s.end())) out.push_back(t);
        return out;
    }

private:
    int vertex_count_ = 0;
    std::vector<Simplex> maximal_input_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Faces of s with one vertex removed; face i omits s[i] and carries sign (-1)^i.
inline std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() < 2) return out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

class SimplicialMap {
public:
    SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<int> vertex_map)
        : source_(std::move(source)), target_(std::move(target)), vmap_(std::move(vertex_map)) {
        if (static_cast<int>(vmap_.size()) != source_.vertex_count())
            throw DimensionMismatch("vertex map has wrong length");
        for (int v : vmap_)
            if (v < 0 || v >= target_.vertex_count())
                throw DimensionMismatch("vertex map image out of range");
        for (int d = 0; d <= source_.dimension(); ++d)
            for (const auto& s : source_.simplices(d))
                if (!target_.contains(image(s)))
                    throw DimensionMismatch("not simplicial: image of " + to_string(s) +
                                            " is not a simplex");
    }

    const SimplicialComplex& source() const { return source_; }
    const SimplicialComplex& target() const { return target_; }
    int operator()(int v) const { return vmap_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& vertex_map() const { return vmap_; }

    /// Image simplex (sorted, duplicates collapsed).
    Simplex image(const Simplex& s) const {
        Simplex t;
        for (int v : s) t.push_back(vmap_[static_cast<std::size_t>(v)]);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
    }

    bool is_nondegenerate() const {
        for (int d = 0; d <= source_.dimension(); ++d)
            for (const auto& s : source_.simplices(d))
                if (image(s).size() != s.size()) return false;
        return true;
    }

    /// +1 or -1: orientation of (phi(s_0), ..., phi(s_k)) relative to the
    /// sorted image. Requires s to map nondegenerately.
    int orientation_sign(const Simplex& s) const {
        std::vector<int> img;
        for (int v : s) img.push_back(vmap_[static_cast<std::size_t>(v)]);
        int sign = 1;
        for (std::size_t i = 0; i < img.size(); ++i)
            for (std::size_t j = i + 1; j < img.size(); ++j)
                if (img[i] > img[j]) sign = -sign;
        return sign;
    }

    /// Simplices of the source mapping onto t.
    std::vector<Simplex> preimages(const Simplex& t) const {
        std::vector<Simplex> out;
        for (const auto& s : source_.simplices(static_cast<int>(t.size()) - 1))
            if (image(s) == t) out.push_back(s);
        return out;
    }

private:
    SimplicialComplex source_;
    SimplicialComplex target_;
    std::vector<int> vmap_;
};

/// Local degree at points of the open simplex s: the largest number of
/// open-star cells over a common image cell. For simplicial maps the
/// neighborhood infimum is already attained on the open star.
inline int local_degree(const SimplicialMap& phi, const Simplex& s) {
    if (!phi.is_nondegenerate()) throw DegenerateMap("local degree needs a nondegenerate map");
    if (!phi.source().contains(s)) throw DimensionMismatch("not a simplex: " + to_string(s));
    std::map<Simplex, int> fiber;
    for (const auto& u : phi.source().open_star(s)) ++fiber[phi.image(u)];
    int best = 0;
    for (const auto& [t, c] : fiber) best = std::max(best, c);
    return best;
}

inline int local_degree(const SimplicialMap& phi, int vertex) { return local_degree(phi, Simplex{vertex}); }

struct DegreeReport {
    int degree = 0;                        // max fiber size over image cells
    std::map<int, int> vertex_local_degree;
    std::vector<Simplex> branch;           // simplices of the branch subcomplex
    /// deg = sum of local degrees over the fiber of every target cell.
    bool summation_holds = false;
};

struct ValidationReport {
    bool valid = false;
    int degree = 0;
    DegreeReport degrees;
    std::vector<std::string> diagnostics;
    /// The neighborhood condition is checked through connectivity of
    /// punctured open stars, a combinatorial proxy.
    bool neighborhood_proxy_holds = true;
};

/// Closure of a set of simplices inside the complex.
inline std::set<Simplex> closure_in(const SimplicialComplex& k, const std::vector<Simplex>& gens) {
    std::set<Simplex> out;
    for (Simplex s : gens) {
        std::sort(s.begin(), s.end());
        if (!k.contains(s)) throw DimensionMismatch("branch simplex not in complex: " + to_string(s));
        const auto n = s.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            out.insert(std::move(f));
        }
    }
    return out;
}

namespace detail {

/// Whether the cells of st(t) outside `removed` form one connected set
/// under the face relation.
inline bool punctured_star_connected(const SimplicialComplex& y, const Simplex& t,
                                     const std::set<Simplex>& removed) {
    std::vector<Simplex> cells;
    for (auto& u : y.open_star(t))
        if (!removed.count(u)) cells.push_back(u);
    if (cells.empty()) return false;
    std::vector<int> comp(cells.size(), -1);
    std::queue<std::size_t> q;
    comp[0] = 0;
    q.push(0);
    std::size_t seen = 1;
    while (!q.empty()) {
        const auto i = q.front();
        q.pop();
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (comp[j] >= 0) continue;
            const auto& a = cells[i];
            const auto& b = cells[j];
            const bool face = a.size() < b.size() ? std::includes(b.begin(), b.end(), a.begin(), a.end())
                                                  : std::includes(a.begin(), a.end(), b.begin(), b.end());
            if (face) {
                comp[j] = 0;
                q.push(j);
                ++seen;
            }
        }
    }
    return seen == cells.size();
}

}  // namespace detail

class BranchedCovering;

/// Checks the three conditions for an unfolded simplicial branched covering
/// (with the neighborhood condition through the punctured-star proxy), then
/// the degree summation identity at every target cell.
///
/// Throws NotHomogeneous, NotSurjective or DegenerateMap on structural
/// problems; soft failures land in `diagnostics` with valid = false.
inline ValidationReport validate_unfolded(const SimplicialMap& phi, const std::vector<Simplex>& branch) {
    const auto& x = phi.source();
    const auto& y = phi.target();
    if (!x.is_homogeneous() || !y.is_homogeneous() || x.dimension() != y.dimension())
        throw NotHomogeneous("source and target must be homogeneous of equal dimension");
    const int n = x.dimension();
    for (int d = 0; d <= n; ++d)
        for (const auto& t : y.simplices(d))
            if (phi.preimages(t).empty()) throw NotSurjective("no preimage of " + to_string(t));
    if (!phi.is_nondegenerate()) throw DegenerateMap("map collapses a simplex");

    ValidationReport r;
    const std::set<Simplex> x1 = closure_in(x, branch);
    std::set<Simplex> y1;
    for (const auto& s : x1) y1.insert(phi.image(s));
    r.degrees.branch.assign(x1.begin(), x1.end());

    for (const auto& s : x1)
        if (static_cast<int>(s.size()) - 1 > n - 2)
            r.diagnostics.push_back("branch simplex " + to_string(s) + " has codimension < 2");

    // (1) phi^-1(phi(X1)) = X1.
    for (int d = 0; d <= n; ++d)
        for (const auto& s : x.simplices(d))
            if (y1.count(phi.image(s)) && !x1.count(s))
                r.diagnostics.push_back("cell " + to_string(s) + " maps into phi(X1) but is not in X1");

    // (2) constant fiber size m off X1.
    int m = -1;
    for (int d = 0; d <= n; ++d)
        for (const auto& t : y.simplices(d)) {
            if (y1.count(t)) continue;
            const int c = static_cast<int>(phi.preimages(t).size());
            if (m < 0) m = c;
            if (c != m)
                r.diagnostics.push_back("fiber over " + to_string(t) + " has " + std::to_string(c) +
                                        " points, expected " + std::to_string(m));
        }

    // (3) proxy: punctured open stars of branch image cells are connected.
    for (const auto& t : y1)
        if (!detail::punctured_star_connected(y, t, y1)) {
            r.neighborhood_proxy_holds = false;
            r.diagnostics.push_back("punctured star of " + to_string(t) + " is disconnected (proxy)");
        }

    int degree = 0;
    for (int d = 0; d <= n; ++d)
        for (const auto& t : y.simplices(d))
            degree = std::max(degree, static_cast<int>(phi.preimages(t).size()));
    r.degree = degree;
    r.degrees.degree = degree;
    for (int v = 0; v < x.vertex_count(); ++v) r.degrees.vertex_local_degree[v] = local_degree(phi, v);

    r.degrees.summation_holds = true;
    for (int d = 0; d <= n; ++d)
        for (const auto& t : y.simplices(d)) {
            int sum = 0;
            for (const auto& s : phi.preimages(t)) sum += local_degree(phi, s);
            if (sum != degree) {
                r.degrees.summation_holds = false;
                r.diagnostics.push_back("local degrees over " + to_string(t) + " sum to " +
                                        std::to_string(sum));
            }
        }
    if (m >= 0 && m != degree)
        r.diagnostics.push_back("unbranched fiber size " + std::to_string(m) + " differs from degree");
    r.valid = r.diagnostics.empty();
    return r;
}

/// Rational k-cochain: one value per k-simplex, in the complex's order.
struct Cochain {
    int degree = 0;
    std::vector<Rational> values;

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

inline Cochain zero_cochain(const SimplicialComplex& k, int degree) {
    return {degree, std::vector<Rational>(k.count(degree), Rational(0))};
}

/// (delta c)(s) = sum_i (-1)^i c(face_i s).
inline Cochain coboundary(const SimplicialComplex& k, const Cochain& c) {
    Cochain out = zero_cochain(k, c.degree + 1);
    const auto& cells = k.simplices(c.degree + 1);
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const auto faces = facets(cells[idx]);
        Rational v = 0;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const auto& val = c.values[*k.index_of(faces[i])];
            v += (i % 2 == 0) ? val : Rational(-val);
        }
        out.values[idx] = v;
    }
    return out;
}

class BranchedCovering {
public:
    BranchedCovering(SimplicialMap map, std::vector<Simplex> branch)
        : map_(std::move(map)), branch_(std::move(branch)), report_(validate_unfolded(map_, branch_)) {
        if (report_.valid) {
            for (int d = 0; d <= map_.source().dimension(); ++d)
                for (const auto& s : map_.source().simplices(d)) weight_[s] = local_degree(map_, s);
        }
    }

    const SimplicialMap& map() const { return map_; }
    const ValidationReport& report() const { return report_; }
    bool validated() const { return report_.valid; }
    int degree() const { return report_.degree; }
    int weight(const Simplex& s) const { return weight_.at(s); }

private:
    SimplicialMap map_;
    std::vector<Simplex> branch_;
    ValidationReport report_;
    std::map<Simplex, int> weight_;
};

/// (phi^* c)(s) = sign(s) c(phi(s)).
inline Cochain pullback(const SimplicialMap& phi, const Cochain& c) {
    Cochain out = zero_cochain(phi.source(), c.degree);
    const auto& cells = phi.source().simplices(c.degree);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto t = phi.image(cells[i]);
        if (t.size() != cells[i].size()) continue;  // degenerate cell pulls back to 0
        out.values[i] = phi.orientation_sign(cells[i]) * c.values[*phi.target().index_of(t)];
    }
    return out;
}

/// Transfer: (tau c)(t) = sum over s over t of localdeg(s) sign(s) c(s).
/// Satisfies tau(phi^* c) = deg(phi) c and commutes with the coboundary.
inline Cochain transfer(const BranchedCovering& cov, const Cochain& c) {
    if (!cov.validated()) throw NotValidated("transfer needs a validated branched covering");
    const auto& phi = cov.map();
    Cochain out = zero_cochain(phi.target(), c.degree);
    const auto& cells = phi.source().simplices(c.degree);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto t = phi.image(cells[i]);
        out.values[*phi.target().index_of(t)] +=
            Rational(cov.weight(cells[i]) * phi.orientation_sign(cells[i])) * c.values[i];
    }
    return out;
}

/// Integer chain of top-dimensional cells.
using Chain = std::map<Simplex, std::int64_t>;

inline Chain boundary(const Chain& c) {
    Chain out;
    for (const auto& [s, coef] : c) {
        const auto faces = facets(s);
        for (std::size_t i = 0; i < faces.size(); ++i) out[faces[i]] += (i % 2 == 0 ? coef : -coef);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// A coherent orientation of a closed pseudomanifold, or NotOrientable.
inline Chain fundamental_chain(const SimplicialComplex& k) {
    const int n = k.dimension();
    const auto& tops = k.simplices(n);
    if (tops.empty()) throw NotOrientable("empty complex");
    std::map<Simplex, std::vector<std::pair<std::size_t, int>>> incidence;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        const auto faces = facets(tops[i]);
        for (std::size_t f = 0; f < faces.size(); ++f) incidence[faces[f]].push_back({i, f % 2 ? -1 : 1});
    }
    for (const auto& [f, inc] : incidence)
        if (inc.size() != 2) throw NotOrientable("face " + to_string(f) + " is not shared by two cells");
    std::vector<int> orient(tops.size(), 0);
    for (std::size_t start = 0; start < tops.size(); ++start) {
        if (orient[start]) continue;
        orient[start] = 1;
        std::queue<std::size_t> q;
        q.push(start);
        while (!q.empty()) {
            const auto i = q.front();
            q.pop();
            const auto faces = facets(tops[i]);
            for (std::size_t f = 0; f < faces.size(); ++f) {
                const int sign_here = orient[i] * (f % 2 ? -1 : 1);
                for (auto [j, sj] : incidence[faces[f]]) {
                    if (j == i) continue;
                    const int want = -sign_here * sj;
                    if (orient[j] == 0) {
                        orient[j] = want;
                        q.push(j);
                    } else if (orient[j] != want) {
                        throw NotOrientable("incoherent orientation around " + to_string(faces[f]));
                    }
                }
            }
        }
    }
    Chain c;
    for (std::size_t i = 0; i < tops.size(); ++i) c[tops[i]] = orient[i];
    return c;
}

/// Preimage of an oriented fundamental chain of the target with inherited
/// orientations; throws NotOrientable when the given target chain is not a
/// cycle or the preimage fails to be one.
inline Chain fundamental_cycle_of_cover(const BranchedCovering& cov, const Chain& target_cycle) {
    if (!cov.validated()) throw NotValidated("cover not validated");
    if (!boundary(target_cycle).empty()) throw NotOrientable("target chain is not a cycle");
    const auto& phi = cov.map();
    Chain out;
    for (const auto& s : phi.source().simplices(phi.source().dimension())) {
        auto it = target_cycle.find(phi.image(s));
        if (it == target_cycle.end()) continue;
        out[s] += it->second * phi.orientation_sign(s);
    }
    if (!boundary(out).empty()) throw NotOrientable("preimage chain has nonzero boundary");
    return out;
}

inline Chain fundamental_cycle_of_cover(const BranchedCovering& cov) {
    return fundamental_cycle_of_cover(cov, fundamental_chain(cov.map().target()));
}

}  // namespace bundlesig
