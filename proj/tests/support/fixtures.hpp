#ifndef NOVHOM_TEST_FIXTURES_HPP
#define NOVHOM_TEST_FIXTURES_HPP

#include <map>
#include <utility>
#include <vector>

#include "novhom/cellcomplex.hpp"
#include "novhom/critical.hpp"
#include "novhom/smith.hpp"

namespace fixtures {

using namespace novhom;

/// circle as a 3-cycle, cocycle of total weight 1 on the loop
inline cells::SimplicialComplex circle() {
    return cells::SimplicialComplex({{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}});
}

inline cells::Cocycle circle_cocycle(int w01 = 1, int w12 = 0, int w02 = 0) {
    std::map<std::pair<int, int>, std::vector<int>> weights;
    weights[{0, 1}] = {w01};
    weights[{1, 2}] = {w12};
    weights[{0, 2}] = {w02};
    return cells::Cocycle(1, std::move(weights));
}

/// 7-vertex triangulation of the torus (vertices Z_7, triangles
/// {i, i+1, i+3} and {i, i+2, i+3})
inline cells::SimplicialComplex torus7() {
    std::vector<std::vector<int>> simplices;
    for (int i = 0; i < 7; ++i) simplices.push_back({i});
    std::set<std::vector<int>> edges;
    auto add_tri = [&](int a, int b, int c) {
        std::vector<int> t = {a % 7, b % 7, c % 7};
        std::sort(t.begin(), t.end());
        simplices.push_back(t);
        for (int drop = 0; drop < 3; ++drop) {
            std::vector<int> e = t;
            e.erase(e.begin() + drop);
            edges.insert(e);
        }
    };
    for (int i = 0; i < 7; ++i) {
        add_tri(i, i + 1, i + 3);
        add_tri(i, i + 2, i + 3);
    }
    for (const auto& e : edges) simplices.push_back(e);
    return cells::SimplicialComplex(simplices);
}

/// cocycle generating one circle factor: the edge u -> u+d (d in 1..3)
/// crosses the seam exactly when it wraps past vertex 0
inline cells::Cocycle torus7_cocycle() {
    auto k = torus7();
    std::map<std::pair<int, int>, std::vector<int>> weights;
    for (const auto& e : k.simplices(1)) {
        int u = e[0], v = e[1];
        int w = (v - u >= 4) ? -1 : 0;
        weights[{u, v}] = {w};
    }
    return cells::Cocycle(1, std::move(weights));
}

inline cells::Cocycle zero_cocycle(const cells::SimplicialComplex& k, int rank = 1) {
    return cells::Cocycle::zero(k, rank);
}

/// genus-2 surface as a one-vertex CW complex; boundaries twisted along a
/// primitive class dual to the first handle loop
inline cells::TwistedComplex genus2_twisted() {
    SparseMatrix<LaurentQ> d1(1, 4), d2(4, 1);
    LaurentQ tm1 = parse_laurent("t1 - 1", 1);
    d1.set(0, 0, tm1);                 // edge a1: (t - 1) v
    d2.set(1, 0, tm1);                 // face: (t - 1) b1
    std::vector<SparseMatrix<LaurentQ>> bnd;
    bnd.emplace_back(0, 1);
    bnd.push_back(d1);
    bnd.push_back(d2);
    return cells::TwistedComplex(1, {1, 4, 1}, std::move(bnd));
}

inline cells::TwistedComplex genus2_untwisted() {
    SparseMatrix<LaurentQ> d1(1, 4), d2(4, 1);
    std::vector<SparseMatrix<LaurentQ>> bnd;
    bnd.emplace_back(0, 1);
    bnd.push_back(d1);
    bnd.push_back(d2);
    return cells::TwistedComplex(1, {1, 4, 1}, std::move(bnd));
}

/// real projective 3-space as a CW complex with one cell per degree
inline cells::TwistedComplex rp3_twisted(int nvars = 1) {
    SparseMatrix<LaurentQ> d1(1, 1), d2(1, 1), d3(1, 1);
    d2.set(0, 0, LaurentQ::constant(nvars, Rational(2)));
    std::vector<SparseMatrix<LaurentQ>> bnd;
    bnd.emplace_back(0, 1);
    bnd.push_back(d1);
    bnd.push_back(d2);
    bnd.push_back(d3);
    return cells::TwistedComplex(nvars, {1, 1, 1, 1}, std::move(bnd));
}

/// torus as a one-vertex CW complex, class dual to the first loop
inline cells::TwistedComplex torus_cw_twisted(int wa = 1, int wb = 0) {
    SparseMatrix<LaurentQ> d1(1, 2), d2(2, 1);
    auto unit_minus_one = [&](int w) {
        LaurentQ p(1);
        p.add_term(ExpVec{w}, Rational(1));
        p.add_term(ExpVec{0}, Rational(-1));
        return p;  // t^w - 1 (zero when w == 0)
    };
    d1.set(0, 0, unit_minus_one(wa));
    d1.set(0, 1, unit_minus_one(wb));
    // face attached along the commutator [a, b]
    d2.set(0, 0, unit_minus_one(wb) * LaurentQ::constant(1, Rational(-1)));  // 1 - t^wb
    d2.set(1, 0, unit_minus_one(wa));                                        // t^wa - 1
    std::vector<SparseMatrix<LaurentQ>> bnd;
    bnd.emplace_back(0, 1);
    bnd.push_back(d1);
    bnd.push_back(d2);
    return cells::TwistedComplex(1, {1, 2, 1}, std::move(bnd));
}

/// two cells with a multiplication-by-2 relation
inline cells::TwistedComplex mult2_twisted() {
    SparseMatrix<LaurentQ> d1(1, 1);
    d1.set(0, 0, LaurentQ::constant(1, Rational(2)));
    std::vector<SparseMatrix<LaurentQ>> bnd;
    bnd.emplace_back(0, 1);
    bnd.push_back(d1);
    return cells::TwistedComplex(1, {1, 1}, std::move(bnd));
}

/// Random connected simplicial complex of dimension <= 3 with at most
/// `max_simplices` simplices in total.
inline cells::SimplicialComplex random_complex(Rng& rng, int max_simplices = 40) {
    int nv = static_cast<int>(rng.uniform(4, 8));
    std::vector<std::vector<int>> simplices;
    for (int v = 0; v < nv; ++v) simplices.push_back({v});
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < nv; ++v) edges.insert({v, v + 1});  // spanning path
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v)
            if (rng.uniform01() < 0.4) edges.insert({u, v});
    auto has_edge = [&](int a, int b) { return edges.count({std::min(a, b), std::max(a, b)}) > 0; };
    std::vector<std::vector<int>> tris;
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v)
            for (int w = v + 1; w < nv; ++w)
                if (has_edge(u, v) && has_edge(v, w) && has_edge(u, w) && rng.uniform01() < 0.5)
                    tris.push_back({u, v, w});
    std::set<std::vector<int>> tri_set(tris.begin(), tris.end());
    auto has_tri = [&](std::vector<int> t) {
        std::sort(t.begin(), t.end());
        return tri_set.count(t) > 0;
    };
    std::vector<std::vector<int>> tets;
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v)
            for (int w = v + 1; w < nv; ++w)
                for (int x = w + 1; x < nv; ++x)
                    if (has_tri({u, v, w}) && has_tri({u, v, x}) && has_tri({u, w, x}) &&
                        has_tri({v, w, x}) && rng.uniform01() < 0.5)
                        tets.push_back({u, v, w, x});

    std::size_t budget = static_cast<std::size_t>(max_simplices);
    for (const auto& e : edges)
        if (simplices.size() < budget) simplices.push_back({e.first, e.second});
    // adding a higher cell requires all faces already included
    std::set<std::vector<int>> included(simplices.begin(), simplices.end());
    auto try_add = [&](const std::vector<int>& s) {
        if (simplices.size() >= budget) return;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            if (!included.count(f)) return;
        }
        simplices.push_back(s);
        included.insert(s);
    };
    for (const auto& t : tris) try_add(t);
    for (const auto& t : tets) try_add(t);
    return cells::SimplicialComplex(simplices);
}

/// Sample a valid cocycle by drawing from the integer kernel of the
/// cocycle-condition matrix (rows = triangles, columns = edges).
inline cells::Cocycle random_cocycle(const cells::SimplicialComplex& k, Rng& rng, int rank) {
    const auto& edge_list = k.simplices(1);
    const auto& tri_list = k.simplices(2);
    SparseMatrix<Integer> cond(static_cast<int>(tri_list.size()), static_cast<int>(edge_list.size()));
    for (std::size_t t = 0; t < tri_list.size(); ++t) {
        const auto& tri = tri_list[t];
        cond.add(static_cast<int>(t), k.simplex_index(1, {tri[0], tri[1]}), Integer(1));
        cond.add(static_cast<int>(t), k.simplex_index(1, {tri[1], tri[2]}), Integer(1));
        cond.add(static_cast<int>(t), k.simplex_index(1, {tri[0], tri[2]}), Integer(-1));
    }
    auto basis = exact::integer_kernel_basis(cond);
    std::map<std::pair<int, int>, std::vector<int>> weights;
    for (const auto& e : edge_list) weights[{e[0], e[1]}] = std::vector<int>(static_cast<std::size_t>(rank), 0);
    for (int q = 0; q < rank; ++q) {
        std::vector<Integer> combo(edge_list.size(), Integer(0));
        for (const auto& vec : basis) {
            Integer c = rng.uniform(-2, 2);
            for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += c * vec[j];
        }
        for (std::size_t j = 0; j < edge_list.size(); ++j) {
            const auto& e = edge_list[j];
            weights[{e[0], e[1]}][static_cast<std::size_t>(q)] = static_cast<int>(combo[j]);
        }
    }
    return cells::Cocycle(rank, std::move(weights));
}

/// Structural comparison of two critical sets on the torus: equal sizes and
/// a one-to-one match within the radius (indices must agree).  Sorting by
/// coordinates is not enough because a point on the periodic seam may
/// legitimately report as either 0 or 2*pi.
template <class PointSet>
inline bool same_critical_sets(const PointSet& a, const PointSet& b, int periodic_dims,
                               double radius = 1e-6) {
    if (a.points.size() != b.points.size()) return false;
    std::vector<bool> used(b.points.size(), false);
    for (const auto& p : a.points) {
        bool matched = false;
        for (std::size_t j = 0; j < b.points.size(); ++j) {
            if (used[j]) continue;
            if (novhom::smooth::detail::torus_distance(p.x, b.points[j].x, periodic_dims) <= radius &&
                p.index == b.points[j].index) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace fixtures

#endif
