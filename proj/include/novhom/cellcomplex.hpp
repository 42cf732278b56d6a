#ifndef NOVHOM_CELLCOMPLEX_HPP
#define NOVHOM_CELLCOMPLEX_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "novhom/laurent.hpp"
#include "novhom/sparse.hpp"

namespace novhom {
namespace cells {

// ---------------------------------------------------------------------
// Twisted chain complex: one sparse Laurent matrix per positive degree.
// boundary(d) maps degree-d chains to degree d-1; the composite of
// consecutive boundaries must vanish identically.
// ---------------------------------------------------------------------

class TwistedComplex {
public:
    TwistedComplex() = default;
    TwistedComplex(int nvars, std::vector<int> counts, std::vector<SparseMatrix<LaurentQ>> boundaries)
        : nvars_(nvars), counts_(std::move(counts)), d_(std::move(boundaries)) {
        if (d_.size() != counts_.size())
            throw usage_error("TwistedComplex: need one boundary matrix per degree (degree 0 is empty)");
        for (std::size_t k = 0; k < counts_.size(); ++k) {
            int expected_rows = k == 0 ? 0 : counts_[k - 1];
            if (d_[k].rows() != expected_rows || d_[k].cols() != counts_[k])
                throw usage_error("TwistedComplex: boundary dimensions do not match cell counts in degree " +
                                  std::to_string(k));
        }
    }

    int nvars() const { return nvars_; }
    int dim() const { return static_cast<int>(counts_.size()) - 1; }
    const std::vector<int>& cell_counts() const { return counts_; }
    int cells(int degree) const {
        return degree >= 0 && degree <= dim() ? counts_[static_cast<std::size_t>(degree)] : 0;
    }
    /// boundary map C_d -> C_{d-1}; zero-sized matrix outside [1, dim]
    const SparseMatrix<LaurentQ>& boundary(int d) const {
        static const SparseMatrix<LaurentQ> empty(0, 0);
        if (d < 1 || d > dim()) return empty;
        return d_[static_cast<std::size_t>(d)];
    }

    long long euler() const {
        long long chi = 0;
        for (std::size_t k = 0; k < counts_.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(counts_[k]);
        return chi;
    }

    bool is_integral() const {
        for (const auto& m : d_) {
            bool ok = true;
            m.for_each([&](int, int, const LaurentQ& v) {
                if (ok && !novhom::is_integral(v)) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    /// throws with the failing degree when the chain identity fails
    void validate_square_zero() const {
        for (int k = 1; k < dim(); ++k) {
            SparseMatrix<LaurentQ> prod = boundary(k) * boundary(k + 1);
            if (!prod.is_zero())
                throw usage_error("TwistedComplex: boundary composite is nonzero between degrees " +
                                  std::to_string(k + 1) + " and " + std::to_string(k));
        }
    }

    bool square_zero() const {
        for (int k = 1; k < dim(); ++k)
            if (!(boundary(k) * boundary(k + 1)).is_zero()) return false;
        return true;
    }

    /// substitute t_j := point_j in every boundary matrix
    std::vector<SparseMatrix<Rational>> specialize(const std::vector<Rational>& point) const {
        for (const auto& p : point)
            if (p == 0) throw usage_error("TwistedComplex: specialization point has a zero coordinate");
        std::vector<SparseMatrix<Rational>> out;
        const Rational one(1);
        for (const auto& m : d_)
            out.push_back(m.map_entries<Rational>([&](const LaurentQ& v) { return v.evaluate(point, one); }));
        return out;
    }

    std::vector<SparseMatrix<Rational>> specialize_at_one() const {
        return specialize(std::vector<Rational>(static_cast<std::size_t>(nvars_), Rational(1)));
    }

    /// reinterpret over a larger variable set (t_i keeps its index)
    TwistedComplex padded_to(int nvars) const {
        if (nvars < nvars_) throw usage_error("TwistedComplex: cannot shrink variable set");
        if (nvars == nvars_) return *this;
        std::vector<SparseMatrix<LaurentQ>> nd;
        for (const auto& m : d_)
            nd.push_back(m.map_entries<LaurentQ>([&](const LaurentQ& v) {
                LaurentQ w(nvars);
                for (const auto& [e, c] : v.terms()) {
                    ExpVec e2(static_cast<std::size_t>(nvars), 0);
                    std::copy(e.begin(), e.end(), e2.begin());
                    w.add_term(e2, c);
                }
                return w;
            }));
        return TwistedComplex(nvars, counts_, std::move(nd));
    }

private:
    int nvars_ = 0;
    std::vector<int> counts_;
    std::vector<SparseMatrix<LaurentQ>> d_;
};

// ---------------------------------------------------------------------
// Simplicial complexes with increasing-vertex orientation
// ---------------------------------------------------------------------

class SimplicialComplex {
public:
    /// Build from a list of simplices (each a vertex tuple, any order).
    /// The list must be closed under faces; missing faces are an error.
    explicit SimplicialComplex(const std::vector<std::vector<int>>& simplices) {
        int max_v = -1;
        for (auto s : simplices) {
            if (s.empty()) throw usage_error("SimplicialComplex: empty simplex");
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw usage_error("SimplicialComplex: repeated vertex in a simplex");
            if (s.front() < 0) throw usage_error("SimplicialComplex: negative vertex index");
            max_v = std::max(max_v, s.back());
            int d = static_cast<int>(s.size()) - 1;
            if (static_cast<int>(by_dim_.size()) <= d) by_dim_.resize(static_cast<std::size_t>(d) + 1);
            by_dim_[static_cast<std::size_t>(d)].push_back(std::move(s));
        }
        nverts_ = max_v + 1;
        for (auto& level : by_dim_) {
            std::sort(level.begin(), level.end());
            if (std::adjacent_find(level.begin(), level.end()) != level.end())
                throw usage_error("SimplicialComplex: duplicate simplex");
        }
        for (std::size_t d = 0; d < by_dim_.size(); ++d) {
            index_.emplace_back();
            for (std::size_t i = 0; i < by_dim_[d].size(); ++i)
                index_[d].emplace(by_dim_[d][i], static_cast<int>(i));
        }
        // closure under faces
        for (std::size_t d = 1; d < by_dim_.size(); ++d)
            for (const auto& s : by_dim_[d])
                for (std::size_t i = 0; i < s.size(); ++i) {
                    std::vector<int> face = s;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                    if (!index_[d - 1].count(face))
                        throw usage_error("SimplicialComplex: not closed under faces");
                }
        if (by_dim_.empty()) throw usage_error("SimplicialComplex: no simplices");
    }

    int vertex_count() const { return nverts_; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<std::vector<int>>& simplices(int d) const {
        static const std::vector<std::vector<int>> none;
        if (d < 0 || d > dim()) return none;
        return by_dim_[static_cast<std::size_t>(d)];
    }
    int simplex_index(int d, const std::vector<int>& s) const {
        auto it = index_[static_cast<std::size_t>(d)].find(s);
        if (it == index_[static_cast<std::size_t>(d)].end())
            throw internal_error("SimplicialComplex: unknown simplex");
        return it->second;
    }
    std::vector<int> cell_counts() const {
        std::vector<int> c;
        for (const auto& level : by_dim_) c.push_back(static_cast<int>(level.size()));
        return c;
    }
    long long euler() const {
        long long chi = 0;
        for (std::size_t d = 0; d < by_dim_.size(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[d].size());
        return chi;
    }

    /// untwisted boundary matrix in degree d, signs alternating by face position
    SparseMatrix<Integer> boundary_matrix(int d) const {
        int rows = d >= 1 ? static_cast<int>(simplices(d - 1).size()) : 0;
        int cols = static_cast<int>(simplices(d).size());
        SparseMatrix<Integer> m(rows, cols);
        if (d < 1) return m;
        const auto& cellsd = simplices(d);
        for (std::size_t j = 0; j < cellsd.size(); ++j) {
            const auto& s = cellsd[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                m.add(simplex_index(d - 1, face), static_cast<int>(j), (i % 2 == 0) ? Integer(1) : Integer(-1));
            }
        }
        return m;
    }

    /// sorted adjacency of the 1-skeleton
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(nverts_));
        for (const auto& e : simplices(1)) {
            adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
            adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
        }
        for (auto& v : adj) std::sort(v.begin(), v.end());
        return adj;
    }

    /// relabel vertices by a permutation (testing hook: downstream ranks
    /// must not depend on labels)
    SimplicialComplex relabeled(const std::vector<int>& perm) const {
        std::vector<std::vector<int>> all;
        for (int d = 0; d <= dim(); ++d)
            for (const auto& s : simplices(d)) {
                std::vector<int> t;
                t.reserve(s.size());
                for (int v : s) t.push_back(perm[static_cast<std::size_t>(v)]);
                all.push_back(std::move(t));
            }
        return SimplicialComplex(all);
    }

private:
    int nverts_ = 0;
    std::vector<std::vector<std::vector<int>>> by_dim_;
    std::vector<std::map<std::vector<int>, int>> index_;
};

// ---------------------------------------------------------------------
// Integral 1-cocycles: integer weight vectors on oriented edges
// ---------------------------------------------------------------------

class Cocycle {
public:
    Cocycle(int rank, std::map<std::pair<int, int>, std::vector<int>> weights)
        : rank_(rank), w_(std::move(weights)) {
        if (rank < 0) throw usage_error("Cocycle: negative rank");
        if (rank > 4) throw usage_error("Cocycle: rank > 4 is unsupported");
        for (auto& [e, v] : w_) {
            if (e.first >= e.second)
                throw usage_error("Cocycle: edge keys must be (u, v) with u < v");
            if (static_cast<int>(v.size()) != rank)
                throw usage_error("Cocycle: weight arity mismatch");
        }
    }

    int rank() const { return rank_; }

    /// weight of the oriented edge u -> v; reversing negates
    std::vector<int> weight(int u, int v) const {
        bool flip = u > v;
        if (flip) std::swap(u, v);
        auto it = w_.find({u, v});
        if (it == w_.end())
            throw usage_error("Cocycle: missing weight on edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
        if (!flip) return it->second;
        std::vector<int> neg = it->second;
        for (auto& x : neg) x = -x;
        return neg;
    }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return w_.count({u, v}) > 0;
    }

    const std::map<std::pair<int, int>, std::vector<int>>& weights() const { return w_; }

    static Cocycle zero(const SimplicialComplex& k, int rank) {
        std::map<std::pair<int, int>, std::vector<int>> w;
        for (const auto& e : k.simplices(1))
            w[{e[0], e[1]}] = std::vector<int>(static_cast<std::size_t>(rank), 0);
        return Cocycle(rank, std::move(w));
    }

private:
    int rank_;
    std::map<std::pair<int, int>, std::vector<int>> w_;
};

struct CocycleReport {
    bool ok = true;
    std::vector<std::vector<int>> violating_triangles;
};

/// The cocycle condition on every 2-simplex [u v w]:
/// weight(uv) + weight(vw) - weight(uw) = 0 componentwise.
inline CocycleReport validate_cocycle(const SimplicialComplex& k, const Cocycle& z) {
    for (const auto& e : k.simplices(1))
        if (!z.has_edge(e[0], e[1]))
            throw usage_error("validate_cocycle: missing weight on edge (" + std::to_string(e[0]) + "," +
                              std::to_string(e[1]) + ")");
    CocycleReport rep;
    for (const auto& tri : k.simplices(2)) {
        auto wuv = z.weight(tri[0], tri[1]);
        auto wvw = z.weight(tri[1], tri[2]);
        auto wuw = z.weight(tri[0], tri[2]);
        bool good = true;
        for (int i = 0; i < z.rank(); ++i)
            if (wuv[static_cast<std::size_t>(i)] + wvw[static_cast<std::size_t>(i)] !=
                wuw[static_cast<std::size_t>(i)])
                good = false;
        if (!good) {
            rep.ok = false;
            rep.violating_triangles.push_back(tri);
        }
    }
    return rep;
}

/// Heights of vertex lifts: h(root) = 0 and h(v) = h(u) + weight(uv)
/// along breadth-first tree edges (neighbors visited in index order).
inline std::vector<std::vector<int>> vertex_heights(const SimplicialComplex& k, const Cocycle& z,
                                                    int root = 0) {
    const int n = k.vertex_count();
    if (root < 0 || root >= n) throw usage_error("vertex_heights: root out of range");
    auto adj = k.adjacency();
    std::vector<std::vector<int>> h(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> queue;
    h[static_cast<std::size_t>(root)] = std::vector<int>(static_cast<std::size_t>(z.rank()), 0);
    seen[static_cast<std::size_t>(root)] = true;
    queue.push_back(root);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            auto w = z.weight(u, v);
            auto hv = h[static_cast<std::size_t>(u)];
            for (int i = 0; i < z.rank(); ++i) hv[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(i)];
            h[static_cast<std::size_t>(v)] = std::move(hv);
            seen[static_cast<std::size_t>(v)] = true;
            queue.push_back(v);
        }
    }
    for (bool s : seen)
        if (!s) throw usage_error("vertex_heights: 1-skeleton is disconnected");
    return h;
}

/// Assemble the twisted boundary operator of the integral cover.  Each
/// simplex is lifted with its minimal vertex at its BFS height; the only
/// face picking up a deck shift is the one dropping the anchor.
inline TwistedComplex twist(const SimplicialComplex& k, const Cocycle& z, int root = 0) {
    auto rep = validate_cocycle(k, z);
    if (!rep.ok) {
        std::string msg = "twist: cocycle condition fails on";
        for (const auto& tri : rep.violating_triangles) {
            msg += " [";
            for (std::size_t i = 0; i < tri.size(); ++i)
                msg += (i ? " " : "") + std::to_string(tri[i]);
            msg += "]";
        }
        throw usage_error(msg);
    }
    auto h = vertex_heights(k, z, root);
    const int r = z.rank();

    std::vector<int> counts = k.cell_counts();
    std::vector<SparseMatrix<LaurentQ>> boundaries;
    boundaries.emplace_back(0, counts[0]);
    for (int d = 1; d <= k.dim(); ++d) {
        SparseMatrix<LaurentQ> m(counts[static_cast<std::size_t>(d - 1)], counts[static_cast<std::size_t>(d)]);
        const auto& cellsd = k.simplices(d);
        for (std::size_t j = 0; j < cellsd.size(); ++j) {
            const auto& s = cellsd[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                int row = k.simplex_index(d - 1, face);
                ExpVec exp(static_cast<std::size_t>(r), 0);
                if (i == 0) {
                    // the face anchor is s[1]; its height inside the lift of s
                    // is h(s[0]) + weight(s[0] -> s[1])
                    auto w = z.weight(s[0], s[1]);
                    for (int q = 0; q < r; ++q)
                        exp[static_cast<std::size_t>(q)] =
                            h[static_cast<std::size_t>(s[0])][static_cast<std::size_t>(q)] +
                            w[static_cast<std::size_t>(q)] -
                            h[static_cast<std::size_t>(s[1])][static_cast<std::size_t>(q)];
                }
                Rational sign = (i % 2 == 0) ? 1 : -1;
                m.add(row, static_cast<int>(j), LaurentQ::monomial(exp, sign));
            }
        }
        boundaries.push_back(std::move(m));
    }
    TwistedComplex tc(r, std::move(counts), std::move(boundaries));
    tc.validate_square_zero();
    return tc;
}

/// weight'(uv) = weight(uv) + potential(v) - potential(u)
inline Cocycle coboundary_gauge(const Cocycle& z, const std::vector<std::vector<int>>& potential) {
    std::map<std::pair<int, int>, std::vector<int>> w;
    for (const auto& [e, wt] : z.weights()) {
        auto [u, v] = e;
        if (u >= static_cast<int>(potential.size()) || v >= static_cast<int>(potential.size()))
            throw usage_error("coboundary_gauge: potential missing a vertex");
        std::vector<int> nw = wt;
        for (int i = 0; i < z.rank(); ++i)
            nw[static_cast<std::size_t>(i)] += potential[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] -
                                               potential[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
        w[e] = std::move(nw);
    }
    return Cocycle(z.rank(), std::move(w));
}

// ---------------------------------------------------------------------
// Tensor product of twisted complexes (graded Leibniz rule).  Cells of
// degree d are blocks (i, d-i) with i ascending; within a block the
// first factor's index is major.
// ---------------------------------------------------------------------

namespace detail {

inline int product_block_offset(const std::vector<int>& ca, const std::vector<int>& cb, int d, int i) {
    int off = 0;
    for (int k = 0; k < i; ++k) {
        int j = d - k;
        if (k < static_cast<int>(ca.size()) && j >= 0 && j < static_cast<int>(cb.size()))
            off += ca[static_cast<std::size_t>(k)] * cb[static_cast<std::size_t>(j)];
    }
    return off;
}

}  // namespace detail

inline TwistedComplex product(const TwistedComplex& a, const TwistedComplex& b) {
    if (a.nvars() != b.nvars())
        throw usage_error("product: variable counts differ; pad one factor to the union first");
    const auto& ca = a.cell_counts();
    const auto& cb = b.cell_counts();
    const int dim = a.dim() + b.dim();
    std::vector<int> counts(static_cast<std::size_t>(dim) + 1, 0);
    for (int i = 0; i <= a.dim(); ++i)
        for (int j = 0; j <= b.dim(); ++j)
            counts[static_cast<std::size_t>(i + j)] += ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)];

    auto cell_index = [&](int i, int j, int ai, int bi) {
        return detail::product_block_offset(ca, cb, i + j, i) + ai * cb[static_cast<std::size_t>(j)] + bi;
    };

    std::vector<SparseMatrix<LaurentQ>> boundaries;
    boundaries.emplace_back(0, counts[0]);
    for (int d = 1; d <= dim; ++d) {
        SparseMatrix<LaurentQ> m(counts[static_cast<std::size_t>(d - 1)], counts[static_cast<std::size_t>(d)]);
        for (int i = 0; i <= std::min(d, a.dim()); ++i) {
            int j = d - i;
            if (j < 0 || j > b.dim()) continue;
            for (int ai = 0; ai < ca[static_cast<std::size_t>(i)]; ++ai) {
                for (int bi = 0; bi < cb[static_cast<std::size_t>(j)]; ++bi) {
                    int col = cell_index(i, j, ai, bi);
                    if (i >= 1) {
                        const auto& da = a.boundary(i);
                        da.for_each([&](int row, int c, const LaurentQ& v) {
                            if (c != ai) return;
                            m.add(cell_index(i - 1, j, row, bi), col, v);
                        });
                    }
                    if (j >= 1) {
                        const auto& db = b.boundary(j);
                        Rational sgn = (i % 2 == 0) ? 1 : -1;
                        db.for_each([&](int row, int c, const LaurentQ& v) {
                            if (c != bi) return;
                            m.add(cell_index(i, j - 1, ai, row), col, v * LaurentQ::constant(v.nvars(), sgn));
                        });
                    }
                }
            }
        }
        boundaries.push_back(std::move(m));
    }
    TwistedComplex out(a.nvars(), std::move(counts), std::move(boundaries));
    out.validate_square_zero();
    return out;
}

}  // namespace cells
}  // namespace novhom

#endif
