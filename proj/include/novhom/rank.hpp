#ifndef NOVHOM_RANK_HPP
#define NOVHOM_RANK_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "novhom/laurent.hpp"
#include "novhom/numeric.hpp"
#include "novhom/sparse.hpp"

namespace novhom {
namespace exact {

enum class RankMode { symbolic, specialized };

/// How a rank was obtained.  Symbolic certificates are exact; specialized
/// ones record the trial count and seed that produced them.
struct RankCertificate {
    int rank = 0;
    RankMode method = RankMode::symbolic;
    int trials = 0;       // 0 for symbolic
    std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------
// Gaussian elimination over a field (Rational or Fp); used for scalar
// matrices and for specialized-point ranks.
// ---------------------------------------------------------------------

template <class K>
int rank_field(const SparseMatrix<K>& m) {
    // column-indexed working rows
    std::vector<std::map<int, K>> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (const auto& [r, row] : m.rows_data()) {
        (void)r;
        rows.push_back(row);
    }
    int rank = 0;
    // eliminate column by column; pick the sparsest pivot row
    std::map<int, std::vector<std::size_t>> by_col;
    auto rebuild = [&]() {
        by_col.clear();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!rows[i].empty()) by_col[rows[i].begin()->first].push_back(i);
    };
    rebuild();
    while (!by_col.empty()) {
        auto it = by_col.begin();
        int col = it->first;
        // sparsest row with this leading column
        std::size_t pivot = it->second[0];
        for (std::size_t cand : it->second)
            if (rows[cand].size() < rows[pivot].size()) pivot = cand;
        K pv = rows[pivot].begin()->second;
        for (std::size_t i : it->second) {
            if (i == pivot) continue;
            K factor = coeff_traits<K>::div_exact(rows[i].begin()->second, pv);
            for (const auto& [c, v] : rows[pivot]) {
                K delta = -(factor * v);
                auto jt = rows[i].find(c);
                if (jt == rows[i].end()) {
                    if (!coeff_traits<K>::is_zero(delta)) rows[i].emplace(c, delta);
                } else {
                    jt->second += delta;
                    if (coeff_traits<K>::is_zero(jt->second)) rows[i].erase(jt);
                }
            }
            if (!rows[i].empty() && rows[i].begin()->first == col)
                throw internal_error("rank_field: elimination failed to clear column");
        }
        rows[pivot].clear();
        ++rank;
        rebuild();
    }
    return rank;
}

// ---------------------------------------------------------------------
// Fraction-free (Bareiss) elimination for matrices of Laurent polynomials.
// One-step Sylvester updates keep every intermediate entry a minor of the
// original matrix, so all divisions are exact in the polynomial ring.
// Pivots are chosen sparsity-greedily: fewest nonzeros in the candidate
// column, ties broken by the lowest column index, then the sparsest row.
// ---------------------------------------------------------------------

template <class C>
int rank_bareiss(const SparseMatrix<LaurentPoly<C>>& m) {
    using Poly = LaurentPoly<C>;
    const int R = m.rows(), Ccount = m.cols();
    std::vector<std::map<int, Poly>> rows(static_cast<std::size_t>(R));
    for (const auto& [r, row] : m.rows_data()) rows[static_cast<std::size_t>(r)] = row;

    std::vector<bool> row_active(static_cast<std::size_t>(R), true);
    std::vector<bool> col_active(static_cast<std::size_t>(Ccount), true);
    std::optional<Poly> prev_pivot;  // absent means 1
    int rank = 0;

    while (true) {
        // column nonzero counts over the active submatrix
        std::vector<int> col_nnz(static_cast<std::size_t>(Ccount), 0);
        bool any = false;
        for (int r = 0; r < R; ++r) {
            if (!row_active[static_cast<std::size_t>(r)]) continue;
            for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) {
                (void)v;
                if (col_active[static_cast<std::size_t>(c)]) {
                    ++col_nnz[static_cast<std::size_t>(c)];
                    any = true;
                }
            }
        }
        if (!any) break;
        int pcol = -1;
        for (int c = 0; c < Ccount; ++c) {
            if (!col_active[static_cast<std::size_t>(c)] || col_nnz[static_cast<std::size_t>(c)] == 0) continue;
            if (pcol < 0 || col_nnz[static_cast<std::size_t>(c)] < col_nnz[static_cast<std::size_t>(pcol)]) pcol = c;
        }
        int prow = -1;
        std::size_t best_len = std::numeric_limits<std::size_t>::max();
        for (int r = 0; r < R; ++r) {
            if (!row_active[static_cast<std::size_t>(r)]) continue;
            auto it = rows[static_cast<std::size_t>(r)].find(pcol);
            if (it == rows[static_cast<std::size_t>(r)].end()) continue;
            std::size_t len = rows[static_cast<std::size_t>(r)].size();
            if (len < best_len) {
                best_len = len;
                prow = r;
            }
        }

        const Poly pivot = rows[static_cast<std::size_t>(prow)].at(pcol);
        // full one-step update of the active submatrix:
        //   a'_{ij} = (a_{ij} * pivot - a_{i,pcol} * a_{prow,j}) / prev_pivot
        for (int r = 0; r < R; ++r) {
            if (!row_active[static_cast<std::size_t>(r)] || r == prow) continue;
            auto& row = rows[static_cast<std::size_t>(r)];
            Poly factor(pivot.nvars());
            auto fit = row.find(pcol);
            bool has_factor = fit != row.end();
            if (has_factor) factor = fit->second;
            std::map<int, Poly> updated;
            // union of supports, active columns only
            auto apply = [&](int c, const Poly* aij, const Poly* arj) {
                Poly num = aij ? (*aij) * pivot : Poly(pivot.nvars());
                if (has_factor && arj) num -= factor * (*arj);
                if (num.is_zero()) return;
                Poly val = prev_pivot ? Poly::div_exact(num, *prev_pivot) : num;
                if (!val.is_zero()) updated.emplace(c, std::move(val));
            };
            const auto& prow_data = rows[static_cast<std::size_t>(prow)];
            auto it_a = row.begin();
            auto it_p = prow_data.begin();
            while (it_a != row.end() || it_p != prow_data.end()) {
                int ca = it_a != row.end() ? it_a->first : std::numeric_limits<int>::max();
                int cp = it_p != prow_data.end() ? it_p->first : std::numeric_limits<int>::max();
                int c = std::min(ca, cp);
                const Poly* aij = (ca == c) ? &it_a->second : nullptr;
                const Poly* arj = (cp == c) ? &it_p->second : nullptr;
                if (col_active[static_cast<std::size_t>(c)] && c != pcol) apply(c, aij, arj);
                if (ca == c) ++it_a;
                if (cp == c) ++it_p;
            }
            row = std::move(updated);
        }
        row_active[static_cast<std::size_t>(prow)] = false;
        col_active[static_cast<std::size_t>(pcol)] = false;
        prev_pivot = pivot;
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------
// rank over the fraction field of the Laurent ring
// ---------------------------------------------------------------------

namespace detail {

/// random rational with numerator/denominator uniform in [1, 10^6];
/// strictly positive, so substituted points are never zero
inline Rational random_point(Rng& rng) {
    Integer num = rng.uniform(1, 1000000);
    Integer den = rng.uniform(1, 1000000);
    return Rational(num, den);
}

inline int specialized_rank_once(const SparseMatrix<LaurentQ>& m, int nvars, Rng& rng) {
    std::vector<Rational> point(static_cast<std::size_t>(nvars));
    for (auto& p : point) p = random_point(rng);
    SparseMatrix<Rational> s(m.rows(), m.cols());
    const Rational one(1);
    m.for_each([&](int i, int j, const LaurentQ& v) { s.set(i, j, v.evaluate(point, one)); });
    return rank_field(s);
}

inline int matrix_nvars(const SparseMatrix<LaurentQ>& m) {
    int nv = -1;
    m.for_each([&](int, int, const LaurentQ& v) {
        if (nv < 0)
            nv = v.nvars();
        else if (nv != v.nvars())
            throw usage_error("rank_fraction_field: mixed variable counts");
    });
    return nv < 0 ? 0 : nv;
}

}  // namespace detail

/// Exact rank of a Laurent-polynomial matrix over the rational-function
/// field.  Symbolic mode runs fraction-free elimination (over Z when the
/// entries are integral, which they are for twisted complexes); specialized
/// mode substitutes `trials` random rational points and takes the maximum
/// base-field rank.
inline RankCertificate rank_fraction_field(const SparseMatrix<LaurentQ>& m,
                                           RankMode mode = RankMode::symbolic,
                                           int trials = 5,
                                           std::uint64_t seed = 0) {
    RankCertificate cert;
    cert.method = mode;
    cert.seed = seed;
    if (mode == RankMode::symbolic) {
        cert.trials = 0;
        bool integral = true;
        m.for_each([&](int, int, const LaurentQ& v) {
            if (integral && !is_integral(v)) integral = false;
        });
        if (integral) {
            auto zi = m.map_entries<LaurentZ>([](const LaurentQ& v) { return to_integer_poly(v); });
            cert.rank = rank_bareiss(zi);
        } else {
            cert.rank = rank_bareiss(m);
        }
        return cert;
    }
    if (trials < 1) throw usage_error("rank_fraction_field: specialized mode needs trials >= 1");
    cert.trials = trials;
    int nvars = detail::matrix_nvars(m);
    Rng rng(seed);
    int best = 0;
    for (int t = 0; t < trials; ++t)
        best = std::max(best, detail::specialized_rank_once(m, nvars, rng));
    cert.rank = best;
    return cert;
}

/// same interface for matrices already reduced mod p
inline RankCertificate rank_fraction_field_p(const SparseMatrix<LaurentFp>& m) {
    RankCertificate cert;
    cert.method = RankMode::symbolic;
    cert.rank = rank_bareiss(m);
    return cert;
}

}  // namespace exact
}  // namespace novhom

#endif
