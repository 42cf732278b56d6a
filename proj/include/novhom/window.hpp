#ifndef NOVHOM_WINDOW_HPP
#define NOVHOM_WINDOW_HPP

#include <vector>

#include "novhom/cellcomplex.hpp"
#include "novhom/novikov.hpp"
#include "novhom/smith.hpp"

namespace novhom {
namespace novikov {

/// Renormalize cell lifts so that every boundary exponent is non-positive.
/// Processing degrees bottom-up, each cell is shifted to sit just below its
/// faces; this is a unit rescaling of the basis (a combinatorial choice of
/// fundamental domain) and leaves all fraction-field ranks unchanged.
inline cells::TwistedComplex normalize_nonpositive(const cells::TwistedComplex& tc) {
    const int r = tc.nvars();
    const int dim = tc.dim();
    std::vector<std::vector<ExpVec>> shift(static_cast<std::size_t>(dim) + 1);
    for (int d = 0; d <= dim; ++d)
        shift[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(tc.cells(d)),
                                                  ExpVec(static_cast<std::size_t>(r), 0));

    std::vector<SparseMatrix<LaurentQ>> boundaries;
    boundaries.emplace_back(0, tc.cells(0));
    for (int d = 1; d <= dim; ++d) {
        const auto& m = tc.boundary(d);
        // column shifts: s(sigma) <= s(tau) - maxexp(entry) componentwise
        std::vector<ExpVec>& s_col = shift[static_cast<std::size_t>(d)];
        std::vector<bool> seen(static_cast<std::size_t>(tc.cells(d)), false);
        m.for_each([&](int row, int col, const LaurentQ& v) {
            const ExpVec& s_row = shift[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(row)];
            for (int q = 0; q < r; ++q) {
                int bound = s_row[static_cast<std::size_t>(q)] - v.max_exponent(q);
                auto& sq = s_col[static_cast<std::size_t>(col)][static_cast<std::size_t>(q)];
                if (!seen[static_cast<std::size_t>(col)])
                    sq = bound;
                else
                    sq = std::min(sq, bound);
            }
            seen[static_cast<std::size_t>(col)] = true;
        });
        SparseMatrix<LaurentQ> nm(m.rows(), m.cols());
        m.for_each([&](int row, int col, const LaurentQ& v) {
            ExpVec delta(static_cast<std::size_t>(r));
            for (int q = 0; q < r; ++q)
                delta[static_cast<std::size_t>(q)] =
                    s_col[static_cast<std::size_t>(col)][static_cast<std::size_t>(q)] -
                    shift[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(row)][static_cast<std::size_t>(q)];
            nm.set(row, col, v.shifted(delta));
        });
        boundaries.push_back(std::move(nm));
    }
    cells::TwistedComplex out(r, tc.cell_counts(), std::move(boundaries));
    out.validate_square_zero();
    return out;
}

/// Relative chain complex of the (2k+1)^r-fold stack of the fundamental
/// domain modulo its negative side, with per-degree integer homology ranks.
struct WindowComplex {
    int radius = 0;
    int translates = 1;            // (2k+1)^r
    std::vector<int> cell_counts;  // per degree, after stacking
    std::vector<int> ranks;        // rank H_i(W_k, negative side)
};

struct WindowOptions {
    long long cap_cells = 200000;  // refuse larger stacks
};

inline WindowComplex window_homology(const cells::TwistedComplex& tc, int radius,
                                     const WindowOptions& opt = {}) {
    if (radius < 0) throw usage_error("window_homology: radius must be nonnegative");
    const int r = tc.nvars();
    if (r < 1) throw usage_error("window_homology: cocycle rank must be at least 1");
    if (!tc.is_integral()) throw usage_error("window_homology: complex must be defined over the integers");

    const int side = 2 * radius + 1;
    long long nbox = 1;
    for (int q = 0; q < r; ++q) nbox *= side;
    long long total_base = 0;
    for (int d = 0; d <= tc.dim(); ++d) total_base += tc.cells(d);
    if (nbox * total_base > opt.cap_cells)
        throw resource_error("window_homology: stack of " + std::to_string(nbox * total_base) +
                             " cells exceeds the cap of " + std::to_string(opt.cap_cells));

    cells::TwistedComplex norm = normalize_nonpositive(tc);

    // translate lattice {-k..k}^r, mixed-radix enumeration
    auto lambda_index = [&](const ExpVec& lam) -> long long {
        long long idx = 0;
        for (int q = 0; q < r; ++q) idx = idx * side + (lam[static_cast<std::size_t>(q)] + radius);
        return idx;
    };
    std::vector<ExpVec> lattice;
    lattice.reserve(static_cast<std::size_t>(nbox));
    ExpVec lam(static_cast<std::size_t>(r), -radius);
    for (long long i = 0; i < nbox; ++i) {
        lattice.push_back(lam);
        for (int q = r - 1; q >= 0; --q) {
            if (++lam[static_cast<std::size_t>(q)] <= radius) break;
            lam[static_cast<std::size_t>(q)] = -radius;
        }
    }

    WindowComplex out;
    out.radius = radius;
    out.translates = static_cast<int>(nbox);
    const int dim = norm.dim();
    for (int d = 0; d <= dim; ++d)
        out.cell_counts.push_back(static_cast<int>(nbox) * norm.cells(d));

    std::vector<int> rank_d(static_cast<std::size_t>(dim) + 2, 0);
    std::vector<SparseMatrix<Integer>> stacked;
    for (int d = 1; d <= dim; ++d) {
        SparseMatrix<Integer> m(out.cell_counts[static_cast<std::size_t>(d - 1)],
                                out.cell_counts[static_cast<std::size_t>(d)]);
        const auto& base = norm.boundary(d);
        for (const auto& lamv : lattice) {
            long long li = lambda_index(lamv);
            base.for_each([&](int row, int col, const LaurentQ& v) {
                for (const auto& [mu, c] : v.terms()) {
                    // boundary terms route to the translate lam + mu; exponents
                    // are non-positive, so terms either stay in the box or
                    // leave through the negative side and are quotiented
                    ExpVec target = lamv;
                    bool inside = true;
                    for (int q = 0; q < r && inside; ++q) {
                        target[static_cast<std::size_t>(q)] += mu[static_cast<std::size_t>(q)];
                        if (target[static_cast<std::size_t>(q)] < -radius) inside = false;
                        if (target[static_cast<std::size_t>(q)] > radius)
                            throw internal_error("window_homology: positive-side leak after normalization");
                    }
                    if (!inside) continue;
                    m.add(static_cast<int>(lambda_index(target)) * norm.cells(d - 1) + row,
                          static_cast<int>(li) * norm.cells(d) + col, numerator(c));
                }
            });
        }
        stacked.push_back(std::move(m));
    }
    for (std::size_t i = 0; i + 1 < stacked.size(); ++i)
        if (!(stacked[i] * stacked[i + 1]).is_zero())
            throw internal_error("window_homology: truncated complex is not a complex");

    for (int d = 1; d <= dim; ++d)
        rank_d[static_cast<std::size_t>(d)] = exact::snf_integer(stacked[static_cast<std::size_t>(d - 1)]).rank;
    for (int i = 0; i <= dim; ++i)
        out.ranks.push_back(out.cell_counts[static_cast<std::size_t>(i)] - rank_d[static_cast<std::size_t>(i)] -
                            rank_d[static_cast<std::size_t>(i) + 1]);
    return out;
}

struct WindowReport {
    int radius = 0;
    int multiplicity = 1;  // (2k+1)^r
    std::vector<int> window_ranks;
    std::vector<int> betti;
    bool holds = true;
};

/// (2k+1)^r * b_i <= rank H_i(W_k, negative side), per degree
inline WindowReport verify_window_inequality(const cells::TwistedComplex& tc, const NovikovProfile& profile,
                                             int radius, const WindowOptions& opt = {}) {
    WindowComplex wc = window_homology(tc, radius, opt);
    WindowReport rep;
    rep.radius = radius;
    rep.multiplicity = wc.translates;
    rep.window_ranks = wc.ranks;
    rep.betti = profile.betti;
    for (int i = 0; i <= tc.dim(); ++i) {
        long long lhs = static_cast<long long>(rep.multiplicity) * profile.betti_at(i);
        long long rhs = i < static_cast<int>(wc.ranks.size()) ? wc.ranks[static_cast<std::size_t>(i)] : 0;
        if (lhs > rhs) rep.holds = false;
    }
    return rep;
}

}  // namespace novikov
}  // namespace novhom

#endif
