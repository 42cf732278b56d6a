#ifndef NOVHOM_SMITH_HPP
#define NOVHOM_SMITH_HPP

#include <utility>
#include <vector>

#include "novhom/laurent.hpp"
#include "novhom/numeric.hpp"
#include "novhom/sparse.hpp"

namespace novhom {
namespace exact {

// ---------------------------------------------------------------------
// Dense univariate polynomials over a field, for the Euclidean SNF.
// Coefficients are stored low degree first; no trailing zeros.
// ---------------------------------------------------------------------

template <class K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(const K& k) {
        UniPoly p;
        if (!coeff_traits<K>::is_zero(k)) p.c_.push_back(k);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }
    const K& leading() const {
        if (c_.empty()) throw internal_error("UniPoly: leading coefficient of zero");
        return c_.back();
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<K> r = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
        const auto& s = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
        for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    UniPoly operator-() const {
        std::vector<K> r = c_;
        for (auto& x : r) x = -x;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.c_[0] - a.c_[0]);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    UniPoly& operator+=(const UniPoly& o) { *this = *this + o; return *this; }
    UniPoly& operator-=(const UniPoly& o) { *this = *this - o; return *this; }
    UniPoly& operator*=(const UniPoly& o) { *this = *this * o; return *this; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// long division: a = q*b + r with deg r < deg b
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw internal_error("UniPoly: division by zero");
        UniPoly q, r = a;
        if (a.degree() >= b.degree()) {
            q.c_.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), b.leading() - b.leading());
        }
        while (!r.is_zero() && r.degree() >= b.degree()) {
            K factor = coeff_traits<K>::div_exact(r.leading(), b.leading());
            int shift = r.degree() - b.degree();
            q.c_[static_cast<std::size_t>(shift)] += factor;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r.c_[i + static_cast<std::size_t>(shift)] -= factor * b.c_[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        K lead = leading();
        std::vector<K> r = c_;
        for (auto& x : r) x = coeff_traits<K>::div_exact(x, lead);
        return UniPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && coeff_traits<K>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

// ---------------------------------------------------------------------
// Euclidean-domain traits for the SNF
// ---------------------------------------------------------------------

template <class D>
struct euclid_traits;

template <>
struct euclid_traits<Integer> {
    static bool is_zero(const Integer& a) { return a == 0; }
    static bool norm_less(const Integer& a, const Integer& b) {
        return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
    }
    /// balanced division: remainder magnitude at most |b|/2
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        Integer q = a / b;
        Integer r = a - q * b;
        if (r != 0) {
            Integer b2 = boost::multiprecision::abs(b);
            if (2 * boost::multiprecision::abs(r) > b2) {
                if ((r > 0) == (b > 0)) { q += 1; r -= b; }
                else { q -= 1; r += b; }
            }
        }
        return {q, r};
    }
    /// canonical associate is nonnegative; returns the unit to divide by
    static Integer canonical_unit(const Integer& a) { return a < 0 ? Integer(-1) : Integer(1); }
    static Integer one_like(const Integer&) { return Integer(1); }
};

template <class K>
struct euclid_traits<UniPoly<K>> {
    using D = UniPoly<K>;
    static bool is_zero(const D& a) { return a.is_zero(); }
    static bool norm_less(const D& a, const D& b) { return a.degree() < b.degree(); }
    static std::pair<D, D> divmod(const D& a, const D& b) { return D::divmod(a, b); }
    /// canonical associate is monic
    static D canonical_unit(const D& a) { return D::constant(a.leading()); }
    static D one_like(const D& a) { return D::constant(coeff_traits<K>::one(a.leading())); }
};

// ---------------------------------------------------------------------
// Smith normal form over a Euclidean domain.  Returns the invariant
// factor chain d1 | d2 | ... (canonical associates) and, on request, the
// unimodular transforms with U * A * V = S.
// ---------------------------------------------------------------------

template <class D>
struct SnfResult {
    std::vector<D> factors;       // nonzero invariant factors, divisibility chain
    int rank = 0;                 // == factors.size()
    bool with_transforms = false;
    std::vector<std::vector<D>> U;  // rows x rows
    std::vector<std::vector<D>> V;  // cols x cols
};

template <class D>
SnfResult<D> smith_normal_form(std::vector<std::vector<D>> a, int rows, int cols,
                               bool track_transforms = false) {
    using T = euclid_traits<D>;
    SnfResult<D> out;
    out.with_transforms = track_transforms;
    const int R = rows;
    const int C = cols;
    if (static_cast<int>(a.size()) != R || (R > 0 && static_cast<int>(a[0].size()) != C))
        throw internal_error("smith_normal_form: dimension mismatch");

    // a sample element to seed one/zero for rings with runtime parameters
    const D* sample = nullptr;
    for (const auto& row : a)
        for (const auto& x : row)
            if (!T::is_zero(x)) { sample = &x; break; }
    if (!sample) {
        out.rank = 0;
        if (track_transforms) {
            // U, V cannot be materialized without a sample element; callers
            // requesting transforms on all-zero matrices get empty identities,
            // which only makes sense for default-constructible rings
            out.U.assign(static_cast<std::size_t>(R), {});
            out.V.assign(static_cast<std::size_t>(C), {});
            for (int i = 0; i < R; ++i) {
                out.U[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(R), D{});
                if constexpr (std::is_same_v<D, Integer>)
                    out.U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
            }
            for (int j = 0; j < C; ++j) {
                out.V[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(C), D{});
                if constexpr (std::is_same_v<D, Integer>)
                    out.V[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1;
            }
        }
        return out;
    }
    const D one = T::one_like(*sample);
    const D zero = *sample - *sample;

    std::vector<std::vector<D>>& U = out.U;
    std::vector<std::vector<D>>& V = out.V;
    if (track_transforms) {
        U.assign(static_cast<std::size_t>(R), std::vector<D>(static_cast<std::size_t>(R), zero));
        V.assign(static_cast<std::size_t>(C), std::vector<D>(static_cast<std::size_t>(C), zero));
        for (int i = 0; i < R; ++i) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = one;
        for (int j = 0; j < C; ++j) V[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = one;
    }

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        if (track_transforms) std::swap(U[static_cast<std::size_t>(i)], U[static_cast<std::size_t>(j)]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
        if (track_transforms)
            for (auto& row : V) std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
    };
    // row_i -= q * row_j
    auto row_axpy = [&](int i, int j, const D& q) {
        for (int c = 0; c < C; ++c)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -
                q * a[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        if (track_transforms)
            for (int c = 0; c < R; ++c)
                U[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    U[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -
                    q * U[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    };
    // col_i -= q * col_j
    auto col_axpy = [&](int i, int j, const D& q) {
        for (int r = 0; r < R; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] -
                q * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        if (track_transforms)
            for (int r = 0; r < C; ++r)
                V[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
                    V[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] -
                    q * V[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    };

    int t = 0;
    const int bound = std::min(R, C);
    while (t < bound) {
        // minimal-norm nonzero entry in the active region
        int pi = -1, pj = -1;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j) {
                const D& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (T::is_zero(x)) continue;
                if (pi < 0 || T::norm_less(x, a[static_cast<std::size_t>(pi)][static_cast<std::size_t>(pj)])) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // active region is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            const D pivot = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
            // clear the pivot column
            for (int i = t + 1; i < R; ++i) {
                const D& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                if (T::is_zero(x)) continue;
                auto [q, r] = T::divmod(x, pivot);
                row_axpy(i, t, q);
                if (!T::is_zero(r)) {
                    swap_rows(t, i);  // strictly smaller norm at the pivot
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // clear the pivot row
            for (int j = t + 1; j < C; ++j) {
                const D& x = a[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                if (T::is_zero(x)) continue;
                auto [q, r] = T::divmod(x, pivot);
                col_axpy(j, t, q);
                if (!T::is_zero(r)) {
                    swap_cols(t, j);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the submatrix for the chain
            for (int i = t + 1; i < R && clean; ++i)
                for (int j = t + 1; j < C && clean; ++j) {
                    const D& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    if (T::is_zero(x)) continue;
                    auto [q, r] = T::divmod(x, pivot);
                    (void)q;
                    if (!T::is_zero(r)) {
                        row_axpy(t, i, -one);  // pull the offending row in and restart
                        clean = false;
                    }
                }
        }
        ++t;
    }

    for (int k = 0; k < bound; ++k) {
        D& d = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (T::is_zero(d)) break;
        const D u = T::canonical_unit(d);
        auto [q, r] = T::divmod(d, u);
        if (!T::is_zero(r)) throw internal_error("smith_normal_form: unit normalization failed");
        if (track_transforms) {
            // divide row k of U by the same unit
            for (int c = 0; c < R; ++c) {
                auto [qu, ru] = T::divmod(U[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)], u);
                if (!T::is_zero(ru)) throw internal_error("smith_normal_form: non-unit canonicalization");
                U[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = qu;
            }
        }
        d = q;
        out.factors.push_back(d);
    }
    out.rank = static_cast<int>(out.factors.size());
    return out;
}

// ---------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------

/// Integer Smith normal form of a sparse integer matrix.
inline SnfResult<Integer> snf_integer(const SparseMatrix<Integer>& m, bool track_transforms = false) {
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(m.rows()),
                                        std::vector<Integer>(static_cast<std::size_t>(m.cols()), Integer(0)));
    m.for_each([&](int i, int j, const Integer& v) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    });
    return smith_normal_form(std::move(a), m.rows(), m.cols(), track_transforms);
}

/// convenience overload for scalar matrices carried as Laurent data
inline SnfResult<Integer> snf_integer(const SparseMatrix<LaurentQ>& m, bool track_transforms = false) {
    SparseMatrix<Integer> zi(m.rows(), m.cols());
    m.for_each([&](int i, int j, const LaurentQ& v) {
        if (!v.is_constant()) throw usage_error("snf_integer: entries must be scalar integers");
        if (v.is_zero()) return;
        Rational c = v.terms().begin()->second;
        if (denominator(c) != 1) throw usage_error("snf_integer: entries must be scalar integers");
        zi.set(i, j, numerator(c));
    });
    return snf_integer(zi, track_transforms);
}

namespace detail {

/// shift every row by t^(-min exponent) so entries become ordinary
/// polynomials; row scaling by a monomial is a unit operation over the
/// Laurent ring and does not change the invariant factors' associates
template <class C>
std::vector<std::vector<UniPoly<C>>> laurent_to_unipoly_rows(const SparseMatrix<LaurentPoly<C>>& m) {
    std::vector<std::vector<UniPoly<C>>> a(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        a[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(m.cols()), UniPoly<C>());
    std::vector<int> row_shift(static_cast<std::size_t>(m.rows()), 0);
    m.for_each([&](int i, int, const LaurentPoly<C>& v) {
        if (v.nvars() > 1) throw usage_error("snf_univariate: multivariate input is unsupported");
        if (!v.is_zero() && v.nvars() == 1)
            row_shift[static_cast<std::size_t>(i)] =
                std::min(row_shift[static_cast<std::size_t>(i)], v.min_exponent(0));
    });
    m.for_each([&](int i, int j, const LaurentPoly<C>& v) {
        if (v.is_zero()) return;
        int shift = -row_shift[static_cast<std::size_t>(i)];
        int deg_max = v.nvars() == 1 ? v.max_exponent(0) : 0;
        std::vector<C> coeffs(static_cast<std::size_t>(deg_max + shift + 1),
                              v.terms().begin()->second - v.terms().begin()->second);
        for (const auto& [e, c] : v.terms()) {
            int k = v.nvars() == 1 ? e[0] : 0;
            coeffs[static_cast<std::size_t>(k + shift)] = c;
        }
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = UniPoly<C>(std::move(coeffs));
    });
    return a;
}

/// canonical Laurent representative: monic with zero minimal exponent
template <class C>
LaurentPoly<C> unipoly_to_canonical_laurent(const UniPoly<C>& p) {
    LaurentPoly<C> r(1);
    if (p.is_zero()) return r;
    UniPoly<C> m = p.monic();
    int low = 0;
    const auto& cs = m.coeffs();
    while (low <= m.degree() && coeff_traits<C>::is_zero(cs[static_cast<std::size_t>(low)])) ++low;
    for (int k = low; k <= m.degree(); ++k)
        r.add_term(ExpVec{k - low}, cs[static_cast<std::size_t>(k)]);
    return r;
}

}  // namespace detail

/// Invariant factors of a univariate Laurent matrix over Q[t,1/t] (or
/// F_p[t,1/t]), normalized monic with zero minimal exponent.  Unit factors
/// are reported as the constant 1.
template <class C>
std::vector<LaurentPoly<C>> snf_univariate(const SparseMatrix<LaurentPoly<C>>& m) {
    static_assert(!std::is_same_v<C, Integer>,
                  "snf_univariate needs field coefficients (Q or F_p)");
    auto rows = detail::laurent_to_unipoly_rows(m);
    auto snf = smith_normal_form(std::move(rows), m.rows(), m.cols(), false);
    std::vector<LaurentPoly<C>> out;
    out.reserve(snf.factors.size());
    for (const auto& f : snf.factors) out.push_back(detail::unipoly_to_canonical_laurent(f));
    return out;
}

/// Integer kernel basis of a sparse integer matrix (columns v with Av = 0),
/// read off the column transform of the SNF.
inline std::vector<std::vector<Integer>> integer_kernel_basis(const SparseMatrix<Integer>& m) {
    auto snf = snf_integer(m, true);
    std::vector<std::vector<Integer>> basis;
    for (int j = snf.rank; j < m.cols(); ++j) {
        std::vector<Integer> v(static_cast<std::size_t>(m.cols()));
        for (int i = 0; i < m.cols(); ++i)
            v[static_cast<std::size_t>(i)] = snf.V[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace exact
}  // namespace novhom

#endif
