#ifndef NOVHOM_LAURENT_HPP
#define NOVHOM_LAURENT_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "novhom/numeric.hpp"

namespace novhom {

using ExpVec = std::vector<int>;

/// Multivariate Laurent polynomial in variables t1..tr over a coefficient
/// ring C (Integer, Rational or Fp).  Terms are kept in a lex-ordered map
/// from exponent vector to nonzero coefficient; the zero polynomial has an
/// empty map.  Values are immutable in spirit: every operation returns a
/// fresh polynomial.
template <class C>
class LaurentPoly {
public:
    using Terms = std::map<ExpVec, C>;

    explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {
        if (nvars < 0) throw usage_error("LaurentPoly: negative variable count");
    }

    static LaurentPoly constant(int nvars, const C& c) {
        LaurentPoly p(nvars);
        if (!coeff_traits<C>::is_zero(c)) p.terms_.emplace(ExpVec(nvars, 0), c);
        return p;
    }

    /// c * t^exps
    static LaurentPoly monomial(const ExpVec& exps, const C& c) {
        LaurentPoly p(static_cast<int>(exps.size()));
        if (!coeff_traits<C>::is_zero(c)) p.terms_.emplace(exps, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    bool is_monomial() const { return terms_.size() == 1; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == ExpVec(nvars_, 0));
    }

    void add_term(const ExpVec& e, const C& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw usage_error("LaurentPoly: exponent arity mismatch");
        if (coeff_traits<C>::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (coeff_traits<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_compatible(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_compatible(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_compatible(b);
        LaurentPoly r(a.nvars_);
        ExpVec e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// leading (lex-greatest exponent) term
    std::pair<ExpVec, C> leading_term() const {
        if (terms_.empty()) throw internal_error("LaurentPoly: leading term of zero");
        return *terms_.rbegin();
    }

    /// Exact quotient a/b; only valid when b divides a (used by the
    /// fraction-free elimination, where divisibility is guaranteed).
    static LaurentPoly div_exact(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_compatible(b);
        if (b.is_zero()) throw internal_error("LaurentPoly: division by zero");
        if (a.is_zero()) return LaurentPoly(a.nvars_);
        LaurentPoly rem = a;
        LaurentPoly quot(a.nvars_);
        auto [be, bc] = b.leading_term();
        // cancel lex-leading terms; each loop emits one quotient term, and
        // the quotient support lies in the Minkowski difference of supports
        std::size_t guard = 1;
        for (int v = 0; v < a.nvars_; ++v) {
            long long span = static_cast<long long>(a.max_exponent(v)) - a.min_exponent(v) +
                             static_cast<long long>(b.max_exponent(v)) - b.min_exponent(v) + 1;
            guard *= static_cast<std::size_t>(span);
        }
        guard += 2;
        while (!rem.is_zero()) {
            if (guard-- == 0) throw internal_error("LaurentPoly: non-exact division");
            auto [re, rc] = rem.leading_term();
            ExpVec qe(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) qe[i] = re[i] - be[i];
            C qc = coeff_traits<C>::div_exact(rc, bc);
            LaurentPoly qt = monomial(qe, qc);
            quot += qt;
            rem -= qt * b;
        }
        return quot;
    }

    /// substitute t_i := points[i]; needs a full point, returns a scalar
    template <class K>
    K evaluate(const std::vector<K>& points, const K& one) const {
        if (static_cast<int>(points.size()) != nvars_)
            throw usage_error("LaurentPoly: evaluation point arity mismatch");
        K acc = one - one;  // zero in K
        for (const auto& [e, c] : terms_) {
            K term = coeff_to<K>(c, one);
            for (int i = 0; i < nvars_; ++i) {
                int k = e[i];
                K base = points[i];
                if (k < 0) { base = one / base; k = -k; }
                for (int j = 0; j < k; ++j) term *= base;
            }
            acc += term;
        }
        return acc;
    }

    /// min exponent of variable v across all terms (0 for the zero poly)
    int min_exponent(int v) const {
        int m = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            if (first || e[v] < m) m = e[v];
            first = false;
        }
        return m;
    }
    int max_exponent(int v) const {
        int m = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            if (first || e[v] > m) m = e[v];
            first = false;
        }
        return m;
    }

    /// multiply by t^shift
    LaurentPoly shifted(const ExpVec& shift) const {
        if (static_cast<int>(shift.size()) != nvars_)
            throw usage_error("LaurentPoly: shift arity mismatch");
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec e2 = e;
            for (int i = 0; i < nvars_; ++i) e2[i] += shift[i];
            r.terms_.emplace(e2, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // print from lex-greatest down, the way a human writes t^2 - 1
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string cs = coeff_traits<C>::str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (first) {
                if (neg) { os << "-"; cs = cs.substr(1); }
            } else {
                os << (neg ? " - " : " + ");
                if (neg) cs = cs.substr(1);
            }
            first = false;
            bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
            if (!any_var) {
                os << cs;
                continue;
            }
            if (cs != "1") os << cs << "*";
            bool first_var = true;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!first_var) os << "*";
                first_var = false;
                os << "t" << (i + 1);
                if (e[i] != 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    template <class K>
    static K coeff_to(const C& c, const K& one);

    void check_compatible(const LaurentPoly& o) const {
        if (nvars_ != o.nvars_)
            throw usage_error("LaurentPoly: variable count mismatch");
    }

    int nvars_;
    Terms terms_;
};

template <>
template <>
inline Rational LaurentPoly<Rational>::coeff_to<Rational>(const Rational& c, const Rational&) {
    return c;
}
template <>
template <>
inline Rational LaurentPoly<Integer>::coeff_to<Rational>(const Integer& c, const Rational&) {
    return Rational(c);
}
template <>
template <>
inline Fp LaurentPoly<Fp>::coeff_to<Fp>(const Fp& c, const Fp&) {
    return c;
}

using LaurentQ = LaurentPoly<Rational>;
using LaurentZ = LaurentPoly<Integer>;
using LaurentFp = LaurentPoly<Fp>;

/// true when every coefficient is an integer
inline bool is_integral(const LaurentQ& p) {
    for (const auto& [e, c] : p.terms()) {
        (void)e;
        if (denominator(c) != 1) return false;
    }
    return true;
}

inline LaurentZ to_integer_poly(const LaurentQ& p) {
    LaurentZ r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (denominator(c) != 1)
            throw usage_error("LaurentPoly: non-integer coefficient where an integer one is required");
        r.add_term(e, numerator(c));
    }
    return r;
}

inline LaurentQ to_rational_poly(const LaurentZ& p) {
    LaurentQ r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, Rational(c));
    return r;
}

/// reduce an integral polynomial mod p; denominators must be units mod p
inline LaurentFp reduce_mod_p(const LaurentQ& poly, std::int64_t p) {
    LaurentFp r(poly.nvars());
    for (const auto& [e, c] : poly.terms()) {
        Integer num = numerator(c) % p;
        Integer den = denominator(c) % p;
        if (den == 0) throw usage_error("reduce_mod_p: denominator divisible by p");
        Fp fn(static_cast<std::int64_t>(num), p);
        Fp fd(static_cast<std::int64_t>(den), p);
        r.add_term(e, fn / fd);
    }
    return r;
}

// ---------------------------------------------------------------------
// Parsing of the serialized syntax: signed integer or rational coefficient,
// '*', variables t1..tr with '^' integer exponents, e.g.
//   -3/2*t1^2*t2^-1 + 1
// ---------------------------------------------------------------------

namespace detail {

struct PolyLexer {
    const std::string& s;
    std::size_t i = 0;
    explicit PolyLexer(const std::string& str) : s(str) {}
    void skip_ws() { while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i; }
    bool done() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    char get() { skip_ws(); return s[i++]; }
    [[noreturn]] void fail(const std::string& why) {
        throw usage_error("polynomial parse error at position " + std::to_string(i) + ": " + why +
                          " in '" + s + "'");
    }
    Integer integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected digits");
        Integer v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return neg ? Integer(-v) : v;
    }
};

}  // namespace detail

/// Parse the exchange syntax.  nvars <= 0 means "infer from the largest
/// variable index seen" (bare `t` counts as t1).
inline LaurentQ parse_laurent(const std::string& text, int nvars = -1) {
    detail::PolyLexer lx(text);
    struct RawTerm {
        Rational coeff;
        std::map<int, int> exps;  // var index (0-based) -> exponent
    };
    std::vector<RawTerm> raw;
    int max_var = 0;

    bool first_term = true;
    while (!lx.done()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.get();
            sign = (c == '-') ? -1 : 1;
        } else if (!first_term) {
            lx.fail("expected '+' or '-' between terms");
        }
        first_term = false;

        RawTerm term;
        term.coeff = sign;
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            char p = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                Integer num = lx.integer();
                Integer den = 1;
                if (lx.peek() == '/') {
                    lx.get();
                    den = lx.integer();
                    if (den == 0) lx.fail("zero denominator");
                }
                term.coeff *= Rational(num, den);
                saw_factor = true;
            } else if (p == 't' || p == 'T') {
                lx.get();
                int var = 1;
                if (std::isdigit(static_cast<unsigned char>(lx.peek())))
                    var = static_cast<int>(lx.integer());
                if (var < 1) lx.fail("variable index must be >= 1");
                int exp = 1;
                if (lx.peek() == '^') {
                    lx.get();
                    exp = static_cast<int>(lx.integer());
                }
                term.exps[var - 1] += exp;
                max_var = std::max(max_var, var);
                saw_factor = true;
            } else {
                lx.fail("expected coefficient or variable");
            }
            if (lx.peek() == '*') {
                lx.get();
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor) lx.fail("empty term");
        raw.push_back(std::move(term));
    }

    int n = nvars >= 0 ? nvars : max_var;
    if (max_var > n)
        throw usage_error("polynomial uses t" + std::to_string(max_var) + " but only " +
                          std::to_string(n) + " variables are declared");
    LaurentQ result(n);
    for (const auto& t : raw) {
        ExpVec e(n, 0);
        for (const auto& [v, k] : t.exps) e[v] = k;
        result.add_term(e, t.coeff);
    }
    return result;
}

}  // namespace novhom

#endif
