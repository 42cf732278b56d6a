#ifndef NOVHOM_NUMERIC_HPP
#define NOVHOM_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace novhom {

// Exact coefficient types. No floating point enters the algebraic kernel.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// a verification hypothesis does not hold (class mismatch, degeneracy,
/// positivity failure); distinct from malformed input
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Prime-field element with a runtime modulus. Elements of different
/// moduli never mix; the modulus travels with the value.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::int64_t v, std::int64_t p) : p_(p) {
        if (p <= 1) throw usage_error("Fp: modulus must be a prime > 1");
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ + b.v_, a.p_); }
    friend Fp operator-(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ - b.v_, a.p_); }
    friend Fp operator*(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ * b.v_, a.p_); }
    friend Fp operator/(const Fp& a, const Fp& b) { a.check(b); return a * b.inverse(); }
    Fp operator-() const { return Fp(-v_, p_); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inverse() const {
        if (v_ == 0) throw internal_error("Fp: inverse of zero");
        // extended Euclid
        std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (a != 1) throw usage_error("Fp: modulus is not prime");
        return Fp(x0, p_);
    }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw usage_error("Fp: mixed moduli");
    }
    std::int64_t v_;
    std::int64_t p_;
};

// ---- coefficient traits used by the generic linear algebra ----
//
// zero/one are derived from an existing element ("like") so that rings
// with runtime parameters (Fp) work; algorithms early-out before ever
// needing a constant when no element exists.

template <class C> struct coeff_traits;

template <> struct coeff_traits<Integer> {
    static Integer zero(const Integer&) { return Integer(0); }
    static Integer one(const Integer&) { return Integer(1); }
    static bool is_zero(const Integer& x) { return x == 0; }
    // exact division; remainder must vanish
    static Integer div_exact(const Integer& a, const Integer& b) {
        Integer q = a / b;
        if (q * b != a) throw internal_error("Integer: non-exact division");
        return q;
    }
    static std::string str(const Integer& x) { return x.str(); }
};

template <> struct coeff_traits<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational div_exact(const Rational& a, const Rational& b) { return a / b; }
    static std::string str(const Rational& x) {
        if (denominator(x) == 1) return numerator(x).str();
        return numerator(x).str() + "/" + denominator(x).str();
    }
};

template <> struct coeff_traits<Fp> {
    static Fp zero(const Fp& like) { return Fp(0, like.modulus()); }
    static Fp one(const Fp& like) { return Fp(1, like.modulus()); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static Fp div_exact(const Fp& a, const Fp& b) { return a / b; }
    static std::string str(const Fp& x) { return std::to_string(x.value()); }
};

/// Deterministic, platform-independent RNG (splitmix64 core).  std
/// distributions are avoided on purpose: their output is not pinned by
/// the standard and reports must be byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform integer in [lo, hi], inclusive
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw usage_error("Rng::uniform: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace novhom

#endif
