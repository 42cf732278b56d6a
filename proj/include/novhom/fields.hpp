#ifndef NOVHOM_FIELDS_HPP
#define NOVHOM_FIELDS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "novhom/numeric.hpp"

namespace novhom {
namespace smooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Twice-differentiable scalar field with exact closed-form derivatives.
/// Coordinates on torus factors are angles in [0, 2*pi).
class ScalarField {
public:
    virtual ~ScalarField() = default;
    virtual int dim() const = 0;
    virtual double value(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;
};

/// Finite trigonometric sum f(x) = sum_k amp * cos(<k, x> + phase) with
/// integer frequency vectors; periodic with period 2*pi in every axis.
class TorusTrig : public ScalarField {
public:
    struct Term {
        std::vector<int> freq;
        double amp = 0.0;
        double phase = 0.0;
    };

    explicit TorusTrig(int n = 0) : n_(n) {}
    TorusTrig(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
        for (const auto& t : terms_)
            if (static_cast<int>(t.freq.size()) != n_)
                throw usage_error("TorusTrig: frequency arity mismatch");
    }

    void add_term(std::vector<int> freq, double amp, double phase) {
        if (static_cast<int>(freq.size()) != n_) throw usage_error("TorusTrig: frequency arity mismatch");
        terms_.push_back({std::move(freq), amp, phase});
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    int dim() const override { return n_; }

    double value(const Vec& x) const override {
        double acc = 0.0;
        for (const auto& t : terms_) acc += t.amp * std::cos(angle(t, x));
        return acc;
    }

    Vec gradient(const Vec& x) const override {
        Vec g = Vec::Zero(n_);
        for (const auto& t : terms_) {
            double s = -t.amp * std::sin(angle(t, x));
            for (int i = 0; i < n_; ++i) g[i] += s * t.freq[static_cast<std::size_t>(i)];
        }
        return g;
    }

    Mat hessian(const Vec& x) const override {
        Mat h = Mat::Zero(n_, n_);
        for (const auto& t : terms_) {
            double c = -t.amp * std::cos(angle(t, x));
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    h(i, j) += c * t.freq[static_cast<std::size_t>(i)] * t.freq[static_cast<std::size_t>(j)];
        }
        return h;
    }

    /// sum of the two term lists
    friend TorusTrig operator+(const TorusTrig& a, const TorusTrig& b) {
        if (a.n_ != b.n_) throw usage_error("TorusTrig: dimension mismatch");
        TorusTrig r = a;
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        return r;
    }

private:
    static double angle(const Term& t, const Vec& x) {
        double a = t.phase;
        for (std::size_t i = 0; i < t.freq.size(); ++i) a += t.freq[i] * x[static_cast<Eigen::Index>(i)];
        return a;
    }

    int n_;
    std::vector<Term> terms_;
};

/// Closed 1-form beta = sum_j a_j dtheta_j + dh on the n-torus.  The
/// period of beta over the j-th coordinate loop is 2*pi*a_j; the class is
/// integral when every a_j is an integer.
class BetaForm {
public:
    BetaForm(Vec a, TorusTrig h) : a_(std::move(a)), h_(std::move(h)) {
        if (h_.dim() != a_.size()) throw usage_error("BetaForm: dimension mismatch between a and h");
    }
    explicit BetaForm(Vec a) : a_(std::move(a)), h_(static_cast<int>(a_.size())) {}

    int base_dim() const { return static_cast<int>(a_.size()); }
    const Vec& constant_part() const { return a_; }
    const TorusTrig& exact_part() const { return h_; }

    Vec covector(const Vec& x_base) const { return a_ + h_.gradient(x_base); }
    Mat jacobian(const Vec& x_base) const { return h_.hessian(x_base); }

    bool is_exact(double tol = 1e-12) const { return a_.lpNorm<Eigen::Infinity>() <= tol; }
    bool is_zero(double tol = 1e-12) const { return is_exact(tol) && h_.empty(); }

    /// integral period vector: every a_j within tol of an integer
    bool integral_periods(double tol = 1e-9) const {
        for (int j = 0; j < a_.size(); ++j)
            if (std::abs(a_[j] - std::round(a_[j])) > tol) return false;
        return true;
    }
    std::vector<int> rounded_periods() const {
        std::vector<int> w;
        for (int j = 0; j < a_.size(); ++j) w.push_back(static_cast<int>(std::llround(a_[j])));
        return w;
    }

    /// beta + du (the conformal gauge partner of f -> e^u f)
    BetaForm gauged(const TorusTrig& u) const { return BetaForm(a_, h_ + u); }

private:
    Vec a_;
    TorusTrig h_;
};

/// Lichnerowicz derivative on functions: d_beta f = df - f * beta,
/// evaluated at a base point.
inline Vec d_beta(const ScalarField& f, const BetaForm& beta, const Vec& x) {
    if (f.dim() != beta.base_dim()) throw usage_error("d_beta: dimension mismatch");
    return f.gradient(x) - f.value(x) * beta.covector(x);
}

/// Constant field (used for the d_beta(-1) = beta identity and tests).
class ConstantField : public ScalarField {
public:
    ConstantField(int n, double c) : n_(n), c_(c) {}
    int dim() const override { return n_; }
    double value(const Vec&) const override { return c_; }
    Vec gradient(const Vec&) const override { return Vec::Zero(n_); }
    Mat hessian(const Vec&) const override { return Mat::Zero(n_, n_); }

private:
    int n_;
    double c_;
};

/// e^u * f for a gauge u; together with beta -> beta + du this preserves
/// beta-critical sets and indices exactly.
class GaugedField : public ScalarField {
public:
    GaugedField(const ScalarField& f, TorusTrig u) : f_(f), u_(std::move(u)) {
        if (f_.dim() != u_.dim()) throw usage_error("GaugedField: dimension mismatch");
    }

    int dim() const override { return f_.dim(); }

    double value(const Vec& x) const override { return std::exp(u_.value(x)) * f_.value(x); }

    Vec gradient(const Vec& x) const override {
        double e = std::exp(u_.value(x));
        return e * (f_.value(x) * u_.gradient(x) + f_.gradient(x));
    }

    Mat hessian(const Vec& x) const override {
        double e = std::exp(u_.value(x));
        double fv = f_.value(x);
        Vec du = u_.gradient(x);
        Vec df = f_.gradient(x);
        Mat h = (fv * du + df) * du.transpose();
        h += du * df.transpose();
        h += fv * u_.hessian(x);
        h += f_.hessian(x);
        return e * h;
    }

private:
    const ScalarField& f_;
    TorusTrig u_;
};

}  // namespace smooth
}  // namespace novhom

#endif
