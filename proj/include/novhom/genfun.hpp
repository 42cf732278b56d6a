#ifndef NOVHOM_GENFUN_HPP
#define NOVHOM_GENFUN_HPP

#include <cmath>
#include <vector>

#include "novhom/critical.hpp"
#include "novhom/fields.hpp"

namespace novhom {
namespace genfun {

using smooth::Mat;
using smooth::ScalarField;
using smooth::TorusTrig;
using smooth::Vec;

/// C^2 cutoff: 1 on [0, 1/2], 0 on [1, inf), quintic in between.
struct Bump {
    double value(double s) const {
        if (s <= 0.5) return 1.0;
        if (s >= 1.0) return 0.0;
        double u = 2.0 * s - 1.0;
        return 1.0 - (10.0 - (15.0 - 6.0 * u) * u) * u * u * u;
    }
    double d1(double s) const {
        if (s <= 0.5 || s >= 1.0) return 0.0;
        double u = 2.0 * s - 1.0;
        // chain rule through u = 2s - 1
        return -30.0 * u * u * (1.0 - u) * (1.0 - u) * 2.0;
    }
    double d2(double s) const {
        if (s <= 0.5 || s >= 1.0) return 0.0;
        double u = 2.0 * s - 1.0;
        return -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) * 4.0;
    }
};

/// monomial term of the fiber polynomial
struct FiberPolyTerm {
    std::vector<int> degrees;  // one per fiber axis
    double coeff = 0.0;
};

/// Generating function quadratic at infinity:
///   F(x, xi) = Q(xi) + bump(|xi| / R) * T(x) * P(xi)
/// with Q(xi) = sum e_j xi_j^2 (e_j = +-1, p = #negatives).  The cutoff
/// makes "quadratic outside the ball of radius R" exact rather than
/// asymptotic.
class GeneratingFunction : public ScalarField {
public:
    GeneratingFunction(int base_dim, std::vector<int> quadratic_signs, double radius, TorusTrig trig,
                       std::vector<FiberPolyTerm> fiber_poly = {})
        : n_(base_dim),
          m_(static_cast<int>(quadratic_signs.size())),
          signs_(std::move(quadratic_signs)),
          radius_(radius),
          trig_(std::move(trig)),
          poly_(std::move(fiber_poly)) {
        if (trig_.dim() != n_) throw usage_error("GeneratingFunction: base trig dimension mismatch");
        for (int s : signs_)
            if (s != 1 && s != -1) throw usage_error("GeneratingFunction: quadratic signs must be +-1");
        if (m_ > 0 && radius_ <= 0) throw usage_error("GeneratingFunction: coupling radius must be positive");
        for (const auto& t : poly_)
            if (static_cast<int>(t.degrees.size()) != m_)
                throw usage_error("GeneratingFunction: fiber polynomial arity mismatch");
        if (poly_.empty()) poly_.push_back({std::vector<int>(static_cast<std::size_t>(m_), 0), 1.0});
    }

    int dim() const override { return n_ + m_; }
    int base_dim() const { return n_; }
    int fiber_dim() const { return m_; }
    double radius() const { return radius_; }
    const TorusTrig& base_trig() const { return trig_; }
    /// negative-definite dimension of the quadratic form
    int negative_index() const {
        int p = 0;
        for (int s : signs_)
            if (s < 0) ++p;
        return p;
    }

    /// flip one quadratic sign (index tests toggle these)
    GeneratingFunction with_sign_flipped(int fiber_axis) const {
        GeneratingFunction g = *this;
        g.signs_[static_cast<std::size_t>(fiber_axis)] *= -1;
        return g;
    }

    /// uniform rescale cF (used by the chord scale-invariance property)
    GeneratingFunction scaled(double c) const {
        if (m_ > 0) throw usage_error("GeneratingFunction: scaling is only wired for base functions");
        GeneratingFunction g = *this;
        TorusTrig t(n_);
        for (const auto& term : trig_.terms()) t.add_term(term.freq, c * term.amp, term.phase);
        g.trig_ = t;
        return g;
    }

    double value(const Vec& x) const override {
        Vec xi = x.tail(m_);
        return quad(xi) + bump_val(xi) * trig_.value(x.head(n_)) * poly_val(xi);
    }

    Vec gradient(const Vec& x) const override {
        Vec xb = x.head(n_);
        Vec xi = x.tail(m_);
        double tv = trig_.value(xb);
        double bv = bump_val(xi), pv = poly_val(xi);
        Vec g(n_ + m_);
        g.head(n_) = bv * pv * trig_.gradient(xb);
        g.tail(m_) = quad_grad(xi) + tv * (bump_grad(xi) * pv + bv * poly_grad(xi));
        return g;
    }

    Mat hessian(const Vec& x) const override {
        Vec xb = x.head(n_);
        Vec xi = x.tail(m_);
        double tv = trig_.value(xb);
        Vec tg = trig_.gradient(xb);
        double bv = bump_val(xi), pv = poly_val(xi);
        Vec bg = bump_grad(xi), pg = poly_grad(xi);
        Mat h = Mat::Zero(n_ + m_, n_ + m_);
        h.topLeftCorner(n_, n_) = bv * pv * trig_.hessian(xb);
        Vec mixed = bg * pv + bv * pg;  // gradient of (bump * poly) in xi
        h.topRightCorner(n_, m_) = tg * mixed.transpose();
        h.bottomLeftCorner(m_, n_) = mixed * tg.transpose();
        h.bottomRightCorner(m_, m_) = quad_hess() + tv * (bump_hess(xi) * pv + bg * pg.transpose() +
                                                          pg * bg.transpose() + bv * poly_hess(xi));
        return h;
    }

private:
    double quad(const Vec& xi) const {
        double q = 0.0;
        for (int j = 0; j < m_; ++j) q += signs_[static_cast<std::size_t>(j)] * xi[j] * xi[j];
        return q;
    }
    Vec quad_grad(const Vec& xi) const {
        Vec g(m_);
        for (int j = 0; j < m_; ++j) g[j] = 2.0 * signs_[static_cast<std::size_t>(j)] * xi[j];
        return g;
    }
    Mat quad_hess() const {
        Mat h = Mat::Zero(m_, m_);
        for (int j = 0; j < m_; ++j) h(j, j) = 2.0 * signs_[static_cast<std::size_t>(j)];
        return h;
    }

    double bump_val(const Vec& xi) const {
        if (m_ == 0) return 1.0;
        return bump_.value(xi.norm() / radius_);
    }
    Vec bump_grad(const Vec& xi) const {
        Vec g = Vec::Zero(m_);
        if (m_ == 0) return g;
        double r = xi.norm();
        double s = r / radius_;
        double ds = bump_.d1(s);
        if (ds == 0.0 || r == 0.0) return g;
        return (ds / (radius_ * r)) * xi;
    }
    Mat bump_hess(const Vec& xi) const {
        Mat h = Mat::Zero(m_, m_);
        if (m_ == 0) return h;
        double r = xi.norm();
        double s = r / radius_;
        double d1 = bump_.d1(s), d2 = bump_.d2(s);
        if ((d1 == 0.0 && d2 == 0.0) || r == 0.0) return h;
        Vec unit = xi / r;
        h = (d2 / (radius_ * radius_)) * (unit * unit.transpose());
        h += (d1 / (radius_ * r)) * (Mat::Identity(m_, m_) - unit * unit.transpose());
        return h;
    }

    double poly_val(const Vec& xi) const {
        double acc = 0.0;
        for (const auto& t : poly_) {
            double v = t.coeff;
            for (int j = 0; j < m_; ++j) v *= std::pow(xi[j], t.degrees[static_cast<std::size_t>(j)]);
            acc += v;
        }
        return acc;
    }
    Vec poly_grad(const Vec& xi) const {
        Vec g = Vec::Zero(m_);
        for (const auto& t : poly_)
            for (int j = 0; j < m_; ++j) {
                int dj = t.degrees[static_cast<std::size_t>(j)];
                if (dj == 0) continue;
                double v = t.coeff * dj * std::pow(xi[j], dj - 1);
                for (int l = 0; l < m_; ++l)
                    if (l != j) v *= std::pow(xi[l], t.degrees[static_cast<std::size_t>(l)]);
                g[j] += v;
            }
        return g;
    }
    Mat poly_hess(const Vec& xi) const {
        Mat h = Mat::Zero(m_, m_);
        for (const auto& t : poly_)
            for (int j = 0; j < m_; ++j)
                for (int l = 0; l < m_; ++l) {
                    int dj = t.degrees[static_cast<std::size_t>(j)];
                    int dl = t.degrees[static_cast<std::size_t>(l)];
                    double v;
                    if (j == l) {
                        if (dj < 2) continue;
                        v = t.coeff * dj * (dj - 1) * std::pow(xi[j], dj - 2);
                        for (int q = 0; q < m_; ++q)
                            if (q != j) v *= std::pow(xi[q], t.degrees[static_cast<std::size_t>(q)]);
                    } else {
                        if (dj == 0 || dl == 0) continue;
                        v = t.coeff * dj * dl * std::pow(xi[j], dj - 1) * std::pow(xi[l], dl - 1);
                        for (int q = 0; q < m_; ++q)
                            if (q != j && q != l) v *= std::pow(xi[q], t.degrees[static_cast<std::size_t>(q)]);
                    }
                    h(j, l) += v;
                }
        return h;
    }

    int n_, m_;
    std::vector<int> signs_;
    double radius_ = 0.0;
    TorusTrig trig_;
    std::vector<FiberPolyTerm> poly_;
    Bump bump_;
};

/// Joint beta-critical points in (x, xi).  Since beta has no fiber
/// component the fiber equations reduce to the vanishing of the fiber
/// gradient, and every solution must lie in the coupling ball; accepted
/// points outside flag an internal inconsistency.
inline smooth::CriticalSet fiber_critical_points(const GeneratingFunction& f, const smooth::BetaForm& beta,
                                                 const smooth::SolverOptions& opt = {}) {
    if (beta.base_dim() != f.base_dim())
        throw usage_error("fiber_critical_points: beta lives on the wrong base");
    std::vector<double> box(static_cast<std::size_t>(f.fiber_dim()), f.radius());
    auto set = smooth::find_beta_critical_points(f, beta, opt, box);
    for (const auto& p : set.points) {
        double xi_norm = p.x.tail(f.fiber_dim()).norm();
        if (xi_norm > f.radius() * (1.0 + 1e-9)) set.fiber_escape = true;
    }
    return set;
}

/// #Crit_j(F) >= rank(HN_{j-p}) with p the negative dimension of the
/// quadratic form (the Thom shift)
inline smooth::CountingReport verify_theorem1(const smooth::CriticalSet& set,
                                              const novikov::NovikovProfile& profile,
                                              const GeneratingFunction& f) {
    return smooth::counting_inequality(set, profile, f.dim(), f.negative_index());
}

}  // namespace genfun
}  // namespace novhom

#endif
