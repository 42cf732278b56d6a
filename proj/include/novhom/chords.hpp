#ifndef NOVHOM_CHORDS_HPP
#define NOVHOM_CHORDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "novhom/genfun.hpp"

namespace novhom {
namespace chords {

using genfun::GeneratingFunction;
using smooth::BetaForm;
using smooth::Mat;
using smooth::ScalarField;
using smooth::Vec;

/// t-difference of two generating functions over the same base:
///   Delta^t(x, xi1, xi2) = F2(x, xi2) - e^t F1(x, xi1)
/// Quadratic at infinity in (xi1, xi2); its beta-critical points are the
/// Liouville chords of length t.
class DifferenceField : public ScalarField {
public:
    DifferenceField(const GeneratingFunction& f1, const GeneratingFunction& f2, double t)
        : f1_(f1), f2_(f2), t_(t), et_(std::exp(t)) {
        if (f1.base_dim() != f2.base_dim())
            throw usage_error("DifferenceField: generating functions live over different bases");
    }

    int base_dim() const { return f1_.base_dim(); }
    int dim() const override { return f1_.base_dim() + f1_.fiber_dim() + f2_.fiber_dim(); }
    double length() const { return t_; }

    /// negative dimension of the quadratic form at infinity: p2 + (m1 - p1)
    int negative_index() const {
        return f2_.negative_index() + f1_.fiber_dim() - f1_.negative_index();
    }

    Vec pack1(const Vec& z) const { return z.head(f1_.base_dim() + f1_.fiber_dim()); }
    Vec pack2(const Vec& z) const {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Vec z2(n + m2);
        z2.head(n) = z.head(n);
        z2.tail(m2) = z.segment(n + m1, m2);
        return z2;
    }

    double value(const Vec& z) const override { return f2_.value(pack2(z)) - et_ * f1_.value(pack1(z)); }

    Vec gradient(const Vec& z) const override {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Vec g1 = f1_.gradient(pack1(z));
        Vec g2 = f2_.gradient(pack2(z));
        Vec g(n + m1 + m2);
        g.head(n) = g2.head(n) - et_ * g1.head(n);
        g.segment(n, m1) = -et_ * g1.tail(m1);
        g.tail(m2) = g2.tail(m2);
        return g;
    }

    Mat hessian(const Vec& z) const override {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Mat h1 = f1_.hessian(pack1(z));
        Mat h2 = f2_.hessian(pack2(z));
        Mat h = Mat::Zero(n + m1 + m2, n + m1 + m2);
        h.topLeftCorner(n, n) = h2.topLeftCorner(n, n) - et_ * h1.topLeftCorner(n, n);
        h.block(0, n, n, m1) = -et_ * h1.topRightCorner(n, m1);
        h.block(n, 0, m1, n) = -et_ * h1.bottomLeftCorner(m1, n);
        h.block(n, n, m1, m1) = -et_ * h1.bottomRightCorner(m1, m1);
        h.block(0, n + m1, n, m2) = h2.topRightCorner(n, m2);
        h.block(n + m1, 0, m2, n) = h2.bottomLeftCorner(m2, n);
        h.block(n + m1, n + m1, m2, m2) = h2.bottomRightCorner(m2, m2);
        return h;
    }

private:
    const GeneratingFunction& f1_;
    const GeneratingFunction& f2_;
    double t_, et_;
};

/// A detected Liouville chord of length t.  A chord of length zero is
/// simultaneously a positive and a negative chord, so essentiality is
/// tracked per orientation.
struct ChordRecord {
    Vec base;        // point on the torus
    Vec xi1, xi2;    // fiber points of the two generating functions
    double t = 0.0;
    double value = 0.0;  // Delta^t at the chord
    bool positive = true;          // orientation: t >= 0
    bool essential = false;        // essential in at least one valid orientation
    bool essential_positive = false;  // t >= 0 and value >= 0
    bool essential_negative = false;  // t <= 0 and value <= 0
    bool marginal = false;  // |value| within tolerance of the sign boundary
    int index = 0;
    double residual = 0.0;
};

struct ChordOptions {
    smooth::SolverOptions solver;
    double marginal_tol = 1e-9;
    bool check_positivity = true;
    int positivity_grid = 256;  // base samples per axis for the hypothesis check
};

struct ChordSet {
    std::vector<ChordRecord> records;
    bool beta_morse = true;
    bool paths_agree = true;
    std::vector<Vec> direct_path_points;  // dumped when the two solvers disagree
    bool positivity_ok = true;            // F_i > 0 on their Lagrangians
    double min_f1 = 0.0, min_f2 = 0.0;
    bool essential_suppressed = false;

    int count() const { return static_cast<int>(records.size()); }
    int essential_count(bool positive_orientation) const {
        int c = 0;
        for (const auto& r : records) {
            if (r.marginal) continue;
            if (positive_orientation ? r.essential_positive : r.essential_negative) ++c;
        }
        return c;
    }
};

namespace detail {

/// Path B of the chord search: the component equations
///   D_xi F1 = 0,  D_xi F2 = 0,  e^t d_beta F1 = d_beta F2
/// solved directly, without assembling the difference function.
class ComponentChordSystem {
public:
    ComponentChordSystem(const GeneratingFunction& f1, const GeneratingFunction& f2, const BetaForm& beta,
                         double t)
        : f1_(f1), f2_(f2), beta_(beta), et_(std::exp(t)) {}

    int dim() const { return f1_.base_dim() + f1_.fiber_dim() + f2_.fiber_dim(); }

    Vec residual(const Vec& z) const {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Vec z1 = pack1(z), z2 = pack2(z);
        Vec b = beta_.covector(z.head(n));
        Vec g1 = f1_.gradient(z1), g2 = f2_.gradient(z2);
        Vec r(m1 + m2 + n);
        r.head(m1) = g1.tail(m1);
        r.segment(m1, m2) = g2.tail(m2);
        Vec dbeta1 = g1.head(n) - f1_.value(z1) * b;
        Vec dbeta2 = g2.head(n) - f2_.value(z2) * b;
        r.tail(n) = dbeta2 - et_ * dbeta1;
        return r;
    }

    Mat jacobian(const Vec& z) const {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Vec z1 = pack1(z), z2 = pack2(z);
        Vec b = beta_.covector(z.head(n));
        Mat db = beta_.jacobian(z.head(n));
        Vec g1 = f1_.gradient(z1), g2 = f2_.gradient(z2);
        Mat h1 = f1_.hessian(z1), h2 = f2_.hessian(z2);
        Mat j = Mat::Zero(m1 + m2 + n, n + m1 + m2);
        // fiber equations of F1
        j.block(0, 0, m1, n) = h1.bottomLeftCorner(m1, n);
        j.block(0, n, m1, m1) = h1.bottomRightCorner(m1, m1);
        // fiber equations of F2
        j.block(m1, 0, m2, n) = h2.bottomLeftCorner(m2, n);
        j.block(m1, n + m1, m2, m2) = h2.bottomRightCorner(m2, m2);
        // base equations: d(d_beta F_i) = H_xx - b grad_x^T - F Dbeta, and the
        // fiber coupling H_x xi - b grad_xi^T
        Mat a2x = h2.topLeftCorner(n, n) - b * g2.head(n).transpose() - f2_.value(z2) * db;
        Mat a1x = h1.topLeftCorner(n, n) - b * g1.head(n).transpose() - f1_.value(z1) * db;
        j.block(m1 + m2, 0, n, n) = a2x - et_ * a1x;
        j.block(m1 + m2, n, n, m1) =
            -et_ * (h1.topRightCorner(n, m1) - b * g1.tail(m1).transpose());
        j.block(m1 + m2, n + m1, n, m2) = h2.topRightCorner(n, m2) - b * g2.tail(m2).transpose();
        return j;
    }

private:
    Vec pack1(const Vec& z) const { return z.head(f1_.base_dim() + f1_.fiber_dim()); }
    Vec pack2(const Vec& z) const {
        const int n = f1_.base_dim(), m1 = f1_.fiber_dim(), m2 = f2_.fiber_dim();
        Vec z2(n + m2);
        z2.head(n) = z.head(n);
        z2.tail(m2) = z.segment(n + m1, m2);
        return z2;
    }

    const GeneratingFunction& f1_;
    const GeneratingFunction& f2_;
    const BetaForm& beta_;
    double et_;
};

/// fiber-restricted critical system at a frozen base point (for Lagrangian
/// positivity checks)
class FiberSystem {
public:
    FiberSystem(const GeneratingFunction& f, const Vec& base) : f_(f), base_(base) {}
    int dim() const { return f_.fiber_dim(); }
    Vec assemble(const Vec& xi) const {
        Vec z(f_.dim());
        z.head(f_.base_dim()) = base_;
        z.tail(f_.fiber_dim()) = xi;
        return z;
    }
    Vec residual(const Vec& xi) const { return f_.gradient(assemble(xi)).tail(f_.fiber_dim()); }
    Mat jacobian(const Vec& xi) const {
        return f_.hessian(assemble(xi)).bottomRightCorner(f_.fiber_dim(), f_.fiber_dim());
    }

private:
    const GeneratingFunction& f_;
    Vec base_;
};

struct PositivityResult {
    bool ok = true;
    double min_value = std::numeric_limits<double>::infinity();
};

/// Minimum of F over its Lagrangian (fiber-critical locus), by sampling
/// base points and solving the fiber equations.
inline PositivityResult positivity_on_lagrangian(const GeneratingFunction& f, const ChordOptions& opt) {
    PositivityResult res;
    const int n = f.base_dim(), m = f.fiber_dim();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= opt.positivity_grid;
    smooth::SolverOptions fiber_opt = opt.solver;
    fiber_opt.tol = 1e-10;
    for (long long it = 0; it < total; ++it) {
        Vec base(n);
        for (int i = 0; i < n; ++i)
            base[i] = smooth::two_pi * idx[static_cast<std::size_t>(i)] / opt.positivity_grid;
        if (m == 0) {
            Vec z = base;
            res.min_value = std::min(res.min_value, f.value(z));
        } else {
            FiberSystem sys(f, base);
            const int g = std::max(3, opt.solver.fiber_grid / 2);
            std::vector<int> fidx(static_cast<std::size_t>(m), 0);
            long long fiber_total = 1;
            for (int i = 0; i < m; ++i) fiber_total *= g;
            for (long long fit = 0; fit < fiber_total; ++fit) {
                Vec xi(m);
                for (int i = 0; i < m; ++i)
                    xi[i] = -f.radius() + 2.0 * f.radius() * fidx[static_cast<std::size_t>(i)] / (g - 1);
                Vec sol = xi;
                if (smooth::detail::newton_solve(sys, sol, fiber_opt))
                    res.min_value = std::min(res.min_value, f.value(sys.assemble(sol)));
                for (int i = m - 1; i >= 0; --i) {
                    if (++fidx[static_cast<std::size_t>(i)] < g) break;
                    fidx[static_cast<std::size_t>(i)] = 0;
                }
            }
        }
        for (int i = n - 1; i >= 0; --i) {
            if (++idx[static_cast<std::size_t>(i)] < opt.positivity_grid) break;
            idx[static_cast<std::size_t>(i)] = 0;
        }
    }
    res.ok = res.min_value > 0.0;
    return res;
}

}  // namespace detail

/// Liouville chords of length t from L_{F1} to L_{F2}, located as
/// beta-critical points of the t-difference function, and independently by
/// the component equations.  Both solver paths always run; the record set
/// is accepted only when they produce identical points.
inline ChordSet find_chords(const GeneratingFunction& f1, const GeneratingFunction& f2,
                            const BetaForm& beta, double t, const ChordOptions& opt = {}) {
    if (beta.base_dim() != f1.base_dim())
        throw usage_error("find_chords: beta lives on the wrong base");
    DifferenceField delta(f1, f2, t);
    const int n = f1.base_dim(), m1 = f1.fiber_dim(), m2 = f2.fiber_dim();

    // path A: critical points of the assembled difference function
    std::vector<double> box;
    for (int i = 0; i < m1; ++i) box.push_back(f1.radius());
    for (int i = 0; i < m2; ++i) box.push_back(f2.radius());
    auto set_a = smooth::find_beta_critical_points(delta, beta, opt.solver, box);

    // path B: component equations from the same seeds
    detail::ComponentChordSystem direct(f1, f2, beta, t);
    std::vector<Vec> direct_points;
    smooth::detail::for_each_seed(n, box, opt.solver, [&](const Vec& seed) {
        Vec x = seed;
        if (!smooth::detail::newton_solve(direct, x, opt.solver)) return;
        for (int i = 0; i < n; ++i) x[i] = smooth::detail::wrap_angle(x[i]);
        direct_points.push_back(x);
    });
    smooth::detail::dedupe_points(direct_points, n, opt.solver.dedupe_radius);

    ChordSet out;
    out.beta_morse = set_a.beta_morse;
    out.direct_path_points = direct_points;
    if (direct_points.size() != set_a.points.size()) {
        out.paths_agree = false;
    } else {
        // one-to-one matching; points on the periodic seam may wrap
        // differently between the two solvers
        std::vector<bool> used(direct_points.size(), false);
        for (const auto& p : set_a.points) {
            bool matched = false;
            for (std::size_t j = 0; j < direct_points.size(); ++j) {
                if (used[j]) continue;
                if (smooth::detail::torus_distance(p.x, direct_points[j], n) <=
                    10.0 * opt.solver.dedupe_radius) {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                out.paths_agree = false;
                break;
            }
        }
    }

    if (opt.check_positivity) {
        auto p1 = detail::positivity_on_lagrangian(f1, opt);
        auto p2 = detail::positivity_on_lagrangian(f2, opt);
        out.min_f1 = p1.min_value;
        out.min_f2 = p2.min_value;
        out.positivity_ok = p1.ok && p2.ok;
        if (!out.positivity_ok) out.essential_suppressed = true;
    }

    for (const auto& p : set_a.points) {
        ChordRecord r;
        r.base = p.x.head(n);
        r.xi1 = p.x.segment(n, m1);
        r.xi2 = p.x.tail(m2);
        r.t = t;
        r.value = delta.value(p.x);
        r.positive = t >= 0.0;
        r.marginal = std::abs(r.value) <= opt.marginal_tol;
        if (!out.essential_suppressed && !r.marginal) {
            r.essential_positive = t >= 0.0 && r.value >= 0.0;
            r.essential_negative = t <= 0.0 && r.value <= 0.0;
            r.essential = r.essential_positive || r.essential_negative;
        }
        r.index = p.index;
        r.residual = p.residual;
        out.records.push_back(std::move(r));
    }
    return out;
}

struct TotalBoundReport {
    int count = 0;
    int bound = 0;
    bool holds = true;
    bool beta_morse = true;
    bool paths_agree = true;
};

/// #chords of length t >= sum_i rank(HN_i)
inline TotalBoundReport verify_prop14_total(const ChordSet& set, const novikov::NovikovProfile& profile) {
    TotalBoundReport rep;
    rep.count = set.count();
    rep.bound = profile.betti_total();
    rep.beta_morse = set.beta_morse;
    rep.paths_agree = set.paths_agree;
    rep.holds = rep.count >= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------
// 1-D essential chords: the sublevel (or superlevel) set of Delta^t on the
// circle is a finite union of arcs whose Novikov homology is exactly
// computable; its total rank bounds the essential chord count.
// ---------------------------------------------------------------------

struct Essential1dReport {
    bool refused = false;      // 0 failed the regular-value check
    std::string refusal_reason;
    double t = 0.0;
    int arcs = 0;              // maximal arcs of the sign region
    bool full_circle = false;
    bool empty_region = false;
    int bound = 0;             // total Novikov rank of the region
    int essential = 0;         // essential chords of the matching orientation
    bool holds = true;
    std::vector<std::pair<double, double>> arc_intervals;
};

inline Essential1dReport essential_chords_1d(const GeneratingFunction& f1, const GeneratingFunction& f2,
                                             const BetaForm& beta, double t, const ChordOptions& opt = {},
                                             int samples = 4096, double regular_tol = 1e-6) {
    if (f1.base_dim() != 1 || f1.fiber_dim() != 0 || f2.fiber_dim() != 0)
        throw usage_error("essential_chords_1d: only the circle with trivial fibers is supported");
    Essential1dReport rep;
    rep.t = t;
    DifferenceField delta(f1, f2, t);
    auto dval = [&](double theta) {
        Vec z(1);
        z[0] = theta;
        return delta.value(z);
    };
    auto dslope = [&](double theta) {
        Vec z(1);
        z[0] = theta;
        return delta.gradient(z)[0];
    };

    // roots of Delta by sign changes + bisection
    std::vector<double> roots;
    double min_abs = std::numeric_limits<double>::infinity();
    std::vector<double> vals(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        vals[static_cast<std::size_t>(i)] = dval(smooth::two_pi * i / samples);
        min_abs = std::min(min_abs, std::abs(vals[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i < samples; ++i) {
        double a = smooth::two_pi * i / samples;
        double b = smooth::two_pi * (i + 1) / samples;
        double fa = vals[static_cast<std::size_t>(i)];
        double fb = (i + 1 < samples) ? vals[static_cast<std::size_t>(i + 1)] : vals[0];
        if (fa == 0.0) roots.push_back(a);
        if (fa * fb < 0.0) {
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (a + b);
                double fm = dval(mid);
                if (fa * fm <= 0.0) {
                    b = mid;
                    fb = fm;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
    }

    // regular-value hypothesis: Delta' must be bounded away from zero at
    // every zero of Delta; a rootless Delta hugging zero is refused too
    for (double root : roots)
        if (std::abs(dslope(root)) <= regular_tol) {
            rep.refused = true;
            rep.refusal_reason = "zero is not a regular value of the difference function";
            return rep;
        }
    if (roots.empty() && min_abs <= regular_tol) {
        rep.refused = true;
        rep.refusal_reason = "difference function grazes zero without crossing";
        return rep;
    }

    const bool want_nonpositive = t <= 0.0;  // negative chords live in {Delta <= 0}
    auto in_region = [&](double v) { return want_nonpositive ? v <= 0.0 : v >= 0.0; };

    if (roots.empty()) {
        if (in_region(vals[0])) {
            rep.full_circle = true;
            // the circle carries the full class: rank sum 2 when beta is
            // exact, zero otherwise
            rep.bound = beta.is_exact() ? 2 : 0;
        } else {
            rep.empty_region = true;
            rep.bound = 0;
        }
    } else {
        std::sort(roots.begin(), roots.end());
        const std::size_t k = roots.size();
        for (std::size_t i = 0; i < k; ++i) {
            double a = roots[i];
            double b = (i + 1 < k) ? roots[i + 1] : roots[0] + smooth::two_pi;
            double mid = 0.5 * (a + b);
            if (in_region(dval(mid))) {
                ++rep.arcs;
                rep.arc_intervals.emplace_back(a, std::fmod(b, smooth::two_pi));
            }
        }
        // beta restricted to a contractible arc is exact, so each arc
        // contributes the homology of an interval rel nothing: rank 1
        rep.bound = rep.arcs;
    }

    auto set = find_chords(f1, f2, beta, t, opt);
    if (!set.paths_agree) throw internal_error("essential_chords_1d: chord solver paths disagree");
    rep.essential = set.essential_count(/*positive_orientation=*/t > 0.0);
    rep.holds = rep.essential >= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------
// chord counts along a sweep of lengths
// ---------------------------------------------------------------------

struct SweepSample {
    double t = 0.0;
    int count = 0;
    bool beta_morse = true;
    bool paths_agree = true;
};

/// Uniform samples over [t0, t1] with adaptive midpoint refinement where
/// the count changes (chords come in 1-parameter families; the count is
/// locally constant away from finitely many births).
inline std::vector<SweepSample> chord_sweep(const GeneratingFunction& f1, const GeneratingFunction& f2,
                                            const BetaForm& beta, double t0, double t1, int samples = 101,
                                            const ChordOptions& opt = {}, int refine_depth = 4) {
    if (samples < 2) throw usage_error("chord_sweep: need at least two samples");
    ChordOptions fast = opt;
    fast.check_positivity = false;  // hypothesis checks are t-independent
    auto probe = [&](double t) {
        auto set = find_chords(f1, f2, beta, t, fast);
        SweepSample s;
        s.t = t;
        s.count = set.count();
        s.beta_morse = set.beta_morse;
        s.paths_agree = set.paths_agree;
        return s;
    };
    std::vector<SweepSample> sweep;
    for (int i = 0; i < samples; ++i) sweep.push_back(probe(t0 + (t1 - t0) * i / (samples - 1)));
    for (int depth = 0; depth < refine_depth; ++depth) {
        std::vector<SweepSample> refined;
        bool changed = false;
        for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
            refined.push_back(sweep[i]);
            if (sweep[i].count != sweep[i + 1].count) {
                refined.push_back(probe(0.5 * (sweep[i].t + sweep[i + 1].t)));
                changed = true;
            }
        }
        refined.push_back(sweep.back());
        sweep = std::move(refined);
        if (!changed) break;
    }
    return sweep;
}

}  // namespace chords
}  // namespace novhom

#endif
