#ifndef NOVHOM_CRITICAL_HPP
#define NOVHOM_CRITICAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "novhom/fields.hpp"
#include "novhom/novikov.hpp"

namespace novhom {
namespace smooth {

struct SolverOptions {
    int base_grid = 0;              // seeds per torus axis; 0 picks 256 (n=1) or 128
    int fiber_grid = 33;            // seeds per fiber axis
    double tol = 1e-12;             // residual norm for convergence
    int max_iter = 50;
    double dedupe_radius = 1e-6;
    double degeneracy_threshold = 1e-8;
    double divergence_bound = 1e6;  // abandon a seed that wanders this far

    int base_grid_for(int n) const { return base_grid > 0 ? base_grid : (n == 1 ? 256 : 128); }
};

/// A beta-critical point of a function on T^n x R^m, with the index of
/// the reduced Hessian A = Hess f - f (beta beta^T + Dbeta).
struct BetaCriticalPoint {
    Vec x;             // periodic coords first, wrapped into [0, 2*pi)
    int index = 0;
    double residual = 0.0;
    double hessian_det = 0.0;
    double min_abs_eigenvalue = 0.0;
};

struct CriticalSet {
    std::vector<BetaCriticalPoint> points;
    bool beta_morse = true;   // false when any accepted point is within the
                              // degeneracy threshold of a singular Hessian
    long long seeds = 0;
    long long converged = 0;
    bool fiber_escape = false;  // accepted point outside the coupling ball

    std::vector<int> counts_by_index(int top_index) const {
        std::vector<int> counts(static_cast<std::size_t>(top_index) + 1, 0);
        for (const auto& p : points)
            if (p.index >= 0 && p.index <= top_index) ++counts[static_cast<std::size_t>(p.index)];
        return counts;
    }
};

/// The critical system G(x) = grad f - f * beta with beta pulled back from
/// the first n (periodic) coordinates.
class BetaSystem {
public:
    BetaSystem(const ScalarField& f, const BetaForm& beta)
        : f_(f), beta_(beta), n_(beta.base_dim()), d_(f.dim()) {
        if (d_ < n_) throw usage_error("BetaSystem: field dimension below base dimension");
    }

    int dim() const { return d_; }
    int base_dim() const { return n_; }

    Vec beta_total(const Vec& x) const {
        Vec b = Vec::Zero(d_);
        b.head(n_) = beta_.covector(x.head(n_));
        return b;
    }

    Mat dbeta_total(const Vec& x) const {
        Mat db = Mat::Zero(d_, d_);
        db.topLeftCorner(n_, n_) = beta_.jacobian(x.head(n_));
        return db;
    }

    Vec residual(const Vec& x) const { return f_.gradient(x) - f_.value(x) * beta_total(x); }

    Mat jacobian(const Vec& x) const {
        Vec b = beta_total(x);
        return f_.hessian(x) - b * f_.gradient(x).transpose() - f_.value(x) * dbeta_total(x);
    }

    /// Hessian of e^{-g} f at a critical point, up to the positive factor
    /// e^{-g}; symmetric because beta is closed
    Mat reduced_hessian(const Vec& x) const {
        Vec b = beta_total(x);
        return f_.hessian(x) - f_.value(x) * (b * b.transpose() + dbeta_total(x));
    }

private:
    const ScalarField& f_;
    const BetaForm& beta_;
    int n_, d_;
};

namespace detail {

inline double wrap_angle(double a) {
    double w = std::fmod(a, two_pi);
    if (w < 0) w += two_pi;
    // keep exact zero rather than 2*pi when rounding lands on the seam
    if (w >= two_pi) w = 0.0;
    return w;
}

inline double torus_distance(const Vec& a, const Vec& b, int periodic_dims) {
    double acc = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        double d = std::abs(a[i] - b[i]);
        if (i < periodic_dims) d = std::min(d, two_pi - d);
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// Newton iteration over a generic square system
template <class System>
bool newton_solve(const System& sys, Vec& x, const SolverOptions& opt) {
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        Vec g = sys.residual(x);
        if (!g.allFinite()) return false;
        if (g.norm() <= opt.tol) return true;
        Mat j = sys.jacobian(x);
        if (!j.allFinite()) return false;
        Eigen::FullPivLU<Mat> lu(j);
        if (!lu.isInvertible()) return false;  // singular Jacobian: seed discarded
        Vec dx = lu.solve(-g);
        x += dx;
        if (x.lpNorm<Eigen::Infinity>() > opt.divergence_bound) return false;
    }
    return sys.residual(x).norm() <= opt.tol;
}

/// deterministic merge: sort candidates, then greedy dedupe on the torus metric
inline void dedupe_points(std::vector<Vec>& candidates, int periodic_dims, double radius) {
    std::sort(candidates.begin(), candidates.end(), [](const Vec& a, const Vec& b) {
        for (int i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    std::vector<Vec> accepted;
    for (const auto& c : candidates) {
        bool fresh = true;
        for (const auto& a : accepted)
            if (torus_distance(c, a, periodic_dims) <= radius) {
                fresh = false;
                break;
            }
        if (fresh) accepted.push_back(c);
    }
    candidates = std::move(accepted);
}

/// all grid seeds: periodic axes cover [0, 2*pi), fiber axes [-w_i, w_i]
template <class Fn>
void for_each_seed(int n, const std::vector<double>& fiber_halfwidths, const SolverOptions& opt, Fn&& fn) {
    const int d = n + static_cast<int>(fiber_halfwidths.size());
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) sizes.push_back(opt.base_grid_for(n));
    for (std::size_t i = 0; i < fiber_halfwidths.size(); ++i) sizes.push_back(opt.fiber_grid);
    long long total = 1;
    for (int s : sizes) total *= s;
    if (total > 20000000) throw resource_error("critical point search: seed grid too large");
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Vec seed(d);
    for (long long it = 0; it < total; ++it) {
        for (int i = 0; i < d; ++i) {
            if (i < n) {
                seed[i] = two_pi * idx[static_cast<std::size_t>(i)] / sizes[static_cast<std::size_t>(i)];
            } else {
                double w = fiber_halfwidths[static_cast<std::size_t>(i - n)];
                int g = sizes[static_cast<std::size_t>(i)];
                seed[i] = g == 1 ? 0.0 : -w + 2.0 * w * idx[static_cast<std::size_t>(i)] / (g - 1);
            }
        }
        fn(seed);
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[static_cast<std::size_t>(i)] < sizes[static_cast<std::size_t>(i)]) break;
            idx[static_cast<std::size_t>(i)] = 0;
        }
    }
}

}  // namespace detail

/// classify one converged point: index and degeneracy data of the reduced Hessian
inline BetaCriticalPoint reduce_index(const BetaSystem& sys, const Vec& x,
                                      const SolverOptions& opt = {}) {
    BetaCriticalPoint p;
    p.x = x;
    p.residual = sys.residual(x).norm();
    Mat a = sys.reduced_hessian(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    double det = 1.0;
    double min_abs = std::numeric_limits<double>::infinity();
    int index = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()[i];
        det *= lam;
        min_abs = std::min(min_abs, std::abs(lam));
        if (lam < 0) ++index;
    }
    p.index = index;
    p.hessian_det = det;
    p.min_abs_eigenvalue = min_abs;
    (void)opt;
    return p;
}

/// Newton search for beta-critical points from a dense grid of seeds.
/// Fiber axes (beyond beta's base dimension) are seeded over the given
/// symmetric boxes.
inline CriticalSet find_beta_critical_points(const ScalarField& f, const BetaForm& beta,
                                             const SolverOptions& opt = {},
                                             const std::vector<double>& fiber_halfwidths = {}) {
    BetaSystem sys(f, beta);
    const int n = beta.base_dim();
    if (f.dim() != n + static_cast<int>(fiber_halfwidths.size()))
        throw usage_error("find_beta_critical_points: fiber box arity mismatch");

    CriticalSet out;
    std::vector<Vec> candidates;
    detail::for_each_seed(n, fiber_halfwidths, opt, [&](const Vec& seed) {
        ++out.seeds;
        Vec x = seed;
        if (!detail::newton_solve(sys, x, opt)) return;
        ++out.converged;
        for (int i = 0; i < n; ++i) x[i] = detail::wrap_angle(x[i]);
        candidates.push_back(x);
    });
    detail::dedupe_points(candidates, n, opt.dedupe_radius);
    for (const auto& x : candidates) {
        BetaCriticalPoint p = reduce_index(sys, x, opt);
        if (p.min_abs_eigenvalue <= opt.degeneracy_threshold ||
            std::abs(p.hessian_det) <= opt.degeneracy_threshold)
            out.beta_morse = false;
        out.points.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------
// counting inequality against a Novikov profile
// ---------------------------------------------------------------------

struct CountingReport {
    std::vector<int> counts;   // beta-critical points per index
    std::vector<int> bounds;   // profile ranks shifted as required
    bool holds = true;
    long long alternating_sum = 0;
    bool alternating_zero = true;
    bool beta_morse = true;
};

/// #Crit_j >= b_{j - shift} for every j, plus the vanishing alternating sum
inline CountingReport counting_inequality(const CriticalSet& set, const novikov::NovikovProfile& profile,
                                          int top_index, int shift = 0) {
    CountingReport rep;
    rep.beta_morse = set.beta_morse;
    rep.counts = set.counts_by_index(top_index);
    for (int j = 0; j <= top_index; ++j) {
        int bound = profile.betti_at(j - shift);
        rep.bounds.push_back(bound);
        if (rep.counts[static_cast<std::size_t>(j)] < bound) rep.holds = false;
    }
    for (std::size_t j = 0; j < rep.counts.size(); ++j)
        rep.alternating_sum += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(rep.counts[j]);
    rep.alternating_zero = rep.alternating_sum == 0;
    return rep;
}

/// #Crit_j(f) >= rank(HN_j) on the torus; the profile must model the same
/// integral class (checked by the caller via integral_periods)
inline CountingReport verify_theorem31(const CriticalSet& set, const novikov::NovikovProfile& profile,
                                       int dim) {
    return counting_inequality(set, profile, dim, 0);
}

}  // namespace smooth
}  // namespace novhom

#endif
