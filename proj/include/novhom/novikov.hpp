#ifndef NOVHOM_NOVIKOV_HPP
#define NOVHOM_NOVIKOV_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "novhom/cellcomplex.hpp"
#include "novhom/rank.hpp"
#include "novhom/smith.hpp"

namespace novhom {
namespace novikov {

using cells::Cocycle;

/// Per-degree rank data of a twisted complex over the fraction field,
/// with optional prime-field ranks and torsion lower bounds.
struct NovikovProfile {
    std::vector<int> betti;                          // b_i over Q(t_1..t_r)
    std::map<std::int64_t, std::vector<int>> betti_prime;  // per prime p: ranks over F_p(t)
    std::vector<int> torsion_lower;                  // certified lower bounds q_i
    std::vector<std::vector<std::string>> torsion_factors;  // non-unit invariant factors of d_{i+1}, r=1 only
    long long euler = 0;
    std::vector<exact::RankCertificate> certificates;  // per boundary degree 1..dim

    int betti_at(int i) const {
        return (i >= 0 && i < static_cast<int>(betti.size())) ? betti[static_cast<std::size_t>(i)] : 0;
    }
    long long betti_alternating_sum() const {
        long long s = 0;
        for (std::size_t i = 0; i < betti.size(); ++i)
            s += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(betti[i]);
        return s;
    }
    int betti_total() const {
        int s = 0;
        for (int b : betti) s += b;
        return s;
    }

    static NovikovProfile zero(int dim) {
        NovikovProfile p;
        p.betti.assign(static_cast<std::size_t>(dim) + 1, 0);
        p.torsion_lower.assign(static_cast<std::size_t>(dim) + 1, 0);
        p.euler = 0;
        return p;
    }
};

/// Novikov numbers b_i = (cells in degree i) - rank d_i - rank d_{i+1},
/// ranks taken over the fraction field of the Laurent ring.
inline NovikovProfile novikov_numbers(const cells::TwistedComplex& tc,
                                      exact::RankMode mode = exact::RankMode::symbolic,
                                      int trials = 5, std::uint64_t seed = 0) {
    NovikovProfile p;
    const int dim = tc.dim();
    std::vector<int> rank_d(static_cast<std::size_t>(dim) + 2, 0);
    for (int d = 1; d <= dim; ++d) {
        auto cert = exact::rank_fraction_field(tc.boundary(d), mode, trials, seed + static_cast<std::uint64_t>(d));
        rank_d[static_cast<std::size_t>(d)] = cert.rank;
        p.certificates.push_back(cert);
    }
    p.betti.resize(static_cast<std::size_t>(dim) + 1);
    for (int i = 0; i <= dim; ++i)
        p.betti[static_cast<std::size_t>(i)] =
            tc.cells(i) - rank_d[static_cast<std::size_t>(i)] - rank_d[static_cast<std::size_t>(i) + 1];
    p.torsion_lower.assign(static_cast<std::size_t>(dim) + 1, 0);
    p.euler = tc.euler();
    if (p.betti_alternating_sum() != p.euler)
        throw internal_error("novikov_numbers: Euler identity failed");
    return p;
}

/// Prime-field ranks and certified torsion lower bounds
/// q_i = max_p max(0, rank_{F_p(t)} H_i - b_i).  Univariate classes over an
/// integral complex only.  Also reports the non-unit invariant factors of
/// each d_{i+1} over Q[t,1/t]; these are monic up to a rational unit and
/// die in the Novikov localization, so they are informational.
inline void torsion_lower_bounds(const cells::TwistedComplex& tc, const std::vector<std::int64_t>& primes,
                                 NovikovProfile& profile) {
    if (tc.nvars() != 1)
        throw usage_error("torsion_lower_bounds: only univariate cocycles (r = 1) are supported");
    if (!tc.is_integral())
        throw usage_error("torsion_lower_bounds: complex must be defined over the integers");
    const int dim = tc.dim();
    for (std::int64_t prime : primes) {
        std::vector<int> rank_d(static_cast<std::size_t>(dim) + 2, 0);
        for (int d = 1; d <= dim; ++d) {
            auto mp = tc.boundary(d).map_entries<LaurentFp>(
                [&](const LaurentQ& v) { return reduce_mod_p(v, prime); });
            rank_d[static_cast<std::size_t>(d)] = exact::rank_fraction_field_p(mp).rank;
        }
        std::vector<int> ranks(static_cast<std::size_t>(dim) + 1);
        for (int i = 0; i <= dim; ++i)
            ranks[static_cast<std::size_t>(i)] =
                tc.cells(i) - rank_d[static_cast<std::size_t>(i)] - rank_d[static_cast<std::size_t>(i) + 1];
        profile.betti_prime[prime] = ranks;
    }
    profile.torsion_lower.assign(static_cast<std::size_t>(dim) + 1, 0);
    for (int i = 0; i <= dim; ++i) {
        int q = 0;
        for (const auto& [p, ranks] : profile.betti_prime) {
            (void)p;
            int jump = ranks[static_cast<std::size_t>(i)] - profile.betti_at(i);
            if (jump < 0)
                throw internal_error("torsion_lower_bounds: prime-field rank below the fraction-field rank");
            q = std::max(q, jump);
        }
        profile.torsion_lower[static_cast<std::size_t>(i)] = q;
    }
    // informational invariant factors over Q[t,1/t]
    profile.torsion_factors.assign(static_cast<std::size_t>(dim) + 1, {});
    for (int i = 0; i < dim; ++i) {
        auto factors = exact::snf_univariate(tc.boundary(i + 1));
        for (const auto& f : factors) {
            if (f.is_constant()) continue;  // unit factor
            profile.torsion_factors[static_cast<std::size_t>(i)].push_back(f.str());
        }
    }
}

/// Per-degree homology ranks after substituting an exact rational point
/// for every variable.  Cohomological ranks coincide (transposes have the
/// same rank), so only one vector is reported.
inline std::vector<int> local_system_ranks(const cells::TwistedComplex& tc,
                                           const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != tc.nvars())
        throw usage_error("local_system_ranks: point arity mismatch");
    for (const auto& c : point)
        if (c == 0) throw usage_error("local_system_ranks: zero coordinate in the substitution point");
    auto mats = tc.specialize(point);
    const int dim = tc.dim();
    std::vector<int> rank_d(static_cast<std::size_t>(dim) + 2, 0);
    for (int d = 1; d <= dim; ++d)
        rank_d[static_cast<std::size_t>(d)] = exact::rank_field(mats[static_cast<std::size_t>(d)]);
    std::vector<int> ranks(static_cast<std::size_t>(dim) + 1);
    for (int i = 0; i <= dim; ++i)
        ranks[static_cast<std::size_t>(i)] =
            tc.cells(i) - rank_d[static_cast<std::size_t>(i)] - rank_d[static_cast<std::size_t>(i) + 1];
    return ranks;
}

struct Prop26Report {
    std::vector<int> twisted;    // b_i(z)
    std::vector<int> untwisted;  // b_i(0) = rational Betti numbers
    bool holds = true;
};

/// rank(HN_i) <= rank(H_i): compare the twisted profile against the zero
/// cocycle on the same complex.
inline Prop26Report verify_prop26(const cells::SimplicialComplex& k, const Cocycle& z,
                                  exact::RankMode mode = exact::RankMode::symbolic, int trials = 5,
                                  std::uint64_t seed = 0) {
    Prop26Report rep;
    rep.twisted = novikov_numbers(cells::twist(k, z), mode, trials, seed).betti;
    rep.untwisted = novikov_numbers(cells::twist(k, cells::Cocycle::zero(k, z.rank())), mode, trials, seed).betti;
    for (std::size_t i = 0; i < rep.twisted.size(); ++i)
        if (rep.twisted[i] > rep.untwisted[i]) rep.holds = false;
    return rep;
}

}  // namespace novikov
}  // namespace novhom

#endif
