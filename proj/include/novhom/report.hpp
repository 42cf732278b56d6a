#ifndef NOVHOM_REPORT_HPP
#define NOVHOM_REPORT_HPP

#include <json.hpp>

#include <string>

#include "novhom/chords.hpp"
#include "novhom/critical.hpp"
#include "novhom/novikov.hpp"
#include "novhom/window.hpp"

namespace novhom {
namespace report {

// Reports are emitted as ordered JSON so that identical configurations
// produce byte-identical output.
using json = nlohmann::ordered_json;

inline json certificate_json(const exact::RankCertificate& c) {
    json j;
    j["rank"] = c.rank;
    j["method"] = c.method == exact::RankMode::symbolic ? "symbolic" : "specialized";
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    return j;
}

inline json profile_json(const novikov::NovikovProfile& p) {
    json j;
    j["betti_novikov"] = p.betti;
    if (!p.betti_prime.empty()) {
        json primes = json::object();
        for (const auto& [prime, ranks] : p.betti_prime) primes[std::to_string(prime)] = ranks;
        j["betti_prime"] = primes;
        j["torsion_lower"] = p.torsion_lower;
        j["torsion_factors"] = p.torsion_factors;
        j["torsion_note"] = "prime-jump lower bounds; torsion supported away from every prime is not certified";
    }
    j["euler"] = p.euler;
    json certs = json::array();
    for (const auto& c : p.certificates) certs.push_back(certificate_json(c));
    j["certificates"] = certs;
    return j;
}

inline json window_json(const novikov::WindowReport& w) {
    json j;
    j["k"] = w.radius;
    j["multiplicity"] = w.multiplicity;
    j["ranks"] = w.window_ranks;
    j["betti_novikov"] = w.betti;
    j["holds"] = w.holds;
    return j;
}

inline json solver_json(const smooth::SolverOptions& s, int base_dim) {
    json j;
    j["grid"] = s.base_grid_for(base_dim);
    j["fiber_grid"] = s.fiber_grid;
    j["tol"] = s.tol;
    j["max_iter"] = s.max_iter;
    j["dedupe_radius"] = s.dedupe_radius;
    j["degeneracy_threshold"] = s.degeneracy_threshold;
    return j;
}

inline json vec_json(const smooth::Vec& v) {
    json j = json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

inline json critical_set_json(const smooth::CriticalSet& set) {
    json pts = json::array();
    for (const auto& p : set.points) {
        json e;
        e["x"] = vec_json(p.x);
        e["index"] = p.index;
        e["residual"] = p.residual;
        e["hessian_det"] = p.hessian_det;
        pts.push_back(e);
    }
    json j;
    j["points"] = pts;
    j["beta_morse"] = set.beta_morse;
    j["seeds"] = set.seeds;
    return j;
}

inline json counting_json(const smooth::CountingReport& rep) {
    json j;
    j["counts"] = rep.counts;
    j["bounds"] = rep.bounds;
    j["holds"] = rep.holds;
    j["alternating_sum"] = rep.alternating_sum;
    j["beta_morse"] = rep.beta_morse;
    return j;
}

inline json chord_record_json(const chords::ChordRecord& r) {
    json j;
    j["x"] = vec_json(r.base);
    j["xi1"] = vec_json(r.xi1);
    j["xi2"] = vec_json(r.xi2);
    j["t"] = r.t;
    j["value"] = r.value;
    j["orientation"] = r.t == 0.0 ? "both" : (r.positive ? "positive" : "negative");
    j["essential"] = r.essential;
    j["essential_positive"] = r.essential_positive;
    j["essential_negative"] = r.essential_negative;
    j["marginal"] = r.marginal;
    j["index"] = r.index;
    j["residual"] = r.residual;
    return j;
}

inline json chord_set_json(const chords::ChordSet& set) {
    json recs = json::array();
    for (const auto& r : set.records) recs.push_back(chord_record_json(r));
    json j;
    j["chords"] = recs;
    j["count"] = set.count();
    j["beta_morse"] = set.beta_morse;
    j["paths_agree"] = set.paths_agree;
    j["positivity_ok"] = set.positivity_ok;
    j["min_f1"] = set.min_f1;
    j["min_f2"] = set.min_f2;
    if (set.essential_suppressed) j["essential_suppressed"] = true;
    return j;
}

inline json sweep_json(const std::vector<chords::SweepSample>& sweep) {
    json samples = json::array();
    for (const auto& s : sweep) {
        json e;
        e["t"] = s.t;
        e["count"] = s.count;
        e["beta_morse"] = s.beta_morse;
        e["paths_agree"] = s.paths_agree;
        samples.push_back(e);
    }
    return samples;
}

inline json essential_json(const chords::Essential1dReport& rep) {
    json j;
    j["t"] = rep.t;
    j["refused"] = rep.refused;
    if (rep.refused) {
        j["reason"] = rep.refusal_reason;
        return j;
    }
    j["arcs"] = rep.arcs;
    j["full_circle"] = rep.full_circle;
    j["empty_region"] = rep.empty_region;
    j["bound"] = rep.bound;
    j["essential"] = rep.essential;
    j["holds"] = rep.holds;
    json arcs = json::array();
    for (const auto& [a, b] : rep.arc_intervals) arcs.push_back(json::array({a, b}));
    j["arc_intervals"] = arcs;
    return j;
}

/// plain-text rendering: one "key: value" line per top-level field
inline std::string render_text(const json& j, const std::string& prefix = "") {
    std::string out;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out += prefix + key + ":\n" + render_text(value, prefix + "  ");
        } else {
            out += prefix + key + ": " + value.dump() + "\n";
        }
    }
    return out;
}

}  // namespace report
}  // namespace novhom

#endif
