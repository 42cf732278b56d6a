// novhom: batch driver for the Morse-Novikov engine.
//
// Exit codes: 0 success, 2 parse error, 3 validation failure, 4 resource
// cap, 5 violated inequality, 6 hypothesis failure.  Code 5 is the
// mathematical regression signal; crashes and solver-path disagreements
// exit 1.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "novhom/io.hpp"
#include "novhom/report.hpp"

namespace {

using namespace novhom;
using report::json;

enum ExitCode {
    kOk = 0,
    kInternal = 1,
    kParse = 2,
    kValidation = 3,
    kResource = 4,
    kViolation = 5,
    kHypothesis = 6,
};

struct OutputOpts {
    std::string format = "text";
};

void emit(const json& j, const OutputOpts& out) {
    if (out.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << report::render_text(j);
}

std::vector<std::int64_t> parse_primes(const std::string& s) {
    std::vector<std::int64_t> primes;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        primes.push_back(std::stoll(tok));
        if (primes.back() < 2) throw usage_error("--primes: entries must be >= 2");
    }
    if (primes.empty()) throw usage_error("--primes: empty list");
    return primes;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

std::vector<Rational> parse_point(const std::string& s) {
    std::vector<Rational> point;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) point.push_back(parse_rational(tok));
    return point;
}

exact::RankMode parse_mode(const std::string& s) {
    if (s == "symbolic") return exact::RankMode::symbolic;
    if (s == "specialized") return exact::RankMode::specialized;
    throw usage_error("--mode must be 'symbolic' or 'specialized'");
}

/// Novikov profile matching a smooth class: either from a bundled complex,
/// or the vanishing profile for a nonexact class on T^n.
struct ProfileSource {
    novikov::NovikovProfile profile;
    json meta;
};

ProfileSource profile_for_class(const std::optional<std::string>& complex_path,
                                const smooth::BetaForm& beta, exact::RankMode mode, int trials,
                                std::uint64_t seed) {
    ProfileSource src;
    const int n = beta.base_dim();
    if (complex_path) {
        if (!beta.integral_periods())
            throw hypothesis_error("class mismatch: profile comparison needs an integral period vector");
        auto input = io::load_complex(*complex_path);
        auto tc = input.twisted();
        if (tc.dim() != n)
            throw hypothesis_error("class mismatch: complex dimension " + std::to_string(tc.dim()) +
                                   " does not model the " + std::to_string(n) + "-torus");
        src.profile = novikov::novikov_numbers(tc, mode, trials, seed);
        src.meta["complex"] = *complex_path;
    } else {
        if (beta.is_exact())
            throw hypothesis_error(
                "an exact class has nonvanishing Novikov homology; pass the matching complex file");
        src.profile = novikov::NovikovProfile::zero(n);
        src.meta["complex"] = nullptr;
        src.meta["profile"] = "vanishing (nonexact class on the torus)";
    }
    return src;
}

json beta_json(const smooth::BetaForm& beta) {
    json j;
    j["a"] = report::vec_json(beta.constant_part());
    j["exact_terms"] = beta.exact_part().terms().size();
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Morse-Novikov homology of twisted complexes and counting bounds for "
                 "beta-critical points and Liouville chords"};
    app.require_subcommand(1);

    OutputOpts out;
    app.add_option("--format", out.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string mode_str = "symbolic";
    int trials = 5;
    std::uint64_t seed = 0;
    std::string primes_str = "2,3,5,7";
    long long cap_cells = 200000;
    smooth::SolverOptions solver;

    auto add_seed_flag = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (recorded in reports)");
    };
    auto add_rank_flags = [&](CLI::App* cmd) {
        cmd->add_option("--mode", mode_str, "rank mode: symbolic or specialized");
        cmd->add_option("--trials", trials, "specialization trials")->check(CLI::PositiveNumber);
        if (cmd->get_option_no_throw("--seed") == nullptr) add_seed_flag(cmd);
    };
    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid", solver.base_grid, "Newton seeds per torus axis");
        cmd->add_option("--tol", solver.tol, "Newton residual tolerance");
        if (cmd->get_option_no_throw("--seed") == nullptr) add_seed_flag(cmd);
    };

    // ---- homology ----
    auto* homology = app.add_subcommand("homology", "Novikov numbers and torsion bounds of a complex");
    homology->fallthrough();
    std::string homology_path;
    std::string point_str;
    homology->add_option("complex", homology_path, "complex file")->required();
    homology->add_option("--primes", primes_str, "primes for torsion lower bounds");
    homology->add_option("--point", point_str, "rational point for local-system ranks, e.g. 3 or 5/2,7");
    add_rank_flags(homology);

    // ---- window ----
    auto* window = app.add_subcommand("window", "finite-window relative homology ranks");
    window->fallthrough();
    std::string window_path;
    int radius = 1;
    window->add_option("complex", window_path, "complex file")->required();
    window->add_option("--radius", radius, "window radius k")->required();
    window->add_option("--cap-cells", cap_cells, "refuse stacks above this many cells");
    add_rank_flags(window);

    // ---- critical-points ----
    auto* crit = app.add_subcommand("critical-points", "enumerate beta-critical points of a function");
    crit->fallthrough();
    std::string crit_path;
    crit->add_option("function", crit_path, "function file")->required();
    add_solver_flags(crit);

    // ---- chords ----
    auto* chords_cmd = app.add_subcommand("chords", "Liouville chords of a fixed length");
    chords_cmd->fallthrough();
    std::string chords_path;
    double chord_t = 0.0;
    chords_cmd->add_option("pair", chords_path, "pair function file")->required();
    chords_cmd->add_option("--t", chord_t, "chord length")->required();
    add_solver_flags(chords_cmd);

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "chord counts over a range of lengths");
    sweep_cmd->fallthrough();
    std::string sweep_path, t_range = "-1:1";
    int samples = 101;
    sweep_cmd->add_option("pair", sweep_path, "pair function file")->required();
    sweep_cmd->add_option("--t-range", t_range, "length range a:b")->required();
    sweep_cmd->add_option("--samples", samples, "uniform sample count");
    add_solver_flags(sweep_cmd);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a counting inequality; exit 5 on violation");
    verify->fallthrough();
    verify->require_subcommand(1);
    std::string vfn_path, vcplx_path;
    bool has_cplx = false;

    auto* thm31 = verify->add_subcommand("thm31", "#Crit_j(f) >= rank HN_j");
    thm31->fallthrough();
    thm31->add_option("function", vfn_path, "function file")->required();
    auto* thm31_cplx = thm31->add_option("complex", vcplx_path, "matching complex file");
    add_solver_flags(thm31);
    add_rank_flags(thm31);

    auto* thm1 = verify->add_subcommand("thm1", "#Crit_j(F) >= rank HN_{j-p}");
    thm1->fallthrough();
    thm1->add_option("function", vfn_path, "generating function file")->required();
    auto* thm1_cplx = thm1->add_option("complex", vcplx_path, "matching complex file");
    add_solver_flags(thm1);
    add_rank_flags(thm1);

    auto* prop26 = verify->add_subcommand("prop26", "rank HN_i <= rank H_i");
    prop26->fallthrough();
    prop26->add_option("complex", vcplx_path, "complex file with a cocycle")->required();
    add_rank_flags(prop26);

    auto* prop14 = verify->add_subcommand("prop14", "chord count >= total Novikov rank");
    prop14->alias("chords");
    prop14->fallthrough();
    prop14->add_option("pair", vfn_path, "pair function file")->required();
    auto* prop14_cplx = prop14->add_option("complex", vcplx_path, "matching complex file");
    prop14->add_option("--t", chord_t, "chord length")->required();
    add_solver_flags(prop14);
    add_rank_flags(prop14);

    auto* vwindow = verify->add_subcommand("window", "(2k+1)^r b_i <= window rank");
    vwindow->fallthrough();
    vwindow->add_option("complex", vcplx_path, "complex file")->required();
    vwindow->add_option("--radius", radius, "window radius k")->required();
    vwindow->add_option("--cap-cells", cap_cells, "refuse stacks above this many cells");
    add_rank_flags(vwindow);

    CLI11_PARSE(app, argc, argv);

    exact::RankMode mode = parse_mode(mode_str);
    auto primes = parse_primes(primes_str);

    json j;
    j["seed"] = seed;

    if (homology->parsed()) {
        j["command"] = "homology";
        j["input"] = homology_path;
        j["mode"] = mode_str;
        auto input = io::load_complex(homology_path);
        auto tc = input.twisted();
        auto profile = novikov::novikov_numbers(tc, mode, trials, seed);
        if (tc.nvars() == 1 && tc.is_integral()) novikov::torsion_lower_bounds(tc, primes, profile);
        json pj = report::profile_json(profile);
        for (auto& [k, v] : pj.items()) j[k] = v;
        if (!point_str.empty()) {
            auto point = parse_point(point_str);
            json ls;
            ls["point"] = point_str;
            ls["ranks"] = novikov::local_system_ranks(tc, point);
            j["local_system"] = ls;
        }
        emit(j, out);
        return kOk;
    }

    if (window->parsed()) {
        j["command"] = "window";
        j["input"] = window_path;
        auto tc = io::load_complex(window_path).twisted();
        auto profile = novikov::novikov_numbers(tc, mode, trials, seed);
        novikov::WindowOptions wopt;
        wopt.cap_cells = cap_cells;
        auto rep = novikov::verify_window_inequality(tc, profile, radius, wopt);
        j["window"] = json::array({report::window_json(rep)});
        j["betti_novikov"] = profile.betti;
        emit(j, out);
        return kOk;
    }

    if (crit->parsed()) {
        j["command"] = "critical-points";
        j["input"] = crit_path;
        auto input = io::load_function(crit_path);
        if (input.is_pair()) throw usage_error("critical-points expects a single function");
        j["beta"] = beta_json(input.beta);
        j["tolerances"] = report::solver_json(solver, input.beta.base_dim());
        auto set = genfun::fiber_critical_points(input.f1, input.beta, solver);
        if (set.fiber_escape) throw internal_error("accepted point escaped the coupling ball");
        j["critical_points"] = report::critical_set_json(set);
        emit(j, out);
        return kOk;
    }

    if (chords_cmd->parsed()) {
        j["command"] = "chords";
        j["input"] = chords_path;
        j["t"] = chord_t;
        auto input = io::load_function(chords_path);
        if (!input.is_pair()) throw usage_error("chords expects a pair file");
        chords::ChordOptions copt;
        copt.solver = solver;
        j["tolerances"] = report::solver_json(solver, input.beta.base_dim());
        auto set = chords::find_chords(input.f1, *input.f2, input.beta, chord_t, copt);
        j["result"] = report::chord_set_json(set);
        emit(j, out);
        return set.paths_agree ? kOk : kInternal;
    }

    if (sweep_cmd->parsed()) {
        j["command"] = "sweep";
        j["input"] = sweep_path;
        auto colon = t_range.find(':', 1);  // skip a leading minus sign
        if (colon == std::string::npos) throw usage_error("--t-range needs the form a:b");
        double t0 = std::stod(t_range.substr(0, colon));
        double t1 = std::stod(t_range.substr(colon + 1));
        j["t_range"] = json::array({t0, t1});
        j["samples"] = samples;
        auto input = io::load_function(sweep_path);
        if (!input.is_pair()) throw usage_error("sweep expects a pair file");
        chords::ChordOptions copt;
        copt.solver = solver;
        j["tolerances"] = report::solver_json(solver, input.beta.base_dim());
        auto sweep = chords::chord_sweep(input.f1, *input.f2, input.beta, t0, t1, samples, copt);
        bool agree = true;
        for (const auto& s : sweep) agree = agree && s.paths_agree;
        j["sweep"] = report::sweep_json(sweep);
        emit(j, out);
        return agree ? kOk : kInternal;
    }

    // ---- verify subcommands ----
    if (thm31->parsed() || thm1->parsed()) {
        const bool shifted = thm1->parsed();
        has_cplx = shifted ? (thm1_cplx->count() > 0) : (thm31_cplx->count() > 0);
        j["command"] = shifted ? "verify thm1" : "verify thm31";
        j["clause"] = shifted ? "thm1" : "thm31";
        j["input"] = vfn_path;
        auto input = io::load_function(vfn_path);
        if (input.is_pair()) throw usage_error("verify expects a single function file");
        if (!shifted && input.f1.fiber_dim() > 0)
            throw usage_error("thm31 applies to functions on the torus; use thm1 for generating functions");
        j["beta"] = beta_json(input.beta);
        j["tolerances"] = report::solver_json(solver, input.beta.base_dim());

        auto src = profile_for_class(has_cplx ? std::optional<std::string>(vcplx_path) : std::nullopt,
                                     input.beta, mode, trials, seed);
        j["profile_source"] = src.meta;
        j["betti_novikov"] = src.profile.betti;
        {
            json certs = json::array();
            for (const auto& c : src.profile.certificates) certs.push_back(report::certificate_json(c));
            j["certificates"] = certs;
        }

        auto set = genfun::fiber_critical_points(input.f1, input.beta, solver);
        if (set.fiber_escape) throw internal_error("accepted point escaped the coupling ball");
        j["critical_points"] = report::critical_set_json(set);
        if (!set.beta_morse) {
            j["holds"] = nullptr;
            j["flag"] = "not beta-Morse";
            emit(j, out);
            return kHypothesis;
        }
        auto rep = shifted ? genfun::verify_theorem1(set, src.profile, input.f1)
                           : smooth::verify_theorem31(set, src.profile, input.f1.dim());
        j["thom_shift"] = shifted ? input.f1.negative_index() : 0;
        json cj = report::counting_json(rep);
        for (auto& [k, v] : cj.items()) j[k] = v;
        emit(j, out);
        return (rep.holds && rep.alternating_zero) ? kOk : kViolation;
    }

    if (prop26->parsed()) {
        j["command"] = "verify prop26";
        j["clause"] = "prop26";
        j["input"] = vcplx_path;
        auto input = io::load_complex(vcplx_path);
        if (!input.is_simplicial())
            throw usage_error("prop26 needs a simplicial complex with a cocycle");
        auto rep = novikov::verify_prop26(*input.simplicial, input.effective_cocycle(), mode, trials, seed);
        j["betti_novikov"] = rep.twisted;
        j["betti"] = rep.untwisted;
        j["holds"] = rep.holds;
        emit(j, out);
        return rep.holds ? kOk : kViolation;
    }

    if (prop14->parsed()) {
        has_cplx = prop14_cplx->count() > 0;
        j["command"] = "verify prop14";
        j["clause"] = "prop14";
        j["input"] = vfn_path;
        j["t"] = chord_t;
        auto input = io::load_function(vfn_path);
        if (!input.is_pair()) throw usage_error("prop14 expects a pair file");
        j["beta"] = beta_json(input.beta);
        j["tolerances"] = report::solver_json(solver, input.beta.base_dim());
        auto src = profile_for_class(has_cplx ? std::optional<std::string>(vcplx_path) : std::nullopt,
                                     input.beta, mode, trials, seed);
        j["profile_source"] = src.meta;
        {
            json certs = json::array();
            for (const auto& c : src.profile.certificates) certs.push_back(report::certificate_json(c));
            j["certificates"] = certs;
        }

        chords::ChordOptions copt;
        copt.solver = solver;
        auto set = chords::find_chords(input.f1, *input.f2, input.beta, chord_t, copt);
        j["result"] = report::chord_set_json(set);
        if (!set.paths_agree) {
            emit(j, out);
            return kInternal;
        }
        if (!set.beta_morse) {
            j["flag"] = "not beta-Morse";
            emit(j, out);
            return kHypothesis;
        }
        if (!set.positivity_ok) {
            j["flag"] = "generating functions are not strictly positive on their Lagrangians";
            emit(j, out);
            return kHypothesis;
        }
        auto rep = chords::verify_prop14_total(set, src.profile);
        j["count"] = rep.count;
        j["bound"] = rep.bound;
        j["holds"] = rep.holds;
        bool ok = rep.holds;
        if (input.f1.base_dim() == 1 && input.f1.fiber_dim() == 0 && input.f2->fiber_dim() == 0) {
            auto ess = chords::essential_chords_1d(input.f1, *input.f2, input.beta, chord_t, copt);
            j["essential_1d"] = report::essential_json(ess);
            if (ess.refused) {
                emit(j, out);
                return kHypothesis;
            }
            if (!ess.holds) ok = false;
        }
        emit(j, out);
        return ok ? kOk : kViolation;
    }

    if (vwindow->parsed()) {
        j["command"] = "verify window";
        j["clause"] = "window";
        j["input"] = vcplx_path;
        auto tc = io::load_complex(vcplx_path).twisted();
        auto profile = novikov::novikov_numbers(tc, mode, trials, seed);
        novikov::WindowOptions wopt;
        wopt.cap_cells = cap_cells;
        auto rep = novikov::verify_window_inequality(tc, profile, radius, wopt);
        j["window"] = json::array({report::window_json(rep)});
        j["holds"] = rep.holds;
        emit(j, out);
        return rep.holds ? kOk : kViolation;
    }

    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const io::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return kHypothesis;
    } catch (const usage_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
