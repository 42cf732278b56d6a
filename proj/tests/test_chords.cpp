#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "novhom/chords.hpp"
#include "support/fixtures.hpp"

using namespace novhom;
using namespace novhom::chords;
using namespace novhom::smooth;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

/// f1 = 2 + sin(theta)/2, f2 = 2 + cos(theta)/2: the graph pair used
/// throughout; both strictly positive
GeneratingFunction graph_f1() {
    TorusTrig f(1);
    f.add_term({0}, 2.0, 0.0);
    f.add_term({1}, 0.5, -pi / 2);
    return GeneratingFunction(1, {}, 0.0, f);
}

GeneratingFunction graph_f2() {
    TorusTrig f(1);
    f.add_term({0}, 2.0, 0.0);
    f.add_term({1}, 0.5, 0.0);
    return GeneratingFunction(1, {}, 0.0, f);
}

BetaForm dtheta() { return BetaForm(Vec::Ones(1)); }

}  // namespace

TEST_CASE("length-zero chords of the graph pair sit at pi/2 and 3*pi/2") {
    auto set = find_chords(graph_f1(), graph_f2(), dtheta(), 0.0);
    REQUIRE(set.paths_agree);
    REQUIRE(set.positivity_ok);
    REQUIRE(set.beta_morse);
    REQUIRE(set.records.size() == 2);
    REQUIRE(set.records[0].base[0] == Approx(pi / 2).margin(1e-8));
    REQUIRE(set.records[1].base[0] == Approx(3 * pi / 2).margin(1e-8));
}

TEST_CASE("difference field is the pointwise t-difference") {
    GeneratingFunction f1 = graph_f1(), f2 = graph_f2();
    DifferenceField delta(f1, f2, 0.3);
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        Vec z(1);
        z[0] = two_pi * rng.uniform01();
        double expect = f2.value(z) - std::exp(0.3) * f1.value(z);
        REQUIRE(delta.value(z) == Approx(expect));
    }
    REQUIRE(delta.negative_index() == 0);
}

TEST_CASE("quadratic signature of the difference: p2 + (m1 - p1)") {
    TorusTrig trig(1);
    trig.add_term({1}, 0.3, 0.0);
    GeneratingFunction f1(1, {1, -1}, 3.0, trig);   // m1 = 2, p1 = 1
    GeneratingFunction f2(1, {-1}, 3.0, trig);      // m2 = 1, p2 = 1
    DifferenceField delta(f1, f2, 0.1);
    REQUIRE(delta.negative_index() == 1 + (2 - 1));
    REQUIRE(delta.dim() == 1 + 2 + 1);
}

TEST_CASE("dual solver paths agree across a coarse sweep") {
    ChordOptions opt;
    opt.solver.base_grid = 128;
    auto sweep = chord_sweep(graph_f1(), graph_f2(), dtheta(), -0.5, 0.5, 21, opt, 2);
    for (const auto& s : sweep) {
        REQUIRE(s.paths_agree);
        REQUIRE(s.count >= 0);
    }
}

TEST_CASE("duality: chords of (F1, F2, t) equal chords of (F2, F1, -t)") {
    for (double t : {-0.3, 0.0, 0.2}) {
        auto fwd = find_chords(graph_f1(), graph_f2(), dtheta(), t);
        auto bwd = find_chords(graph_f2(), graph_f1(), dtheta(), -t);
        REQUIRE(fwd.records.size() == bwd.records.size());
        for (std::size_t i = 0; i < fwd.records.size(); ++i) {
            REQUIRE(fwd.records[i].base[0] == Approx(bwd.records[i].base[0]).margin(1e-8));
            // essential flags swap with the orientation convention
            if (!fwd.records[i].marginal && !bwd.records[i].marginal && t != 0.0)
                REQUIRE(fwd.records[i].essential == bwd.records[i].essential);
        }
    }
}

TEST_CASE("essential flags are invariant under a common positive rescale") {
    for (double t : {-0.2, 0.15}) {
        auto base = find_chords(graph_f1(), graph_f2(), dtheta(), t);
        auto scaled = find_chords(graph_f1().scaled(3.0), graph_f2().scaled(3.0), dtheta(), t);
        REQUIRE(base.records.size() == scaled.records.size());
        for (std::size_t i = 0; i < base.records.size(); ++i) {
            REQUIRE(base.records[i].base[0] == Approx(scaled.records[i].base[0]).margin(1e-7));
            REQUIRE(base.records[i].essential == scaled.records[i].essential);
        }
    }
}

TEST_CASE("total bound: nonexact class gives a free pass, exact class binds") {
    auto set = find_chords(graph_f1(), graph_f2(), dtheta(), 0.0);
    auto rep = verify_prop14_total(set, novikov::NovikovProfile::zero(1));
    REQUIRE(rep.bound == 0);
    REQUIRE(rep.holds);

    BetaForm exact(Vec::Zero(1));
    auto profile = novikov::novikov_numbers(
        cells::twist(fixtures::circle(), fixtures::zero_cocycle(fixtures::circle())));
    auto set2 = find_chords(graph_f1(), graph_f2(), exact, 0.0);
    auto rep2 = verify_prop14_total(set2, profile);
    REQUIRE(rep2.bound == 2);
    REQUIRE(rep2.count == 2);
    REQUIRE(rep2.holds);
}

TEST_CASE("exact class on the 2-torus: graph pair meets the bound of four") {
    TorusTrig f1t(2), f2t(2);
    f1t.add_term({0, 0}, 2.0, 0.0);
    f1t.add_term({1, 0}, 0.4, 0.3);
    f1t.add_term({0, 1}, 0.3, 1.1);
    f2t.add_term({0, 0}, 2.0, 0.0);
    f2t.add_term({1, 1}, 0.35, -0.4);
    f2t.add_term({0, 1}, 0.25, 0.9);
    GeneratingFunction f1(2, {}, 0.0, f1t), f2(2, {}, 0.0, f2t);
    BetaForm exact(Vec::Zero(2));
    auto k = fixtures::torus7();
    auto profile = novikov::novikov_numbers(cells::twist(k, fixtures::zero_cocycle(k)));
    ChordOptions opt;
    opt.positivity_grid = 64;
    auto set = find_chords(f1, f2, exact, 0.0, opt);
    REQUIRE(set.paths_agree);
    auto rep = verify_prop14_total(set, profile);
    REQUIRE(rep.bound == 4);
    REQUIRE(rep.holds);
}

TEST_CASE("positivity hypothesis failure suppresses essential flags") {
    TorusTrig neg(1);
    neg.add_term({0}, -2.0, 0.0);  // strictly negative graph
    GeneratingFunction f1(1, {}, 0.0, neg);
    auto set = find_chords(f1, graph_f2(), dtheta(), 0.1);
    REQUIRE_FALSE(set.positivity_ok);
    REQUIRE(set.essential_suppressed);
    for (const auto& r : set.records) REQUIRE_FALSE(r.essential);
}

TEST_CASE("essential negative chords against the sublevel arc count") {
    auto rep = essential_chords_1d(graph_f1(), graph_f2(), dtheta(), -0.1);
    REQUIRE_FALSE(rep.refused);
    REQUIRE(rep.arcs == 1);
    REQUIRE(rep.bound == 1);
    REQUIRE(rep.essential >= 1);
    REQUIRE(rep.holds);
}

TEST_CASE("empty sublevel set bounds nothing") {
    // f2 - e^t f1 with t very negative is positive everywhere
    auto rep = essential_chords_1d(graph_f1(), graph_f2(), dtheta(), -3.0);
    REQUIRE_FALSE(rep.refused);
    // the region {Delta <= 0} is empty: bound 0, trivially passes
    REQUIRE(rep.empty_region);
    REQUIRE(rep.bound == 0);
    REQUIRE(rep.holds);
}

TEST_CASE("full-circle sublevel set uses the circle profile") {
    // t large: Delta^t < 0 everywhere; nonexact class gives bound zero
    auto rep = essential_chords_1d(graph_f1(), graph_f2(), dtheta(), 3.0);
    REQUIRE_FALSE(rep.refused);
    // t > 0 looks at the superlevel set, which is empty here
    REQUIRE((rep.empty_region || rep.full_circle));
    REQUIRE(rep.holds);

    // a dominating F1 pushes the sublevel set over the whole circle
    TorusTrig big(1);
    big.add_term({0}, 10.0, 0.0);
    big.add_term({1}, 0.5, 0.2);
    GeneratingFunction f1(1, {}, 0.0, big);
    auto repneg = essential_chords_1d(f1, graph_f2(), dtheta(), -0.1);
    REQUIRE_FALSE(repneg.refused);
    REQUIRE(repneg.full_circle);
    REQUIRE(repneg.bound == 0);  // nonexact class on the whole circle
    REQUIRE(repneg.holds);
}

TEST_CASE("tangency refuses the essential count") {
    // f2 = f1 makes Delta^0 identically zero: no regular value anywhere
    auto rep = essential_chords_1d(graph_f1(), graph_f1(), dtheta(), 0.0);
    REQUIRE(rep.refused);
}

TEST_CASE("sweep counts are locally constant away from the births") {
    ChordOptions opt;
    opt.solver.base_grid = 128;
    auto sweep = chord_sweep(graph_f1(), graph_f2(), dtheta(), -0.4, 0.4, 41, opt, 3);
    // refining never rewrites an already-sampled count
    auto again = chord_sweep(graph_f1(), graph_f2(), dtheta(), -0.4, 0.4, 41, opt, 5);
    std::size_t j = 0;
    for (const auto& s : sweep) {
        while (j < again.size() && std::abs(again[j].t - s.t) > 1e-12) ++j;
        REQUIRE(j < again.size());
        REQUIRE(again[j].count == s.count);
    }
}
