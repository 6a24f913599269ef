#include <doctest.h>

#include <cmath>
#include <random>

#include "carab/meshcurve.hpp"

using namespace carab;

namespace {

// The worked concentric configuration: a small disc enclosed by the unit
// circle, complement of a large disc outside. R must dominate the curve
// length, so the smallest valid choice here is 2*pi rather than 2; the
// square-count certificate below still uses the tighter value 100.
SeparationInstance concentricInstance() {
    return makeInstance({CompactSet::disc({0.0, 0.0}, 0.1)},
                        {CompactSet::discComplement({0.0, 0.0}, 2.0)},
                        circleCurve({0.0, 0.0}, 1.0, 64), 0.5, 2.0 * kPi);
}

} // namespace

TEST_CASE("separation instance: invariants verified on construction") {
    CHECK_NOTHROW(concentricInstance());

    // Curve too close to E for the requested clearance.
    CHECK_THROWS(makeInstance({CompactSet::disc({0.0, 0.0}, 0.8)},
                              {CompactSet::discComplement({0.0, 0.0}, 2.0)},
                              circleCurve({0.0, 0.0}, 1.0, 64), 0.5, 2.0 * kPi));
    // Curve longer than R.
    CHECK_THROWS(makeInstance({CompactSet::disc({0.0, 0.0}, 0.1)},
                              {CompactSet::discComplement({0.0, 0.0}, 2.0)},
                              circleCurve({0.0, 0.0}, 1.0, 64), 0.5, 1.0));
    // Infinity missing from the outer side.
    CHECK_THROWS(makeInstance({CompactSet::disc({0.0, 0.0}, 0.1)},
                              {CompactSet::disc({3.0, 0.0}, 0.5)},
                              circleCurve({0.0, 0.0}, 1.0, 64), 0.5, 2.0 * kPi));
    // Curve does not enclose E.
    CHECK_THROWS(makeInstance({CompactSet::disc({5.0, 5.0}, 0.1)},
                              {CompactSet::discComplement({0.0, 0.0}, 20.0)},
                              circleCurve({0.0, 0.0}, 1.0, 64), 0.5, 2.0 * kPi));
}

TEST_CASE("mesh cycle: concentric configuration windings and square count") {
    const auto inst = concentricInstance();
    const auto cycle = buildMeshCycle(inst);

    CHECK(cycle.side == doctest::Approx(0.5 / (4.0 * std::sqrt(2.0))).epsilon(1e-15));
    CHECK(winding(cycle, {0.0, 0.0}) == 1);
    CHECK(winding(cycle, {3.0, 0.0}) == 0);
    CHECK(cycle.squareCount <= 100);  // (2*2/0.5 + 2)^2
    CHECK(cycle.squareCount > 0);

    // Boundary of the chain vanishes and cancellation is complete.
    for (const auto& [key, mult] : cycle.edges) {
        (void)key;
        CHECK((mult == 1 || mult == -1));
    }

    // Surviving edges keep the certified clearances.
    for (const auto& [key, mult] : cycle.edges) {
        (void)mult;
        const cplx a = cycle.point(key[0], key[1]);
        const cplx b = cycle.point(key[0] + (key[2] == 0), key[1] + (key[2] == 1));
        CHECK(inst.E[0].euclDistSegment(a, b) >= 0.5 / 4.0 - 1e-12);
        CHECK(inst.F[0].euclDistSegment(a, b) >= 1.5 * 0.5 - 1e-12);
    }
}

TEST_CASE("mesh cycle: single tiny set gives one square block, winding 1 at center") {
    // E so small that its enlargement stays within a handful of squares.
    const auto inst = makeInstance({CompactSet::disc({0.0, 0.0}, 0.01)},
                                   {CompactSet::discComplement({0.0, 0.0}, 8.0)},
                                   circleCurve({0.0, 0.0}, 2.0, 96), 1.6, 4.0 * kPi);
    const auto cycle = buildMeshCycle(inst);
    CHECK(winding(cycle, {0.0, 0.0}) == 1);
    const auto parts = decomposeCycle(cycle);
    CHECK(parts.size() == 1);  // one block, one outer boundary
}

TEST_CASE("mesh cycle: translation equivariance") {
    const auto base = concentricInstance();
    const cplx t(10.0, 0.0);
    const auto moved = makeInstance({CompactSet::disc(t, 0.1)},
                                    {CompactSet::discComplement(t, 2.0)},
                                    circleCurve(t, 1.0, 64), 0.5, 12.0);

    const auto c0 = buildMeshCycle(base);
    const auto c1 = buildMeshCycle(moved);
    CHECK(c0.squareCount == c1.squareCount);
    CHECK(c0.edges.size() == c1.edges.size());
    CHECK(c0.edges == c1.edges);  // same integer chain, shifted origin
    CHECK(std::abs(c1.origin - c0.origin - t) < 1e-9);
}

TEST_CASE("decompose: two separated blocks give two parts") {
    const auto inst = makeInstance(
        {CompactSet::disc({-0.8, 0.0}, 0.05), CompactSet::disc({0.8, 0.0}, 0.05)},
        {CompactSet::discComplement({0.0, 0.0}, 4.0)},
        circleCurve({0.0, 0.0}, 1.4, 96), 0.4, 2.0 * kPi * 1.45);
    const auto cycle = buildMeshCycle(inst);
    const auto parts = decomposeCycle(cycle);
    CHECK(parts.size() == 2);
    // Each part winds once around exactly one of the discs.
    int hitsLeft = 0, hitsRight = 0;
    for (const auto& p : parts) {
        hitsLeft += p.winding({-0.8, 0.0});
        hitsRight += p.winding({0.8, 0.0});
    }
    CHECK(hitsLeft == 1);
    CHECK(hitsRight == 1);
}

TEST_CASE("decompose: winding additivity at probe points") {
    const auto inst = seededInstance(7);
    const auto cycle = buildMeshCycle(inst);
    const auto parts = decomposeCycle(cycle);

    // Every edge consumed exactly once across the parts.
    size_t totalEdges = 0;
    for (const auto& p : parts) totalEdges += p.size();
    CHECK(totalEdges == cycle.edges.size());

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-2.5, 2.5);
    int probes = 0;
    while (probes < 20) {
        const cplx z(coord(rng), coord(rng));
        bool onEdge = false;
        for (const auto& p : parts) onEdge = onEdge || p.onCurve(z, 1e-9);
        if (onEdge) continue;
        ++probes;
        int sum = 0;
        for (const auto& p : parts) sum += p.winding(z);
        CHECK(sum == winding(cycle, z));
    }
}

TEST_CASE("join: single part returned unchanged") {
    const auto inst = concentricInstance();
    const auto parts = decomposeCycle(buildMeshCycle(inst));
    REQUIRE(parts.size() == 1);
    const auto joined = joinCurves(parts, inst);
    CHECK(joined.points == parts[0].points);
}

TEST_CASE("join: two-block instance straddling the separating circle") {
    const auto inst = makeInstance(
        {CompactSet::disc({-0.8, 0.0}, 0.05), CompactSet::disc({0.8, 0.0}, 0.05)},
        {CompactSet::discComplement({0.0, 0.0}, 4.0)},
        circleCurve({0.0, 0.0}, 1.4, 96), 0.4, 2.0 * kPi * 1.45);
    const auto cycle = buildMeshCycle(inst);
    const auto parts = decomposeCycle(cycle);
    REQUIRE(parts.size() == 2);
    const auto joined = joinCurves(parts, inst);

    CHECK(joined.winding({-0.8, 0.0}) == 1);
    CHECK(joined.winding({0.8, 0.0}) == 1);
    CHECK(joined.winding({4.5, 0.0}) == 0);

    // Homologous to the cycle: winding difference vanishes at 50 probes.
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    int probes = 0;
    while (probes < 50) {
        const cplx z(coord(rng), coord(rng));
        if (joined.onCurve(z, 1e-9)) continue;
        bool onPart = false;
        for (const auto& p : parts) onPart = onPart || p.onCurve(z, 1e-9);
        if (onPart) continue;
        ++probes;
        CHECK(joined.winding(z) == winding(cycle, z));
    }
}

TEST_CASE("pipeline: concentric instance length below the a-priori bound") {
    const auto inst = concentricInstance();
    const auto res = meshCurve(inst);
    CHECK(res.curve.winding({0.0, 0.0}) == 1);
    CHECK(res.curve.winding({2.5, 0.0}) == 0);
    CHECK(res.length.lower > 0.0);
    CHECK(res.length.upper < res.apriori);
    CHECK(res.squareCount <= 100);
    CHECK(res.cycleDistToE >= 0.5 / 4.0 - 1e-12);
    CHECK(res.cycleDistToF >= 1.5 * 0.5 - 1e-12);
}

TEST_CASE("pipeline: similarity equivariance of the winding invariants") {
    const double lam = 3.0;
    const auto scaled = makeInstance({CompactSet::disc({0.0, 0.0}, lam * 0.1)},
                                     {CompactSet::discComplement({0.0, 0.0}, lam * 2.0)},
                                     circleCurve({0.0, 0.0}, lam, 64), lam * 0.5, lam * 2.0 * kPi);
    const auto res = meshCurve(scaled);
    CHECK(res.curve.winding({0.0, 0.0}) == 1);
    CHECK(res.curve.winding({lam * 2.5, 0.0}) == 0);
    // The rescaled mesh keeps the same square count as the unit instance.
    CHECK(res.squareCount == meshCurve(concentricInstance()).squareCount);
}

TEST_CASE("pipeline: split enclosed set still gets winding 1 on both discs") {
    const auto inst = makeInstance(
        {CompactSet::disc({-0.4, 0.0}, 0.08), CompactSet::disc({0.4, 0.1}, 0.08)},
        {CompactSet::discComplement({0.0, 0.0}, 4.0)},
        circleCurve({0.0, 0.0}, 1.2, 96), 0.45, 2.0 * kPi * 1.25);
    const auto res = meshCurve(inst);
    CHECK(res.curve.winding({-0.4, 0.0}) == 1);
    CHECK(res.curve.winding({0.4, 0.1}) == 1);
    CHECK(res.curve.winding({4.5, 0.0}) == 0);
    CHECK(res.length.upper < res.apriori);
}

TEST_CASE("a-priori bound: monotone in clearance and radius") {
    // Valid instances force r <= R/(2pi); test on that regime.
    const double R = 5.0;
    double prev = aprioriLengthBound(0.05, R);
    for (double r = 0.1; r <= R / (2.0 * kPi); r += 0.05) {
        const double b = aprioriLengthBound(r, R);
        CHECK(b <= prev * (1.0 + 1e-12));
        prev = b;
    }
    double prevR = aprioriLengthBound(0.3, 2.0);
    for (double RR = 2.5; RR <= 12.0; RR += 0.5) {
        const double b = aprioriLengthBound(0.3, RR);
        CHECK(b >= prevR * (1.0 - 1e-12));
        prevR = b;
    }
}

TEST_CASE("seeded instances: certified pipeline on a sweep") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 11ULL, 12ULL}) {
        CAPTURE(seed);
        const auto inst = seededInstance(seed);
        const auto res = meshCurve(inst);
        for (const auto& k : inst.E) CHECK(res.curve.winding(k.representative()) == 1);
        const double crude = 2.0 * inst.R / inst.r + 2.0;
        CHECK(double(res.squareCount) <= crude * crude);
        CHECK(res.length.upper <= res.apriori);
    }
}
