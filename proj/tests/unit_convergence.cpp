#include <doctest.h>

#include <carab/convergence.hpp>

#include <cmath>
#include <random>

using namespace carab;

TEST_CASE("Hausdorff distance closed forms for disc pairs") {
    const auto d1 = CompactSet::disc({0, 0}, 1.0);
    const auto d2 = CompactSet::disc({0, 0}, 2.0);
    const auto d3 = CompactSet::disc({3, 0}, 1.0);
    CHECK(hausdorffDist(d1, d2, Metric::Euclidean).lower == doctest::Approx(1.0));
    CHECK(hausdorffDist(d1, d2, Metric::Euclidean).width() == 0.0);
    CHECK(hausdorffDist(d1, d3, Metric::Euclidean).lower == doctest::Approx(3.0));
    CHECK(hausdorffDist(d1, d1, Metric::Euclidean).upper == 0.0);
}

TEST_CASE("Hausdorff metric axioms on seeded disc triples") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> pos(-5.0, 5.0), rad(0.2, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = CompactSet::disc({pos(rng), pos(rng)}, rad(rng));
        const auto b = CompactSet::disc({pos(rng), pos(rng)}, rad(rng));
        const auto c = CompactSet::disc({pos(rng), pos(rng)}, rad(rng));
        const double ab = hausdorffDist(a, b, Metric::Euclidean).lower;
        const double ba = hausdorffDist(b, a, Metric::Euclidean).lower;
        const double ac = hausdorffDist(a, c, Metric::Euclidean).lower;
        const double cb = hausdorffDist(c, b, Metric::Euclidean).lower;
        CHECK(ab >= 0.0);
        CHECK(std::abs(ab - ba) <= 1e-10);
        CHECK(ab <= ac + cb + 1e-10);
    }
}

TEST_CASE("spherical Hausdorff distance is certified and symmetric") {
    const auto a = CompactSet::disc({0, 0}, 1.0);
    const auto b = CompactSet::discComplement({0, 0}, 2.0);
    const auto iv = hausdorffDist(a, b, Metric::Spherical);
    const auto vi = hausdorffDist(b, a, Metric::Spherical);
    CHECK(iv.lower > 0.0);
    CHECK(iv.lower <= iv.upper);
    CHECK(std::abs(iv.lower - vi.lower) <= 1e-12);
    // Within the same set the distance vanishes up to sampling slack.
    CHECK(hausdorffDist(a, a, Metric::Spherical).lower == 0.0);
}

TEST_CASE("limit of a constant sequence is the member itself") {
    DomainFamily f;
    f.name = "const";
    f.mFirst = 1;
    f.mLast = 8;
    f.generator = [](int) {
        PointedDomain u;
        u.basepoint = SpherePoint(0.0, 0.0);
        u.components.push_back(CompactSet::disc({2.0, 0.0}, 0.5));
        u.components.push_back(CompactSet::discComplement({0.0, 0.0}, 4.0));
        return u;
    };
    const auto lim = caraLimit(f, {1, 2, 3, 4});
    CHECK(lim.kind == LimitKind::NonDegenerate);
    REQUIRE(lim.limit.components.size() == 2);
    CHECK(hausdorffDist(lim.limit.components[0], f.at(1).components[0]).lower <= 1e-12);
    CHECK(validate(lim.limit).pass);
}

TEST_CASE("nibble family limit drops connectivity to the disc") {
    auto f = builtinFamily("disc_nibble", 4, 64);
    const auto lim = caraLimit(f, {4, 8, 16, 32, 64});
    CHECK(lim.kind == LimitKind::ConnectivityDrop);
    CHECK(lim.connectivityFrom == 2);
    CHECK(lim.connectivityTo == 1);
    REQUIRE(lim.limit.components.size() == 1);
    // The surviving component is the unit-circle complement: the limit is
    // the pointed unit disc.
    CHECK(lim.limit.components[0].kind == CompactSet::Kind::DiscComplement);
    CHECK(lim.limit.components[0].radius == doctest::Approx(1.0));
    CHECK(isNondegenerate(lim.limit).nondegenerate);
}

TEST_CASE("slit family limit pinches the basepoint") {
    auto f = builtinFamily("slit_annulus_fig6", 8, 128);
    const auto lim = caraLimit(f, {8, 16, 32, 64, 128});
    CHECK(lim.kind == LimitKind::PointLimit);
}

TEST_CASE("merging discs are detected as a connectivity drop") {
    auto f = builtinFamily("merging_components", 1, 64);
    const auto lim = caraLimit(f, {1, 2, 4, 8, 16, 32, 64});
    CHECK(lim.kind == LimitKind::ConnectivityDrop);
    CHECK(lim.description.find("merging") != std::string::npos);
}

TEST_CASE("vanishing nibble meridian length decreases monotonically") {
    auto f = builtinFamily("disc_nibble", 4, 64);
    MeridianOptions opt;
    opt.seeds = 2;
    double prev = 0.0;
    bool first = true;
    for (int m : {4, 8, 16, 32, 64}) {
        const auto sys = extendedSystem(f.at(m), opt);
        REQUIRE(sys.entries.size() == 1);
        const double len = sys.entries[0].length.upper;
        if (!first) CHECK(len <= prev * 1.05);  // allow interval overlap
        prev = len;
        first = false;
    }
}

TEST_CASE("classification: fixed annuli are bounded-evidence") {
    DomainFamily ann;
    ann.name = "annuli";
    ann.mFirst = 4;
    ann.mLast = 9;
    ann.generator = [](int m) {
        PointedDomain u;
        u.basepoint = SpherePoint(std::sqrt(double(m)), 0.0);
        u.components.push_back(CompactSet::disc({0.0, 0.0}, 1.0));
        u.components.push_back(CompactSet::discComplement({0.0, 0.0}, double(m)));
        return u;
    };
    ClassifyOptions opt;
    opt.meridian.seeds = 2;
    const auto rep = classifyFamily(ann, {4, 6, 9}, opt);
    CHECK(rep.verdict == FamilyVerdict::BoundedEvidence);
    CHECK(rep.witness.empty());
    CHECK(std::isfinite(rep.bound.supBound.upper));
}

TEST_CASE("classification: nibble family is unbounded via connectivity drop") {
    auto f = builtinFamily("disc_nibble", 4, 36);
    ClassifyOptions opt;
    opt.meridian.seeds = 2;
    const auto rep = classifyFamily(f, {4, 12, 36}, opt);
    CHECK(rep.verdict == FamilyVerdict::Unbounded);
    CHECK(rep.witness.find("connectivity drop") != std::string::npos);
    CHECK(rep.limit.connectivityTo == 1);
}

TEST_CASE("CSV export lines up trail values by index") {
    MeasurementTrail a{"alpha", {1, 2}, {0.5, 0.25}};
    MeasurementTrail b{"beta", {2, 3}, {7.0, 8.0}};
    const std::string csv = trailsToCsv({a, b});
    CHECK(csv == "m,alpha,beta\n1,0.5,\n2,0.25,7\n3,,8\n");
}
