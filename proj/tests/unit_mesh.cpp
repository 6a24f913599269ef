#include "doctest.h"

#include "carab/mesh.hpp"

using namespace carab;

TEST_CASE("mesh distance in the unit disc: log 3 oracle") {
    PointedDomain u;
    u.basepoint = SpherePoint(0, 0);
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), 1.0));
    HypOptions opt;
    opt.meshSpacing = 0.01;
    HypMesh mesh(u, opt);
    auto f = mesh.solve(cplx(0, 0));
    DistInterval d = mesh.distance(f, cplx(0.5, 0));
    const double truth = std::log(3.0);
    CHECK(d.upper >= truth - 1e-9);          // upper bound is sound
    CHECK(d.upper <= truth * 1.05);          // and within 5 percent
    CHECK(d.lower <= truth + 1e-9);
    CHECK(d.lower >= truth * 0.9);
    // The closed form shortcut agrees exactly.
    CHECK(mesh.pointDistance(cplx(0, 0), cplx(0.5, 0)).upper ==
          doctest::Approx(truth).epsilon(1e-12));
}

TEST_CASE("mesh distance across a round annulus equator") {
    // In A(0,1,R) with log R = pi, the equator circle |z| = sqrt(R)
    // is a geodesic of length 2 pi^2 / log R = 2 pi; opposite points
    // are at distance pi along it.
    const double R = std::exp(kPi);
    PointedDomain u;
    u.basepoint = SpherePoint(std::sqrt(R), 0);
    u.components.push_back(CompactSet::disc(cplx(0, 0), 1.0));
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), R));
    HypMesh mesh(u);
    const double s = std::sqrt(R);
    auto f = mesh.solve(cplx(s, 0));
    DistInterval d = mesh.distance(f, cplx(-s, 0));
    CHECK(d.upper >= kPi - 1e-9);
    CHECK(d.upper <= kPi * 1.05);
    CHECK(d.lower >= kPi * 0.85);
}

TEST_CASE("mesh path certificates stay inside the domain") {
    PointedDomain u;
    u.basepoint = SpherePoint(0, 0);
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), 4.0));
    u.components.push_back(CompactSet::disc(cplx(2, 0), 1.0));
    HypMesh mesh(u);
    auto f = mesh.solve(cplx(0, 0));
    auto path = mesh.pathTo(f, cplx(3.5, 0));
    REQUIRE(path.size() >= 2);
    CHECK(std::abs(path.front() - cplx(0, 0)) < 1e-12);
    CHECK(std::abs(path.back() - cplx(3.5, 0)) < 1e-12);
    for (size_t i = 0; i + 1 < path.size(); ++i)
        CHECK(u.euclDeltaSegment(path[i], path[i + 1]) > 0);

    auto corridor = mesh.euclPath(cplx(0, 0), cplx(3.5, 0));
    for (size_t i = 0; i + 1 < corridor.size(); ++i)
        CHECK(u.euclDeltaSegment(corridor[i], corridor[i + 1]) > 0);
}

TEST_CASE("distance to a curve") {
    PointedDomain u;
    u.basepoint = SpherePoint(0, 0);
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), 1.0));
    HypOptions opt;
    opt.meshSpacing = 0.01;
    HypMesh mesh(u, opt);
    auto f = mesh.solve(cplx(0, 0));
    // Circle |z| = 1/2 in the unit disc: nearest points at distance log 3.
    auto c = circleCurve(cplx(0, 0), 0.5, 256);
    DistInterval d = mesh.distanceToCurve(f, c);
    const double truth = std::log(3.0);
    CHECK(d.upper >= truth - 1e-9);
    CHECK(d.upper <= truth * 1.05);
    CHECK(d.lower <= truth + 1e-9);
    CHECK(d.lower >= truth * 0.85);
}
