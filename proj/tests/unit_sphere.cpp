#include "doctest.h"

#include <random>

#include "carab/sphere.hpp"

using namespace carab;

TEST_CASE("spherical distance: pinned values") {
    // Oracles: integrating |dz|/(1+|z|^2) along a ray gives arctan(r).
    CHECK(sphDist(SpherePoint(0, 0), SpherePoint::infinity()) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(sphDist(SpherePoint(0, 0), SpherePoint(1, 0)) == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(sphDist(SpherePoint(0, 0), SpherePoint(2, 0)) == doctest::Approx(std::atan(2.0)).epsilon(1e-12));
    CHECK(sphDist(SpherePoint(1, 0), SpherePoint(-1, 0)) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(sphDist(SpherePoint(3, 4), SpherePoint(3, 4)) == doctest::Approx(0.0));
}

TEST_CASE("spherical distance: triangle inequality and symmetry") {
    std::mt19937_64 rng(20260826);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int t = 0; t < 500; ++t) {
        SpherePoint a(d(rng), d(rng)), b(d(rng), d(rng)), c(d(rng), d(rng));
        if (t % 17 == 0) a = SpherePoint::infinity();
        CHECK(sphDist(a, b) == doctest::Approx(sphDist(b, a)).epsilon(1e-12));
        CHECK(sphDist(a, c) <= sphDist(a, b) + sphDist(b, c) + 1e-12);
        CHECK(sphDist(a, b) <= kPi / 2 + 1e-12);
    }
}

TEST_CASE("inversion z -> 1/z is a spherical isometry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    for (int t = 0; t < 300; ++t) {
        SpherePoint a(d(rng), d(rng)), b(d(rng), d(rng));
        if (t % 11 == 0) a = SpherePoint(0, 0);
        CHECK(sphDist(invert(a), invert(b)) == doctest::Approx(sphDist(a, b)).epsilon(1e-10));
    }
    CHECK(invert(SpherePoint(0, 0)).atInf);
    CHECK(invert(SpherePoint::infinity()).z == cplx(0, 0));
}

TEST_CASE("compact set: membership and Euclidean distance") {
    auto d = CompactSet::disc(cplx(2, 0), 1.0);
    CHECK(d.contains(SpherePoint(2, 0)));
    CHECK(d.contains(SpherePoint(3, 0)));
    CHECK(!d.contains(SpherePoint(0, 0)));
    CHECK(!d.containsInf());
    CHECK(d.euclDist(cplx(0, 0)) == doctest::Approx(1.0));
    CHECK(d.euclDist(cplx(2, 0.5)) == doctest::Approx(0.0));

    auto e = CompactSet::discComplement(cplx(0, 0), 2.0);
    CHECK(e.containsInf());
    CHECK(e.contains(SpherePoint(3, 0)));
    CHECK(!e.contains(SpherePoint(1, 0)));
    CHECK(e.euclDist(cplx(0.5, 0)) == doctest::Approx(1.5));

    auto p = CompactSet::polygon({cplx(0, 0), cplx(2, 0), cplx(2, 2), cplx(0, 2)});
    CHECK(p.contains(SpherePoint(1, 1)));
    CHECK(!p.contains(SpherePoint(3, 1)));
    CHECK(p.euclDist(cplx(3, 1)) == doctest::Approx(1.0));
}

TEST_CASE("compact set: spherical point-to-set distance oracles") {
    // Nearest point of clos D(2,1) from 0 is z=1: arctan(1) = pi/4.
    auto d = CompactSet::disc(cplx(2, 0), 1.0);
    Interval iv = d.sphDistTo(SpherePoint(0, 0));
    CHECK(iv.lower == doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(iv.upper == doctest::Approx(kPi / 4).epsilon(1e-10));

    // Nearest point of {|z| >= 2} from 0 is at |z| = 2: arctan(2).
    auto e = CompactSet::discComplement(cplx(0, 0), 2.0);
    iv = e.sphDistTo(SpherePoint(0, 0));
    CHECK(iv.lower == doctest::Approx(std::atan(2.0)).epsilon(1e-10));

    // From infinity to {|z| >= 2}: distance 0 (infinity is in the set).
    iv = e.sphDistTo(SpherePoint::infinity());
    CHECK(iv.upper == doctest::Approx(0.0));
}

TEST_CASE("compact set: spherical diameter oracles") {
    // Closed unit disc contains the antipodal pair {1,-1}: diameter pi/2.
    CHECK(CompactSet::disc(cplx(0, 0), 1.0).sphDiam().lower == doctest::Approx(kPi / 2).epsilon(1e-10));
    // Whole-sphere cap bound: no set exceeds pi/2.
    CHECK(CompactSet::discComplement(cplx(0, 0), 0.5).sphDiam().upper <= kPi / 2 + 1e-12);
    // Small disc far from origin: diameter = sph dist of the two
    // horizontal extremes (the spherical diameter realizes on the axis).
    auto k = CompactSet::disc(cplx(10, 0), 1.0);
    const double d = sphDist(SpherePoint(9, 0), SpherePoint(11, 0));
    CHECK(k.sphDiam().lower == doctest::Approx(d).epsilon(1e-9));
    CHECK(CompactSet::point(SpherePoint(3, 1)).sphDiam().upper == doctest::Approx(0.0));
}

TEST_CASE("diameter is monotone under inclusion (disc in disc)") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::uniform_real_distribution<double> r(0.1, 2.0);
    for (int t = 0; t < 200; ++t) {
        cplx c(d(rng), d(rng));
        double r1 = r(rng), r2 = r1 + r(rng);
        auto inner = CompactSet::disc(c, r1);
        auto outer = CompactSet::disc(c, r2);
        CHECK(inner.sphDiam().upper <= outer.sphDiam().lower + 1e-10);
    }
}

TEST_CASE("union diameter: two far discs reach the cap bound") {
    std::vector<CompactSet> parts{CompactSet::disc(cplx(1, 0), 0.2),
                                  CompactSet::disc(cplx(-1, 0), 0.2)};
    // 1.2 and -1.2 are farther apart than antipodal 1,-1; sup is pi/2.
    Interval iv = sphDiamUnion(parts);
    CHECK(iv.lower == doctest::Approx(kPi / 2).epsilon(1e-10));
    // Union diameter dominates each part's diameter.
    CHECK(iv.lower >= parts[0].sphDiam().upper - 1e-10);
}

TEST_CASE("segment distance helpers") {
    CHECK(distPointSegment(cplx(0, 1), cplx(-1, 0), cplx(1, 0)) == doctest::Approx(1.0));
    CHECK(distPointSegment(cplx(3, 0), cplx(-1, 0), cplx(1, 0)) == doctest::Approx(2.0));
    CHECK(distSegmentSegment(cplx(0, 1), cplx(1, 1), cplx(0, 0), cplx(1, 0)) == doctest::Approx(1.0));
    CHECK(segmentsIntersect(cplx(-1, -1), cplx(1, 1), cplx(-1, 1), cplx(1, -1)));
    CHECK(!segmentsIntersect(cplx(0, 0), cplx(1, 0), cplx(0, 1), cplx(1, 1)));
}
