#include <doctest.h>

#include <carab/extremal.hpp>

#include <cmath>
#include <random>

using namespace carab;

namespace {

constexpr double kPiL = 3.14159265358979323846;

PointedDomain discDomain(cplx c, double r, cplx base) {
    PointedDomain u;
    u.basepoint = SpherePoint(base);
    u.components.push_back(CompactSet::discComplement(c, r));
    return u;
}

SeparatingAnnulusOptions fastOpts() {
    SeparatingAnnulusOptions opt;
    opt.meridian.seeds = 2;
    opt.meridian.maxIterations = 400;
    opt.meridian.vertices = 96;
    return opt;
}

} // namespace

TEST_CASE("concentric disc pair: tight bracket around log(4)/(2pi)") {
    const std::vector<CompactSet> E{CompactSet::disc({0, 0}, 1.0)};
    const std::vector<CompactSet> F{CompactSet::discComplement({0, 0}, 4.0)};
    const auto rep = separatingAnnulusMax(E, F);
    const double truth = std::log(4.0) / (2.0 * kPiL);
    CHECK(rep.best.shape == AnnulusCandidate::Shape::Round);
    CHECK(std::abs(rep.best.modulus - truth) <= 0.02 * truth);
    CHECK(rep.bracket.lower <= rep.bracket.upper);
    CHECK(rep.bracket.upper - rep.bracket.lower <= 0.02 * rep.bracket.upper);
    CHECK(rep.bracket.contains(truth));
    // The optimal center is the common center; radii touch the data.
    CHECK(std::abs(rep.best.center) < 1e-6);
    CHECK(rep.best.rIn == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.best.rOut == doctest::Approx(4.0).epsilon(1e-6));
    // Winding certificate of the equator.
    CHECK(std::abs(rep.best.equator.winding(cplx(0, 0))) == 1);
    CHECK(rep.best.equator.winding(cplx(4.0, 0)) == 0);
    REQUIRE(!rep.ties.empty());
    CHECK(rep.ties.front().modulus == rep.best.modulus);
}

TEST_CASE("separating annulus search is deterministic") {
    const std::vector<CompactSet> E{CompactSet::disc({0.3, -0.2}, 0.5)};
    const std::vector<CompactSet> F{CompactSet::disc({2.5, 1.0}, 0.7)};
    const auto a = separatingAnnulusMax(E, F, fastOpts());
    const auto b = separatingAnnulusMax(E, F, fastOpts());
    CHECK(a.best.modulus == b.best.modulus);
    CHECK(a.best.center == b.best.center);
    CHECK(a.bracket.lower == b.bracket.lower);
    CHECK(a.bracket.upper == b.bracket.upper);
}

TEST_CASE("interleaved partition: no round separator, collar fallback") {
    // Two unit discs at +-3 against the closed unit disc plus the outside
    // of |z| = 5: every generalized disc containing both parts of the
    // first set also contains the segment between them, so no round
    // annulus separates and the collar around the separating geodesic is
    // the certified candidate.
    const std::vector<CompactSet> E{CompactSet::disc({-3, 0}, 1.0), CompactSet::disc({3, 0}, 1.0)};
    const std::vector<CompactSet> F{CompactSet::disc({0, 0}, 1.0),
                                    CompactSet::discComplement({0, 0}, 5.0)};
    auto opt = fastOpts();
    opt.meridian.maxIterations = 800;
    const auto rep = separatingAnnulusMax(E, F, opt);
    CHECK(rep.best.shape == AnnulusCandidate::Shape::Collar);
    CHECK(rep.best.modulus > 0.0);
    CHECK(rep.bracket.lower <= rep.bracket.upper);
    CHECK(rep.meridianLength.lower > 0.0);
    // Equator separates with an exact winding certificate.
    const auto& eq = rep.best.equator;
    const int wl = eq.winding(cplx(-3, 0)), wr = eq.winding(cplx(3, 0));
    CHECK(std::abs(wl) == 1);
    CHECK(wr == wl);
    CHECK(eq.winding(cplx(0, 0)) == 0);
    CHECK(eq.winding(cplx(5, 0)) == 0);
    // The configuration is symmetric under z -> -z: the reflected equator
    // is a valid candidate of the same modulus.
    ClosedCurve refl = eq;
    for (auto& p : refl.points) p = -p;
    CHECK(std::abs(refl.winding(cplx(-3, 0))) == 1);
    CHECK(refl.winding(cplx(3, 0)) == refl.winding(cplx(-3, 0)));
    CHECK(refl.winding(cplx(0, 0)) == 0);
}

TEST_CASE("random disjoint disc pairs: lower end never exceeds upper end") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), rad(0.2, 0.6), gap(0.2, 1.5),
        ang(0.0, 2.0 * kPiL);
    auto opt = fastOpts();
    for (int i = 0; i < 22; ++i) {
        const cplx c1(pos(rng), pos(rng));
        const double r1 = rad(rng), r2 = rad(rng);
        const double th = ang(rng);
        const cplx c2 = c1 + (r1 + r2 + gap(rng)) * cplx(std::cos(th), std::sin(th));
        const std::vector<CompactSet> E{CompactSet::disc(c1, r1)};
        const std::vector<CompactSet> F{CompactSet::disc(c2, r2)};
        const auto rep = separatingAnnulusMax(E, F, opt);
        CHECK(rep.bracket.lower <= rep.bracket.upper);
        CHECK(rep.best.modulus > 0.0);
    }
    // Concentric subfamily: the bracket collapses to within 2% relative.
    std::uniform_real_distribution<double> rin(0.3, 0.8), fac(2.0, 6.0);
    for (int i = 0; i < 8; ++i) {
        const cplx c(pos(rng), pos(rng));
        const double r1 = rin(rng), r2 = r1 * fac(rng);
        const std::vector<CompactSet> E{CompactSet::disc(c, r1)};
        const std::vector<CompactSet> F{CompactSet::discComplement(c, r2)};
        const auto rep = separatingAnnulusMax(E, F, opt);
        CHECK(rep.bracket.lower <= rep.bracket.upper);
        CHECK(rep.bracket.upper - rep.bracket.lower <= 0.02 * rep.bracket.upper);
        CHECK(rep.bracket.contains(std::log(r2 / r1) / (2.0 * kPiL)));
    }
}

TEST_CASE("enlarging the second set never increases the upper bound") {
    const std::vector<CompactSet> E{CompactSet::disc({0, 0}, 1.0)};
    double prev = 1e300;
    for (double R : {16.0, 8.0, 4.0, 2.0}) {
        const std::vector<CompactSet> F{CompactSet::discComplement({0, 0}, R)};
        const auto rep = separatingAnnulusMax(E, F, fastOpts());
        CHECK(rep.bracket.upper <= prev * 1.005);
        prev = rep.bracket.upper;
    }
}

TEST_CASE("degenerate sides are rejected") {
    const std::vector<CompactSet> pointSide{CompactSet::point(SpherePoint(0.0, 0.0))};
    const std::vector<CompactSet> F{CompactSet::discComplement({0, 0}, 4.0)};
    CHECK_THROWS_AS((void)separatingAnnulusMax(pointSide, F), std::invalid_argument);
    const std::vector<CompactSet> E{CompactSet::disc({0, 0}, 1.0)};
    CHECK_THROWS_AS((void)separatingAnnulusMax(E, {CompactSet::point(SpherePoint(2.0, 0.0))}),
                    std::invalid_argument);
}

TEST_CASE("containment: half-radius subdisc passes all four items at K = 3") {
    const auto up = discDomain({0, 0}, 0.5, {0, 0});
    const auto u = discDomain({0, 0}, 1.0, {0, 0});
    const auto rep = containmentCheck(up, u, 3.0);
    REQUIRE(rep.items.size() == 4);
    for (const auto& it : rep.items) CHECK(it.verdict == Verdict::Pass);
    CHECK(rep.pass);
    // Item 1 approximates sup d(0, z) over |z| <= 1/2, which is log 3.
    CHECK(rep.items[0].measured == doctest::Approx(std::log(3.0)).epsilon(0.25));
    // Item 2: clearance ratio atan(1) / atan(1/2) ~ 1.69 << 3.
    CHECK(rep.items[1].measured == doctest::Approx(std::atan(1.0) / std::atan(0.5)).epsilon(0.05));
}

TEST_CASE("containment: a domain in itself honestly fails the metric-ball item") {
    const auto u = discDomain({0, 0}, 1.0, {0, 0});
    const auto rep = containmentCheck(u, u, 3.0);
    REQUIRE(rep.items.size() == 4);
    CHECK(rep.items[0].verdict == Verdict::Fail);
    CHECK(!rep.pass);
    // The remaining items are genuinely fine for U' = U.
    CHECK(rep.items[1].verdict == Verdict::Pass);
    CHECK(rep.items[2].verdict == Verdict::Pass);
    CHECK(rep.items[3].verdict == Verdict::Pass);
}

TEST_CASE("containment: boundary-hugging subdiscs blow up item 1") {
    const auto u = discDomain({0, 0}, 1.0, {0, 0});
    const auto far = containmentCheck(discDomain({0.7, 0}, 0.2, {0.7, 0}), u, 3.0);
    const auto farther = containmentCheck(discDomain({0.93, 0}, 0.05, {0.93, 0}), u, 3.0);
    CHECK(farther.items[0].measured > far.items[0].measured);
    CHECK(farther.items[0].verdict == Verdict::Fail);
}

TEST_CASE("containment: hard errors") {
    const auto u = discDomain({0, 0}, 1.0, {0, 0});
    CHECK_THROWS((void)containmentCheck(discDomain({0, 0}, 2.0, {0, 0}), u, 3.0));
    CHECK_THROWS_AS((void)containmentCheck(u, u, 0.5), std::invalid_argument);
}

TEST_CASE("curve containment: equator of a round annulus passes a moderate K") {
    PointedDomain u;
    u.basepoint = SpherePoint(4.0, 0.0);
    u.components.push_back(CompactSet::disc({0, 0}, 1.0));
    u.components.push_back(CompactSet::discComplement({0, 0}, 16.0));
    const auto eq = circleCurve({0, 0}, 4.0, 128);
    const auto rep = curveContainmentCheck(eq, cplx(4.0, 0.0), u, 2.0);
    REQUIRE(rep.items.size() == 2);
    CHECK(rep.items[0].verdict == Verdict::Pass);
    CHECK(rep.items[1].verdict == Verdict::Pass);
    CHECK(rep.pass);
}

TEST_CASE("curve containment: a boundary-hugging curve fails the speed item") {
    PointedDomain u;
    u.basepoint = SpherePoint(4.0, 0.0);
    u.components.push_back(CompactSet::disc({0, 0}, 1.0));
    u.components.push_back(CompactSet::discComplement({0, 0}, 16.0));
    const auto hug = circleCurve({0, 0}, 1.05, 128);
    const auto rep = curveContainmentCheck(hug, cplx(1.05, 0.0), u, 2.0);
    CHECK(rep.items[1].verdict == Verdict::Fail);
    CHECK(!rep.pass);
}

TEST_CASE("curve containment: a curve leaving the domain is a hard error") {
    PointedDomain u;
    u.basepoint = SpherePoint(4.0, 0.0);
    u.components.push_back(CompactSet::disc({0, 0}, 1.0));
    u.components.push_back(CompactSet::discComplement({0, 0}, 16.0));
    CHECK_THROWS((void)curveContainmentCheck(circleCurve({0, 0}, 0.5, 64), cplx(0.5, 0.0), u, 2.0));
}

TEST_CASE("annulus between concentric discs: exact closed form") {
    const auto rep = annulusBetween(discDomain({0, 0}, 1.0, {0, 0}), discDomain({0, 0}, 4.0, {0, 0}));
    CHECK(rep.modulus == std::log(4.0) / (2.0 * kPiL));
    CHECK(std::abs(rep.basepoint.z) == doctest::Approx(2.0));
    CHECK(rep.annulus.equator.winding(cplx(0, 0)) == 1);
    CHECK(rep.annulus.equator.winding(cplx(4.5, 0)) == 0);
}

TEST_CASE("annulus between non-concentric discs: symmetric-point normalization") {
    const auto u = discDomain({0.5, 0}, 0.5, {0.5, 0});
    const auto v = discDomain({0, 0}, 4.0, {0, 0});
    const auto rep = annulusBetween(u, v);
    // Inversive-distance closed form: arccosh((rV^2 + rU^2 - d^2) / (2 rU rV)) / (2 pi).
    const double truth = std::acosh((16.0 + 0.25 - 0.25) / (2.0 * 0.5 * 4.0)) / (2.0 * kPiL);
    CHECK(rep.modulus == doctest::Approx(truth).epsilon(1e-9));
    // The equator is a circle strictly inside the annulus, separating the
    // inner boundary from the outer one.
    const auto& eq = rep.annulus.equator;
    CHECK(std::abs(eq.winding(cplx(0.5, 0))) == 1);
    CHECK(eq.winding(cplx(4.5, 0)) == 0);
    for (const cplx& p : eq.points) {
        CHECK(std::abs(p - cplx(0.5, 0)) > 0.5);
        CHECK(std::abs(p) < 4.0);
    }
    CHECK(u.contains(SpherePoint(rep.basepoint.z)) == false);  // on the annulus side
    // Cross-check against the separating-annulus bracket: the annulus
    // between the discs realizes the extremal separating modulus.
    const std::vector<CompactSet> E{CompactSet::disc({0.5, 0}, 0.5)};
    const std::vector<CompactSet> F{CompactSet::discComplement({0, 0}, 4.0)};
    const auto sep = separatingAnnulusMax(E, F, fastOpts());
    CHECK(sep.bracket.lower <= truth + 1e-9);
    CHECK(truth <= sep.bracket.upper * 1.01);
}

TEST_CASE("annulus between discs: rejected configurations") {
    const auto u = discDomain({0, 0}, 1.0, {0, 0});
    CHECK_THROWS_AS((void)annulusBetween(u, u), std::invalid_argument);
    CHECK_THROWS_AS((void)annulusBetween(discDomain({3, 0}, 1.0, {3, 0}), discDomain({0, 0}, 2.0, {0, 0})),
                    std::invalid_argument);
    PointedDomain notDisc;
    notDisc.basepoint = SpherePoint(2.0, 0.0);
    notDisc.components.push_back(CompactSet::disc({0, 0}, 1.0));
    CHECK_THROWS_AS((void)annulusBetween(notDisc, discDomain({0, 0}, 4.0, {0, 0})),
                    std::invalid_argument);
}
