#include <doctest.h>

#include <carab/bounds.hpp>

#include <cmath>

using namespace carab;

namespace {

PointedDomain unitDisc() {
    PointedDomain u;
    u.basepoint = SpherePoint(0.0, 0.0);
    u.components.push_back(CompactSet::discComplement({0.0, 0.0}, 1.0));
    return u;
}

PointedDomain annulusAt(double rIn, double rOut, cplx base) {
    PointedDomain u;
    u.basepoint = SpherePoint(base);
    u.components.push_back(CompactSet::disc({0.0, 0.0}, rIn));
    u.components.push_back(CompactSet::discComplement({0.0, 0.0}, rOut));
    return u;
}

constexpr double kPiLocal = 3.14159265358979323846;

} // namespace

TEST_CASE("length/distance aggregates vanish for the disc") {
    const auto ld = lengthDistance(unitDisc());
    CHECK(ld.L.lower == 0.0);
    CHECK(ld.L.upper == 0.0);
    CHECK(ld.D.upper == 0.0);
    CHECK(ld.LE.upper == 0.0);
    CHECK(ld.DE.upper == 0.0);
}

TEST_CASE("annulus aggregates: L = |log pi| on A(1, e^{2pi}) with equatorial basepoint") {
    // Meridian length 2*pi^2 / log(e^{2pi}) = pi exactly; basepoint on it.
    const double R = std::exp(2.0 * kPiLocal);
    const auto ld = lengthDistance(annulusAt(1.0, R, cplx(std::exp(kPiLocal), 0.0)));
    const double truth = std::abs(std::log(kPiLocal));
    CHECK(ld.L.lower <= truth * 1.02);
    CHECK(ld.L.upper >= truth * 0.98);
    CHECK(std::abs(ld.L.mid() - truth) <= 0.02 * truth);
    // The basepoint lies on the meridian; the distance upper bound only
    // carries the mesh discretization (a few grid edges of hyperbolic
    // length ~0.1 at the automatic spacing for this very large annulus).
    CHECK(ld.D.upper <= 0.2);
    // Connectivity 2 has a single class, so the extended aggregates agree.
    CHECK(std::abs(ld.LE.mid() - ld.L.mid()) <= 0.02 * truth + 1e-12);
    CHECK(ld.DE.upper <= 0.2);
}

TEST_CASE("bound of the pointed disc is |log(pi^2/8)|") {
    // delta^#(0) = pi/4 and the complement is a closed hemisphere, whose
    // spherical diameter under |dz|/(1+|z|^2) is the full pi/2 (antipodal
    // boundary points), so the first term is |log(pi/4 * pi/2)|.
    const auto r = caraBound(unitDisc());
    const double truth = std::abs(std::log(kPiLocal * kPiLocal / 8.0));
    CHECK(r.connectivity == 1);
    CHECK(r.firstTerm.contains(truth));
    CHECK(r.firstTerm.width() <= 1e-9);
    CHECK(r.bound.contains(truth));
    CHECK(r.boundE.contains(truth));
}

TEST_CASE("annulus bound assembles the three terms") {
    const double R = std::exp(2.0 * kPiLocal);
    const double b = std::exp(kPiLocal);
    const auto r = caraBound(annulusAt(1.0, R, cplx(b, 0.0)));
    // delta^#: distance along the real-axis great circle to the nearer
    // boundary circle; complement contains 0 and infinity, so its
    // spherical diameter is the full pi/2.
    const double delta = std::min(std::atan(b) - std::atan(1.0), std::atan(R) - std::atan(b));
    const double first = std::abs(std::log(delta * kPiLocal / 2.0));
    CHECK(std::abs(r.firstTerm.mid() - first) <= 1e-6);
    const double expected = first + std::abs(std::log(kPiLocal));
    CHECK(std::abs(r.bound.mid() - expected) <= 0.05 * expected);
    CHECK(r.boundE.upper + 1e-12 >= r.bound.lower);  // interval-consistent ordering
}

TEST_CASE("shrinking complement component inflates the bound") {
    auto fam = builtinFamily("disc_nibble", 4, 40);
    const auto b4 = caraBound(fam.at(4));
    const auto b40 = caraBound(fam.at(40));
    CHECK(b40.bound.mid() > b4.bound.mid());
    CHECK(b40.boundE.mid() > b4.boundE.mid());
}

TEST_CASE("family bound: nibble family drifts up, fixed annuli do not") {
    MeridianOptions opt;
    opt.seeds = 2;
    auto nib = builtinFamily("disc_nibble", 4, 36);
    const auto up = familyBound(nib, {4, 12, 20, 28, 36}, opt);
    CHECK(up.reports.size() == 5);
    CHECK(up.memberIssues.empty());
    CHECK(up.driftingUp);
    CHECK_FALSE(up.driftingDown);
    CHECK(up.supBound.upper >= up.reports.front().bound.upper);

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
    const auto flat = familyBound(ann, {4, 6, 9}, opt);
    CHECK(flat.memberIssues.empty());
    CHECK_FALSE(flat.driftingUp);
    CHECK_FALSE(flat.driftingDown);
    CHECK(std::isfinite(flat.supBound.upper));
}

TEST_CASE("family bound reports invalid members instead of skipping them") {
    DomainFamily bad;
    bad.name = "bad";
    bad.mFirst = 1;
    bad.mLast = 2;
    bad.generator = [](int m) {
        PointedDomain u;
        u.basepoint = SpherePoint(0.0, 0.0);
        if (m == 1) {
            u.components.push_back(CompactSet::discComplement({0.0, 0.0}, 1.0));
        } else {
            // Basepoint inside the complement: invalid.
            u.components.push_back(CompactSet::disc({0.0, 0.0}, 1.0));
        }
        return u;
    };
    const auto rep = familyBound(bad, {1, 2});
    CHECK(rep.reports.size() == 2);
    REQUIRE(rep.memberIssues.size() == 1);
    CHECK(rep.memberIssues[0].find("m=2") == 0);
}

TEST_CASE("eta-curve certificate passes on a comfortable annulus") {
    const auto cert = condition4Certificate(annulusAt(1.0, 16.0, cplx(4.0, 0.0)), 0.05, 0.1);
    REQUIRE(cert.curves.size() == 1);
    CHECK(cert.basepointOnCurves == Verdict::Pass);
    CHECK(cert.separation == Verdict::Pass);
    CHECK(cert.clearanceVerdict == Verdict::Pass);
    CHECK(cert.diameterVerdict == Verdict::Pass);
    CHECK(cert.verdict == Verdict::Pass);
    // Oracle: the meridian hugs |z| = 4, so the clearance cannot exceed
    // the axis distance atan(4) - atan(1) and must clear 0.05 comfortably.
    CHECK(cert.clearance.upper <= std::atan(4.0) - std::atan(1.0) + 1e-6);
    CHECK(cert.clearance.lower >= 0.05);
}

TEST_CASE("eta-curve certificate fails impossible thresholds") {
    const auto cert = condition4Certificate(annulusAt(1.0, 16.0, cplx(4.0, 0.0)), kPiLocal, 0.1);
    CHECK(cert.clearanceVerdict == Verdict::Fail);
    CHECK(cert.verdict == Verdict::Fail);
}

TEST_CASE("eta-curve certificate collapses for the disc") {
    const auto pass = condition4Certificate(unitDisc(), 0.5, 0.5);
    CHECK(pass.curves.empty());
    CHECK(pass.verdict == Verdict::Pass);  // delta^#(0) = pi/4 >= 0.5, diam pi/4 >= 0.5
    const auto fail = condition4Certificate(unitDisc(), 1.0, 0.5);
    CHECK(fail.clearanceVerdict == Verdict::Fail);
    CHECK(fail.verdict == Verdict::Fail);
}

TEST_CASE("uniform perfectness constant of the disc is pi/2") {
    const auto rep = uniformPerfectness(unitDisc(), {cplx(0, 0), cplx(0.3, 0), cplx(0, 0.5),
                                                     cplx(-0.7, 0), cplx(0.2, -0.4)});
    CHECK(rep.samples == 5);
    // rho * delta^# * (1+|z|^2) at the origin equals 2 * pi/4 = pi/2; the
    // ratio tends to 1 at the boundary, so the max is attained at 0.
    CHECK(std::abs(rep.k2 - kPiLocal / 2.0) <= 1e-9);
    CHECK(rep.k2 <= 2.1);
}

TEST_CASE("uniform perfectness grows along the nibble family") {
    // The degeneration is visible near the shrinking component: sample a
    // point one nibble-radius away from the nibble on the inside.
    auto fam = builtinFamily("disc_nibble", 4, 64);
    auto probe = [&](int m) {
        const std::vector<cplx> pts{cplx(0.0, 0.0), cplx(1.0 - 4.0 / m, 0.0)};
        return uniformPerfectness(fam.at(m), pts).k2;
    };
    // The separating-annulus modulus around the nibble stays bounded as
    // m grows (the nibble shrinks while approaching the wall), so K2
    // increases towards a finite limit rather than diverging.
    const double k4 = probe(4);
    const double k16 = probe(16);
    const double k64 = probe(64);
    CHECK(k4 < k16);
    CHECK(k16 < k64);
}

TEST_CASE("identity map is a hyperbolic isometry") {
    const auto u = unitDisc();
    const auto rep = hyperbolicLipschitz(MapSpec{}, u, u, 1.0);
    CHECK(rep.issues.empty());
    CHECK(rep.samples > 100);
    CHECK(std::abs(rep.M.mid() - 1.0) <= 1e-9 + rep.M.width());
    CHECK(std::abs(rep.K.mid() - 1.0) <= 1e-9 + rep.K.width());
}

TEST_CASE("contraction z/2 on the disc is a strict hyperbolic contraction") {
    MapSpec half;
    half.num = {cplx(0, 0), cplx(0.5, 0)};
    const auto u = unitDisc();
    const auto rep = hyperbolicLipschitz(half, u, u, 1.0);
    CHECK(rep.M.upper < 1.0);   // Schwarz
    CHECK(rep.M.lower >= 0.35);
    CHECK(rep.K.lower >= 2.0);  // reciprocal ratio at the origin is 2
    CHECK(rep.K.upper < 3.0);
}

TEST_CASE("the squaring covering map between annuli is a local isometry") {
    MapSpec sq;
    sq.num = {cplx(0, 0), cplx(0, 0), cplx(1, 0)};
    const auto u = annulusAt(1.0, 4.0, cplx(2.0, 0.0));
    const auto v = annulusAt(1.0, 16.0, cplx(4.0, 0.0));
    const auto rep = hyperbolicLipschitz(sq, u, v, 1.5);
    CHECK(rep.issues.empty());
    const double tol = 1e-6 + 2.0 * std::max(rep.M.width(), rep.K.width());
    CHECK(std::abs(rep.M.mid() - 1.0) <= tol);
    CHECK(std::abs(rep.K.mid() - 1.0) <= tol);
    // Literal contract: M is attained by a sample inside the ball.
    CHECK(u.contains(SpherePoint(rep.mAttainedAt)));
}
