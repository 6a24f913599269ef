#include "carab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "carab/mesh.hpp"

namespace carab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool isSinglePoint(const std::vector<CompactSet>& sets) {
    if (sets.size() != 1) return false;
    const auto& k = sets.front();
    return k.kind == CompactSet::Kind::Point ||
           ((k.kind == CompactSet::Kind::Disc || k.kind == CompactSet::Kind::DiscComplement) &&
            k.radius == 0.0);
}

void inflateBBox(const std::vector<CompactSet>& sets, double& xmin, double& xmax, double& ymin,
                 double& ymax) {
    for (const auto& k : sets) {
        double a, b, c, d;
        k.boundingBox(a, b, c, d);
        xmin = std::min(xmin, a);
        xmax = std::max(xmax, b);
        ymin = std::min(ymin, c);
        ymax = std::max(ymax, d);
    }
}

// A point of U found by coarse clearance maximization.
cplx findInteriorPoint(const std::vector<CompactSet>& comps) {
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    inflateBBox(comps, xmin, xmax, ymin, ymax);
    const double pad = 0.1 * std::max(xmax - xmin, ymax - ymin);
    double best = 0.0;
    cplx bestZ{0.0, 0.0};
    const int n = 64;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const cplx z(xmin - pad + (xmax - xmin + 2 * pad) * i / n,
                         ymin - pad + (ymax - ymin + 2 * pad) * j / n);
            double d = kInf;
            for (const auto& k : comps) d = std::min(d, k.euclDist(z));
            if (d > best) {
                best = d;
                bestZ = z;
            }
        }
    }
    if (best <= 0.0) throw std::runtime_error("extremal: no interior point found");
    return bestZ;
}

struct RoundEval {
    bool feasible = false;
    double rIn = 0.0, rOut = 0.0, modulus = -kInf;
};

// Optimal radii for a fixed center: the inside set fixes rIn from below,
// the outside set fixes rOut from above.
RoundEval evalCenter(cplx c, const std::vector<CompactSet>& insideSet,
                     const std::vector<CompactSet>& outsideSet) {
    RoundEval e;
    double rIn = 0.0, rOut = kInf;
    for (const auto& k : insideSet) rIn = std::max(rIn, k.euclFarthest(c));
    for (const auto& k : outsideSet) rOut = std::min(rOut, k.euclDist(c));
    if (!(rIn > 0.0) || !std::isfinite(rIn) || !(rOut > rIn)) return e;
    e.feasible = true;
    e.rIn = rIn;
    e.rOut = rOut;
    e.modulus = std::log(rOut / rIn) / (2.0 * kPi);
    return e;
}

bool equatorCertifies(const ClosedCurve& eq, const std::vector<CompactSet>& insideSet,
                      const std::vector<CompactSet>& outsideSet) {
    for (const auto& k : insideSet) {
        if (std::abs(eq.winding(k.representative())) != 1) return false;
    }
    for (const auto& k : outsideSet) {
        if (k.kind == CompactSet::Kind::Point && k.at.atInf) continue;
        const cplx z = k.kind == CompactSet::Kind::DiscComplement ? k.center + cplx(k.radius, 0.0)
                                                                  : k.representative();
        if (eq.winding(z) != 0) return false;
    }
    return true;
}

} // namespace

SeparatingAnnulusReport separatingAnnulusMax(const std::vector<CompactSet>& E,
                                             const std::vector<CompactSet>& F,
                                             const SeparatingAnnulusOptions& opt) {
    if (E.empty() || F.empty()) throw std::invalid_argument("extremal: empty side");
    if (isSinglePoint(E) || isSinglePoint(F))
        throw std::invalid_argument("extremal: a side degenerate to a single point");

    SeparatingAnnulusReport rep;
    rep.seed = opt.seed;

    PointedDomain u;
    u.components = E;
    u.components.insert(u.components.end(), F.begin(), F.end());
    u.basepoint = SpherePoint(findInteriorPoint(u.components));
    u.label = "separating annulus ambient";
    if (!validate(u).pass)
        throw std::invalid_argument("extremal: the two sides do not form a valid domain");

    // --- Round candidates: multi-start pattern search over the center.
    const bool eBounded = std::none_of(E.begin(), E.end(),
                                       [](const CompactSet& k) { return k.containsInf(); });
    const bool fBounded = std::none_of(F.begin(), F.end(),
                                       [](const CompactSet& k) { return k.containsInf(); });

    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    inflateBBox(u.components, xmin, xmax, ymin, ymax);
    const double scale = std::max(xmax - xmin, ymax - ymin);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);

    std::vector<AnnulusCandidate> finals;
    for (int role = 0; role < 2; ++role) {
        const bool swapped = role == 1;
        const auto& insideSet = swapped ? F : E;
        const auto& outsideSet = swapped ? E : F;
        if (swapped ? !fBounded : !eBounded) continue;

        std::vector<cplx> startPts;
        for (const auto& k : insideSet) startPts.push_back(k.representative());
        for (int s = int(startPts.size()); s < opt.starts; ++s) startPts.emplace_back(ux(rng), uy(rng));

        for (cplx c : startPts) {
            RoundEval cur = evalCenter(c, insideSet, outsideSet);
            double step = scale / 4.0;
            while (step > 1e-9 * scale) {
                bool improved = false;
                const cplx dirs[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
                for (const cplx& d : dirs) {
                    const RoundEval t = evalCenter(c + d, insideSet, outsideSet);
                    if (t.feasible && t.modulus > cur.modulus) {
                        cur = t;
                        c += d;
                        improved = true;
                    }
                }
                if (!improved) step *= 0.5;
            }
            if (!cur.feasible) continue;
            AnnulusCandidate cand;
            cand.shape = AnnulusCandidate::Shape::Round;
            cand.center = c;
            cand.rIn = cur.rIn;
            cand.rOut = cur.rOut;
            cand.rolesSwapped = swapped;
            cand.modulus = cur.modulus;
            cand.equator = circleCurve(c, std::sqrt(cur.rIn * cur.rOut), 128);
            cand.normalization = swapped ? "roles swapped: second set inside" : "identity";
            if (!equatorCertifies(cand.equator, insideSet, outsideSet)) continue;
            finals.push_back(std::move(cand));
        }
    }

    // --- Meridian of the separating class: upper bound and collar fallback.
    std::vector<int> insideIdx(E.size());
    for (size_t i = 0; i < E.size(); ++i) insideIdx[i] = int(i);
    const auto cls = canonicalClass(int(u.components.size()), insideIdx, u.infComponent());
    const auto mer = findMeridian(u, cls, opt.meridian);

    double hi = kInf;
    if (mer.certified && mer.length.lower > 0.0) {
        rep.meridianLength = mer.length;
        hi = kPi / mer.length.lower;
        // Embedded collar around the geodesic: sinh(w) sinh(l/2) = 1.
        const double lu = mer.length.upper;
        if (std::isfinite(lu) && lu > 0.0) {
            const double w = std::asinh(1.0 / std::sinh(lu / 2.0));
            AnnulusCandidate collar;
            collar.shape = AnnulusCandidate::Shape::Collar;
            collar.modulus = 2.0 * std::asin(std::tanh(w)) / lu;
            collar.equator = mer.curve;
            collar.normalization = "collar about the separating-class geodesic";
            finals.push_back(std::move(collar));
        }
    } else {
        rep.notes.push_back("separating-class meridian uncertified; upper bound is infinite");
    }

    if (finals.empty()) {
        std::ostringstream os;
        os << "extremal: no separating candidate found (" << opt.starts
           << " round starts, seed " << opt.seed << ", collar unavailable)";
        throw std::runtime_error(os.str());
    }

    // Deterministic reduction: max modulus, then lexicographic parameters.
    auto lexLess = [](const AnnulusCandidate& a, const AnnulusCandidate& b) {
        if (a.modulus != b.modulus) return a.modulus > b.modulus;
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        if (a.center.imag() != b.center.imag()) return a.center.imag() < b.center.imag();
        return a.rIn < b.rIn;
    };
    std::sort(finals.begin(), finals.end(), lexLess);
    rep.best = finals.front();
    for (const auto& c : finals) {
        if (c.modulus < rep.best.modulus * (1.0 - 1e-9)) break;
        const bool dup = std::any_of(rep.ties.begin(), rep.ties.end(), [&](const AnnulusCandidate& t) {
            return std::abs(t.center - c.center) < 1e-9 * (1.0 + scale) &&
                   std::abs(t.rIn - c.rIn) < 1e-9 * (1.0 + scale) && t.shape == c.shape;
        });
        if (!dup) rep.ties.push_back(c);
    }
    rep.bracket = Interval(rep.best.modulus, std::max(hi, rep.best.modulus));
    return rep;
}

ContainmentReport containmentCheck(const PointedDomain& uPrime, const PointedDomain& u, double K,
                                   const MeridianOptions& opt) {
    if (K < 1.0) throw std::invalid_argument("containment: K must be >= 1");
    if (!validate(uPrime).pass || !validate(u).pass)
        throw std::invalid_argument("containment: invalid domain");

    // Sampled containment U' subset U: every complement component of U
    // must avoid U', and U's basepoint-independent samples of U' must be
    // in U.
    for (const auto& k : u.components) {
        if (!(k.kind == CompactSet::Kind::Point && k.at.atInf)) {
            const cplx r = k.representative();
            if (uPrime.contains(SpherePoint(r)))
                throw std::runtime_error("containment: U' is not contained in U");
        }
        for (const cplx& b : k.boundarySamples(16)) {
            if (uPrime.contains(SpherePoint(b)))
                throw std::runtime_error("containment: U' is not contained in U");
        }
    }
    if (!u.contains(uPrime.basepoint))
        throw std::runtime_error("containment: U' basepoint outside U");

    ContainmentReport rep;
    rep.K = K;

    // Item 1: sampled sup of hyperbolic distance (in U) from U's
    // basepoint to boundary-proximal points of U'.
    {
        ContainmentItem it;
        it.what = "sampled sup hyperbolic distance about the basepoint";
        if (u.basepoint.atInf) {
            it.verdict = Verdict::Inconclusive;
            it.what += " (basepoint at infinity unsupported)";
        } else {
            HypMesh mesh(u);
            const auto field = mesh.solve(u.basepoint.z);
            double supLower = 0.0, supUpper = 0.0;
            auto probe = [&](cplx z) {
                if (!uPrime.contains(SpherePoint(z)) || !u.contains(SpherePoint(z))) return;
                const auto d = mesh.distance(field, z);
                supLower = std::max(supLower, d.lower);
                supUpper = std::max(supUpper, d.upper);
            };
            if (!uPrime.basepoint.atInf) probe(uPrime.basepoint.z);
            for (const auto& k : uPrime.components) {
                // Push boundary samples slightly into the domain.
                const double eps = 0.02 * (k.radius > 0.0 ? k.radius : 1.0);
                for (const cplx& b : k.boundarySamples(24)) {
                    cplx inward;
                    switch (k.kind) {
                        case CompactSet::Kind::Disc:
                            inward = b + eps * (b - k.center) / std::abs(b - k.center);
                            break;
                        case CompactSet::Kind::DiscComplement:
                            inward = k.center + (1.0 - eps / k.radius) * (b - k.center);
                            break;
                        default: {
                            const cplx r = k.representative();
                            const double n = std::abs(b - r);
                            inward = n > 0 ? b + eps * (b - r) / n : b;
                            break;
                        }
                    }
                    probe(inward);
                }
            }
            it.measured = supUpper;
            it.verdict = supLower > K    ? Verdict::Fail
                         : supUpper <= K ? Verdict::Pass
                                         : Verdict::Inconclusive;
        }
        rep.items.push_back(it);
    }

    // Item 2: delta#_{U'}(u') >= delta#_U(u') / K.
    {
        ContainmentItem it;
        it.what = "spherical clearance ratio at U' basepoint";
        const Interval dp = uPrime.deltaSharp(uPrime.basepoint);
        const Interval d = u.deltaSharp(uPrime.basepoint);
        it.measured = d.upper / dp.lower;  // certified K needed
        if (dp.lower * K >= d.upper) {
            it.verdict = Verdict::Pass;
        } else if (dp.upper * K < d.lower) {
            it.verdict = Verdict::Fail;
        } else {
            it.verdict = Verdict::Inconclusive;
        }
        rep.items.push_back(it);
    }

    // Items 3-4: meridian length and distance functionals of U'.
    {
        LengthDistance ld;
        std::string note;
        try {
            ld = lengthDistance(uPrime, opt);
        } catch (const std::exception& e) {
            note = e.what();
        }
        auto push = [&](const char* name, const Interval& v) {
            ContainmentItem it;
            it.what = name;
            if (!note.empty()) {
                it.verdict = Verdict::Inconclusive;
                it.what += std::string(" (") + note + ")";
            } else if (!ld.failures.empty()) {
                it.verdict = Verdict::Inconclusive;
                it.what += " (classes without certified meridian)";
            } else {
                it.measured = v.upper;
                it.verdict = v.upper <= K ? Verdict::Pass
                             : v.lower > K ? Verdict::Fail
                                           : Verdict::Inconclusive;
            }
            rep.items.push_back(it);
        };
        push("meridian length functional of U'", ld.L);
        push("meridian distance functional of U'", ld.D);
    }

    rep.pass = std::all_of(rep.items.begin(), rep.items.end(),
                           [](const ContainmentItem& i) { return i.verdict == Verdict::Pass; });
    return rep;
}

ContainmentReport curveContainmentCheck(const ClosedCurve& c, cplx marked, const PointedDomain& u,
                                        double K, const HypOptions& opt) {
    if (K < 1.0) throw std::invalid_argument("curve containment: K must be >= 1");
    if (c.size() < 3) throw std::invalid_argument("curve containment: degenerate curve");
    for (size_t i = 0; i < c.size(); ++i)
        if (u.euclDeltaSegment(c.at(i), c.at(i + 1)) <= 0.0)
            throw std::runtime_error("curve containment: curve exits the domain");

    ContainmentReport rep;
    rep.K = K;

    // Item 1: hyperbolic distance from the basepoint to the curve.
    {
        ContainmentItem it;
        it.what = "hyperbolic distance from basepoint to curve";
        if (u.basepoint.atInf) {
            it.verdict = Verdict::Inconclusive;
            it.what += " (basepoint at infinity unsupported)";
        } else {
            HypMesh mesh(u, opt);
            const auto field = mesh.solve(u.basepoint.z);
            const auto d = mesh.distanceToCurve(field, c);
            it.measured = d.upper;
            it.verdict = d.upper <= K ? Verdict::Pass : d.lower > K ? Verdict::Fail
                                                                    : Verdict::Inconclusive;
        }
        rep.items.push_back(it);
    }

    // Item 2: spherical speed of the constant-speed parametrization over
    // delta# at the marked point, on every segment.
    {
        ContainmentItem it;
        it.what = "parametrization speed over marked-point clearance";
        const Interval dm = u.deltaSharp(SpherePoint(marked));
        const double v = c.euclLength() / (2.0 * kPi);  // constant Euclidean speed
        double loAll = kInf, hiAll = 0.0, loCert = kInf, hiCert = 0.0;
        for (size_t i = 0; i < c.size(); ++i) {
            const cplx a = c.at(i), b = c.at(i + 1);
            const double nearAbs = distPointSegment(cplx(0.0, 0.0), a, b);
            const double farAbs = std::max(std::abs(a), std::abs(b));
            const Interval speed(v / (1.0 + farAbs * farAbs), v / (1.0 + nearAbs * nearAbs));
            // Certified ratio interval and its optimistic counterpart.
            loAll = std::min(loAll, speed.lower / dm.upper);
            hiAll = std::max(hiAll, speed.upper / dm.lower);
            loCert = std::min(loCert, speed.upper / dm.lower);
            hiCert = std::max(hiCert, speed.lower / dm.upper);
        }
        it.measured = hiAll;
        if (loAll >= 1.0 / K && hiAll <= K) {
            it.verdict = Verdict::Pass;
        } else if (hiCert > K || loCert < 1.0 / K) {
            it.verdict = Verdict::Fail;
        } else {
            it.verdict = Verdict::Inconclusive;
        }
        rep.items.push_back(it);
    }

    rep.pass = std::all_of(rep.items.begin(), rep.items.end(),
                           [](const ContainmentItem& i) { return i.verdict == Verdict::Pass; });
    return rep;
}

namespace {

// The single bounded round disc a "disc-type" domain consists of.
void discOf(const PointedDomain& d, cplx& c, double& r, const char* who) {
    if (d.components.size() != 1 || d.components[0].kind != CompactSet::Kind::DiscComplement)
        throw std::invalid_argument(std::string("annulusBetween: ") + who +
                                    " must be a round disc domain");
    c = d.components[0].center;
    r = d.components[0].radius;
}

} // namespace

AnnulusBetweenReport annulusBetween(const PointedDomain& u, const PointedDomain& v) {
    cplx cU, cV;
    double rU = 0.0, rV = 0.0;
    discOf(u, cU, rU, "inner domain");
    discOf(v, cV, rV, "outer domain");
    const double d = std::abs(cU - cV);
    if (d == 0.0 && rU == rV) throw std::invalid_argument("annulusBetween: equal discs, empty annulus");
    if (!(d + rU < rV)) throw std::invalid_argument("annulusBetween: closure of inner disc not inside outer");

    AnnulusBetweenReport rep;
    AnnulusCandidate& a = rep.annulus;
    a.shape = AnnulusCandidate::Shape::Round;

    if (d < 1e-14 * rV) {  // concentric: closed form
        a.center = cU;
        a.rIn = rU;
        a.rOut = rV;
        a.modulus = std::log(rV / rU) / (2.0 * kPi);
        const double re = std::sqrt(rU * rV);
        a.equator = circleCurve(cU, re, 128);
        a.normalization = "concentric";
        rep.basepoint = SpherePoint(cU + cplx(re, 0.0));
        rep.modulus = a.modulus;
        return rep;
    }

    // Mobius normalization: the two points symmetric with respect to
    // both circles lie on the axis through the centers; sending them to
    // 0 and infinity makes the circles concentric.
    const cplx e = (cV - cU) / d;  // axis direction, z = cU + x * e
    const double s = (rU * rU + d * d - rV * rV) / d;  // t1 + t2, with t1 t2 = rU^2
    const double disc = s * s - 4.0 * rU * rU;
    if (disc <= 0.0) throw std::runtime_error("annulusBetween: symmetric points not found");
    const double t1 = (s - std::sqrt(disc)) / 2.0;
    const double t2 = (s + std::sqrt(disc)) / 2.0;
    auto w = [&](double x) { return (x - t1) / (x - t2); };  // real on the axis

    const double rhoU = std::abs(w(rU));
    const double rhoUb = std::abs(w(-rU));
    const double rhoV = std::abs(w(d + rV));
    const double rhoVb = std::abs(w(d - rV));
    if (std::abs(rhoU - rhoUb) > 1e-9 * rhoU || std::abs(rhoV - rhoVb) > 1e-9 * rhoV)
        throw std::runtime_error("annulusBetween: normalization failed to concentrify");

    a.modulus = std::abs(std::log(rhoV / rhoU)) / (2.0 * kPi);
    const double rhoE = std::sqrt(rhoU * rhoV);
    // Equator preimage: solve (x - t1)/(x - t2) = +-rhoE on the axis.
    const double sign = w(rU) < 0.0 ? -1.0 : 1.0;  // branch containing the annulus
    const double xa = (t1 - sign * rhoE * t2) / (1.0 - sign * rhoE);
    const double xb = (t1 + sign * rhoE * t2) / (1.0 + sign * rhoE);
    const cplx centerEq = cU + 0.5 * (xa + xb) * e;
    const double radEq = 0.5 * std::abs(xa - xb);
    a.equator = circleCurve(centerEq, radEq, 128);
    a.center = centerEq;
    a.rIn = rU;
    a.rOut = rV;
    {
        std::ostringstream os;
        os << "Mobius (z-p1)/(z-p2), p1=" << (cU + t1 * e) << ", p2=" << (cU + t2 * e);
        a.normalization = os.str();
    }
    // The equator must actually separate the two boundary circles.
    if (a.equator.winding(cU) != 1 || a.equator.winding(cV + cplx(rV * 1.01, 0.0)) != 0)
        if (a.equator.winding(cU) != -1)
            throw std::runtime_error("annulusBetween: equator fails the separation certificate");
    rep.basepoint = SpherePoint(centerEq + radEq * e);
    rep.modulus = a.modulus;
    return rep;
}

} // namespace carab
