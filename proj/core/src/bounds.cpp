#include "carab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace carab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval mulPositive(Interval a, Interval b) {
    return {a.lower * b.lower, a.upper * b.upper};
}

Interval intervalMin(Interval a, Interval b) {
    return {std::min(a.lower, b.lower), std::min(a.upper, b.upper)};
}

} // namespace

LengthDistance lengthDistance(const PointedDomain& u, const MeridianOptions& opt) {
    LengthDistance out;
    if (u.connectivity() <= 1) return out;  // all zero by convention
    MeridianSystem principal, extended;
    buildMeridianSystems(u, opt, &principal, &extended);
    out.failures = extended.failures;
    if (principal.entries.empty() || extended.entries.empty())
        throw std::runtime_error("lengthDistance: no certified meridians");
    out.L = systemL(principal, true);
    out.D = systemD(principal, true);
    out.LE = systemL(extended, false);
    out.DE = systemD(extended, false);
    return out;
}

BoundReport boundFromSystems(const PointedDomain& u, const MeridianSystem& principal,
                             const MeridianSystem& extended) {
    BoundReport r;
    r.connectivity = u.connectivity();
    const Interval delta = u.deltaSharp(u.basepoint);
    const Interval diam = u.complementDiam();
    r.firstTerm = absLog(mulPositive(delta, diam));
    if (r.connectivity >= 2) {
        r.failures = extended.failures;
        if (principal.entries.empty() || extended.entries.empty())
            throw std::runtime_error("caraBound: no certified meridians");
        r.L = systemL(principal, true);
        r.D = systemD(principal, true);
        r.LE = systemL(extended, false);
        r.DE = systemD(extended, false);
    }
    r.bound = r.firstTerm + r.L + r.D;
    r.boundE = r.firstTerm + r.LE + r.DE;
    return r;
}

BoundReport caraBound(const PointedDomain& u, const MeridianOptions& opt) {
    const auto nd = isNondegenerate(u);
    if (!nd.nondegenerate)
        throw std::invalid_argument("caraBound: degenerate domain: " +
                                    (nd.reasons.empty() ? std::string("?") : nd.reasons.front()));
    MeridianSystem principal, extended;
    if (u.connectivity() >= 2) buildMeridianSystems(u, opt, &principal, &extended);
    return boundFromSystems(u, principal, extended);
}

FamilyBoundReport familyBound(const DomainFamily& f, const std::vector<int>& sample,
                              const MeridianOptions& opt) {
    FamilyBoundReport out;
    int connectivity = -1;
    std::vector<double> uppers;
    for (int m : sample) {
        out.indices.push_back(m);
        BoundReport r;
        try {
            const PointedDomain u = f.at(m);
            const auto v = validate(u);
            if (!v.pass)
                throw std::runtime_error("validation failed: " +
                                         (v.issues.empty() ? std::string("?") : v.issues.front().what));
            if (connectivity < 0) connectivity = u.connectivity();
            if (u.connectivity() != connectivity)
                out.memberIssues.push_back("m=" + std::to_string(m) + ": connectivity " +
                                           std::to_string(u.connectivity()) + " != " +
                                           std::to_string(connectivity));
            r = caraBound(u, opt);
            for (const auto& fl : r.failures)
                out.memberIssues.push_back("m=" + std::to_string(m) + ": class " + fl + " failed");
            if (uppers.empty()) {
                out.supBound = r.bound;
                out.supBoundE = r.boundE;
            } else {
                out.supBound = intervalMax(out.supBound, r.bound);
                out.supBoundE = intervalMax(out.supBoundE, r.boundE);
            }
            uppers.push_back(r.bound.upper);
        } catch (const std::exception& e) {
            out.memberIssues.push_back("m=" + std::to_string(m) + ": " + e.what());
        }
        out.reports.push_back(std::move(r));
    }
    if (uppers.size() >= 3) {
        int up = 0, down = 0;
        for (size_t i = 1; i < uppers.size(); ++i)
            (uppers[i] >= uppers[i - 1] ? up : down)++;
        const int steps = static_cast<int>(uppers.size()) - 1;
        out.driftingUp = uppers.back() > 1.25 * uppers.front() && up >= (7 * steps + 9) / 10;
        out.driftingDown = uppers.back() < 0.8 * uppers.front() && down >= (7 * steps + 9) / 10;
    }
    return out;
}

namespace {

// Winding-number check that eta separates component `isolated` from the
// others: its winding differs from the (constant) winding of the rest.
bool separatesComponent(const PointedDomain& u, const ClosedCurve& eta, int isolated) {
    int wIso = 0;
    bool haveOther = false;
    int wOther = 0;
    for (int i = 0; i < u.connectivity(); ++i) {
        const auto& k = u.components[i];
        const bool atInf = k.kind == CompactSet::Kind::Point && k.at.atInf;
        int w = 0;
        if (!atInf) {
            const cplx rep = k.representative();
            if (eta.onCurve(rep)) return false;
            w = eta.winding(rep);
        }
        if (i == isolated) {
            wIso = w;
        } else if (!haveOther) {
            wOther = w;
            haveOther = true;
        } else if (w != wOther) {
            return false;
        }
    }
    return !haveOther || wIso != wOther;
}

Verdict conjunction(std::initializer_list<Verdict> vs) {
    Verdict out = Verdict::Pass;
    for (Verdict v : vs) {
        if (v == Verdict::Fail) return Verdict::Fail;
        if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
    }
    return out;
}

} // namespace

Condition4Certificate condition4Certificate(const PointedDomain& u, double delta1,
                                            double delta2, const MeridianOptions& opt) {
    if (delta1 <= 0 || delta2 <= 0)
        throw std::invalid_argument("condition4Certificate: thresholds must be positive");
    const auto nd = isNondegenerate(u);
    if (!nd.nondegenerate)
        throw std::invalid_argument("condition4Certificate: degenerate domain");

    Condition4Certificate cert;
    bool haveDiam = false;
    for (const auto& k : u.components) {
        const Interval d = k.sphDiam();
        cert.minDiameter = haveDiam ? intervalMin(cert.minDiameter, d) : d;
        haveDiam = true;
    }
    cert.diameterVerdict = atLeast(cert.minDiameter, delta2);

    if (u.connectivity() <= 1) {
        // a) and c) collapse to delta^#(basepoint) >= delta1; b) is vacuous.
        cert.clearance = u.deltaSharp(u.basepoint);
        cert.basepointOnCurves = Verdict::Pass;
        cert.separation = Verdict::Pass;
        cert.clearanceVerdict = atLeast(cert.clearance, delta1);
        cert.verdict = conjunction({cert.clearanceVerdict, cert.diameterVerdict});
        return cert;
    }

    if (!u.basepoint.finite())
        throw std::domain_error("condition4Certificate: basepoint at infinity unsupported");
    MeridianSystem sys = principalSystem(u, opt);
    cert.failures = sys.failures;

    HypMesh mesh(u, opt.hyp);
    const HypMesh::Field field = mesh.solve(u.basepoint.z);
    const cplx base = u.basepoint.z;

    bool haveClear = false;
    Verdict bpVerdict = Verdict::Pass;
    Verdict sepVerdict = Verdict::Pass;
    for (const auto& entry : sys.entries) {
        // Closest meridian vertex to the basepoint in the hyperbolic metric.
        const ClosedCurve& gamma = entry.curve;
        size_t closest = 0;
        double best = kInf;
        for (size_t i = 0; i < gamma.size(); ++i) {
            const double d = mesh.distance(field, gamma.at(i)).upper;
            if (d < best) {
                best = d;
                closest = i;
            }
        }
        std::vector<cplx> path = mesh.pathTo(field, gamma.at(closest));
        if (path.empty() || std::abs(path.front() - base) > 1e-12)
            path.insert(path.begin(), base);
        if (std::abs(path.back() - gamma.at(closest)) > 1e-12) path.push_back(gamma.at(closest));

        // eta = segment out, once around the meridian, segment back.
        ClosedCurve eta;
        eta.points = path;
        for (size_t i = 1; i < gamma.size(); ++i) eta.points.push_back(gamma.at(closest + i));
        for (size_t i = path.size(); i-- > 1;) eta.points.push_back(path[i]);
        cert.curves.push_back(eta);

        if (!eta.onCurve(base, 1e-12)) bpVerdict = Verdict::Fail;
        const int isolated =
            entry.cls.inside.size() == 1
                ? entry.cls.inside.front()
                : [&] {
                      for (int i = 0; i < u.connectivity(); ++i)
                          if (!std::binary_search(entry.cls.inside.begin(),
                                                  entry.cls.inside.end(), i))
                              return i;
                      return -1;
                  }();
        if (isolated < 0 || !separatesComponent(u, eta, isolated)) sepVerdict = Verdict::Fail;

        for (const auto& k : u.components) {
            const Interval c = eta.minSphClearance(k);
            cert.clearance = haveClear ? intervalMin(cert.clearance, c) : c;
            haveClear = true;
        }
    }
    cert.basepointOnCurves = bpVerdict;
    cert.separation = sepVerdict;
    cert.clearanceVerdict = haveClear ? atLeast(cert.clearance, delta1) : Verdict::Inconclusive;
    cert.verdict = conjunction({cert.basepointOnCurves, cert.separation, cert.clearanceVerdict,
                                cert.diameterVerdict,
                                cert.failures.empty() ? Verdict::Pass : Verdict::Inconclusive});
    return cert;
}

PerfectnessReport uniformPerfectness(const PointedDomain& u,
                                     const std::vector<cplx>& samplePoints) {
    const DensityModel model(u);
    PerfectnessReport rep;
    for (const cplx z : samplePoints) {
        if (!u.contains(SpherePoint(z))) continue;
        const Interval rho = model.density(z);
        const Interval delta = u.deltaSharp(SpherePoint(z));
        const double s = 1.0 + std::norm(z);
        const Interval ratio{rho.lower * delta.lower * s, rho.upper * delta.upper * s};
        if (ratio.lower <= 0) continue;
        const double k = std::max(ratio.upper, 1.0 / ratio.lower);
        if (k > rep.k2) {
            rep.k2 = k;
            rep.attainedAt = z;
        }
        ++rep.samples;
    }
    if (rep.samples == 0) throw std::invalid_argument("uniformPerfectness: no usable samples");
    return rep;
}

namespace {

cplx polyEval(const std::vector<cplx>& c, cplx z) {
    cplx acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

cplx polyDeriv(const std::vector<cplx>& c, cplx z) {
    cplx acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * cplx(double(i), 0.0);
    return acc;
}

} // namespace

cplx MapSpec::eval(cplx z) const { return polyEval(num, z) / polyEval(den, z); }

cplx MapSpec::deriv(cplx z) const {
    const cplx n = polyEval(num, z), d = polyEval(den, z);
    return (polyDeriv(num, z) * d - n * polyDeriv(den, z)) / (d * d);
}

LipschitzReport hyperbolicLipschitz(const MapSpec& f, const PointedDomain& u,
                                    const PointedDomain& v, double R,
                                    const HypOptions& opt) {
    if (!(R > 0)) throw std::invalid_argument("hyperbolicLipschitz: R must be positive");
    if (!u.basepoint.finite())
        throw std::domain_error("hyperbolicLipschitz: basepoint at infinity unsupported");
    LipschitzReport rep;
    rep.R = R;

    const DensityModel mu(u), mv(v);
    const cplx base = u.basepoint.z;
    if (v.basepoint.finite() &&
        sphDist(SpherePoint(f.eval(base)), v.basepoint) > 1e-9)
        rep.issues.push_back("f(basepoint) differs from the target basepoint");

    // Sample the hyperbolic R-ball via the distance field on the mesh.
    HypMesh mesh(u, opt);
    const HypMesh::Field field = mesh.solve(base);
    std::vector<cplx> samples{base};
    {
        std::vector<cplx> inBall;
        for (size_t i = 0; i < field.upper.size(); ++i)
            if (field.upper[i] <= R) inBall.push_back(mesh.nodeAt(i));
        const size_t stride = std::max<size_t>(1, inBall.size() / 2000);
        for (size_t i = 0; i < inBall.size(); i += stride) samples.push_back(inBall[i]);
    }

    Interval M{0.0, 0.0}, K{1.0, 1.0};
    bool imageIssue = false, derivIssue = false;
    for (const cplx z : samples) {
        const cplx fz = f.eval(z);
        if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()) ||
            !v.contains(SpherePoint(fz))) {
            imageIssue = true;
            continue;
        }
        const double fp = std::abs(f.deriv(z));
        const Interval rhoU = mu.density(z);
        const Interval rhoV = mv.density(fz);
        const Interval ratio{rhoV.lower * fp / rhoU.upper, rhoV.upper * fp / rhoU.lower};
        if (ratio.upper > M.upper) rep.mAttainedAt = z;
        M = rep.samples == 0 ? ratio : intervalMax(M, ratio);
        if (fp > 0) {
            const Interval recip{rhoU.lower / (rhoV.upper * fp), rhoU.upper / (rhoV.lower * fp)};
            K = rep.samples == 0 ? intervalMax(ratio, recip) : intervalMax(K, intervalMax(ratio, recip));
        } else {
            derivIssue = true;
            K.upper = kInf;
        }
        ++rep.samples;
    }
    if (imageIssue) rep.issues.push_back("sampled image point outside the target domain");
    if (derivIssue) rep.issues.push_back("derivative vanishes on a sample; K unbounded");
    if (rep.samples == 0) throw std::runtime_error("hyperbolicLipschitz: no usable samples");
    rep.M = M;
    rep.K = K;
    return rep;
}

} // namespace carab
