#include "carab/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace carab {

bool PointedDomain::contains(const SpherePoint& p) const {
    for (const auto& k : components)
        if (k.contains(p)) return false;
    return true;
}

Interval PointedDomain::deltaSharp(const SpherePoint& z, double resolution) const {
    if (components.empty()) throw std::domain_error("deltaSharp: complement is empty");
    if (!contains(z)) throw std::domain_error("deltaSharp: point not in U");
    Interval best(kPi, kPi);
    for (const auto& k : components) {
        const Interval d = k.sphDistTo(z, resolution);
        if (d.upper < best.upper) best.upper = d.upper;
        if (d.lower < best.lower) best.lower = d.lower;
    }
    best.lower = std::max(0.0, best.lower);
    return best;
}

double PointedDomain::euclDelta(cplx z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& k : components) d = std::min(d, k.euclDist(z));
    return d;
}

double PointedDomain::euclDeltaSegment(cplx a, cplx b) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& k : components) d = std::min(d, k.euclDistSegment(a, b));
    return d;
}

int PointedDomain::infComponent() const {
    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].containsInf()) return (int)i;
    return -1;
}

Interval PointedDomain::complementDiam(double resolution) const {
    return sphDiamUnion(components, resolution);
}

// Spherical distance between two compact sets, sampled; exact for
// circle-type pairs via the cap formulas in sphDistTo.
static double sphGap(const CompactSet& a, const CompactSet& b) {
    double best = kPi;
    for (cplx s : a.boundarySamples(64)) {
        best = std::min(best, b.sphDistTo(SpherePoint(s)).upper);
    }
    for (cplx s : b.boundarySamples(64)) {
        best = std::min(best, a.sphDistTo(SpherePoint(s)).upper);
    }
    if (a.containsInf()) best = std::min(best, b.sphDistTo(SpherePoint::infinity()).upper);
    if (b.containsInf()) best = std::min(best, a.sphDistTo(SpherePoint::infinity()).upper);
    return best;
}

static bool setsOverlap(const CompactSet& a, const CompactSet& b) {
    using K = CompactSet::Kind;
    // Circle-type exact checks.
    if (a.kind == K::Disc && b.kind == K::Disc)
        return std::abs(a.center - b.center) <= a.radius + b.radius;
    if (a.kind == K::DiscComplement && b.kind == K::Disc)
        return std::abs(a.center - b.center) + b.radius >= a.radius;
    if (a.kind == K::Disc && b.kind == K::DiscComplement) return setsOverlap(b, a);
    if (a.kind == K::DiscComplement && b.kind == K::DiscComplement)
        return true;  // both contain infinity
    // Point membership.
    if (a.kind == K::Point) return b.contains(a.at);
    if (b.kind == K::Point) return a.contains(b.at);
    // Polygon combinations: boundary sampling plus containment probes.
    for (cplx s : a.boundarySamples(128))
        if (b.contains(SpherePoint(s))) return true;
    for (cplx s : b.boundarySamples(128))
        if (a.contains(SpherePoint(s))) return true;
    return false;
}

ValidationReport validate(const PointedDomain& u) {
    ValidationReport rep;
    auto fail = [&rep](std::string what, double measured) {
        rep.pass = false;
        rep.issues.push_back({std::move(what), measured});
    };

    if (u.components.empty()) {
        fail("no complement components (U is the whole sphere)", 0.0);
        return rep;
    }
    int infCount = 0;
    for (const auto& k : u.components)
        if (k.containsInf()) ++infCount;
    if (infCount > 1) fail("more than one component contains infinity", infCount);

    for (size_t i = 0; i < u.components.size(); ++i) {
        const auto& k = u.components[i];
        if ((k.kind == CompactSet::Kind::Disc || k.kind == CompactSet::Kind::DiscComplement) &&
            !(k.radius > 0))
            fail("component " + std::to_string(i) + " has nonpositive radius", k.radius);
        if (k.kind == CompactSet::Kind::Polygon) {
            const auto& v = k.vertices;
            for (size_t e1 = 0; e1 < v.size(); ++e1) {
                for (size_t e2 = e1 + 2; e2 < v.size(); ++e2) {
                    if (e1 == 0 && e2 == v.size() - 1) continue;
                    if (segmentsIntersect(v[e1], v[(e1 + 1) % v.size()], v[e2],
                                          v[(e2 + 1) % v.size()])) {
                        fail("component " + std::to_string(i) + " polygon is not simple",
                             (double)e1);
                        e1 = v.size();
                        break;
                    }
                }
            }
        }
    }

    for (size_t i = 0; i < u.components.size(); ++i) {
        for (size_t j = i + 1; j < u.components.size(); ++j) {
            if (setsOverlap(u.components[i], u.components[j])) {
                fail("components intersect: " + std::to_string(i) + "," + std::to_string(j), 0.0);
            } else {
                const double gap = sphGap(u.components[i], u.components[j]);
                if (!(gap > 0))
                    fail("components touch: " + std::to_string(i) + "," + std::to_string(j), gap);
            }
        }
    }

    bool inU = true;
    for (const auto& k : u.components)
        if (k.contains(u.basepoint)) inU = false;
    if (!inU) fail("basepoint not in U", 0.0);

    return rep;
}

NondegeneracyReport isNondegenerate(const PointedDomain& u) {
    NondegeneracyReport rep;
    if (u.components.empty()) {
        rep.nondegenerate = false;
        rep.reasons.push_back("U is the whole sphere");
        return rep;
    }
    for (size_t i = 0; i < u.components.size(); ++i) {
        if (u.components[i].kind == CompactSet::Kind::Point ||
            !(u.components[i].sphDiam().lower > 0)) {
            rep.nondegenerate = false;
            rep.reasons.push_back("component " + std::to_string(i) +
                                  " has zero spherical diameter");
        }
    }
    return rep;
}

static PointedDomain discNibble(int m) {
    PointedDomain u;
    u.basepoint = SpherePoint(0.0, 0.0);
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), 1.0));
    u.components.push_back(CompactSet::disc(cplx(1.0 - 2.0 / m, 0.0), 1.0 / m));
    u.label = "disc_nibble_m" + std::to_string(m);
    return u;
}

static PointedDomain inverseSymmetricQuad(int m) {
    PointedDomain u;
    u.basepoint = SpherePoint(1.0, 0.0);
    const double mm = (double)m;
    u.components.push_back(CompactSet::disc(cplx(5.0 / (4 * mm), 0.0), 3.0 / (4 * mm)));
    u.components.push_back(CompactSet::disc(cplx(-5.0 / (4 * mm), 0.0), 3.0 / (4 * mm)));
    u.components.push_back(CompactSet::disc(cplx(5.0 * mm / 4, 0.0), 3.0 * mm / 4));
    u.components.push_back(CompactSet::disc(cplx(-5.0 * mm / 4, 0.0), 3.0 * mm / 4));
    u.label = "inverse_symmetric_quad_m" + std::to_string(m);
    return u;
}

static PointedDomain slitAnnulusFig6(int m, int arcVertices) {
    // A(0,2,5) minus the closure of the nearly full annular slit
    // {3 < |z| < 4, 1/m < Arg(-z) or equivalently a gap of angular
    // width 2/m centred on the basepoint -3.5}. The slit squeezes the
    // basepoint clearance to zero as m grows.
    PointedDomain u;
    u.basepoint = SpherePoint(-3.5, 0.0);
    u.components.push_back(CompactSet::disc(cplx(0, 0), 2.0));
    u.components.push_back(CompactSet::discComplement(cplx(0, 0), 5.0));
    std::vector<cplx> verts;
    const double a0 = kPi + 1.0 / m;
    const double a1 = 3.0 * kPi - 1.0 / m;
    for (int k = 0; k <= arcVertices; ++k) {
        const double t = a0 + (a1 - a0) * k / arcVertices;
        verts.push_back(3.0 * cplx(std::cos(t), std::sin(t)));
    }
    for (int k = arcVertices; k >= 0; --k) {
        const double t = a0 + (a1 - a0) * k / arcVertices;
        verts.push_back(4.0 * cplx(std::cos(t), std::sin(t)));
    }
    u.components.push_back(CompactSet::polygon(std::move(verts)));
    u.label = "slit_annulus_fig6_m" + std::to_string(m);
    return u;
}

static PointedDomain mergingComponents(int m) {
    // Two unit discs whose gap closes like 1/m; basepoint kept clear above.
    PointedDomain u;
    u.basepoint = SpherePoint(0.0, 3.0);
    const double off = 1.0 + 0.5 / m;
    u.components.push_back(CompactSet::disc(cplx(-off, 0.0), 1.0));
    u.components.push_back(CompactSet::disc(cplx(off, 0.0), 1.0));
    u.label = "merging_components_m" + std::to_string(m);
    return u;
}

DomainFamily builtinFamily(const std::string& name, int mFirst, int mLast,
                           int slitArcVertices) {
    DomainFamily f;
    f.name = name;
    f.mFirst = mFirst;
    f.mLast = mLast;
    if (name == "disc_nibble") {
        if (mFirst < 3) throw std::invalid_argument("disc_nibble needs m >= 3");
        f.generator = discNibble;
    } else if (name == "inverse_symmetric_quad") {
        if (mFirst < 3) throw std::invalid_argument("inverse_symmetric_quad needs m >= 3");
        f.generator = inverseSymmetricQuad;
    } else if (name == "slit_annulus_fig6") {
        if (mFirst < 2) throw std::invalid_argument("slit_annulus_fig6 needs m >= 2");
        f.generator = [slitArcVertices](int m) { return slitAnnulusFig6(m, slitArcVertices); };
    } else if (name == "merging_components") {
        if (mFirst < 1) throw std::invalid_argument("merging_components needs m >= 1");
        f.generator = mergingComponents;
    } else {
        throw std::invalid_argument("unknown builtin family: " + name);
    }
    return f;
}

} // namespace carab
