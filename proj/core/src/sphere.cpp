#include "carab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carab {

std::array<double, 3> toUnitSphere(const SpherePoint& p) {
    if (p.atInf) return {0.0, 0.0, 1.0};
    const double x = p.z.real(), y = p.z.imag();
    const double n2 = x * x + y * y;
    if (!std::isfinite(n2)) return {0.0, 0.0, 1.0};
    const double d = 1.0 + n2;
    return {2.0 * x / d, 2.0 * y / d, (n2 - 1.0) / d};
}

double sphDist(const SpherePoint& p, const SpherePoint& q) {
    const auto a = toUnitSphere(p);
    const auto b = toUnitSphere(q);
    const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    const double cx = a[1] * b[2] - a[2] * b[1];
    const double cy = a[2] * b[0] - a[0] * b[2];
    const double cz = a[0] * b[1] - a[1] * b[0];
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    return 0.5 * std::atan2(cross, dot);
}

SpherePoint invert(const SpherePoint& p) {
    if (p.atInf) return SpherePoint(cplx(0.0, 0.0));
    if (p.z == cplx(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(1.0 / p.z);
}

CompactSet CompactSet::disc(cplx c, double r) {
    if (!(r > 0)) throw std::invalid_argument("disc radius must be positive");
    CompactSet k;
    k.kind = Kind::Disc;
    k.center = c;
    k.radius = r;
    return k;
}

CompactSet CompactSet::discComplement(cplx c, double r) {
    if (!(r > 0)) throw std::invalid_argument("disc radius must be positive");
    CompactSet k;
    k.kind = Kind::DiscComplement;
    k.center = c;
    k.radius = r;
    return k;
}

CompactSet CompactSet::polygon(std::vector<cplx> verts) {
    if (verts.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
    CompactSet k;
    k.kind = Kind::Polygon;
    // Normalize to positive orientation.
    double area2 = 0.0;
    for (size_t i = 0; i < verts.size(); ++i) {
        const cplx& a = verts[i];
        const cplx& b = verts[(i + 1) % verts.size()];
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area2 < 0) std::reverse(verts.begin(), verts.end());
    k.vertices = std::move(verts);
    return k;
}

CompactSet CompactSet::point(SpherePoint p) {
    CompactSet k;
    k.kind = Kind::Point;
    k.at = p;
    return k;
}

bool CompactSet::containsInf() const {
    if (kind == Kind::DiscComplement) return true;
    if (kind == Kind::Point) return at.atInf;
    return false;
}

static bool pointInPolygon(cplx z, const std::vector<cplx>& v) {
    // Even-odd rule; boundary points are treated as inside via the
    // distance check in contains().
    bool in = false;
    const size_t n = v.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = v[i].real(), yi = v[i].imag();
        const double xj = v[j].real(), yj = v[j].imag();
        const bool cross = ((yi > z.imag()) != (yj > z.imag())) &&
                           (z.real() < (xj - xi) * (z.imag() - yi) / (yj - yi) + xi);
        if (cross) in = !in;
    }
    return in;
}

bool CompactSet::contains(const SpherePoint& p) const {
    if (p.atInf) return containsInf();
    const cplx z = p.z;
    switch (kind) {
        case Kind::Disc:
            return std::abs(z - center) <= radius;
        case Kind::DiscComplement:
            return std::abs(z - center) >= radius;
        case Kind::Polygon: {
            if (pointInPolygon(z, vertices)) return true;
            for (size_t i = 0; i < vertices.size(); ++i) {
                const cplx a = vertices[i];
                const cplx b = vertices[(i + 1) % vertices.size()];
                if (distPointSegment(z, a, b) == 0.0) return true;
            }
            return false;
        }
        case Kind::Point:
            return !at.atInf && at.z == z;
    }
    return false;
}

double distPointSegment(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

bool segmentsIntersect(cplx a, cplx b, cplx c, cplx d) {
    auto orient = [](cplx p, cplx q, cplx r) {
        const double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                         (q.imag() - p.imag()) * (r.real() - p.real());
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto onSeg = [](cplx p, cplx q, cplx r) {
        return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    if (o1 == 0 && onSeg(a, b, c)) return true;
    if (o2 == 0 && onSeg(a, b, d)) return true;
    if (o3 == 0 && onSeg(c, d, a)) return true;
    if (o4 == 0 && onSeg(c, d, b)) return true;
    return false;
}

double distSegmentSegment(cplx a, cplx b, cplx c, cplx d) {
    if (segmentsIntersect(a, b, c, d)) return 0.0;
    return std::min(std::min(distPointSegment(c, a, b), distPointSegment(d, a, b)),
                    std::min(distPointSegment(a, c, d), distPointSegment(b, c, d)));
}

double CompactSet::euclDist(cplx z) const {
    switch (kind) {
        case Kind::Disc:
            return std::max(0.0, std::abs(z - center) - radius);
        case Kind::DiscComplement:
            return std::max(0.0, radius - std::abs(z - center));
        case Kind::Polygon: {
            if (pointInPolygon(z, vertices)) return 0.0;
            double d = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < vertices.size(); ++i) {
                d = std::min(d, distPointSegment(z, vertices[i], vertices[(i + 1) % vertices.size()]));
            }
            return d;
        }
        case Kind::Point:
            return at.atInf ? std::numeric_limits<double>::infinity() : std::abs(z - at.z);
    }
    return 0.0;
}

double CompactSet::euclDistSegment(cplx a, cplx b) const {
    switch (kind) {
        case Kind::Disc:
            return std::max(0.0, distPointSegment(center, a, b) - radius);
        case Kind::DiscComplement: {
            // The segment must be entirely inside the open disc to have
            // positive distance; farthest endpoint decides.
            const double far = std::max(std::abs(a - center), std::abs(b - center));
            return std::max(0.0, radius - far);
        }
        case Kind::Polygon: {
            if (pointInPolygon(a, vertices) || pointInPolygon(b, vertices)) return 0.0;
            double d = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < vertices.size(); ++i) {
                d = std::min(d, distSegmentSegment(a, b, vertices[i], vertices[(i + 1) % vertices.size()]));
            }
            return d;
        }
        case Kind::Point:
            return at.atInf ? std::numeric_limits<double>::infinity()
                            : distPointSegment(at.z, a, b);
    }
    return 0.0;
}

SphericalCap capOfDisc(cplx center, double radius) {
    // Three boundary points determine the plane of the image circle.
    const SpherePoint p1(center + cplx(radius, 0.0));
    const SpherePoint p2(center - cplx(radius, 0.0));
    const SpherePoint p3(center + cplx(0.0, radius));
    const auto a = toUnitSphere(p1), b = toUnitSphere(p2), c = toUnitSphere(p3);
    std::array<double, 3> u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    std::array<double, 3> v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    std::array<double, 3> n{u[1] * v[2] - u[2] * v[1],
                            u[2] * v[0] - u[0] * v[2],
                            u[0] * v[1] - u[1] * v[0]};
    const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& x : n) x /= nn;
    double h = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
    // Orient towards the disc interior (image of the Euclidean center).
    const auto mid = toUnitSphere(SpherePoint(center));
    if (n[0] * mid[0] + n[1] * mid[1] + n[2] * mid[2] < h) {
        for (auto& x : n) x = -x;
        h = -h;
    }
    return {n, h};
}

static double capAngularRadius(const SphericalCap& cap) {
    return std::acos(std::clamp(cap.height, -1.0, 1.0));
}

// Signed angle from the cap axis to the point (unit sphere).
static double axisAngle(const SphericalCap& cap, const SpherePoint& p) {
    const auto x = toUnitSphere(p);
    const double dot = cap.axis[0] * x[0] + cap.axis[1] * x[1] + cap.axis[2] * x[2];
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

Interval CompactSet::sphDistTo(const SpherePoint& p, double resolution) const {
    if (contains(p)) return Interval(0.0);
    switch (kind) {
        case Kind::Disc: {
            const SphericalCap cap = capOfDisc(center, radius);
            const double d = 0.5 * (axisAngle(cap, p) - capAngularRadius(cap));
            return Interval(std::max(0.0, d));
        }
        case Kind::DiscComplement: {
            // Complement cap of the same circle: axis -n, radius pi - t.
            const SphericalCap cap = capOfDisc(center, radius);
            const double d = 0.5 * (capAngularRadius(cap) - axisAngle(cap, p));
            return Interval(std::max(0.0, d));
        }
        case Kind::Point:
            return Interval(sphDist(p, at));
        case Kind::Polygon: {
            double best = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < vertices.size(); ++i) {
                const cplx a = vertices[i];
                const cplx b = vertices[(i + 1) % vertices.size()];
                // Subdivide the edge until sub-chords are below the
                // resolution in spherical length (density <= 1).
                const double sphLen = sphDist(SpherePoint(a), SpherePoint(b));
                const int pieces = std::max(1, (int)std::ceil(sphLen / resolution));
                for (int k = 0; k <= pieces; ++k) {
                    const cplx q = a + (b - a) * (double(k) / pieces);
                    best = std::min(best, sphDist(p, SpherePoint(q)));
                }
            }
            return Interval(std::max(0.0, best - 0.5 * resolution), best);
        }
    }
    return Interval(0.0);
}

Interval CompactSet::sphDiam(double resolution) const {
    switch (kind) {
        case Kind::Point:
            return Interval(0.0);
        case Kind::Disc: {
            const SphericalCap cap = capOfDisc(center, radius);
            return Interval(std::min(kPi / 2.0, capAngularRadius(cap)));
        }
        case Kind::DiscComplement: {
            const SphericalCap cap = capOfDisc(center, radius);
            return Interval(std::min(kPi / 2.0, kPi - capAngularRadius(cap)));
        }
        case Kind::Polygon: {
            // Diameter of a closed region equals the diameter of its
            // boundary; sample it.
            double best = 0.0;
            std::vector<SpherePoint> pts;
            for (size_t i = 0; i < vertices.size(); ++i) {
                const cplx a = vertices[i];
                const cplx b = vertices[(i + 1) % vertices.size()];
                const double sphLen = sphDist(SpherePoint(a), SpherePoint(b));
                const int pieces = std::max(1, (int)std::ceil(sphLen / resolution));
                for (int k = 0; k < pieces; ++k)
                    pts.push_back(SpherePoint(a + (b - a) * (double(k) / pieces)));
            }
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j)
                    best = std::max(best, sphDist(pts[i], pts[j]));
            return Interval(best, std::min(kPi / 2.0, best + resolution));
        }
    }
    return Interval(0.0);
}

Interval sphDiamUnion(const std::vector<CompactSet>& sets, double resolution) {
    if (sets.empty()) throw std::invalid_argument("sphDiamUnion: empty union");
    if (sets.size() == 1) return sets[0].sphDiam(resolution);

    bool allCircleType = true;
    for (const auto& s : sets)
        if (s.kind == CompactSet::Kind::Polygon) allCircleType = false;

    Interval best(0.0);
    for (const auto& s : sets) best = intervalMax(best, s.sphDiam(resolution));

    if (allCircleType) {
        // Pairwise sup: two caps of angular radii t1, t2 around axes at
        // angle psi have farthest pair at angle min(pi, psi + t1 + t2).
        auto capOf = [](const CompactSet& s) -> std::optional<SphericalCap> {
            if (s.kind == CompactSet::Kind::Disc) return capOfDisc(s.center, s.radius);
            if (s.kind == CompactSet::Kind::DiscComplement) {
                SphericalCap c = capOfDisc(s.center, s.radius);
                for (auto& x : c.axis) x = -x;
                c.height = -c.height;
                return c;
            }
            return std::nullopt;
        };
        for (size_t i = 0; i < sets.size(); ++i) {
            for (size_t j = i + 1; j < sets.size(); ++j) {
                double far;
                if (sets[i].kind == CompactSet::Kind::Point || sets[j].kind == CompactSet::Kind::Point) {
                    if (sets[i].kind == CompactSet::Kind::Point &&
                        sets[j].kind == CompactSet::Kind::Point) {
                        far = 2.0 * sphDist(sets[i].at, sets[j].at);
                    } else {
                        const CompactSet& pt = sets[i].kind == CompactSet::Kind::Point ? sets[i] : sets[j];
                        const CompactSet& cs = sets[i].kind == CompactSet::Kind::Point ? sets[j] : sets[i];
                        const auto cap = capOf(cs);
                        far = axisAngle(*cap, pt.at) + capAngularRadius(*cap);
                    }
                } else {
                    const auto c1 = capOf(sets[i]);
                    const auto c2 = capOf(sets[j]);
                    const double dot = c1->axis[0] * c2->axis[0] + c1->axis[1] * c2->axis[1] +
                                       c1->axis[2] * c2->axis[2];
                    const double psi = std::acos(std::clamp(dot, -1.0, 1.0));
                    far = psi + capAngularRadius(*c1) + capAngularRadius(*c2);
                }
                best = intervalMax(best, Interval(std::min(kPi, far) * 0.5));
            }
        }
        return best;
    }

    // Mixed union: sample everything.
    std::vector<SpherePoint> pts;
    for (const auto& s : sets) {
        for (cplx q : s.boundarySamples(64)) pts.push_back(SpherePoint(q));
        if (s.containsInf()) pts.push_back(SpherePoint::infinity());
    }
    double bestS = best.lower;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            bestS = std::max(bestS, sphDist(pts[i], pts[j]));
    return Interval(bestS, std::min(kPi / 2.0, bestS + resolution));
}

cplx CompactSet::representative() const {
    switch (kind) {
        case Kind::Disc:
            return center;
        case Kind::DiscComplement:
            return center + cplx(2.0 * radius, 0.0);
        case Kind::Point:
            if (at.atInf) throw std::domain_error("point at infinity has no finite representative");
            return at.z;
        case Kind::Polygon: {
            // Midpoint of a short inward offset from the first convex-ish
            // edge; fall back to scanning offsets until inside.
            for (size_t i = 0; i < vertices.size(); ++i) {
                const cplx a = vertices[i];
                const cplx b = vertices[(i + 1) % vertices.size()];
                const cplx m = 0.5 * (a + b);
                const cplx dir = (b - a) / std::abs(b - a);
                const cplx inward(-dir.imag(), dir.real());  // left of a positively oriented edge
                for (double eps : {1e-6, 1e-4, 1e-2}) {
                    const cplx cand = m + inward * (eps * std::abs(b - a));
                    if (pointInPolygon(cand, vertices)) return cand;
                }
            }
            throw std::runtime_error("degenerate polygon: no interior point found");
        }
    }
    return center;
}

std::vector<cplx> CompactSet::boundarySamples(int perEdgeOrCircle) const {
    std::vector<cplx> out;
    switch (kind) {
        case Kind::Disc:
        case Kind::DiscComplement:
            for (int k = 0; k < perEdgeOrCircle; ++k) {
                const double t = 2.0 * kPi * k / perEdgeOrCircle;
                out.push_back(center + radius * cplx(std::cos(t), std::sin(t)));
            }
            break;
        case Kind::Polygon: {
            const int per = std::max(1, perEdgeOrCircle / (int)vertices.size());
            for (size_t i = 0; i < vertices.size(); ++i) {
                const cplx a = vertices[i];
                const cplx b = vertices[(i + 1) % vertices.size()];
                for (int k = 0; k < per; ++k) out.push_back(a + (b - a) * (double(k) / per));
            }
            break;
        }
        case Kind::Point:
            if (!at.atInf) out.push_back(at.z);
            break;
    }
    return out;
}

double CompactSet::euclFarthest(cplx z) const {
    switch (kind) {
        case Kind::Disc:
            return std::abs(z - center) + radius;
        case Kind::DiscComplement:
            return std::numeric_limits<double>::infinity();
        case Kind::Point:
            return at.atInf ? std::numeric_limits<double>::infinity() : std::abs(z - at.z);
        case Kind::Polygon: {
            double d = 0.0;
            for (const cplx& v : vertices) d = std::max(d, std::abs(z - v));
            return d;
        }
    }
    return 0.0;
}

void CompactSet::boundingBox(double& xmin, double& xmax, double& ymin, double& ymax) const {
    switch (kind) {
        case Kind::Disc:
        case Kind::DiscComplement:
            xmin = center.real() - radius;
            xmax = center.real() + radius;
            ymin = center.imag() - radius;
            ymax = center.imag() + radius;
            break;
        case Kind::Polygon: {
            xmin = ymin = std::numeric_limits<double>::infinity();
            xmax = ymax = -std::numeric_limits<double>::infinity();
            for (const cplx& v : vertices) {
                xmin = std::min(xmin, v.real());
                xmax = std::max(xmax, v.real());
                ymin = std::min(ymin, v.imag());
                ymax = std::max(ymax, v.imag());
            }
            break;
        }
        case Kind::Point:
            xmin = xmax = at.z.real();
            ymin = ymax = at.z.imag();
            break;
    }
}

static CompactSet invertCircle(cplx c, double r, bool wasDisc) {
    // Image of |z - c| = r under z -> 1/z.
    const double d2 = std::norm(c) - r * r;
    if (d2 == 0.0) throw std::domain_error("invert: circle through the origin");
    const cplx c2 = std::conj(c) / d2;
    const double r2 = r / std::abs(d2);
    // A disc not containing 0 maps to a disc; a disc containing 0 maps
    // to a disc complement (and vice versa).
    const bool containsZero = std::abs(c) < r;
    if (wasDisc) {
        return containsZero ? CompactSet::discComplement(c2, r2) : CompactSet::disc(c2, r2);
    }
    return containsZero ? CompactSet::disc(c2, r2) : CompactSet::discComplement(c2, r2);
}

CompactSet CompactSet::inverted() const {
    switch (kind) {
        case Kind::Disc:
            return invertCircle(center, radius, true);
        case Kind::DiscComplement:
            return invertCircle(center, radius, false);
        case Kind::Point:
            return CompactSet::point(invert(at));
        case Kind::Polygon: {
            std::vector<cplx> verts;
            verts.reserve(vertices.size());
            for (const cplx& v : vertices) {
                if (v == cplx(0.0, 0.0))
                    throw std::domain_error("invert: polygon vertex at the origin");
                verts.push_back(1.0 / v);
            }
            return CompactSet::polygon(std::move(verts));
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace carab
