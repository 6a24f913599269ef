#ifndef CARAB_SPHERE_HPP
#define CARAB_SPHERE_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "carab/interval.hpp"

namespace carab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Point of the Riemann sphere: a finite complex number or infinity.
// The spherical metric used throughout is |dz| / (1 + |z|^2), so the
// diameter of the whole sphere is pi/2 and sph_dist(0, inf) = pi/2.
struct SpherePoint {
    cplx z{0.0, 0.0};
    bool atInf = false;

    SpherePoint() = default;
    SpherePoint(double x, double y) : z(x, y) {}
    explicit SpherePoint(cplx v) : z(v) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.atInf = true;
        return p;
    }
    bool finite() const { return !atInf; }
};

// Unit-sphere embedding (stereographic, unit circle -> equator).
std::array<double, 3> toUnitSphere(const SpherePoint& p);

// Geodesic distance in the |dz|/(1+|z|^2) normalization; range [0, pi/2].
double sphDist(const SpherePoint& p, const SpherePoint& q);

// z -> 1/z with 0 <-> inf. A spherical isometry.
SpherePoint invert(const SpherePoint& p);

// Compact subset of the sphere. Disc complements are the closed
// exterior of a circle, including infinity.
struct CompactSet {
    enum class Kind { Disc, DiscComplement, Polygon, Point };

    Kind kind = Kind::Disc;
    cplx center{0.0, 0.0};   // Disc / DiscComplement
    double radius = 0.0;
    std::vector<cplx> vertices;  // Polygon: simple, positively oriented
    SpherePoint at;              // Point

    static CompactSet disc(cplx c, double r);
    static CompactSet discComplement(cplx c, double r);
    static CompactSet polygon(std::vector<cplx> verts);
    static CompactSet point(SpherePoint p);

    bool containsInf() const;
    bool contains(const SpherePoint& p) const;

    // Euclidean distance from a finite point to the set (0 if inside).
    double euclDist(cplx z) const;
    // Euclidean distance from a segment [a,b] to the set.
    double euclDistSegment(cplx a, cplx b) const;
    // Spherical distance from a point to the set. Exact for discs,
    // disc complements and points; resolution-certified for polygons.
    Interval sphDistTo(const SpherePoint& p, double resolution = 1e-4) const;

    // Spherical diameter. Exact for discs/complements/points,
    // sampled-with-resolution for polygons.
    Interval sphDiam(double resolution = 1e-4) const;

    // A finite point guaranteed to belong to the set.
    cplx representative() const;
    // Boundary sample points (for sampled metrics and seeds).
    std::vector<cplx> boundarySamples(int perEdgeOrCircle = 32) const;
    // Farthest Euclidean distance from z to a point of the set.
    // Infinite for disc complements.
    double euclFarthest(cplx z) const;
    // Axis-aligned bounding box of the finite part (for complements,
    // of the bounding circle).
    void boundingBox(double& xmin, double& xmax, double& ymin, double& ymax) const;

    // Image under z -> 1/z (exact for circles; vertex-wise for polygons).
    CompactSet inverted() const;
};

// Spherical diameter of a union of compact sets (sup of pairwise
// spherical distances). Exact when all parts are circle-type.
Interval sphDiamUnion(const std::vector<CompactSet>& sets, double resolution = 1e-4);

// Spherical cap {x . n >= h} representation of a disc.
struct SphericalCap {
    std::array<double, 3> axis;
    double height;  // in [-1, 1]
};
SphericalCap capOfDisc(cplx center, double radius);

// Euclidean helpers shared across modules.
double distPointSegment(cplx p, cplx a, cplx b);
double distSegmentSegment(cplx a, cplx b, cplx c, cplx d);
bool segmentsIntersect(cplx a, cplx b, cplx c, cplx d);

} // namespace carab

#endif
