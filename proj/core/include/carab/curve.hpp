#ifndef CARAB_CURVE_HPP
#define CARAB_CURVE_HPP

#include <vector>

#include "carab/sphere.hpp"

namespace carab {

// Closed polyline in the plane. Vertices are finite; the segment from
// points.back() to points.front() closes the curve.
struct ClosedCurve {
    std::vector<cplx> points;

    size_t size() const { return points.size(); }
    cplx at(size_t i) const { return points[i % points.size()]; }

    double euclLength() const;
    double sphLength() const;

    // Exact integer winding number about z (z must not lie on the curve).
    int winding(cplx z) const;
    bool onCurve(cplx z, double tol = 0.0) const;
    bool isSimple() const;

    // Arc-length resampling to n vertices (Euclidean parameter).
    ClosedCurve resampled(size_t n) const;
    void reverse();

    // Minimum Euclidean distance from the curve to a compact set.
    double euclDistTo(const CompactSet& k) const;
    // Certified minimum spherical distance from the curve to a set.
    Interval minSphClearance(const CompactSet& k) const;

    ClosedCurve translated(cplx delta) const;
    ClosedCurve scaled(double s) const;
};

ClosedCurve circleCurve(cplx center, double radius, size_t n = 128);

} // namespace carab

#endif
