#ifndef CARAB_HYPERBOLIC_HPP
#define CARAB_HYPERBOLIC_HPP

#include <memory>
#include <optional>
#include <vector>

#include "carab/curve.hpp"
#include "carab/domain.hpp"

namespace carab {

// Certified bounds on the curvature -1 hyperbolic density at a point.
struct DensityInterval {
    Interval value;
    cplx at;
};

using DistInterval = Interval;

// Resolution knobs shared by the estimators.
struct HypOptions {
    double lengthStep = 0.005;   // max hyperbolic length per integration segment
    double minStep = 1e-9;
    double meshSpacing = 0.0;    // 0 = automatic (min gap / 16)
    int maxMeshNodes = 60000;
    double meshMargin = 0.03;    // admitted graph-vs-continuum overshoot
};

// Closed-form and sandwich density backends behind one interface.
// The backend is chosen automatically from the complement structure:
// one circle-type component      -> exact disc metric,
// two circle-type components     -> exact ring metric after a Mobius
//                                   normalization to a round annulus,
// anything else                  -> sandwich estimator (inscribed-disc
//                                   upper bound, two-point Hempel-type
//                                   and inscribed-annulus refinements).
class DensityModel {
  public:
    explicit DensityModel(const PointedDomain& u);

    const PointedDomain& domain() const { return domain_; }
    bool exact() const { return exact_; }

    // Density bounds at a finite point of U.
    Interval density(cplx z) const;
    // Upper bound only (skips the two-point lower-bound search; cheap
    // enough for inner optimization loops). +inf outside U.
    double densityUpper(cplx z) const;
    // Density bounds valid over an entire segment contained in U.
    Interval densityOnSegment(cplx a, cplx b) const;

    // Hyperbolic distance between two points of a disc-type domain
    // (closed form); empty if the backend is not a disc.
    std::optional<double> discDistance(cplx z, cplx w) const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    PointedDomain domain_;
    bool exact_ = false;
};

// Integrated hyperbolic length of a closed curve or open polyline.
DistInterval hypLength(const DensityModel& model, const std::vector<cplx>& pts,
                       bool closed, const HypOptions& opt = {});
inline DistInterval hypLength(const DensityModel& model, const ClosedCurve& c,
                              const HypOptions& opt = {}) {
    return hypLength(model, c.points, true, opt);
}

DistInterval hypLength(const PointedDomain& u, const ClosedCurve& c,
                       const HypOptions& opt = {});

// Closed-form densities used as oracles and by the exact backends.
double discDensity(double radius, double distFromCenter);          // D(c,R)
double discComplementDensity(double radius, double distFromCenter); // exterior
double annulusDensity(double rIn, double rOut, double distFromCenter);

} // namespace carab

#endif
