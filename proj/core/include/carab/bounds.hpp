#ifndef CARAB_BOUNDS_HPP
#define CARAB_BOUNDS_HPP

#include <string>
#include <vector>

#include "carab/meridian.hpp"

namespace carab {

// Length/distance aggregates of a pointed domain:
//   L  = max over principal classes of |log length(meridian)|
//   D  = max over principal classes of dist(basepoint, meridian)
//   LE, DE = the same maxima over every homology class, with the
//            per-class representative chosen maximally close.
// For connectivity 1 all four are exactly zero by convention.
struct LengthDistance {
    Interval L{0.0, 0.0}, D{0.0, 0.0}, LE{0.0, 0.0}, DE{0.0, 0.0};
    std::vector<std::string> failures;  // classes with no certified meridian
};
LengthDistance lengthDistance(const PointedDomain& u, const MeridianOptions& opt = {});

// Boundedness functional of a pointed domain:
//   firstTerm = |log( delta^#(u) * sphDiam(complement) )|
//   bound     = firstTerm + L + D      (principal classes)
//   boundE    = firstTerm + LE + DE    (all classes)
struct BoundReport {
    int connectivity = 0;
    Interval firstTerm;
    Interval L, D, LE, DE;
    Interval bound, boundE;
    std::vector<std::string> failures;
};
BoundReport caraBound(const PointedDomain& u, const MeridianOptions& opt = {});
// Assembly step of caraBound for callers that already hold the two
// meridian systems (avoids re-running the search).
BoundReport boundFromSystems(const PointedDomain& u, const MeridianSystem& principal,
                             const MeridianSystem& extended);

// Supremum of the bound over a finite sample of family indices.
struct FamilyBoundReport {
    std::vector<int> indices;            // the sampled indices, in order
    std::vector<BoundReport> reports;    // aligned with indices
    std::vector<std::string> memberIssues;  // validation/meridian problems, not skipped
    Interval supBound{0.0, 0.0}, supBoundE{0.0, 0.0};
    // Trend of bound.upper along the sample: drifting up means the last
    // value exceeds the first by >25% and at least 70% of the consecutive
    // steps increase (tolerant of optimizer noise).
    bool driftingUp = false;
    bool driftingDown = false;
};
FamilyBoundReport familyBound(const DomainFamily& f, const std::vector<int>& sample,
                              const MeridianOptions& opt = {});

// Certificate for the eta-curve boundedness test. For each principal
// class, eta^i is the principal meridian joined to the basepoint by the
// connecting segment traversed in both directions, so that
//   a) the basepoint lies on eta^i,
//   b) eta^i separates the isolated component from the others,
//   c) every point of eta^i is at spherical distance >= delta1 from the
//      complement,
//   d) every complement component has spherical diameter >= delta2.
// For connectivity 1 there are no curves and a)+c) collapse to
// delta^#(basepoint) >= delta1.
struct Condition4Certificate {
    std::vector<ClosedCurve> curves;  // one per principal class, in class order
    Interval clearance;   // min spherical clearance over all curves (item c LHS)
    Interval minDiameter; // min component spherical diameter (item d LHS)
    Verdict basepointOnCurves = Verdict::Inconclusive;  // item a
    Verdict separation = Verdict::Inconclusive;         // item b
    Verdict clearanceVerdict = Verdict::Inconclusive;   // item c vs delta1
    Verdict diameterVerdict = Verdict::Inconclusive;    // item d vs delta2
    Verdict verdict = Verdict::Inconclusive;            // conjunction
    std::vector<std::string> failures;
};
Condition4Certificate condition4Certificate(const PointedDomain& u, double delta1,
                                            double delta2, const MeridianOptions& opt = {});

// Smallest K2 with 1/K2 <= rho(z) * delta^#(z) * (1+|z|^2) <= K2 over the
// samples (certified via density intervals; conservative on both sides).
struct PerfectnessReport {
    double k2 = 0.0;
    cplx attainedAt{0.0, 0.0};
    size_t samples = 0;
};
PerfectnessReport uniformPerfectness(const PointedDomain& u,
                                     const std::vector<cplx>& samplePoints);

// Rational map with explicit coefficients (constant term first).
struct MapSpec {
    std::vector<cplx> num{cplx(0.0, 0.0), cplx(1.0, 0.0)};  // identity default
    std::vector<cplx> den{cplx(1.0, 0.0)};

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;  // exact rational derivative
};

// Hyperbolic Lipschitz data for f : (U,u) -> (V,v) over sampled points of
// the hyperbolic R-ball around the basepoint:
//   M = max rho_V(f(z)) |f'(z)| / rho_U(z)          (Lipschitz)
//   K = max(M, max reciprocal ratio where f' != 0)  (local bi-Lipschitz)
// K.upper is +inf when f' vanishes at a sample or a reciprocal is unbounded.
struct LipschitzReport {
    double R = 0.0;
    Interval M;
    Interval K;
    size_t samples = 0;
    cplx mAttainedAt{0.0, 0.0};
    std::vector<std::string> issues;  // image outside V, basepoint mismatch, ...
};
LipschitzReport hyperbolicLipschitz(const MapSpec& f, const PointedDomain& u,
                                    const PointedDomain& v, double R,
                                    const HypOptions& opt = {});

} // namespace carab

#endif
