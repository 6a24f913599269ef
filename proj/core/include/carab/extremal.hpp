#ifndef CARAB_EXTREMAL_HPP
#define CARAB_EXTREMAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "carab/bounds.hpp"
#include "carab/meridian.hpp"

namespace carab {

// Annulus separating two complementary sets, with an exact modulus.
// Two shapes are produced:
//   Round  — a round annulus A(center, rIn, rOut) avoiding both sets,
//            one set inside D(center, rIn), the other outside
//            (rolesSwapped records which); modulus log(rOut/rIn)/(2pi).
//   Collar — the embedded collar around the separating-class geodesic,
//            used when no round annulus can separate (e.g. a partition
//            whose convex hulls interleave); the equator is the geodesic
//            approximation and the modulus the certified collar bound
//            2*arcsin(tanh w)/l with sinh(w)*sinh(l/2) = 1.
struct AnnulusCandidate {
    enum class Shape { Round, Collar };
    Shape shape = Shape::Round;
    cplx center{0.0, 0.0};
    double rIn = 0.0, rOut = 0.0;  // Round only
    bool rolesSwapped = false;     // Round: the second set is the inside one
    double modulus = 0.0;
    ClosedCurve equator;           // winding certificate carrier
    std::string normalization;     // human-readable construction record
};

struct SeparatingAnnulusReport {
    AnnulusCandidate best;
    std::vector<AnnulusCandidate> ties;  // equal-modulus candidates (list incl. best)
    Interval bracket;  // [best found lower bound, pi / meridian length lower]
    DistInterval meridianLength;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

struct SeparatingAnnulusOptions {
    int starts = 16;
    std::uint64_t seed = 20240901;
    MeridianOptions meridian;
};

// Largest-modulus separating annulus bracket: the lower end is realized
// by the best candidate found (round multi-start search, falling back to
// the meridian collar), the upper end is pi over the separating-class
// meridian length lower bound. Throws if either set is a single point,
// or when no candidate of either shape can be certified.
SeparatingAnnulusReport separatingAnnulusMax(const std::vector<CompactSet>& E,
                                             const std::vector<CompactSet>& F,
                                             const SeparatingAnnulusOptions& opt = {});

// One item of a containment report: a measured quantity checked
// against the constant K (interval semantics where available).
struct ContainmentItem {
    std::string what;
    double measured = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct ContainmentReport {
    double K = 1.0;
    std::vector<ContainmentItem> items;  // four items
    bool pass = false;                   // all four certified
};

// Bounded containment of U' in U with constant K >= 1:
//   1. U' lies within hyperbolic distance K about U's basepoint (in U);
//      sampled sup over boundary-proximal points of U'.
//   2. delta#_{U'}(u') >= delta#_U(u') / K at U's basepoint;
//   3. meridian length functional of U' at most K;
//   4. meridian distance functional of U' at most K.
// Hard error when U' is not contained in U (sampled check).
ContainmentReport containmentCheck(const PointedDomain& uPrime, const PointedDomain& u,
                                   double K, const MeridianOptions& opt = {});

// Bounded containment of a marked closed curve in U with constant K:
//   1. the curve lies within hyperbolic distance K of the basepoint;
//   2. the spherical speed of the constant-speed parametrization over
//      delta#_U at the marked point lies in [1/K, K] on every segment.
ContainmentReport curveContainmentCheck(const ClosedCurve& c, cplx marked,
                                        const PointedDomain& u, double K,
                                        const HypOptions& opt = {});

// The conformal annulus V \ clos(U) between two round discs
// (as domains: each given by its single disc-complement component).
// Concentric discs give the closed form; otherwise the annulus is
// normalized exactly by the Mobius map sending the common symmetric
// points to 0 and infinity. The returned candidate carries the true
// equator circle in the original coordinates, and the report basepoint
// sits on the equator.
struct AnnulusBetweenReport {
    AnnulusCandidate annulus;
    SpherePoint basepoint;  // on the equator
    double modulus = 0.0;
};
AnnulusBetweenReport annulusBetween(const PointedDomain& u, const PointedDomain& v);

} // namespace carab

#endif
