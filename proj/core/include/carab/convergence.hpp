#ifndef CARAB_CONVERGENCE_HPP
#define CARAB_CONVERGENCE_HPP

#include <string>
#include <vector>

#include "carab/bounds.hpp"

namespace carab {

enum class Metric { Spherical, Euclidean };

// Hausdorff distance between two compact sets. Exact (zero width) for
// Euclidean disc pairs; otherwise certified via boundary sampling with a
// Lipschitz widening of the upper end.
Interval hausdorffDist(const CompactSet& a, const CompactSet& b,
                       Metric metric = Metric::Spherical, int samples = 512);

// A named measurement sequence along family indices (for witnesses,
// plots and CSV export).
struct MeasurementTrail {
    std::string name;
    std::vector<int> indices;
    std::vector<double> values;
};

// "m,<trail1>,<trail2>,..." wide-format CSV over the union of indices.
std::string trailsToCsv(const std::vector<MeasurementTrail>& trails);

// Dichotomy of a pointed-domain sequence limit along a finite tail.
enum class LimitKind {
    NonDegenerate,     // limit is again an n-connected pointed domain
    ConnectivityDrop,  // a component collapses to a point or two merge
    PointLimit,        // basepoint clearance tends to zero
    NoLimit            // complement tracks oscillate along the tail
};

const char* limitKindName(LimitKind k);

struct CaraLimit {
    LimitKind kind = LimitKind::NoLimit;
    PointedDomain limit;          // populated for NonDegenerate and
                                  // ConnectivityDrop (surviving components)
    int connectivityFrom = 0;
    int connectivityTo = 0;
    std::string description;      // human-readable witness summary
    std::vector<MeasurementTrail> witnesses;
};

// Extrapolate the Carathéodory limit from the sampled tail indices:
// complement components are tracked between consecutive members by
// nearest Hausdorff distance; collapsing diameters, merging tracks and
// vanishing basepoint clearance are classified with measurement trails.
// When a track wanders off towards infinity the whole sequence is first
// conjugated by z -> 1/z (a spherical isometry).
CaraLimit caraLimit(const DomainFamily& f, const std::vector<int>& tail);

enum class FamilyVerdict { BoundedEvidence, Unbounded, Inconclusive };

const char* familyVerdictName(FamilyVerdict v);

struct ClassifyOptions {
    MeridianOptions meridian;
    bool meridianTrails = true;  // record per-class length/distance trails
};

struct ClassifyReport {
    FamilyVerdict verdict = FamilyVerdict::Inconclusive;
    std::string witness;  // names the degenerating quantity when unbounded
    FamilyBoundReport bound;
    CaraLimit limit;
    std::vector<MeasurementTrail> trails;
};

// Boundedness classification of a family over a finite index sample:
// family bound drift + meridian length/distance trends + the limit
// dichotomy, with one named witness per unbounded verdict.
ClassifyReport classifyFamily(const DomainFamily& f, const std::vector<int>& sample,
                              const ClassifyOptions& opt = {});

} // namespace carab

#endif
