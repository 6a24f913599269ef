#ifndef CARAB_MERIDIAN_HPP
#define CARAB_MERIDIAN_HPP

#include <string>
#include <vector>

#include "carab/mesh.hpp"

namespace carab {

// Homology class of separating simple closed curves: the partition
// {inside, complement} of complement-component indices. Canonical form
// stores the side not containing the infinity component (or, failing
// that, the lexicographically smaller side, which contains index 0).
struct HomologyClass {
    std::vector<int> inside;  // sorted component indices
    bool principal = false;
};

// All 2^{n-1} - 1 classes for connectivity n >= 2, principal first.
// infIndex is the component containing infinity, or -1.
std::vector<HomologyClass> homologyClasses(int n, int infIndex = -1);
HomologyClass canonicalClass(int n, std::vector<int> inside, int infIndex = -1);

struct MeridianOptions {
    int seeds = 4;            // number of level-set seed offsets
    size_t vertices = 128;    // polyline resolution
    int maxIterations = 2000;
    HypOptions hyp;
};

struct MeridianResult {
    ClosedCurve curve;
    DistInterval length;
    bool certified = false;   // winding + simplicity + containment in U
    int iterations = 0;
    std::string diagnostics;
};

// Discrete curve shortening of a class-separating seed under the
// density upper bound; returns the shortest certified result.
MeridianResult findMeridian(const PointedDomain& u, const HomologyClass& c,
                            const MeridianOptions& opt = {});
// All certified converged candidates (one per distinct seed).
std::vector<MeridianResult> findMeridianCandidates(const PointedDomain& u,
                                                   const HomologyClass& c,
                                                   const MeridianOptions& opt = {});

struct MeridianEntry {
    HomologyClass cls;
    ClosedCurve curve;
    DistInterval length;
    DistInterval distance;  // basepoint to curve
};

struct MeridianSystem {
    std::vector<MeridianEntry> entries;  // principal entries first
    int principalCount = 0;
    std::vector<std::string> failures;   // classes with no certified seed
};

// One meridian per principal class; distances from the basepoint.
MeridianSystem principalSystem(const PointedDomain& u, const MeridianOptions& opt = {});
// One entry per homology class; per class the candidate of minimal
// basepoint distance is kept (maximally-close approximation).
MeridianSystem extendedSystem(const PointedDomain& u, const MeridianOptions& opt = {});
// Both systems from a single candidate search (either output may be null).
void buildMeridianSystems(const PointedDomain& u, const MeridianOptions& opt,
                          MeridianSystem* principal, MeridianSystem* extended);

// Aggregates over a system: L = max |log l^i|, D = max d^i.
Interval systemL(const MeridianSystem& s, bool principalOnly);
Interval systemD(const MeridianSystem& s, bool principalOnly);

// D_E(Gamma') <= D_E(Gamma) + exp(L_E(Gamma))/2, with interval semantics.
struct SystemInequalityReport {
    Verdict verdict = Verdict::Inconclusive;
    double slack = 0.0;  // rhs lower - lhs upper when passing
};
SystemInequalityReport systemInequalityCheck(const MeridianSystem& gamma,
                                             const MeridianSystem& gammaPrime);

} // namespace carab

#endif
