#ifndef CARAB_MESHCURVE_HPP
#define CARAB_MESHCURVE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "carab/hyperbolic.hpp"

namespace carab {

// Separation data: closed disjoint sets E and F (infinity in F) with a
// closed curve separating them at clearance r, everything inside the
// radius-R disc. Build through makeInstance, which certifies:
//   - E and F disjoint, infinity in F, E bounded;
//   - winding(gamma) = 1 on E-samples and 0 on finite F-samples;
//   - dist(gamma, E u F) >= r;
//   - Euclidean length of gamma <= R and gamma inside |z| <= R.
struct SeparationInstance {
    std::vector<CompactSet> E, F;
    ClosedCurve gamma;
    double r = 0.0;
    double R = 0.0;

    // U = sphere minus (E u F), based at gamma's first vertex.
    PointedDomain ambient() const;
};

SeparationInstance makeInstance(std::vector<CompactSet> E, std::vector<CompactSet> F,
                                ClosedCurve gamma, double r, double R);

// A deterministic pseudo-random valid instance (for sweeps and tests):
// a cluster of small discs as E, a circle around it as gamma, and an
// outer complement plus an optional far disc as F.
SeparationInstance seededInstance(std::uint64_t seed);

// 1-chain on the square grid of side r/(4*sqrt(2)), anchored covariantly
// at E's bounding box. Keys are (x, y, direction) with direction 0 = +x
// and 1 = +y; values are orientation multiplicities (+1 or -1 only:
// cancellation is complete by construction).
struct GridCycle {
    double side = 0.0;
    cplx origin{0.0, 0.0};
    std::map<std::array<int, 3>, int> edges;
    int squareCount = 0;

    cplx point(int x, int y) const { return origin + side * cplx(double(x), double(y)); }
};

// Exact winding number of the cycle about a point not on its edges:
// crossing counting in grid coordinates (edges live on the integer
// lattice, so the comparisons are exact).
int winding(const GridCycle& cycle, cplx z);

// Sum of the boundaries of all grid squares meeting the r/4-enlargement
// of E, with shared edges cancelled. Certifies that every surviving edge
// is >= r/4 from E and >= 3r/2 from F, and that the square count is at
// most (2R/r + 2)^2.
GridCycle buildMeshCycle(const SeparationInstance& inst);

// Edge-disjoint closed grid curves whose formal sum is the cycle. At a
// 4-valent vertex each incoming edge pairs with the outgoing edge that
// turns maximally left (yields non-crossing parts).
std::vector<ClosedCurve> decomposeCycle(const GridCycle& cycle);

// Join the parts into one closed curve homologous to their sum: each
// part hangs off the separating curve by a connector traversed in both
// directions, and the gamma-arcs between connector feet are traversed
// once forwards and once backwards (so gamma contributes no winding).
// Connector sub-segments crossing another part are replaced by a walk
// along that part's boundary on the cheaper side.
ClosedCurve joinCurves(const std::vector<ClosedCurve>& parts, const SeparationInstance& inst);

struct MeshCurveResult {
    ClosedCurve curve;
    DistInterval length;      // hyperbolic length in the ambient domain
    double apriori = 0.0;     // the a-priori bound B(r, R)
    int squareCount = 0;
    GridCycle cycle;
    double cycleDistToE = 0.0;  // min over surviving edges
    double cycleDistToF = 0.0;
};

// Full pipeline; throws if any certificate fails.
MeshCurveResult meshCurve(const SeparationInstance& inst);

// The a-priori hyperbolic length bound: density on the curve is at most
// 8/r, and the Euclidean budget counts all square edges, one connector
// with boundary walk per part, and the doubled separating curve.
// Monotone nonincreasing in r and nondecreasing in R.
double aprioriLengthBound(double r, double R);

} // namespace carab

#endif
