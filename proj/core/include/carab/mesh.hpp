#ifndef CARAB_MESH_HPP
#define CARAB_MESH_HPP

#include <vector>

#include "carab/hyperbolic.hpp"

namespace carab {

// Grid graph over a pointed domain used for certified-upper /
// reported-lower hyperbolic distance queries. Nodes are grid points of
// U; edges are short segments inside U weighted by density bounds.
class HypMesh {
  public:
    HypMesh(const PointedDomain& u, const HypOptions& opt = {});

    const PointedDomain& domain() const { return domain_; }
    const DensityModel& model() const { return model_; }
    double spacing() const { return spacing_; }
    double margin() const { return opt_.meshMargin; }

    // Distances from a source point to every node (upper-weight and
    // lower-weight runs share a result structure).
    struct Field {
        std::vector<double> upper;
        std::vector<double> lower;
        std::vector<int> parent;  // predecessor in the upper-weight run
        cplx source;
    };
    Field solve(cplx source) const;

    DistInterval distance(const Field& f, cplx target) const;
    DistInterval pointDistance(cplx a, cplx b) const;

    // Distance from the field source to the closest sample of a curve,
    // plus the polyline of the realizing path (for certificates).
    DistInterval distanceToCurve(const Field& f, const ClosedCurve& c) const;
    std::vector<cplx> pathTo(const Field& f, cplx target) const;

    // Shortest path between two points avoiding all components
    // (Euclidean weights); used for corridor construction.
    std::vector<cplx> euclPath(cplx a, cplx b) const;

    size_t nodeCount() const { return nodes_.size(); }
    cplx nodeAt(size_t i) const { return nodes_[i]; }

  private:
    int nearestNode(cplx z) const;
    std::vector<int> attachNodes(cplx z) const;

    PointedDomain domain_;
    DensityModel model_;
    HypOptions opt_;
    double spacing_;
    double x0_, y0_;
    int nx_ = 0, ny_ = 0;
    std::vector<cplx> nodes_;
    std::vector<int> gridIndex_;          // (i,j) -> node id or -1
    std::vector<std::vector<std::pair<int, int>>> adj_;  // node -> (nbr, edgeId)
    std::vector<double> edgeUpper_, edgeLower_, edgeEucl_;
    std::vector<std::pair<int, int>> edges_;
};

} // namespace carab

#endif
