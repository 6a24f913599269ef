#ifndef CARAB_DOMAIN_HPP
#define CARAB_DOMAIN_HPP

#include <functional>
#include <string>
#include <vector>

#include "carab/sphere.hpp"

namespace carab {

// Pointed n-connected domain (U, u): the sphere minus a list of
// pairwise disjoint compact complement components, with a marked
// basepoint u in U.
struct PointedDomain {
    SpherePoint basepoint;
    std::vector<CompactSet> components;
    std::string label;

    int connectivity() const { return (int)components.size(); }
    bool contains(const SpherePoint& p) const;

    // Spherical clearance delta^#: distance from z to the complement.
    Interval deltaSharp(const SpherePoint& z, double resolution = 1e-4) const;
    // Euclidean distance from a finite z to the complement.
    double euclDelta(cplx z) const;
    double euclDeltaSegment(cplx a, cplx b) const;

    // Index of the component containing infinity, or -1.
    int infComponent() const;

    // Spherical diameter of the whole complement.
    Interval complementDiam(double resolution = 1e-4) const;
};

struct ValidationIssue {
    std::string what;
    double measured = 0.0;
};

struct ValidationReport {
    bool pass = true;
    std::vector<ValidationIssue> issues;
};

ValidationReport validate(const PointedDomain& u);

struct NondegeneracyReport {
    bool nondegenerate = true;
    std::vector<std::string> reasons;
};

// Every component has positive spherical diameter and U != the sphere.
NondegeneracyReport isNondegenerate(const PointedDomain& u);

// Parametric family of pointed domains indexed by an integer m.
struct DomainFamily {
    std::string name;
    int mFirst = 0;
    int mLast = 0;
    std::function<PointedDomain(int)> generator;

    PointedDomain at(int m) const { return generator(m); }
};

// Built-in families from the worked examples:
//   disc_nibble            D \ clos D(1-2/m, 1/m), basepoint 0
//   inverse_symmetric_quad sphere minus four discs, invariant under 1/z
//   slit_annulus_fig6      A(0,2,5) minus a nearly closed annular slit
//   merging_components     two discs whose centers collide as m grows
DomainFamily builtinFamily(const std::string& name, int mFirst, int mLast,
                           int slitArcVertices = 64);

} // namespace carab

#endif
