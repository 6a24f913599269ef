#ifndef CARAB_SVG_HPP
#define CARAB_SVG_HPP

#include <string>
#include <vector>

#include "carab/curve.hpp"
#include "carab/domain.hpp"

namespace carab {

// Deterministic SVG assembly: elements are emitted in insertion order
// with fixed number formatting, so identical scenes produce identical
// bytes. The viewport is computed from the finite content (disc
// complements are drawn as evenodd bands against it).
class SvgScene {
  public:
    void addSet(const CompactSet& k, const std::string& fill);
    void addDomain(const PointedDomain& u);  // shaded components + basepoint
    void addCurve(const ClosedCurve& c, const std::string& stroke, double width = 0.0);
    void addPolyline(const std::vector<cplx>& pts, const std::string& stroke, double width = 0.0);
    void addMarker(cplx z, const std::string& color);

    std::string render() const;

  private:
    struct Element {
        enum class Kind { Set, Curve, Polyline, Marker } kind;
        CompactSet set;
        std::vector<cplx> pts;
        bool closed = false;
        std::string color;
        double width = 0.0;
    };
    std::vector<Element> elements_;
};

// Convenience: write scene to a string (callers handle files).
std::string renderDomain(const PointedDomain& u);

} // namespace carab

#endif
