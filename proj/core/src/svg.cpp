#include "carab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace carab {

namespace {

// Fixed formatting keeps output byte-identical across runs.
std::string num(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void SvgScene::addSet(const CompactSet& k, const std::string& fill) {
    Element e;
    e.kind = Element::Kind::Set;
    e.set = k;
    e.color = fill;
    elements_.push_back(std::move(e));
}

void SvgScene::addDomain(const PointedDomain& u) {
    static const char* shades[] = {"#b0c4de", "#deb0b0", "#b0dec0", "#d8d8a0", "#c9b0de"};
    for (size_t i = 0; i < u.components.size(); ++i)
        addSet(u.components[i], shades[i % 5]);
    if (!u.basepoint.atInf) addMarker(u.basepoint.z, "#000000");
}

void SvgScene::addCurve(const ClosedCurve& c, const std::string& stroke, double width) {
    Element e;
    e.kind = Element::Kind::Curve;
    e.pts = c.points;
    e.closed = true;
    e.color = stroke;
    e.width = width;
    elements_.push_back(std::move(e));
}

void SvgScene::addPolyline(const std::vector<cplx>& pts, const std::string& stroke, double width) {
    Element e;
    e.kind = Element::Kind::Polyline;
    e.pts = pts;
    e.color = stroke;
    e.width = width;
    elements_.push_back(std::move(e));
}

void SvgScene::addMarker(cplx z, const std::string& color) {
    Element e;
    e.kind = Element::Kind::Marker;
    e.pts = {z};
    e.color = color;
    elements_.push_back(std::move(e));
}

std::string SvgScene::render() const {
    // Viewport over the finite content.
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto grow = [&](cplx p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    };
    for (const auto& e : elements_) {
        if (e.kind == Element::Kind::Set) {
            if (e.set.kind == CompactSet::Kind::Point && e.set.at.atInf) continue;
            double a, b, c, d;
            e.set.boundingBox(a, b, c, d);
            grow({a, c});
            grow({b, d});
        } else {
            for (cplx p : e.pts) grow(p);
        }
    }
    if (!(xmin <= xmax)) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    const double pad = 0.07 * std::max({xmax - xmin, ymax - ymin, 1e-9});
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    const double W = xmax - xmin, H = ymax - ymin;
    const double sw = 0.004 * std::max(W, H);  // default stroke width
    // SVG y grows downward; emit with y negated and shift the viewBox.
    auto X = [&](cplx p) { return num(p.real()); };
    auto Y = [&](cplx p) { return num(-p.imag()); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(xmin) << " " << num(-ymax)
       << " " << num(W) << " " << num(H) << "\" width=\"640\" height=\"" << num(640.0 * H / W)
       << "\">\n";
    for (const auto& e : elements_) {
        const double w = e.width > 0.0 ? e.width : sw;
        switch (e.kind) {
            case Element::Kind::Set:
                switch (e.set.kind) {
                    case CompactSet::Kind::Disc:
                        os << "<circle cx=\"" << X(e.set.center) << "\" cy=\"" << Y(e.set.center)
                           << "\" r=\"" << num(e.set.radius) << "\" fill=\"" << e.color
                           << "\"/>\n";
                        break;
                    case CompactSet::Kind::DiscComplement:
                        // Band between the viewport rectangle and the circle.
                        os << "<path fill-rule=\"evenodd\" fill=\"" << e.color << "\" d=\"M"
                           << num(xmin) << " " << num(-ymax) << "H" << num(xmax) << "V"
                           << num(-ymin) << "H" << num(xmin) << "Z M"
                           << num(e.set.center.real() + e.set.radius) << " "
                           << num(-e.set.center.imag()) << "A" << num(e.set.radius) << " "
                           << num(e.set.radius) << " 0 1 0 "
                           << num(e.set.center.real() - e.set.radius) << " "
                           << num(-e.set.center.imag()) << "A" << num(e.set.radius) << " "
                           << num(e.set.radius) << " 0 1 0 "
                           << num(e.set.center.real() + e.set.radius) << " "
                           << num(-e.set.center.imag()) << "Z\"/>\n";
                        break;
                    case CompactSet::Kind::Polygon: {
                        os << "<polygon fill=\"" << e.color << "\" points=\"";
                        for (size_t i = 0; i < e.set.vertices.size(); ++i)
                            os << (i ? " " : "") << X(e.set.vertices[i]) << ","
                               << Y(e.set.vertices[i]);
                        os << "\"/>\n";
                        break;
                    }
                    case CompactSet::Kind::Point:
                        if (!e.set.at.atInf)
                            os << "<circle cx=\"" << X(e.set.at.z) << "\" cy=\"" << Y(e.set.at.z)
                               << "\" r=\"" << num(1.5 * sw) << "\" fill=\"" << e.color
                               << "\"/>\n";
                        break;
                }
                break;
            case Element::Kind::Curve:
            case Element::Kind::Polyline: {
                os << (e.closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\""
                   << e.color << "\" stroke-width=\"" << num(w) << "\" points=\"";
                for (size_t i = 0; i < e.pts.size(); ++i)
                    os << (i ? " " : "") << X(e.pts[i]) << "," << Y(e.pts[i]);
                os << "\"/>\n";
                break;
            }
            case Element::Kind::Marker:
                os << "<circle cx=\"" << X(e.pts[0]) << "\" cy=\"" << Y(e.pts[0]) << "\" r=\""
                   << num(2.0 * sw) << "\" fill=\"" << e.color
                   << "\" stroke=\"#ffffff\" stroke-width=\"" << num(0.5 * sw) << "\"/>\n";
                break;
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string renderDomain(const PointedDomain& u) {
    SvgScene s;
    s.addDomain(u);
    return s.render();
}

} // namespace carab
