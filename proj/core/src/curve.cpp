#include "carab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carab {

double ClosedCurve::euclLength() const {
    double s = 0.0;
    for (size_t i = 0; i < points.size(); ++i) s += std::abs(at(i + 1) - at(i));
    return s;
}

double ClosedCurve::sphLength() const {
    double s = 0.0;
    for (size_t i = 0; i < points.size(); ++i)
        s += sphDist(SpherePoint(at(i)), SpherePoint(at(i + 1)));
    return s;
}

int ClosedCurve::winding(cplx z) const {
    // Signed crossing count of the horizontal ray to +infinity.
    int w = 0;
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx a = at(i), b = at(i + 1);
        const bool aUp = a.imag() <= z.imag();
        const bool bUp = b.imag() <= z.imag();
        if (aUp == bUp) continue;
        // x-coordinate where the edge crosses the horizontal through z.
        const double t = (z.imag() - a.imag()) / (b.imag() - a.imag());
        const double x = a.real() + t * (b.real() - a.real());
        if (x > z.real()) w += bUp ? -1 : 1;
    }
    return w;
}

bool ClosedCurve::onCurve(cplx z, double tol) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (distPointSegment(z, at(i), at(i + 1)) <= tol) return true;
    return false;
}

bool ClosedCurve::isSimple() const {
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segmentsIntersect(at(i), at(i + 1), at(j), at(j + 1))) return false;
        }
    }
    return true;
}

ClosedCurve ClosedCurve::resampled(size_t n) const {
    if (points.empty() || n < 3) throw std::invalid_argument("resample: bad input");
    const double total = euclLength();
    ClosedCurve out;
    out.points.reserve(n);
    if (total == 0.0) {
        out.points.assign(n, points[0]);
        return out;
    }
    const double step = total / n;
    double target = 0.0;
    double walked = 0.0;
    size_t seg = 0;
    cplx a = at(0), b = at(1);
    double segLen = std::abs(b - a);
    for (size_t k = 0; k < n; ++k) {
        target = step * k;
        while (walked + segLen < target && seg < points.size()) {
            walked += segLen;
            ++seg;
            a = at(seg);
            b = at(seg + 1);
            segLen = std::abs(b - a);
        }
        const double t = segLen > 0 ? (target - walked) / segLen : 0.0;
        out.points.push_back(a + t * (b - a));
    }
    return out;
}

void ClosedCurve::reverse() { std::reverse(points.begin(), points.end()); }

double ClosedCurve::euclDistTo(const CompactSet& k) const {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points.size(); ++i)
        d = std::min(d, k.euclDistSegment(at(i), at(i + 1)));
    return d;
}

Interval ClosedCurve::minSphClearance(const CompactSet& k) const {
    // Spherical density is at most 1, so along any segment the distance
    // to k varies by at most the Euclidean segment length.
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points.size(); ++i) {
        const cplx a = at(i), b = at(i + 1);
        const double len = std::abs(b - a);
        const int pieces = std::max(1, (int)std::ceil(len / 0.05));
        for (int p = 0; p <= pieces; ++p) {
            const cplx q = a + (b - a) * (double(p) / pieces);
            const Interval d = k.sphDistTo(SpherePoint(q));
            hi = std::min(hi, d.upper);
            lo = std::min(lo, d.lower - 0.5 * len / pieces);
        }
    }
    return Interval(std::max(0.0, lo), hi);
}

ClosedCurve ClosedCurve::translated(cplx delta) const {
    ClosedCurve out = *this;
    for (auto& p : out.points) p += delta;
    return out;
}

ClosedCurve ClosedCurve::scaled(double s) const {
    ClosedCurve out = *this;
    for (auto& p : out.points) p *= s;
    return out;
}

ClosedCurve circleCurve(cplx center, double radius, size_t n) {
    ClosedCurve c;
    c.points.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        const double t = 2.0 * kPi * k / n;
        c.points.push_back(center + radius * cplx(std::cos(t), std::sin(t)));
    }
    return c;
}

} // namespace carab
