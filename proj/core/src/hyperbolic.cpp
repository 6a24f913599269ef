#include "carab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace carab {

// Hempel's constant Gamma(1/4)^4 / (4 pi^2) = 4.37687929941334...
// for the curvature -1 lower bound on the twice-punctured plane.
static const double kHempel = std::pow(std::tgamma(0.25), 4) / (4.0 * kPi * kPi);

double discDensity(double radius, double d) {
    return 2.0 * radius / (radius * radius - d * d);
}

double discComplementDensity(double radius, double d) {
    return 2.0 * radius / (d * d - radius * radius);
}

double annulusDensity(double rIn, double rOut, double d) {
    const double logRatio = std::log(rOut / rIn);
    const double phase = kPi * std::log(d / rIn) / logRatio;
    return kPi / (d * logRatio * std::sin(phase));
}

namespace {

struct Range {
    double lo, hi;
};

Range segDistRange(cplx c, cplx a, cplx b) {
    return {distPointSegment(c, a, b), std::max(std::abs(a - c), std::abs(b - c))};
}

// Range of the unimodal annulus density over a radius range strictly
// inside (rIn, rOut).
Interval annulusDensityRange(double rIn, double rOut, Range d) {
    const double g = std::sqrt(rIn * rOut);
    const double top = std::max(annulusDensity(rIn, rOut, d.lo), annulusDensity(rIn, rOut, d.hi));
    double bot;
    if (d.lo <= g && g <= d.hi)
        bot = annulusDensity(rIn, rOut, g);
    else
        bot = std::min(annulusDensity(rIn, rOut, d.lo), annulusDensity(rIn, rOut, d.hi));
    return {bot, top};
}

struct InscribedAnnulus {
    cplx center;
    double rIn, rOut;
};

}  // namespace

struct DensityModel::Impl {
    enum class Backend { DiscInterior, DiscExterior, RingConcentric, RingMobius, Sandwich };
    Backend backend = Backend::Sandwich;

    // Disc / ring data.
    cplx center{0, 0};
    double radius = 0;
    cplx mobiusP{0, 0}, mobiusQ{0, 0};
    double rIn = 0, rOut = 0;

    // Sandwich data.
    bool hasPivot = false;   // infinity lies in U; pivot maps it away
    cplx pivot{0, 0};
    std::vector<cplx> anchorA;  // Hempel first punctures (dense set)
    std::vector<cplx> anchorB;  // Hempel second punctures (sparse set)
    std::vector<InscribedAnnulus> annuli;

    const PointedDomain* dom = nullptr;

    cplx ringMap(cplx z) const {
        if (backend == Backend::RingConcentric) return z - center;
        return (z - mobiusP) / (z - mobiusQ);
    }

    Interval densityOnSegment(const PointedDomain& u, cplx a, cplx b) const;
};

static bool circleOf(const CompactSet& k, cplx& c, double& r) {
    if (k.kind == CompactSet::Kind::Disc || k.kind == CompactSet::Kind::DiscComplement) {
        c = k.center;
        r = k.radius;
        return true;
    }
    return false;
}

DensityModel::DensityModel(const PointedDomain& u) : domain_(u) {
    auto impl = std::make_shared<Impl>();
    const auto& comps = domain_.components;
    if (comps.empty()) throw std::domain_error("density: U is the whole sphere");

    // Hyperbolicity: at least three complement points on the sphere.
    {
        int pointLike = 0;
        bool fat = false;
        for (const auto& k : comps) {
            if (k.kind == CompactSet::Kind::Point)
                ++pointLike;
            else
                fat = true;
        }
        if (!fat && pointLike < 3)
            throw std::domain_error("density: complement has fewer than three points");
    }

    cplx c1, c2;
    double r1, r2;
    if (comps.size() == 1 && circleOf(comps[0], c1, r1)) {
        impl->center = c1;
        impl->radius = r1;
        impl->backend = comps[0].kind == CompactSet::Kind::DiscComplement
                            ? Impl::Backend::DiscInterior
                            : Impl::Backend::DiscExterior;
        exact_ = true;
    } else if (comps.size() == 2 && circleOf(comps[0], c1, r1) && circleOf(comps[1], c2, r2)) {
        const double d = std::abs(c2 - c1);
        const double scale = std::max({r1, r2, d});
        if (d <= 1e-12 * scale) {
            impl->backend = Impl::Backend::RingConcentric;
            impl->center = c1;
            impl->rIn = std::min(r1, r2);
            impl->rOut = std::max(r1, r2);
        } else {
            // Common inverse points of the two boundary circles: along
            // the axis, x*y = r1^2 and (x-d)*(y-d) = r2^2.
            const cplx e = (c2 - c1) / d;
            const double S = (r1 * r1 + d * d - r2 * r2) / d;
            const double disc = S * S - 4.0 * r1 * r1;
            if (disc <= 0)
                throw std::domain_error("ring normalization failed: circles not disjoint");
            double x = 0.5 * (S - std::sqrt(disc));
            if (std::abs(x) >= r1) x = 0.5 * (S + std::sqrt(disc));
            const double y = r1 * r1 / x;
            impl->backend = Impl::Backend::RingMobius;
            impl->mobiusP = c1 + x * e;
            impl->mobiusQ = c1 + y * e;
            const double s1 = std::abs(impl->ringMap(c1 + r1 * e));
            const double s2 = std::abs(impl->ringMap(c2 + r2 * e));
            impl->rIn = std::min(s1, s2);
            impl->rOut = std::max(s1, s2);
        }
        exact_ = true;
    } else {
        impl->backend = Impl::Backend::Sandwich;
        impl->hasPivot = (domain_.infComponent() < 0);
        if (impl->hasPivot) {
            // Pin the pivot on the fattest component.
            size_t best = 0;
            double bestDiam = -1;
            for (size_t i = 0; i < comps.size(); ++i) {
                const double d = comps[i].sphDiam().lower;
                if (d > bestDiam) {
                    bestDiam = d;
                    best = i;
                }
            }
            impl->pivot = comps[best].representative();
        }
        for (const auto& k : comps) {
            const auto samples = k.boundarySamples(8);
            impl->anchorA.insert(impl->anchorA.end(), samples.begin(), samples.end());
            if (!samples.empty()) {
                impl->anchorB.push_back(samples[0]);
                impl->anchorB.push_back(samples[samples.size() / 2]);
            }
            if (k.kind == CompactSet::Kind::Point && !k.at.atInf) {
                impl->anchorA.push_back(k.at.z);
                impl->anchorB.push_back(k.at.z);
            }
        }
        // Inscribed annulus candidates around a fixed set of centers.
        std::vector<cplx> centers;
        cplx mean{0, 0};
        int meanCount = 0;
        for (const auto& k : comps) {
            if (k.containsInf()) continue;
            const cplx rep = k.representative();
            centers.push_back(k.kind == CompactSet::Kind::Disc ? k.center : rep);
            mean += centers.back();
            ++meanCount;
        }
        if (meanCount > 0) centers.push_back(mean / (double)meanCount);
        centers.push_back(cplx(0, 0));
        for (cplx c : centers) {
            std::vector<std::pair<double, double>> nearFar;  // (nearest, farthest)
            for (const auto& k : comps) nearFar.push_back({k.euclDist(c), k.euclFarthest(c)});
            std::sort(nearFar.begin(), nearFar.end());
            for (size_t s = 1; s < nearFar.size(); ++s) {
                double rin = 0;
                for (size_t i = 0; i < s; ++i) rin = std::max(rin, nearFar[i].second);
                const double rout = nearFar[s].first;
                if (rin > 0 && std::isfinite(rin) && std::isfinite(rout) && rin < rout)
                    impl->annuli.push_back({c, rin, rout});
            }
        }
    }
    impl->dom = &domain_;
    impl_ = impl;
}

Interval DensityModel::Impl::densityOnSegment(const PointedDomain& u, cplx a, cplx b) const {
    const double len = std::abs(b - a);
    switch (backend) {
        case Backend::DiscInterior: {
            const Range d = segDistRange(center, a, b);
            if (d.hi >= radius) return {0.0, std::numeric_limits<double>::infinity()};
            return {discDensity(radius, d.lo), discDensity(radius, d.hi)};
        }
        case Backend::DiscExterior: {
            const Range d = segDistRange(center, a, b);
            if (d.lo <= radius) return {0.0, std::numeric_limits<double>::infinity()};
            return {discComplementDensity(radius, d.hi), discComplementDensity(radius, d.lo)};
        }
        case Backend::RingConcentric: {
            const Range d = segDistRange(center, a, b);
            if (d.lo <= rIn || d.hi >= rOut)
                return {0.0, std::numeric_limits<double>::infinity()};
            return annulusDensityRange(rIn, rOut, d);
        }
        case Backend::RingMobius: {
            const Range dq = segDistRange(mobiusQ, a, b);
            if (dq.lo <= 0) return {0.0, std::numeric_limits<double>::infinity()};
            const double pq = std::abs(mobiusP - mobiusQ);
            const double tMin = pq / (dq.hi * dq.hi);
            const double tMax = pq / (dq.lo * dq.lo);
            const double sa = std::abs(ringMap(a)), sb = std::abs(ringMap(b));
            Range s{std::min(sa, sb) - tMax * len, std::max(sa, sb) + tMax * len};
            if (s.lo <= rIn || s.hi >= rOut)
                return {0.0, std::numeric_limits<double>::infinity()};
            const Interval rho = annulusDensityRange(rIn, rOut, s);
            return {rho.lower * tMin, rho.upper * tMax};
        }
        case Backend::Sandwich: {
            // Upper bound: inscribed disc and inscribed annuli.
            const double delta = u.euclDeltaSegment(a, b);
            if (delta <= 0) return {0.0, std::numeric_limits<double>::infinity()};
            double upper = 2.0 / delta;
            for (const auto& an : annuli) {
                const Range d = segDistRange(an.center, a, b);
                if (d.lo > an.rIn && d.hi < an.rOut)
                    upper = std::min(upper, annulusDensityRange(an.rIn, an.rOut, d).upper);
            }
            // Lower bound: Hempel-type two-puncture comparison, with an
            // optional pivot z -> 1/(z - c0) when U contains infinity.
            double lower = 0.0;
            for (cplx pa : anchorA) {
                const Range la = segDistRange(pa, a, b);
                if (la.lo <= 0) continue;
                for (cplx pb : anchorB) {
                    const double ab = std::abs(pb - pa);
                    if (ab <= 0) continue;
                    double cand;
                    if (!hasPivot) {
                        const double wLo = la.lo / ab, wHi = la.hi / ab;
                        const double maxLog = std::max(std::abs(std::log(wLo)),
                                                       std::abs(std::log(wHi)));
                        cand = 1.0 / (la.hi * (maxLog + kHempel));
                    } else {
                        const Range lc = segDistRange(pivot, a, b);
                        if (lc.lo <= 0) continue;
                        const double ac = std::abs(pa - pivot);
                        const double bc = std::abs(pb - pivot);
                        if (ac <= 0 || bc <= 0) continue;
                        const double k1 = bc / ab;
                        const double wLo = la.lo * k1 / lc.hi;
                        const double wHi = la.hi * k1 / lc.lo;
                        const double maxLog = std::max(std::abs(std::log(wLo)),
                                                       std::abs(std::log(wHi)));
                        cand = ac / (la.hi * lc.hi * (maxLog + kHempel));
                    }
                    lower = std::max(lower, cand);
                }
            }
            lower = std::min(lower, upper);
            return {lower, upper};
        }
    }
    return {0.0, std::numeric_limits<double>::infinity()};
}

double DensityModel::densityUpper(cplx z) const {
    const auto& im = *impl_;
    if (im.backend != Impl::Backend::Sandwich)
        return im.densityOnSegment(domain_, z, z).upper;
    const double delta = domain_.euclDelta(z);
    if (delta <= 0) return std::numeric_limits<double>::infinity();
    double upper = 2.0 / delta;
    for (const auto& an : im.annuli) {
        const double d = std::abs(z - an.center);
        if (d > an.rIn && d < an.rOut)
            upper = std::min(upper, annulusDensity(an.rIn, an.rOut, d));
    }
    return upper;
}

Interval DensityModel::density(cplx z) const {
    if (!domain_.contains(SpherePoint(z)))
        throw std::domain_error("density: point not in U");
    const Interval iv = impl_->densityOnSegment(domain_, z, z);
    if (!std::isfinite(iv.upper))
        throw std::domain_error("density: point on the boundary of U");
    return iv;
}

Interval DensityModel::densityOnSegment(cplx a, cplx b) const {
    return impl_->densityOnSegment(domain_, a, b);
}

std::optional<double> DensityModel::discDistance(cplx z, cplx w) const {
    const auto& im = *impl_;
    cplx w1, w2;
    if (im.backend == Impl::Backend::DiscInterior) {
        w1 = (z - im.center) / im.radius;
        w2 = (w - im.center) / im.radius;
    } else if (im.backend == Impl::Backend::DiscExterior) {
        w1 = im.radius / (z - im.center);
        w2 = im.radius / (w - im.center);
    } else {
        return std::nullopt;
    }
    const double t = std::abs((w1 - w2) / (cplx(1, 0) - std::conj(w1) * w2));
    return 2.0 * std::atanh(std::min(t, 1.0 - 1e-16));
}

DistInterval hypLength(const DensityModel& model, const std::vector<cplx>& pts,
                       bool closed, const HypOptions& opt) {
    Interval total(0.0, 0.0);
    const size_t n = pts.size();
    if (n < 2) return total;
    const size_t segs = closed ? n : n - 1;
    std::vector<std::pair<cplx, cplx>> stack;
    for (size_t i = 0; i < segs; ++i) stack.push_back({pts[i], pts[(i + 1) % n]});
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        const Interval iv = model.densityOnSegment(a, b);
        const bool tooWide = !std::isfinite(iv.upper) || iv.upper * len > opt.lengthStep;
        if (tooWide && len > opt.minStep) {
            const cplx m = 0.5 * (a + b);
            stack.push_back({a, m});
            stack.push_back({m, b});
            continue;
        }
        if (!std::isfinite(iv.upper))
            throw std::domain_error("hypLength: curve leaves the domain");
        total += iv * len;
    }
    return total;
}

DistInterval hypLength(const PointedDomain& u, const ClosedCurve& c, const HypOptions& opt) {
    DensityModel model(u);
    return hypLength(model, c, opt);
}

} // namespace carab
