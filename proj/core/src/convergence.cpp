#include "carab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace carab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool boundedUnderEuclidean(const CompactSet& k) {
    return k.kind != CompactSet::Kind::DiscComplement &&
           !(k.kind == CompactSet::Kind::Point && k.at.atInf);
}

// The antipode of z on the sphere (z -> -1/conj(z)); farthest-point
// probes for the spherical directed distance.
SpherePoint antipode(const SpherePoint& p) {
    if (p.atInf) return SpherePoint(0.0, 0.0);
    if (std::abs(p.z) == 0.0) return SpherePoint::infinity();
    return SpherePoint(-1.0 / std::conj(p.z));
}

// sup_{x in a} dist(x, b). The maximum of dist(., b) over a compact set
// is attained on the boundary (the distance gradient is a nonvanishing
// unit vector away from b) except at antipodal critical points on the
// sphere, which the extra probes cover.
Interval directedHausdorff(const CompactSet& a, const CompactSet& b, Metric metric,
                           int samples) {
    std::vector<SpherePoint> probes;
    for (const cplx z : a.boundarySamples(samples)) probes.emplace_back(z);
    if (metric == Metric::Spherical) {
        if (a.containsInf()) probes.push_back(SpherePoint::infinity());
        const SpherePoint anti = antipode(SpherePoint(b.center));
        if (a.contains(anti)) probes.push_back(anti);
    } else if (b.kind == CompactSet::Kind::Disc && a.contains(SpherePoint(b.center))) {
        probes.emplace_back(b.center);
    }
    if (probes.empty()) throw std::invalid_argument("hausdorffDist: no boundary samples");

    double lo = 0.0, up = 0.0, maxGap = 0.0;
    const auto bnd = a.boundarySamples(samples);
    for (size_t i = 0; i + 1 < bnd.size(); ++i)
        maxGap = std::max(maxGap, std::abs(bnd[i + 1] - bnd[i]));
    if (bnd.size() > 1) maxGap = std::max(maxGap, std::abs(bnd.front() - bnd.back()));

    for (const SpherePoint& p : probes) {
        Interval d;
        if (metric == Metric::Spherical) {
            d = b.sphDistTo(p);
        } else {
            if (p.atInf) throw std::invalid_argument("hausdorffDist: infinite probe");
            d = Interval(b.euclDist(p.z));
        }
        lo = std::max(lo, d.lower);
        up = std::max(up, d.upper);
    }
    // dist(., b) is 1-Lipschitz in the Euclidean metric and the spherical
    // density 1/(1+|z|^2) is <= 1, so half the largest sample gap covers
    // the maximum between samples.
    return {lo, up + 0.5 * maxGap};
}

} // namespace

Interval hausdorffDist(const CompactSet& a, const CompactSet& b, Metric metric, int samples) {
    if (metric == Metric::Euclidean) {
        if (!boundedUnderEuclidean(a) || !boundedUnderEuclidean(b))
            throw std::invalid_argument("hausdorffDist: unbounded set under the Euclidean metric");
        if (a.kind == CompactSet::Kind::Disc && b.kind == CompactSet::Kind::Disc) {
            const double h = std::abs(a.center - b.center) + std::abs(a.radius - b.radius);
            return Interval(h);
        }
    }
    const Interval ab = directedHausdorff(a, b, metric, samples);
    const Interval ba = directedHausdorff(b, a, metric, samples);
    return {std::max(ab.lower, ba.lower), std::max(ab.upper, ba.upper)};
}

std::string trailsToCsv(const std::vector<MeasurementTrail>& trails) {
    std::set<int> allIndices;
    for (const auto& t : trails)
        allIndices.insert(t.indices.begin(), t.indices.end());
    std::ostringstream os;
    os << "m";
    for (const auto& t : trails) os << "," << t.name;
    os << "\n";
    for (int m : allIndices) {
        os << m;
        for (const auto& t : trails) {
            os << ",";
            const auto it = std::find(t.indices.begin(), t.indices.end(), m);
            if (it != t.indices.end()) os << t.values[size_t(it - t.indices.begin())];
        }
        os << "\n";
    }
    return os.str();
}

const char* limitKindName(LimitKind k) {
    switch (k) {
        case LimitKind::NonDegenerate: return "non-degenerate";
        case LimitKind::ConnectivityDrop: return "connectivity-drop";
        case LimitKind::PointLimit: return "point-limit";
        default: return "no-limit";
    }
}

const char* familyVerdictName(FamilyVerdict v) {
    switch (v) {
        case FamilyVerdict::BoundedEvidence: return "bounded-evidence";
        case FamilyVerdict::Unbounded: return "unbounded";
        default: return "inconclusive";
    }
}

namespace {

// Monotone-vanishing rule shared by all degeneration witnesses: the
// trail starts positive, never increases by more than 10% step to step,
// and ends below a quarter of its starting value.
bool vanishes(const std::vector<double>& vals) {
    if (vals.size() < 3 || !(vals.front() > 0)) return false;
    for (size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > 1.10 * vals[i - 1]) return false;
    return vals.back() < 0.25 * vals.front();
}

// Minimum spherical distance between two compact sets, sampled.
double setSeparation(const CompactSet& a, const CompactSet& b) {
    double best = kInf;
    for (const cplx z : a.boundarySamples(96))
        best = std::min(best, b.sphDistTo(SpherePoint(z)).mid());
    return best;
}

PointedDomain invertDomain(const PointedDomain& u) {
    PointedDomain v;
    v.basepoint = invert(u.basepoint);
    v.label = u.label + "_inverted";
    for (const auto& k : u.components) v.components.push_back(k.inverted());
    return v;
}

} // namespace

CaraLimit caraLimit(const DomainFamily& f, const std::vector<int>& tail) {
    if (tail.size() < 2) throw std::invalid_argument("caraLimit: need at least two tail indices");
    std::vector<int> idx = tail;
    std::sort(idx.begin(), idx.end());

    std::vector<PointedDomain> members;
    for (int m : idx) {
        PointedDomain u = f.at(m);
        const auto v = validate(u);
        if (!v.pass)
            throw std::invalid_argument("caraLimit: member m=" + std::to_string(m) +
                                        " fails validation");
        members.push_back(std::move(u));
    }
    const int n = members.front().connectivity();
    for (const auto& u : members)
        if (u.connectivity() != n)
            throw std::invalid_argument("caraLimit: connectivity changes along the tail");

    // Conjugate by z -> 1/z when a finite component wanders towards
    // infinity (spherical isometry; the limit kind is unaffected).
    bool wanders = false;
    for (const auto& k : members.back().components)
        if (!k.containsInf() && std::abs(k.representative()) > 1e4) wanders = true;
    if (wanders)
        for (auto& u : members) u = invertDomain(u);

    // Track components along the tail: match member k+1's components to
    // member k's tracks by nearest spherical Hausdorff distance.
    std::vector<std::vector<int>> trackOf(members.size(), std::vector<int>(n));
    for (int i = 0; i < n; ++i) trackOf[0][i] = i;
    std::vector<std::vector<double>> movement(n);  // per track, per step
    for (size_t k = 0; k + 1 < members.size(); ++k) {
        std::vector<bool> used(n, false);
        for (int t = 0; t < n; ++t) {
            const CompactSet& prev = members[k].components[trackOf[k][t]];
            double best = kInf, bestLower = 0.0;
            int bestJ = -1;
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                const Interval h =
                    hausdorffDist(prev, members[k + 1].components[j], Metric::Spherical, 96);
                if (h.mid() < best) {
                    best = h.mid();
                    bestJ = j;
                    bestLower = h.lower;
                }
            }
            used[bestJ] = true;
            trackOf[k + 1][t] = bestJ;
            // The certified lower bound: sampling slack must not make a
            // constant sequence look like it moves.
            movement[t].push_back(bestLower);
        }
    }

    CaraLimit out;
    out.connectivityFrom = n;
    out.connectivityTo = n;

    // Measurement trails.
    std::vector<std::vector<double>> diam(n);
    std::vector<double> clearance, minSep;
    for (size_t k = 0; k < members.size(); ++k) {
        const auto& u = members[k];
        for (int t = 0; t < n; ++t)
            diam[t].push_back(u.components[trackOf[k][t]].sphDiam().mid());
        clearance.push_back(u.deltaSharp(u.basepoint).mid());
        double sep = kInf;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                sep = std::min(sep, setSeparation(u.components[i], u.components[j]));
        minSep.push_back(n >= 2 ? sep : 0.0);
    }
    auto pushTrail = [&](const std::string& name, const std::vector<double>& vals) {
        MeasurementTrail t;
        t.name = name;
        t.indices = idx;
        t.values = vals;
        out.witnesses.push_back(std::move(t));
    };
    for (int t = 0; t < n; ++t)
        pushTrail("component " + std::to_string(t) + " spherical diameter", diam[t]);
    pushTrail("basepoint clearance", clearance);
    if (n >= 2) pushTrail("min component separation", minSep);

    if (vanishes(clearance)) {
        out.kind = LimitKind::PointLimit;
        out.description = "basepoint clearance -> 0 along the tail";
        return out;
    }
    std::vector<int> collapsed;
    for (int t = 0; t < n; ++t)
        if (vanishes(diam[t])) collapsed.push_back(t);
    if (!collapsed.empty()) {
        out.kind = LimitKind::ConnectivityDrop;
        out.connectivityTo = n - int(collapsed.size());
        out.description = "component spherical diameter -> 0 (collapse to a point)";
        out.limit.basepoint = members.back().basepoint;
        out.limit.label = f.name + "_limit";
        const auto& last = trackOf.back();
        for (int t = 0; t < n; ++t)
            if (!std::binary_search(collapsed.begin(), collapsed.end(), t))
                out.limit.components.push_back(members.back().components[last[t]]);
        return out;
    }
    if (n >= 2 && vanishes(minSep)) {
        out.kind = LimitKind::ConnectivityDrop;
        out.connectivityTo = n - 1;
        out.description = "components merging (separation -> 0)";
        out.limit = members.back();
        return out;
    }

    // No degeneration: settled tracks mean a non-degenerate limit.
    bool settled = true;
    for (int t = 0; t < n; ++t) {
        const auto& mv = movement[t];
        if (mv.empty()) continue;
        const double first = mv.front(), lastv = mv.back();
        if (lastv > 1e-3 && lastv > 0.5 * first + 1e-12) settled = false;
    }
    const double bpMove =
        sphDist(members.front().basepoint, members.back().basepoint);
    if (settled && bpMove <= 1e6) {
        out.limit = members.back();
        out.limit.label = f.name + "_limit";
        const auto nd = isNondegenerate(out.limit);
        if (validate(out.limit).pass && nd.nondegenerate) {
            out.kind = LimitKind::NonDegenerate;
            out.description = "complement tracks settle; limit taken from the last member";
            return out;
        }
    }
    out.kind = LimitKind::NoLimit;
    out.description = "no limit along sampled tail (tracks do not settle)";
    return out;
}

ClassifyReport classifyFamily(const DomainFamily& f, const std::vector<int>& sample,
                              const ClassifyOptions& opt) {
    if (sample.size() < 3)
        throw std::invalid_argument("classifyFamily: need at least three sample indices");
    std::vector<int> idx = sample;
    std::sort(idx.begin(), idx.end());

    ClassifyReport rep;
    rep.limit = caraLimit(f, idx);

    std::map<std::string, MeasurementTrail> trails;
    auto record = [&](const std::string& name, int m, double v) {
        auto& t = trails[name];
        t.name = name;
        t.indices.push_back(m);
        t.values.push_back(v);
    };

    std::vector<double> bounds;
    int connectivity = -1;
    for (int m : idx) {
        rep.bound.indices.push_back(m);
        BoundReport r;
        try {
            const PointedDomain u = f.at(m);
            if (connectivity < 0) connectivity = u.connectivity();
            MeridianSystem principal, extended;
            if (u.connectivity() >= 2 && opt.meridianTrails)
                buildMeridianSystems(u, opt.meridian, &principal, &extended);
            r = opt.meridianTrails ? boundFromSystems(u, principal, extended)
                                   : caraBound(u, opt.meridian);
            for (const auto& fl : r.failures)
                rep.bound.memberIssues.push_back("m=" + std::to_string(m) + ": class " + fl +
                                                 " failed");
            if (bounds.empty()) {
                rep.bound.supBound = r.bound;
                rep.bound.supBoundE = r.boundE;
            } else {
                rep.bound.supBound = intervalMax(rep.bound.supBound, r.bound);
                rep.bound.supBoundE = intervalMax(rep.bound.supBoundE, r.boundE);
            }
            bounds.push_back(r.bound.upper);
            record("bound", m, r.bound.upper);
            if (opt.meridianTrails && u.connectivity() >= 2) {
                double minLen = kInf, maxDist = 0.0, maxPrincipal = 0.0;
                for (const auto& e : extended.entries) {
                    minLen = std::min(minLen, e.length.upper);
                    maxDist = std::max(maxDist, e.distance.upper);
                }
                for (const auto& e : principal.entries)
                    maxPrincipal = std::max(maxPrincipal, e.length.upper);
                record("min class meridian length", m, minLen);
                record("max class meridian distance", m, maxDist);
                record("max principal meridian length", m, maxPrincipal);
            }
        } catch (const std::exception& e) {
            rep.bound.memberIssues.push_back("m=" + std::to_string(m) + ": " + e.what());
        }
        rep.bound.reports.push_back(std::move(r));
    }
    if (bounds.size() >= 3) {
        int up = 0, down = 0;
        for (size_t i = 1; i < bounds.size(); ++i) (bounds[i] >= bounds[i - 1] ? up : down)++;
        const int steps = int(bounds.size()) - 1;
        rep.bound.driftingUp = bounds.back() > 1.25 * bounds.front() && up >= (7 * steps + 9) / 10;
        rep.bound.driftingDown =
            bounds.back() < 0.8 * bounds.front() && down >= (7 * steps + 9) / 10;
    }

    for (auto& [name, t] : trails) rep.trails.push_back(std::move(t));
    for (const auto& w : rep.limit.witnesses) rep.trails.push_back(w);

    auto trail = [&](const std::string& name) -> const MeasurementTrail* {
        for (const auto& t : rep.trails)
            if (t.name == name) return &t;
        return nullptr;
    };

    if (rep.limit.kind == LimitKind::PointLimit) {
        rep.verdict = FamilyVerdict::Unbounded;
        rep.witness = rep.limit.description;
        return rep;
    }
    if (rep.limit.kind == LimitKind::ConnectivityDrop) {
        rep.verdict = FamilyVerdict::Unbounded;
        rep.witness = "connectivity drop " + std::to_string(rep.limit.connectivityFrom) + " -> " +
                      std::to_string(rep.limit.connectivityTo) + " (" + rep.limit.description + ")";
        return rep;
    }
    if (rep.bound.driftingUp) {
        rep.verdict = FamilyVerdict::Unbounded;
        rep.witness = "boundedness functional drifting upward along the sample";
        return rep;
    }
    if (const auto* t = trail("min class meridian length"); t && vanishes(t->values)) {
        rep.verdict = FamilyVerdict::Unbounded;
        rep.witness = "meridian length -> 0 along the sample";
        return rep;
    }
    if (const auto* t = trail("max class meridian distance");
        t && !t->values.empty() && t->values.back() > std::max(2.0, 4.0 * t->values.front())) {
        rep.verdict = FamilyVerdict::Unbounded;
        rep.witness = "meridian distance growing without bound along the sample";
        return rep;
    }
    if (!rep.bound.memberIssues.empty()) {
        rep.verdict = FamilyVerdict::Inconclusive;
        rep.witness = "member issues: " + rep.bound.memberIssues.front();
        return rep;
    }
    rep.verdict = FamilyVerdict::BoundedEvidence;
    rep.witness.clear();
    return rep;
}

} // namespace carab
