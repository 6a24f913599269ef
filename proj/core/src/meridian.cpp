#include "carab/meridian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

namespace carab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Homology classes
// ---------------------------------------------------------------------------

HomologyClass canonicalClass(int n, std::vector<int> inside, int infIndex) {
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    if (inside.empty() || (int)inside.size() >= n)
        throw std::invalid_argument("homology class: inside must be a nonempty proper subset");
    for (int i : inside)
        if (i < 0 || i >= n) throw std::invalid_argument("homology class: index out of range");
    std::vector<int> complement;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(inside.begin(), inside.end(), i)) complement.push_back(i);
    const bool insideHasInf =
        infIndex >= 0 && std::binary_search(inside.begin(), inside.end(), infIndex);
    bool swap = false;
    if (infIndex >= 0) {
        swap = insideHasInf;
    } else {
        swap = complement < inside;  // keep the lexicographically smaller side
    }
    HomologyClass c;
    c.inside = swap ? complement : inside;
    c.principal = ((int)inside.size() == 1 || (int)inside.size() == n - 1);
    return c;
}

std::vector<HomologyClass> homologyClasses(int n, int infIndex) {
    if (n < 2) throw std::invalid_argument("homology classes need n >= 2");
    std::vector<HomologyClass> out;
    std::vector<std::vector<int>> seen;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> inside;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) inside.push_back(i);
        HomologyClass c = canonicalClass(n, inside, infIndex);
        if (std::find(seen.begin(), seen.end(), c.inside) != seen.end()) continue;
        seen.push_back(c.inside);
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const HomologyClass& a, const HomologyClass& b) {
        if (a.principal != b.principal) return a.principal;
        if (a.inside.size() != b.inside.size()) return a.inside.size() < b.inside.size();
        return a.inside < b.inside;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Level-set seed extraction (marching squares)
// ---------------------------------------------------------------------------

namespace {

// Closed zero-level loops of f on an n x n cell grid over the window.
std::vector<std::vector<cplx>> marchingLoops(const std::function<double(cplx)>& f,
                                             double x0, double y0, double w, double h,
                                             int n) {
    const double dx = w / n, dy = h / n;
    std::vector<double> v((size_t)(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            double val = f(cplx(x0 + i * dx, y0 + j * dy));
            if (val == 0.0) val = 1e-300;  // nudge exact zeros off the contour
            v[(size_t)j * (n + 1) + i] = val;
        }
    auto at = [&](int i, int j) { return v[(size_t)j * (n + 1) + i]; };
    // Edge keys: horizontal edge (i,j)-(i+1,j) -> 2*(j*(n+1)+i),
    // vertical edge (i,j)-(i,j+1) -> 2*(j*(n+1)+i)+1.
    auto hKey = [&](int i, int j) { return (int64_t)2 * ((int64_t)j * (n + 1) + i); };
    auto vKey = [&](int i, int j) { return (int64_t)2 * ((int64_t)j * (n + 1) + i) + 1; };
    std::map<int64_t, cplx> pos;
    std::map<int64_t, std::vector<int64_t>> adj;
    auto cross = [&](double a, double b) { return (a > 0) != (b > 0); };
    auto interp = [&](double a, double b) { return a / (a - b); };
    auto link = [&](int64_t a, int64_t b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double v00 = at(i, j), v10 = at(i + 1, j);
            const double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
            std::vector<int64_t> keys;
            if (cross(v00, v10)) {
                const double t = interp(v00, v10);
                pos[hKey(i, j)] = cplx(x0 + (i + t) * dx, y0 + j * dy);
                keys.push_back(hKey(i, j));
            }
            if (cross(v10, v11)) {
                const double t = interp(v10, v11);
                pos[vKey(i + 1, j)] = cplx(x0 + (i + 1) * dx, y0 + (j + t) * dy);
                keys.push_back(vKey(i + 1, j));
            }
            if (cross(v01, v11)) {
                const double t = interp(v01, v11);
                pos[hKey(i, j + 1)] = cplx(x0 + (i + t) * dx, y0 + (j + 1) * dy);
                keys.push_back(hKey(i, j + 1));
            }
            if (cross(v00, v01)) {
                const double t = interp(v00, v01);
                pos[vKey(i, j)] = cplx(x0 + i * dx, y0 + (j + t) * dy);
                keys.push_back(vKey(i, j));
            }
            if (keys.size() == 2) {
                link(keys[0], keys[1]);
            } else if (keys.size() == 4) {
                // Saddle: split by the sign at the cell centre.
                const double c = 0.25 * (v00 + v10 + v01 + v11);
                const bool centrePositive = c > 0;
                const bool cornerPositive = v00 > 0;
                // keys order: bottom, right, top, left.
                if (centrePositive == cornerPositive) {
                    link(keys[0], keys[3]);  // bottom-left
                    link(keys[1], keys[2]);  // right-top
                } else {
                    link(keys[0], keys[1]);  // bottom-right
                    link(keys[2], keys[3]);  // top-left
                }
            }
        }
    }
    std::vector<std::vector<cplx>> loops;
    std::map<int64_t, bool> used;
    for (const auto& [start, nbrs] : adj) {
        if (used[start] || nbrs.size() != 2) continue;
        std::vector<int64_t> chain{start};
        used[start] = true;
        int64_t prev = start, cur = nbrs[0];
        bool closed = false;
        while (true) {
            if (cur == start) {
                closed = true;
                break;
            }
            auto it = adj.find(cur);
            if (it == adj.end() || it->second.size() != 2 || used[cur]) break;
            used[cur] = true;
            chain.push_back(cur);
            const int64_t next = it->second[0] == prev ? it->second[1] : it->second[0];
            prev = cur;
            cur = next;
        }
        if (closed && chain.size() >= 8) {
            std::vector<cplx> loop;
            loop.reserve(chain.size());
            for (int64_t k : chain) loop.push_back(pos[k]);
            loops.push_back(std::move(loop));
        }
    }
    return loops;
}

struct ClassGeometry {
    std::vector<int> inside;
    std::vector<int> outside;
    double dIn(const PointedDomain& u, cplx z) const {
        double d = kInf;
        for (int i : inside) d = std::min(d, u.components[i].euclDist(z));
        return d;
    }
    double dOut(const PointedDomain& u, cplx z) const {
        double d = kInf;
        for (int i : outside) d = std::min(d, u.components[i].euclDist(z));
        return d;
    }
};

bool curveInDomain(const PointedDomain& u, const ClosedCurve& c) {
    const size_t n = c.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i)
        if (u.euclDeltaSegment(c.at(i), c.at(i + 1)) <= 0) return false;
    return true;
}

// Winding certificate. A homology class is the partition
// {inside, outside}, so a separator may enclose either side: windings
// must be a constant +1 or -1 on one side and 0 on the other.
// Returns that constant (the caller reverses when it is -1), or 0 when
// the curve does not separate the partition.
int windingSignature(const PointedDomain& u, const ClosedCurve& c, const ClassGeometry& g) {
    auto sideSign = [&](const std::vector<int>& side, bool& ok) {
        int sign = 0;
        bool first = true;
        ok = true;
        for (int i : side) {
            const auto& k = u.components[i];
            if (k.kind == CompactSet::Kind::Point && k.at.atInf) continue;  // winding 0
            const cplx rep = k.representative();
            if (c.onCurve(rep)) {
                ok = false;
                return 0;
            }
            const int w = c.winding(rep);
            if (w < -1 || w > 1 || (!first && w != sign)) {
                ok = false;
                return 0;
            }
            sign = w;
            first = false;
        }
        return sign;
    };
    bool okIn = false, okOut = false;
    const int sIn = sideSign(g.inside, okIn);
    const int sOut = sideSign(g.outside, okOut);
    if (!okIn || !okOut) return 0;
    if (sIn != 0 && sOut == 0) return sIn;
    if (sOut != 0 && sIn == 0) return sOut;
    return 0;
}

bool certifySeed(const PointedDomain& u, ClosedCurve& c, const ClassGeometry& g) {
    if (!curveInDomain(u, c)) return false;
    const int sign = windingSignature(u, c, g);
    if (sign == 0) return false;
    if (sign < 0) c.reverse();
    return true;
}

// Offset polyline for the doubled corridors of dumbbell seeds.
std::vector<cplx> offsetPolyline(const std::vector<cplx>& p, double eps) {
    std::vector<cplx> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        const cplx a = p[i == 0 ? 0 : i - 1];
        const cplx b = p[std::min(i + 1, p.size() - 1)];
        cplx t = b - a;
        const double len = std::abs(t);
        if (len == 0) {
            out[i] = p[i];
            continue;
        }
        t /= len;
        out[i] = p[i] + eps * cplx(-t.imag(), t.real());
    }
    return out;
}

// Grid shortest paths hug obstacles; push interior vertices up the
// clearance gradient so a doubled corridor fits, then shortcut the
// result to drop redundant grid vertices.
std::vector<cplx> fattenPath(const PointedDomain& u, std::vector<cplx> p, double target) {
    if (p.size() < 3 || !(target > 0)) return p;
    auto clear = [&](cplx z) { return u.euclDeltaSegment(z, z); };
    for (int round = 0; round < 60; ++round) {
        bool moved = false;
        for (size_t i = 1; i + 1 < p.size(); ++i) {
            const double d = clear(p[i]);
            if (d >= target) continue;
            const double h = std::max(1e-3 * target, 0.25 * d);
            const cplx grad((clear(p[i] + cplx(h, 0)) - clear(p[i] - cplx(h, 0))) / (2 * h),
                            (clear(p[i] + cplx(0, h)) - clear(p[i] - cplx(0, h))) / (2 * h));
            const double gn = std::abs(grad);
            if (gn < 1e-9) continue;
            const cplx q = p[i] + std::min(0.25 * target, target - d) * grad / gn;
            if (clear(q) > d && u.euclDeltaSegment(p[i - 1], q) > 0 &&
                u.euclDeltaSegment(q, p[i + 1]) > 0) {
                p[i] = q;
                moved = true;
            }
        }
        if (!moved) break;
    }
    // Greedy shortcut keeping a clearance margin along the result.
    std::vector<cplx> out{p.front()};
    size_t i = 0;
    while (i + 1 < p.size()) {
        size_t j = p.size() - 1;
        for (; j > i + 1; --j)
            if (u.euclDeltaSegment(p[i], p[j]) >= 0.6 * target) break;
        out.push_back(p[j]);
        i = j;
    }
    return out;
}

// One CCW loop of clearance-scaled offset around a single component.
std::optional<ClosedCurve> componentLoop(const PointedDomain& u, int idx, double frac,
                                         const ClassGeometry& g) {
    const auto& k = u.components[idx];
    double clearance = kInf;
    for (size_t j = 0; j < u.components.size(); ++j) {
        if ((int)j == idx) continue;
        for (cplx s : k.boundarySamples(32))
            clearance = std::min(clearance, u.components[j].euclDist(s));
    }
    if (!std::isfinite(clearance) || clearance <= 0) return std::nullopt;
    ClosedCurve loop;
    if (k.kind == CompactSet::Kind::Disc) {
        loop = circleCurve(k.center, k.radius + frac * clearance, 96);
    } else {
        // Scaled convex hull fallback around the component's samples.
        auto pts = k.boundarySamples(64);
        cplx centroid(0, 0);
        for (cplx p : pts) centroid += p;
        centroid /= (double)pts.size();
        double rad = 0;
        for (cplx p : pts) rad = std::max(rad, std::abs(p - centroid));
        loop = circleCurve(centroid, rad + frac * clearance, 96);
    }
    ClassGeometry single;
    single.inside = {idx};
    for (size_t j = 0; j < u.components.size(); ++j)
        if ((int)j != idx) single.outside.push_back((int)j);
    if (!certifySeed(u, loop, single)) return std::nullopt;
    return loop;
}

// Connected-sum dumbbell: loops around each inside component joined by
// doubled corridors; winding 1 on each inside component, 0 elsewhere.
std::optional<ClosedCurve> dumbbellSeed(const PointedDomain& u, const ClassGeometry& g,
                                        double frac, const HypMesh* mesh) {
    std::vector<ClosedCurve> loops;
    for (int idx : g.inside) {
        auto loop = componentLoop(u, idx, frac, g);
        if (!loop) return std::nullopt;
        loops.push_back(std::move(*loop));
    }
    if (loops.size() == 1) return loops[0];

    // Corridors between consecutive loops.
    struct Corridor {
        std::vector<cplx> path;
        size_t fromVertex, toVertex;
    };
    std::vector<Corridor> corridors;
    for (size_t i = 0; i + 1 < loops.size(); ++i) {
        // Closest vertex pair between loop i and loop i+1.
        size_t bi = 0, bj = 0;
        double best = kInf;
        for (size_t a = 0; a < loops[i].size(); ++a)
            for (size_t b = 0; b < loops[i + 1].size(); ++b) {
                const double d = std::abs(loops[i].points[a] - loops[i + 1].points[b]);
                if (d < best) {
                    best = d;
                    bi = a;
                    bj = b;
                }
            }
        Corridor c;
        c.fromVertex = bi;
        c.toVertex = bj;
        const cplx a = loops[i].points[bi], b = loops[i + 1].points[bj];
        if (u.euclDeltaSegment(a, b) > 0) {
            c.path = {a, b};
        } else if (mesh) {
            const double target =
                0.5 * std::min(u.euclDeltaSegment(a, a), u.euclDeltaSegment(b, b));
            c.path = fattenPath(u, mesh->euclPath(a, b), target);
        } else {
            return std::nullopt;
        }
        if (c.path.size() < 2) return std::nullopt;
        corridors.push_back(std::move(c));
    }
    // Corridor clearance sets the doubling offset.
    double eps = kInf;
    for (const auto& c : corridors)
        for (size_t i = 0; i + 1 < c.path.size(); ++i)
            eps = std::min(eps, u.euclDeltaSegment(c.path[i], c.path[i + 1]));
    if (!std::isfinite(eps) || eps <= 0) return std::nullopt;
    eps *= 0.2;

    // Two-loop dumbbell: boundary of (loops plus corridor strip), which
    // is simple by construction. Loop vertices near a junction are
    // excised and the CCW traversal exits on the right of the corridor
    // direction (region on the left), so the junction segments cannot
    // cross.
    if (loops.size() == 2) {
        const auto& path = corridors[0].path;
        const auto minus = offsetPolyline(path, -eps);  // outgoing side
        auto plus = offsetPolyline(path, eps);          // returning side
        std::reverse(plus.begin(), plus.end());
        auto gapEnds = [&](const ClosedCurve& L, cplx q, size_t hint, size_t& after,
                           size_t& before) {
            const size_t n = L.size();
            const double R = 2.0 * eps;
            size_t lo = hint, hi = hint;
            while (hi - lo + 1 < n / 2 && std::abs(L.at(lo + n - 1) - q) <= R) --lo;
            while (hi - lo + 1 < n / 2 && std::abs(L.at(hi + 1) - q) <= R) ++hi;
            after = (hi + 1) % n;
            before = (lo + n - 1) % n;
        };
        size_t a0, b0, a1, b1;
        gapEnds(loops[0], path.front(), corridors[0].fromVertex, a0, b0);
        gapEnds(loops[1], path.back(), corridors[0].toVertex, a1, b1);
        ClosedCurve out;
        auto appendArc = [&](const ClosedCurve& L, size_t from, size_t to) {
            size_t i = from;
            out.points.push_back(L.at(i));
            while (i != to) {
                i = (i + 1) % L.size();
                out.points.push_back(L.at(i));
            }
        };
        appendArc(loops[0], a0, b0);
        out.points.insert(out.points.end(), minus.begin(), minus.end());
        appendArc(loops[1], a1, b1);
        out.points.insert(out.points.end(), plus.begin(), plus.end());
        return out;
    }

    // Chain traversal: partial arcs on middle loops so that each loop
    // is covered exactly once and each corridor twice (both senses).
    ClosedCurve out;
    auto appendLoopArc = [&](const ClosedCurve& L, size_t from, size_t to, bool full) {
        const size_t n = L.size();
        size_t i = from;
        out.points.push_back(L.points[i]);
        if (!full && from == to) return;
        do {
            i = (i + 1) % n;
            out.points.push_back(L.points[i]);
        } while (i != (full ? from : to));
    };
    const size_t k = loops.size();
    // Forward: full first loop, then arc from entry to exit on middles.
    appendLoopArc(loops[0], corridors[0].fromVertex, corridors[0].fromVertex, true);
    for (size_t i = 1; i < k; ++i) {
        const auto& in = corridors[i - 1];
        auto plus = offsetPolyline(in.path, eps);
        out.points.insert(out.points.end(), plus.begin(), plus.end());
        if (i + 1 < k) {
            appendLoopArc(loops[i], in.toVertex, corridors[i].fromVertex, false);
        } else {
            appendLoopArc(loops[i], in.toVertex, in.toVertex, true);
        }
    }
    // Backward: corridors in reverse with the opposite offset, and the
    // complementary arcs completing each middle loop.
    for (size_t i = k - 1; i >= 1; --i) {
        auto minus = offsetPolyline(corridors[i - 1].path, -eps);
        std::reverse(minus.begin(), minus.end());
        out.points.insert(out.points.end(), minus.begin(), minus.end());
        if (i >= 2) {
            // Complementary arc on the middle loop: from this corridor's
            // exit vertex onward to the previous corridor's entry vertex,
            // completing exactly one full traversal of the loop.
            appendLoopArc(loops[i - 1], corridors[i - 1].fromVertex,
                          corridors[i - 2].toVertex, false);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shortening
// ---------------------------------------------------------------------------

double curveEnergy(const DensityModel& m, const ClosedCurve& c) {
    double e = 0;
    const size_t n = c.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx a = c.at(i), b = c.at(i + 1);
        const double rho = m.densityUpper(0.5 * (a + b));
        if (!std::isfinite(rho)) return kInf;
        e += rho * std::abs(b - a);
    }
    return e;
}

}  // namespace

static MeridianResult shortenSeed(const PointedDomain& u, const DensityModel& model,
                                  const ClassGeometry& g, ClosedCurve seed,
                                  const MeridianOptions& opt) {
    MeridianResult res;
    ClosedCurve cur = seed.resampled(opt.vertices);
    if (!curveInDomain(u, cur) || windingSignature(u, cur, g) != 1) {
        // Resampling a certified seed can clip corners; fall back.
        cur = seed;
        if (!certifySeed(u, cur, g)) {
            res.diagnostics = "seed lost certification";
            return res;
        }
    }
    double energy = curveEnergy(model, cur);
    double milestone = energy;
    const size_t nv = cur.size();
    std::vector<cplx> grad(nv);
    double prevStep = 0, prevScale = 0;
    int it = 0;
    for (; it < opt.maxIterations; ++it) {
        // Per-vertex gradient of the midpoint-density length functional.
        double minDelta = kInf, maxg = 0;
        for (size_t i = 0; i < nv; ++i) minDelta = std::min(minDelta, u.euclDelta(cur.at(i)));
        for (size_t i = 0; i < nv; ++i) {
            const cplx prev = cur.at(i + nv - 1), next = cur.at(i + 1);
            const double h = std::max(1e-4 * minDelta, 1e-12);
            auto localE = [&](cplx p) {
                const double r1 = model.densityUpper(0.5 * (prev + p));
                const double r2 = model.densityUpper(0.5 * (p + next));
                if (!std::isfinite(r1) || !std::isfinite(r2)) return kInf;
                return r1 * std::abs(p - prev) + r2 * std::abs(next - p);
            };
            const double gx = (localE(cur.at(i) + cplx(h, 0)) - localE(cur.at(i) - cplx(h, 0))) / (2 * h);
            const double gy = (localE(cur.at(i) + cplx(0, h)) - localE(cur.at(i) - cplx(0, h))) / (2 * h);
            grad[i] = std::isfinite(gx) && std::isfinite(gy) ? cplx(gx, gy) : cplx(0, 0);
            maxg = std::max(maxg, std::abs(grad[i]));
        }
        if (maxg == 0) break;
        // Warm-start from the previous accepted step to avoid rediscovering
        // the valley scale every iteration; the cap keeps moves inside the
        // domain's clearance.
        const double cap = 0.3 * minDelta / maxg;
        double step = prevStep > 0 ? std::min(cap, 4.0 * prevStep) : cap;
        bool accepted = false;
        for (int bt = 0; bt < 16 && !accepted; ++bt, step *= 0.5) {
            ClosedCurve cand;
            cand.points.resize(nv);
            for (size_t i = 0; i < nv; ++i) cand.points[i] = cur.at(i) - step * grad[i];
            cand = cand.resampled(nv);
            if (!curveInDomain(u, cand)) continue;
            const double ce = curveEnergy(model, cand);
            if (ce >= energy) continue;
            if (windingSignature(u, cand, g) != 1) continue;
            if (!cand.isSimple()) continue;  // keep the flow embedded
            cur = std::move(cand);
            energy = ce;
            prevStep = step;
            accepted = true;
        }
        // Global homothety about the centroid: the radial mode of
        // near-circular meridians is almost flat for the per-vertex
        // gradient, so search it explicitly.
        cplx centroid(0, 0);
        for (size_t i = 0; i < nv; ++i) centroid += cur.at(i);
        centroid /= static_cast<double>(nv);
        double sc = prevScale > 0 ? std::min(0.05, 4.0 * prevScale) : 0.05;
        for (int bt = 0; bt < 10; ++bt, sc *= 0.5) {
            bool scaled = false;
            for (const double f : {1.0 + sc, 1.0 - sc}) {
                ClosedCurve cand;
                cand.points.resize(nv);
                for (size_t i = 0; i < nv; ++i) cand.points[i] = centroid + f * (cur.at(i) - centroid);
                if (!curveInDomain(u, cand)) continue;
                const double ce = curveEnergy(model, cand);
                if (ce >= energy) continue;
                if (windingSignature(u, cand, g) != 1) continue;
                if (!cand.isSimple()) continue;
                cur = std::move(cand);
                energy = ce;
                prevScale = sc;
                accepted = scaled = true;
                break;
            }
            if (scaled) break;
        }
        if (!accepted) break;
        if ((it + 1) % 20 == 0) {
            if (milestone - energy < 1e-6 * milestone) {
                ++it;
                break;
            }
            milestone = energy;
        }
    }
    res.iterations = it;
    res.curve = cur;
    res.certified = curveInDomain(u, cur) && windingSignature(u, cur, g) == 1 && cur.isSimple();
    if (!res.certified && res.diagnostics.empty()) res.diagnostics = "converged curve failed certification";
    if (res.certified) res.length = hypLength(model, cur, opt.hyp);
    return res;
}

static ClassGeometry classGeometry(const PointedDomain& u, const HomologyClass& c) {
    const int n = u.connectivity();
    ClassGeometry g;
    g.inside = c.inside;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(g.inside.begin(), g.inside.end(), i)) g.outside.push_back(i);
    if (g.inside.empty() || g.outside.empty())
        throw std::invalid_argument("homology class does not match connectivity");
    for (int i : g.inside)
        if (i >= n) throw std::invalid_argument("homology class does not match connectivity");
    return g;
}

static std::vector<ClosedCurve> classSeeds(const PointedDomain& u, const ClassGeometry& g,
                                           const MeridianOptions& opt, const HypMesh* mesh) {
    std::vector<ClosedCurve> seeds;
    auto addCandidate = [&](std::vector<cplx> pts) {
        ClosedCurve c;
        c.points = std::move(pts);
        if (c.size() < 3) return;
        if (!certifySeed(u, c, g)) return;
        seeds.push_back(std::move(c));
    };

    // Windows: the whole configuration, plus a zoom onto the inside set.
    struct Window {
        double x0, y0, w, h;
    };
    std::vector<Window> windows;
    auto windowOf = [&](const std::vector<int>& idx, double padFactor, double extraPad) {
        double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
        for (int i : idx) {
            double a, b, c, d;
            u.components[i].boundingBox(a, b, c, d);
            xmin = std::min(xmin, a);
            xmax = std::max(xmax, b);
            ymin = std::min(ymin, c);
            ymax = std::max(ymax, d);
        }
        const double pad = padFactor * std::max(xmax - xmin, ymax - ymin) + extraPad;
        return Window{xmin - pad, ymin - pad, (xmax - xmin) + 2 * pad, (ymax - ymin) + 2 * pad};
    };
    std::vector<int> all(g.inside);
    all.insert(all.end(), g.outside.begin(), g.outside.end());
    windows.push_back(windowOf(all, 0.25, 0.0));
    // Zoom window: inside set padded by its clearance to the outside set.
    double clearance = kInf;
    for (int i : g.inside)
        for (cplx s : u.components[i].boundarySamples(32)) clearance = std::min(clearance, g.dOut(u, s));
    if (std::isfinite(clearance) && clearance > 0)
        windows.push_back(windowOf(g.inside, 0.1, 1.5 * clearance));

    const std::vector<double> lambdaPool{0.5, 0.25, 0.12, 0.7, 0.06, 0.4, 0.85, 0.18};
    const int nLambda = std::clamp(opt.seeds, 1, (int)lambdaPool.size());
    for (const auto& win : windows) {
        const double diag = std::max(win.w, win.h);
        for (int li = 0; li < nLambda; ++li) {
            const double lambda = lambdaPool[li];
            auto f = [&](cplx z) {
                const double din = g.dIn(u, z);
                // Clamp the outside distance by the window-boundary
                // distance so classes whose outside set is only the
                // point at infinity still produce closed contours.
                double dout = g.dOut(u, z);
                const double db = std::min({z.real() - win.x0, win.x0 + win.w - z.real(),
                                            z.imag() - win.y0, win.y0 + win.h - z.imag()});
                dout = std::min(dout, std::max(db, 1e-9 * diag));
                return (1 - lambda) * din - lambda * dout;
            };
            for (auto& loop : marchingLoops(f, win.x0, win.y0, win.w, win.h, 160))
                addCandidate(std::move(loop));
        }
    }
    // Dumbbell seeds for multi-component inside sets (covers classes the
    // level sets miss, e.g. symmetric configurations with degenerate
    // midlines).
    if (g.inside.size() > 1) {
        for (double frac : {0.3, 0.45, 0.15}) {
            if (auto d = dumbbellSeed(u, g, frac, mesh)) {
                ClosedCurve c = *d;
                if (certifySeed(u, c, g)) seeds.push_back(c);
            }
        }
    } else {
        for (double frac : {0.3, 0.5}) {
            if (auto d = componentLoop(u, g.inside[0], frac, g)) {
                ClosedCurve c = *d;
                if (certifySeed(u, c, g)) seeds.push_back(c);
            }
        }
    }
    return seeds;
}

std::vector<MeridianResult> findMeridianCandidates(const PointedDomain& u,
                                                   const HomologyClass& c,
                                                   const MeridianOptions& opt) {
    const ClassGeometry g = classGeometry(u, c);
    DensityModel model(u);
    std::unique_ptr<HypMesh> mesh;
    std::vector<ClosedCurve> seeds = classSeeds(u, g, opt, nullptr);
    if (seeds.empty() && g.inside.size() > 1) {
        // Corridors may need a routed path; build the mesh lazily.
        mesh = std::make_unique<HypMesh>(u, opt.hyp);
        seeds = classSeeds(u, g, opt, mesh.get());
    }
    // Rank seeds by initial energy and keep a deterministic shortlist.
    std::vector<std::pair<double, size_t>> ranked;
    for (size_t i = 0; i < seeds.size(); ++i) ranked.push_back({curveEnergy(model, seeds[i]), i});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const size_t keep = std::min<size_t>(ranked.size(), std::max(2, opt.seeds));
    std::vector<MeridianResult> out;
    for (size_t k = 0; k < keep; ++k) {
        if (!std::isfinite(ranked[k].first)) break;
        MeridianResult r = shortenSeed(u, model, g, seeds[ranked[k].second], opt);
        if (r.certified) out.push_back(std::move(r));
    }
    return out;
}

MeridianResult findMeridian(const PointedDomain& u, const HomologyClass& c,
                            const MeridianOptions& opt) {
    auto cands = findMeridianCandidates(u, c, opt);
    if (cands.empty()) {
        MeridianResult r;
        r.diagnostics = "no certified meridian for class (all seeds failed)";
        return r;
    }
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
        if (cands[i].length.upper < cands[best].length.upper) best = i;
    return cands[best];
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

static std::string classLabel(const HomologyClass& c) {
    std::string s = "{";
    for (size_t i = 0; i < c.inside.size(); ++i)
        s += (i ? "," : "") + std::to_string(c.inside[i]);
    return s + "}";
}

void buildMeridianSystems(const PointedDomain& u, const MeridianOptions& opt,
                          MeridianSystem* principal, MeridianSystem* extended) {
    const int n = u.connectivity();
    if (n < 2) throw std::invalid_argument("meridian system needs connectivity >= 2");
    HypMesh mesh(u, opt.hyp);
    if (!u.basepoint.finite()) throw std::domain_error("basepoint at infinity unsupported here");
    const HypMesh::Field field = mesh.solve(u.basepoint.z);
    for (const HomologyClass& c : homologyClasses(n, u.infComponent())) {
        if (!extended && !c.principal) continue;
        auto cands = findMeridianCandidates(u, c, opt);
        if (cands.empty()) {
            if (extended) extended->failures.push_back(classLabel(c));
            if (principal && c.principal) principal->failures.push_back(classLabel(c));
            continue;
        }
        std::vector<DistInterval> dists(cands.size());
        for (size_t i = 0; i < cands.size(); ++i)
            dists[i] = mesh.distanceToCurve(field, cands[i].curve);
        // The principal system keeps the shortest candidate; the extended
        // system keeps the maximally close one (minimal basepoint distance).
        if (principal && c.principal) {
            size_t best = 0;
            for (size_t i = 1; i < cands.size(); ++i)
                if (cands[i].length.upper < cands[best].length.upper) best = i;
            MeridianEntry entry;
            entry.cls = c;
            entry.curve = cands[best].curve;
            entry.length = cands[best].length;
            entry.distance = dists[best];
            principal->entries.push_back(std::move(entry));
            ++principal->principalCount;
        }
        if (extended) {
            size_t best = 0;
            for (size_t i = 1; i < cands.size(); ++i)
                if (dists[i].upper < dists[best].upper) best = i;
            MeridianEntry entry;
            entry.cls = c;
            entry.curve = cands[best].curve;
            entry.length = cands[best].length;
            entry.distance = dists[best];
            extended->entries.push_back(std::move(entry));
            if (c.principal) ++extended->principalCount;
        }
    }
}

MeridianSystem principalSystem(const PointedDomain& u, const MeridianOptions& opt) {
    MeridianSystem sys;
    buildMeridianSystems(u, opt, &sys, nullptr);
    return sys;
}

MeridianSystem extendedSystem(const PointedDomain& u, const MeridianOptions& opt) {
    MeridianSystem sys;
    buildMeridianSystems(u, opt, nullptr, &sys);
    return sys;
}

Interval systemL(const MeridianSystem& s, bool principalOnly) {
    Interval out(0.0, 0.0);
    bool first = true;
    for (int i = 0; i < (int)s.entries.size(); ++i) {
        if (principalOnly && i >= s.principalCount) break;
        const Interval term = absLog(s.entries[i].length);
        out = first ? term : intervalMax(out, term);
        first = false;
    }
    if (first) throw std::domain_error("systemL: empty system");
    return out;
}

Interval systemD(const MeridianSystem& s, bool principalOnly) {
    Interval out(0.0, 0.0);
    bool first = true;
    for (int i = 0; i < (int)s.entries.size(); ++i) {
        if (principalOnly && i >= s.principalCount) break;
        out = first ? s.entries[i].distance : intervalMax(out, s.entries[i].distance);
        first = false;
    }
    if (first) throw std::domain_error("systemD: empty system");
    return out;
}

SystemInequalityReport systemInequalityCheck(const MeridianSystem& gamma,
                                             const MeridianSystem& gammaPrime) {
    const Interval d = systemD(gamma, false);
    const Interval dp = systemD(gammaPrime, false);
    const Interval l = systemL(gamma, false);
    SystemInequalityReport rep;
    const double rhsLower = d.lower + 0.5 * std::exp(l.lower);
    const double rhsUpper = d.upper + 0.5 * std::exp(l.upper);
    if (dp.upper <= rhsLower) {
        rep.verdict = Verdict::Pass;
        rep.slack = rhsLower - dp.upper;
    } else if (dp.lower > rhsUpper) {
        rep.verdict = Verdict::Fail;
        rep.slack = rhsUpper - dp.lower;
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.slack = 0.0;
    }
    return rep;
}

} // namespace carab
