#include "carab/meshcurve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace carab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from the solid axis-aligned rectangle [x0,x1]x[y0,y1] to a point.
double distPointRect(cplx p, double x0, double y0, double x1, double y1) {
    const double dx = std::max({x0 - p.real(), 0.0, p.real() - x1});
    const double dy = std::max({y0 - p.imag(), 0.0, p.imag() - y1});
    return std::hypot(dx, dy);
}

bool pointInRect(cplx p, double x0, double y0, double x1, double y1) {
    return p.real() >= x0 && p.real() <= x1 && p.imag() >= y0 && p.imag() <= y1;
}

// Distance from a solid square to a bounded compact set.
double distRectToSet(double x0, double y0, double x1, double y1, const CompactSet& k) {
    switch (k.kind) {
        case CompactSet::Kind::Disc:
            return std::max(0.0, distPointRect(k.center, x0, y0, x1, y1) - k.radius);
        case CompactSet::Kind::Point:
            return k.at.atInf ? kInf : distPointRect(k.at.z, x0, y0, x1, y1);
        case CompactSet::Kind::Polygon: {
            for (const cplx& v : k.vertices)
                if (pointInRect(v, x0, y0, x1, y1)) return 0.0;
            const cplx corners[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
            for (const cplx& c : corners)
                if (k.contains(SpherePoint(c))) return 0.0;
            double d = kInf;
            const size_t n = k.vertices.size();
            for (size_t i = 0; i < n; ++i) {
                const cplx a = k.vertices[i], b = k.vertices[(i + 1) % n];
                for (int e = 0; e < 4; ++e) {
                    d = std::min(d, distSegmentSegment(a, b, corners[e], corners[(e + 1) % 4]));
                }
            }
            return d;
        }
        case CompactSet::Kind::DiscComplement:
            throw std::invalid_argument("meshcurve: unbounded set on the enclosed side");
    }
    return 0.0;
}

// Closest points of two segments (returns squared-distance minimizing pair).
std::pair<cplx, cplx> closestSegmentPoints(cplx a0, cplx a1, cplx b0, cplx b1) {
    const cplx u = a1 - a0, v = b1 - b0, w = a0 - b0;
    const double A = std::norm(u), B = (u * std::conj(v)).real(), C = std::norm(v);
    const double D = (u * std::conj(w)).real(), E = (v * std::conj(w)).real();
    double s = 0.0, t = 0.0;
    const double den = A * C - B * B;
    if (den > 1e-14 * A * C) {
        s = std::clamp((B * E - C * D) / den, 0.0, 1.0);
    }
    t = (C > 0.0) ? std::clamp((B * s + E) / C, 0.0, 1.0) : 0.0;
    // One re-projection pass tightens clamped solutions.
    s = (A > 0.0) ? std::clamp((B * t - D) / A, 0.0, 1.0) : 0.0;
    t = (C > 0.0) ? std::clamp((B * s + E) / C, 0.0, 1.0) : 0.0;
    return {a0 + s * u, b0 + t * v};
}

double minDistToSets(cplx a, cplx b, const std::vector<CompactSet>& sets) {
    double d = kInf;
    for (const auto& k : sets) d = std::min(d, k.euclDistSegment(a, b));
    return d;
}

double polylineDistToSets(const std::vector<cplx>& pts, bool closed,
                          const std::vector<CompactSet>& sets) {
    double d = kInf;
    const size_t n = pts.size();
    const size_t segs = closed ? n : n - 1;
    for (size_t i = 0; i < segs; ++i)
        d = std::min(d, minDistToSets(pts[i], pts[(i + 1) % n], sets));
    return d;
}

std::string describeInstance(const SeparationInstance& inst) {
    std::ostringstream os;
    os << "r=" << inst.r << " R=" << inst.R << " |E|=" << inst.E.size()
       << " |F|=" << inst.F.size() << " gamma vertices=" << inst.gamma.size();
    return os.str();
}

} // namespace

PointedDomain SeparationInstance::ambient() const {
    PointedDomain u;
    u.basepoint = SpherePoint(gamma.points.front());
    u.components = E;
    u.components.insert(u.components.end(), F.begin(), F.end());
    u.label = "separation instance ambient domain";
    return u;
}

SeparationInstance makeInstance(std::vector<CompactSet> E, std::vector<CompactSet> F,
                                ClosedCurve gamma, double r, double R) {
    if (E.empty() || F.empty()) throw std::invalid_argument("instance: E and F must be non-empty");
    if (gamma.size() < 3) throw std::invalid_argument("instance: separating curve needs >= 3 vertices");
    if (!(r > 0.0) || !(R > 0.0)) throw std::invalid_argument("instance: r and R must be positive");
    for (const auto& k : E)
        if (k.containsInf()) throw std::invalid_argument("instance: E must be bounded");
    bool infInF = false;
    for (const auto& k : F) infInF = infInF || k.containsInf();
    if (!infInF) throw std::invalid_argument("instance: infinity must belong to F");

    SeparationInstance inst;
    inst.E = std::move(E);
    inst.F = std::move(F);
    inst.gamma = std::move(gamma);
    inst.r = r;
    inst.R = R;

    const auto rep = validate(inst.ambient());
    if (!rep.pass) {
        std::string msg = "instance: ambient domain invalid:";
        for (const auto& is : rep.issues) msg += " " + is.what + ";";
        throw std::invalid_argument(msg);
    }

    for (const auto& k : inst.E)
        if (inst.gamma.euclDistTo(k) < r * (1.0 - 1e-12))
            throw std::invalid_argument("instance: separating curve closer than r to E");
    for (const auto& k : inst.F)
        if (inst.gamma.euclDistTo(k) < r * (1.0 - 1e-12))
            throw std::invalid_argument("instance: separating curve closer than r to F");

    if (inst.gamma.euclLength() > R * (1.0 + 1e-12))
        throw std::invalid_argument("instance: separating curve longer than R");
    for (const cplx& p : inst.gamma.points)
        if (std::abs(p) > R * (1.0 + 1e-12))
            throw std::invalid_argument("instance: separating curve leaves the radius-R disc");

    for (const auto& k : inst.E) {
        if (inst.gamma.winding(k.representative()) != 1)
            throw std::invalid_argument("instance: curve does not enclose E once");
        for (const cplx& z : k.boundarySamples(16))
            if (inst.gamma.winding(z) != 1)
                throw std::invalid_argument("instance: curve does not enclose E once");
    }
    for (const auto& k : inst.F) {
        if (k.kind == CompactSet::Kind::Point && k.at.atInf) continue;
        const cplx z = k.kind == CompactSet::Kind::DiscComplement
                           ? k.center + cplx(k.radius, 0.0)
                           : k.representative();
        if (inst.gamma.winding(z) != 0)
            throw std::invalid_argument("instance: curve winds around part of F");
    }
    return inst;
}

SeparationInstance seededInstance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int nDiscs = 1 + int(rng() % 3);  // 1..3 small discs as E
    std::vector<CompactSet> E;
    for (int i = 0; i < nDiscs; ++i) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            const double rad = 0.05 + 0.10 * unit(rng);
            const double ang = 2.0 * kPi * unit(rng);
            const double rho = 0.5 * unit(rng);
            const cplx c = std::polar(rho, ang);
            bool ok = true;
            for (const auto& other : E)
                ok = ok && std::abs(c - other.center) > rad + other.radius + 0.05;
            if (ok) {
                E.push_back(CompactSet::disc(c, rad));
                break;
            }
        }
    }

    const double gr = 1.2 + 0.6 * unit(rng);  // separating circle radius
    ClosedCurve gamma = circleCurve(cplx(0.0, 0.0), gr, 96);

    std::vector<CompactSet> F;
    const double outer = 4.0 + 2.0 * unit(rng);
    F.push_back(CompactSet::discComplement(cplx(0.0, 0.0), outer));
    if (rng() % 2 == 0) {
        const double rad = 0.2 + 0.2 * unit(rng);
        const double rho = gr + 0.9 + rad + (outer - gr - 1.2 - 2.0 * rad) * unit(rng);
        F.push_back(CompactSet::disc(std::polar(rho, 2.0 * kPi * unit(rng)), rad));
    }

    double clear = kInf;
    for (const auto& k : E) clear = std::min(clear, gamma.euclDistTo(k));
    for (const auto& k : F) clear = std::min(clear, gamma.euclDistTo(k));
    // Keep r below the smallest gap between E-discs so their r/4-enlarged
    // square blobs stay disjoint (each part is then an outer boundary and
    // connectors keep their clearance automatically).
    double gap = kInf;
    for (size_t i = 0; i < E.size(); ++i)
        for (size_t j = i + 1; j < E.size(); ++j)
            gap = std::min(gap, std::abs(E[i].center - E[j].center) - E[i].radius - E[j].radius);
    const double r = 0.8 * std::min(clear, gap);
    const double R = 1.01 * std::max(gamma.euclLength(), gr);
    return makeInstance(std::move(E), std::move(F), std::move(gamma), r, R);
}

int winding(const GridCycle& cycle, cplx z) {
    // Horizontal ray towards +x; only vertical edges can cross it.
    // Half-open convention in y makes vertices unambiguous.
    const double gx = (z.real() - cycle.origin.real()) / cycle.side;
    const double gy = (z.imag() - cycle.origin.imag()) / cycle.side;
    int w = 0;
    for (const auto& [key, mult] : cycle.edges) {
        if (key[2] != 1) continue;  // vertical edges only: (x, y) -> (x, y+1)
        const double x = double(key[0]);
        if (x <= gx) continue;
        const double ylo = double(key[1]), yhi = ylo + 1.0;
        if (gy >= ylo && gy < yhi) w += mult;  // upward crossing to the right
    }
    return w;
}

GridCycle buildMeshCycle(const SeparationInstance& inst) {
    const double r = inst.r, R = inst.R;
    const double s = r / (4.0 * std::sqrt(2.0));

    // Guarded even though valid instances force dist(E, F) >= 2r.
    for (const auto& e : inst.E) {
        for (const cplx& z : e.boundarySamples(48)) {
            for (const auto& f : inst.F) {
                if (f.euclDist(z) < 1.5 * r)
                    throw std::invalid_argument("meshcurve: E within 3r/2 of F");
            }
        }
    }

    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& k : inst.E) {
        double a, b, c, d;
        k.boundingBox(a, b, c, d);
        xmin = std::min(xmin, a);
        xmax = std::max(xmax, b);
        ymin = std::min(ymin, c);
        ymax = std::max(ymax, d);
    }

    GridCycle cycle;
    cycle.side = s;
    // The half-cell offset keeps grid lines away from the exact r/4
    // selection threshold (an integer multiple of s would park the
    // window's boundary column precisely at distance r/4 from E).
    const double margin = r / 4.0 + 3.5 * s;
    cycle.origin = cplx(xmin - margin, ymin - margin);
    const int nx = int(std::ceil((xmax + margin - cycle.origin.real()) / s));
    const int ny = int(std::ceil((ymax + margin - cycle.origin.imag()) / s));

    auto addEdge = [&](int x, int y, int dir, int mult) {
        const std::array<int, 3> key{x, y, dir};
        auto it = cycle.edges.find(key);
        if (it == cycle.edges.end()) {
            cycle.edges.emplace(key, mult);
        } else {
            it->second += mult;
            if (it->second == 0) cycle.edges.erase(it);
        }
    };

    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double x0 = cycle.origin.real() + i * s;
            const double y0 = cycle.origin.imag() + j * s;
            double d = kInf;
            for (const auto& k : inst.E)
                d = std::min(d, distRectToSet(x0, y0, x0 + s, y0 + s, k));
            if (d > r / 4.0) continue;
            ++cycle.squareCount;
            addEdge(i, j, 0, +1);      // bottom, rightward
            addEdge(i + 1, j, 1, +1);  // right, upward
            addEdge(i, j + 1, 0, -1);  // top, leftward
            addEdge(i, j, 1, -1);      // left, downward
        }
    }

    const double crude = 2.0 * R / r + 2.0;
    if (double(cycle.squareCount) > crude * crude)
        throw std::runtime_error("meshcurve: square count exceeds (2R/r+2)^2");

    std::map<std::pair<int, int>, int> boundary;
    for (const auto& [key, mult] : cycle.edges) {
        if (mult != 1 && mult != -1)
            throw std::runtime_error("meshcurve: edge with unexpected multiplicity");
        const int hx = key[0] + (key[2] == 0 ? 1 : 0);
        const int hy = key[1] + (key[2] == 1 ? 1 : 0);
        boundary[{hx, hy}] += mult;          // head
        boundary[{key[0], key[1]}] -= mult;  // tail
    }
    for (const auto& [v, deg] : boundary)
        if (deg != 0) throw std::runtime_error("meshcurve: cycle has nonzero boundary");

    // Edge clearances: >= r/4 from E, >= 3r/2 from F.
    for (const auto& [key, mult] : cycle.edges) {
        (void)mult;
        const cplx a = cycle.point(key[0], key[1]);
        const cplx b = cycle.point(key[0] + (key[2] == 0), key[1] + (key[2] == 1));
        if (minDistToSets(a, b, inst.E) < (r / 4.0) * (1.0 - 1e-9))
            throw std::runtime_error("meshcurve: surviving edge too close to the enclosed side");
        if (minDistToSets(a, b, inst.F) < 1.5 * r * (1.0 - 1e-9))
            throw std::runtime_error("meshcurve: surviving edge too close to the outer side");
    }

    // Winding certificates on set samples (exact integers).
    for (const auto& k : inst.E) {
        if (winding(cycle, k.representative()) != 1)
            throw std::runtime_error("meshcurve: cycle winding != 1 on enclosed set");
        for (const cplx& z : k.boundarySamples(16))
            if (winding(cycle, z) != 1)
                throw std::runtime_error("meshcurve: cycle winding != 1 on enclosed set");
    }
    for (const auto& k : inst.F) {
        if (k.kind == CompactSet::Kind::Point && k.at.atInf) continue;
        const cplx z = k.kind == CompactSet::Kind::DiscComplement
                           ? k.center + cplx(k.radius, 0.0)
                           : k.representative();
        if (winding(cycle, z) != 0)
            throw std::runtime_error("meshcurve: cycle winding != 0 on outer set");
    }
    return cycle;
}

std::vector<ClosedCurve> decomposeCycle(const GridCycle& cycle) {
    // Directed edges: tail vertex + direction index (0:+x, 1:+y, 2:-x, 3:-y).
    struct DirEdge {
        std::array<int, 3> key;
        int tailX, tailY, dir;
    };
    std::map<std::pair<int, int>, std::vector<DirEdge>> outgoing;
    std::vector<DirEdge> order;  // deterministic start-edge order
    for (const auto& [key, mult] : cycle.edges) {
        if (mult != 1 && mult != -1)
            throw std::invalid_argument("meshcurve: malformed cycle (bad multiplicity)");
        DirEdge e;
        e.key = key;
        if (mult == 1) {
            e.tailX = key[0];
            e.tailY = key[1];
            e.dir = key[2] == 0 ? 0 : 1;
        } else {
            e.tailX = key[0] + (key[2] == 0 ? 1 : 0);
            e.tailY = key[1] + (key[2] == 1 ? 1 : 0);
            e.dir = key[2] == 0 ? 2 : 3;
        }
        outgoing[{e.tailX, e.tailY}].push_back(e);
        order.push_back(e);
    }
    for (const auto& [v, es] : outgoing)
        if (es.size() != 1 && es.size() != 2)
            throw std::invalid_argument("meshcurve: malformed cycle (odd vertex degree)");

    std::map<std::array<int, 3>, bool> used;
    auto takeFrom = [&](int vx, int vy, int dIn) -> const DirEdge* {
        auto it = outgoing.find({vx, vy});
        if (it == outgoing.end()) return nullptr;
        // Maximal left turn: left, straight, right (reversal impossible).
        const int pref[3] = {(dIn + 1) % 4, dIn, (dIn + 3) % 4};
        for (int p = 0; p < 3; ++p) {
            for (const DirEdge& e : it->second) {
                if (e.dir == pref[p] && !used[e.key]) return &e;
            }
        }
        return nullptr;
    };

    const int dx[4] = {1, 0, -1, 0};
    const int dy[4] = {0, 1, 0, -1};
    std::vector<ClosedCurve> parts;
    for (const DirEdge& start : order) {
        if (used[start.key]) continue;
        ClosedCurve part;
        int vx = start.tailX, vy = start.tailY, dir = start.dir;
        used[start.key] = true;
        part.points.push_back(cycle.point(vx, vy));
        vx += dx[dir];
        vy += dy[dir];
        while (!(vx == start.tailX && vy == start.tailY)) {
            const DirEdge* next = takeFrom(vx, vy, dir);
            if (!next) throw std::invalid_argument("meshcurve: malformed cycle (open walk)");
            used[next->key] = true;
            part.points.push_back(cycle.point(vx, vy));
            dir = next->dir;
            vx += dx[dir];
            vy += dy[dir];
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

namespace {

// Arc-length position of the closest approach between a part and gamma,
// with the realizing points.
struct Connector {
    double tOnGamma = 0.0;  // arc length along gamma at the foot a
    cplx a, b;              // a on gamma, b on the part
    size_t partEdge = 0;    // edge of the part containing b
};

Connector closestApproach(const ClosedCurve& gamma, const ClosedCurve& part) {
    Connector best;
    double bestD = kInf;
    double acc = 0.0;
    for (size_t i = 0; i < gamma.size(); ++i) {
        const cplx g0 = gamma.at(i), g1 = gamma.at(i + 1);
        for (size_t j = 0; j < part.size(); ++j) {
            const cplx p0 = part.at(j), p1 = part.at(j + 1);
            auto [pa, pb] = closestSegmentPoints(g0, g1, p0, p1);
            const double d = std::abs(pa - pb);
            if (d < bestD) {
                bestD = d;
                best.a = pa;
                best.b = pb;
                best.tOnGamma = acc + std::abs(pa - g0);
                best.partEdge = j;
            }
        }
        acc += std::abs(g1 - g0);
    }
    return best;
}

// Parameters in (0,1) where [a,b] crosses edges of a closed polyline.
struct Crossing {
    double t;
    size_t edge;
    cplx at;
};

std::vector<Crossing> segmentCurveCrossings(cplx a, cplx b, const ClosedCurve& c) {
    std::vector<Crossing> out;
    const cplx d = b - a;
    for (size_t i = 0; i < c.size(); ++i) {
        const cplx p = c.at(i), q = c.at(i + 1);
        const cplx e = q - p;
        const double den = d.real() * e.imag() - d.imag() * e.real();
        if (std::abs(den) < 1e-14) continue;
        const cplx w = p - a;
        const double t = (w.real() * e.imag() - w.imag() * e.real()) / den;
        const double u = (w.real() * d.imag() - w.imag() * d.real()) / den;
        if (t > 1e-12 && t < 1.0 - 1e-12 && u >= 0.0 && u <= 1.0)
            out.push_back({t, i, a + t * d});
    }
    std::sort(out.begin(), out.end(), [](const Crossing& l, const Crossing& r) { return l.t < r.t; });
    return out;
}

// Walk along the part's vertices from a point on edge e0 to a point on
// edge e1, preferring the side with fewer already-used edges (non-overlap
// bookkeeping), then the side with smaller Euclidean length.
std::vector<cplx> boundaryWalk(const ClosedCurve& part, const Crossing& in, const Crossing& out,
                               std::map<size_t, int>& edgeUse) {
    const size_t n = part.size();
    auto buildForward = [&](std::vector<size_t>* edges) {
        std::vector<cplx> pts{in.at};
        for (size_t e = in.edge; e != out.edge; e = (e + 1) % n) {
            pts.push_back(part.at(e + 1));
            if (edges) edges->push_back(e);
        }
        pts.push_back(out.at);
        return pts;
    };
    auto buildBackward = [&](std::vector<size_t>* edges) {
        std::vector<cplx> pts{in.at};
        for (size_t e = in.edge; e != out.edge; e = (e + n - 1) % n) {
            pts.push_back(part.at(e));
            if (edges) edges->push_back(e);
        }
        pts.push_back(out.at);
        return pts;
    };
    auto lengthOf = [](const std::vector<cplx>& pts) {
        double l = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) l += std::abs(pts[i + 1] - pts[i]);
        return l;
    };
    auto useOf = [&](const std::vector<size_t>& edges) {
        int u = 0;
        for (size_t e : edges) u += edgeUse[e];
        return u;
    };

    std::vector<size_t> fwdEdges, bwdEdges;
    const auto fwd = buildForward(&fwdEdges);
    const auto bwd = buildBackward(&bwdEdges);
    const int fu = useOf(fwdEdges), bu = useOf(bwdEdges);
    bool forward;
    if (fu != bu) {
        forward = fu < bu;
    } else {
        forward = lengthOf(fwd) <= lengthOf(bwd);
    }
    for (size_t e : (forward ? fwdEdges : bwdEdges)) ++edgeUse[e];
    return forward ? fwd : bwd;
}

// Sub-polyline of gamma between arc-length parameters (forward direction).
std::vector<cplx> gammaArc(const ClosedCurve& gamma, double t0, cplx p0, double t1, cplx p1) {
    const size_t n = gamma.size();
    std::vector<double> cum(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + std::abs(gamma.at(i + 1) - gamma.at(i));
    auto edgeOf = [&](double t) {
        t = std::clamp(t, 0.0, cum[n]);
        size_t e = 0;
        while (e + 1 < n && cum[e + 1] < t - 1e-12) ++e;
        return e;
    };
    const size_t i0 = edgeOf(t0), i1 = edgeOf(t1);
    std::vector<cplx> pts{p0};
    if (i0 == i1 && t1 >= t0 - 1e-12) {  // same edge, forward
        pts.push_back(p1);
        return pts;
    }
    size_t e = i0;
    int guard = int(n) + 2;
    do {
        e = (e + 1) % n;
        pts.push_back(gamma.at(e));
        if (--guard < 0) break;
    } while (e != i1);
    pts.push_back(p1);
    return pts;
}

void appendPts(std::vector<cplx>& out, const std::vector<cplx>& pts, bool reversed = false) {
    auto push = [&](const cplx& p) {
        if (out.empty() || std::abs(out.back() - p) > 1e-13) out.push_back(p);
    };
    if (reversed) {
        for (auto it = pts.rbegin(); it != pts.rend(); ++it) push(*it);
    } else {
        for (const cplx& p : pts) push(p);
    }
}

} // namespace

ClosedCurve joinCurves(const std::vector<ClosedCurve>& parts, const SeparationInstance& inst) {
    if (parts.empty()) throw std::invalid_argument("joinCurves: no parts");
    if (parts.size() == 1) return parts.front();
    const double r = inst.r;

    std::vector<Connector> conns(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) conns[i] = closestApproach(inst.gamma, parts[i]);

    // Visit parts in the order their connector feet appear along gamma.
    std::vector<size_t> order(parts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t l, size_t rI) {
        if (conns[l].tOnGamma != conns[rI].tOnGamma) return conns[l].tOnGamma < conns[rI].tOnGamma;
        return l < rI;
    });

    // Build each connector polyline, replacing sub-segments that cross
    // another part by a walk along that part's boundary.
    std::vector<std::map<size_t, int>> edgeUse(parts.size());  // edge-use multiset per part
    std::vector<std::vector<cplx>> connectorPts(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        const Connector& c = conns[i];
        std::vector<cplx> pts{c.a};
        cplx cur = c.a;
        for (size_t j = 0; j < parts.size(); ++j) {
            if (j == i) continue;
            auto crossings = segmentCurveCrossings(cur, c.b, parts[j]);
            if (crossings.size() >= 2) {
                const auto walk = boundaryWalk(parts[j], crossings.front(), crossings.back(), edgeUse[j]);
                appendPts(pts, walk);
                cur = crossings.back().at;
            }
        }
        if (std::abs(cur - c.b) > 1e-13) pts.push_back(c.b);

        const double dE = polylineDistToSets(pts, false, inst.E);
        const double dF = polylineDistToSets(pts, false, inst.F);
        if (dE < (r / 4.0) * (1.0 - 1e-9) || dF < (r / 2.0) * (1.0 - 1e-9)) {
            std::ostringstream os;
            os << "joinCurves: connector clearance failed (" << describeInstance(inst)
               << ", part " << i << ", distE=" << dE << ", distF=" << dF << ", connector:";
            for (const cplx& p : pts) os << " (" << p.real() << "," << p.imag() << ")";
            os << ")";
            throw std::runtime_error(os.str());
        }
        connectorPts[i] = std::move(pts);
    }

    // Part traversal starting and ending at the connector's landing point.
    auto partLoop = [&](size_t i) {
        const ClosedCurve& p = parts[i];
        const Connector& c = conns[i];
        std::vector<cplx> pts{c.b};
        const size_t n = p.size();
        for (size_t k = 1; k <= n; ++k) pts.push_back(p.at(c.partEdge + k));
        pts.push_back(c.b);
        return pts;
    };

    // gamma arcs are traversed once forwards (between consecutive feet)
    // and once backwards at the end, so gamma contributes no winding.
    std::vector<cplx> out;
    std::vector<std::vector<cplx>> arcs;
    for (size_t k = 0; k < order.size(); ++k) {
        const size_t i = order[k];
        appendPts(out, connectorPts[i]);
        appendPts(out, partLoop(i));
        appendPts(out, connectorPts[i], /*reversed=*/true);
        if (k + 1 < order.size()) {
            const size_t nxt = order[k + 1];
            auto arc = gammaArc(inst.gamma, conns[i].tOnGamma, conns[i].a,
                                conns[nxt].tOnGamma, conns[nxt].a);
            appendPts(out, arc);
            arcs.push_back(std::move(arc));
        }
    }
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) appendPts(out, *it, /*reversed=*/true);

    ClosedCurve joined;
    joined.points = std::move(out);
    if (std::abs(joined.points.back() - joined.points.front()) < 1e-13) joined.points.pop_back();
    return joined;
}

double aprioriLengthBound(double r, double R) {
    const double n = (2.0 * R / r + 2.0) * (2.0 * R / r + 2.0);  // square-count bound
    const double s = r / (4.0 * std::sqrt(2.0));
    const double cycleLen = 4.0 * s * n;
    // Each of at most n connectors: straight piece <= 2R plus boundary
    // walks <= the whole cycle length, traversed twice; gamma doubled.
    const double budget = cycleLen + 2.0 * n * (2.0 * R + cycleLen) + 2.0 * R;
    return (8.0 / r) * budget;
}

MeshCurveResult meshCurve(const SeparationInstance& inst) {
    MeshCurveResult res;
    res.cycle = buildMeshCycle(inst);
    res.squareCount = res.cycle.squareCount;

    double dE = kInf, dF = kInf;
    for (const auto& [key, mult] : res.cycle.edges) {
        (void)mult;
        const cplx a = res.cycle.point(key[0], key[1]);
        const cplx b = res.cycle.point(key[0] + (key[2] == 0), key[1] + (key[2] == 1));
        dE = std::min(dE, minDistToSets(a, b, inst.E));
        dF = std::min(dF, minDistToSets(a, b, inst.F));
    }
    res.cycleDistToE = dE;
    res.cycleDistToF = dF;

    const auto parts = decomposeCycle(res.cycle);
    res.curve = joinCurves(parts, inst);

    for (const auto& k : inst.E) {
        if (res.curve.winding(k.representative()) != 1)
            throw std::runtime_error("meshCurve: output winding != 1 on enclosed set");
        for (const cplx& z : k.boundarySamples(16))
            if (res.curve.winding(z) != 1)
                throw std::runtime_error("meshCurve: output winding != 1 on enclosed set");
    }
    for (const auto& k : inst.F) {
        if (k.kind == CompactSet::Kind::Point && k.at.atInf) continue;
        const cplx z = k.kind == CompactSet::Kind::DiscComplement
                           ? k.center + cplx(k.radius, 0.0)
                           : k.representative();
        if (res.curve.winding(z) != 0)
            throw std::runtime_error("meshCurve: output winding != 0 on outer set");
    }

    res.apriori = aprioriLengthBound(inst.r, inst.R);
    const DensityModel model(inst.ambient());
    HypOptions opt;
    opt.lengthStep = 0.05;  // the curve is long; a coarser certified step suffices
    res.length = hypLength(model, res.curve, opt);
    if (res.length.upper > res.apriori)
        throw std::runtime_error("meshCurve: hyperbolic length exceeds the a-priori bound");
    return res;
}

} // namespace carab
