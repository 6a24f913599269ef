#include "carab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace carab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-connected stencil: rook, diagonal and knight moves keep the
// graph-over-continuum overshoot below 3 percent.
constexpr int kOffsets[8][2] = {
    {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}};

// Rough Euclidean gap between two compact sets via boundary samples
// (heuristic only, used to pick the grid spacing).
double roughGap(const CompactSet& a, const CompactSet& b) {
    double gap = kInf;
    for (cplx s : b.boundarySamples(48)) gap = std::min(gap, a.euclDist(s));
    for (cplx s : a.boundarySamples(48)) gap = std::min(gap, b.euclDist(s));
    return gap;
}

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<int> parent;
};

DijkstraResult dijkstra(const std::vector<std::vector<std::pair<int, int>>>& adj,
                        const std::vector<double>& weight,
                        const std::vector<std::pair<int, double>>& sources) {
    DijkstraResult r;
    r.dist.assign(adj.size(), kInf);
    r.parent.assign(adj.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (auto [n, d] : sources) {
        if (d < r.dist[n]) {
            r.dist[n] = d;
            pq.push({d, n});
        }
    }
    while (!pq.empty()) {
        auto [d, n] = pq.top();
        pq.pop();
        if (d > r.dist[n]) continue;
        for (auto [m, e] : adj[n]) {
            const double nd = d + weight[e];
            if (nd < r.dist[m]) {
                r.dist[m] = nd;
                r.parent[m] = n;
                pq.push({nd, m});
            }
        }
    }
    return r;
}

}  // namespace

HypMesh::HypMesh(const PointedDomain& u, const HypOptions& opt)
    : domain_(u), model_(u), opt_(opt) {
    // Bounding box of the finite complement plus the basepoint.
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& k : domain_.components) {
        double a, b, c, d;
        k.boundingBox(a, b, c, d);
        xmin = std::min(xmin, a);
        xmax = std::max(xmax, b);
        ymin = std::min(ymin, c);
        ymax = std::max(ymax, d);
    }
    if (domain_.basepoint.finite()) {
        xmin = std::min(xmin, domain_.basepoint.z.real());
        xmax = std::max(xmax, domain_.basepoint.z.real());
        ymin = std::min(ymin, domain_.basepoint.z.imag());
        ymax = std::max(ymax, domain_.basepoint.z.imag());
    }
    const double pad = 0.15 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;

    double spacing = opt_.meshSpacing;
    if (spacing <= 0) {
        double gap = kInf;
        const auto& comps = domain_.components;
        for (size_t i = 0; i < comps.size(); ++i)
            for (size_t j = i + 1; j < comps.size(); ++j)
                gap = std::min(gap, roughGap(comps[i], comps[j]));
        if (domain_.basepoint.finite())
            gap = std::min(gap, domain_.euclDelta(domain_.basepoint.z));
        if (!std::isfinite(gap) || gap <= 0) gap = std::max(xmax - xmin, ymax - ymin);
        spacing = gap / 16.0;
    }
    const double area = (xmax - xmin) * (ymax - ymin);
    spacing = std::max(spacing, std::sqrt(area / (double)opt_.maxMeshNodes));
    spacing_ = spacing;
    x0_ = xmin;
    y0_ = ymin;
    nx_ = (int)std::floor((xmax - xmin) / spacing_) + 1;
    ny_ = (int)std::floor((ymax - ymin) / spacing_) + 1;

    gridIndex_.assign((size_t)nx_ * ny_, -1);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const cplx z(x0_ + i * spacing_, y0_ + j * spacing_);
            if (domain_.euclDelta(z) > 0 && domain_.contains(SpherePoint(z))) {
                gridIndex_[(size_t)j * nx_ + i] = (int)nodes_.size();
                nodes_.push_back(z);
            }
        }
    }
    if (nodes_.empty()) throw std::domain_error("mesh: no interior grid nodes");

    adj_.assign(nodes_.size(), {});
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const int n = gridIndex_[(size_t)j * nx_ + i];
            if (n < 0) continue;
            for (const auto& off : kOffsets) {
                const int i2 = i + off[0], j2 = j + off[1];
                if (i2 < 0 || i2 >= nx_ || j2 < 0 || j2 >= ny_) continue;
                const int m = gridIndex_[(size_t)j2 * nx_ + i2];
                if (m < 0) continue;
                if (domain_.euclDeltaSegment(nodes_[n], nodes_[m]) <= 0) continue;
                const Interval rho = model_.densityOnSegment(nodes_[n], nodes_[m]);
                if (!std::isfinite(rho.upper)) continue;
                const double len = std::abs(nodes_[m] - nodes_[n]);
                const int e = (int)edges_.size();
                edges_.push_back({n, m});
                edgeUpper_.push_back(rho.upper * len);
                edgeLower_.push_back(rho.lower * len);
                edgeEucl_.push_back(len);
                adj_[n].push_back({m, e});
                adj_[m].push_back({n, e});
            }
        }
    }
}

int HypMesh::nearestNode(cplx z) const {
    const int ci = (int)std::lround((z.real() - x0_) / spacing_);
    const int cj = (int)std::lround((z.imag() - y0_) / spacing_);
    for (int ring = 0; ring < std::max(nx_, ny_); ++ring) {
        int best = -1;
        double bestD = kInf;
        for (int j = cj - ring; j <= cj + ring; ++j) {
            for (int i = ci - ring; i <= ci + ring; ++i) {
                if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
                if (i < 0 || i >= nx_ || j < 0 || j >= ny_) continue;
                const int n = gridIndex_[(size_t)j * nx_ + i];
                if (n < 0) continue;
                const double d = std::abs(nodes_[n] - z);
                if (d < bestD) {
                    bestD = d;
                    best = n;
                }
            }
        }
        if (best >= 0) return best;
    }
    return -1;
}

std::vector<int> HypMesh::attachNodes(cplx z) const {
    std::vector<int> out;
    const int ci = (int)std::floor((z.real() - x0_) / spacing_);
    const int cj = (int)std::floor((z.imag() - y0_) / spacing_);
    for (int dj = -1; dj <= 2; ++dj) {
        for (int di = -1; di <= 2; ++di) {
            const int i = ci + di, j = cj + dj;
            if (i < 0 || i >= nx_ || j < 0 || j >= ny_) continue;
            const int n = gridIndex_[(size_t)j * nx_ + i];
            if (n < 0) continue;
            if (domain_.euclDeltaSegment(z, nodes_[n]) > 0) out.push_back(n);
        }
    }
    if (out.empty()) {
        const int n = nearestNode(z);
        if (n >= 0 && domain_.euclDeltaSegment(z, nodes_[n]) > 0) out.push_back(n);
    }
    return out;
}

HypMesh::Field HypMesh::solve(cplx source) const {
    if (!domain_.contains(SpherePoint(source)))
        throw std::domain_error("mesh: source not in U");
    std::vector<std::pair<int, double>> upSeeds, loSeeds;
    for (int n : attachNodes(source)) {
        const Interval rho = model_.densityOnSegment(source, nodes_[n]);
        if (!std::isfinite(rho.upper)) continue;
        const double len = std::abs(nodes_[n] - source);
        upSeeds.push_back({n, rho.upper * len});
        loSeeds.push_back({n, rho.lower * len});
    }
    if (upSeeds.empty()) throw std::domain_error("mesh: source cannot attach to grid");
    Field f;
    auto up = dijkstra(adj_, edgeUpper_, upSeeds);
    auto lo = dijkstra(adj_, edgeLower_, loSeeds);
    f.upper = std::move(up.dist);
    f.lower = std::move(lo.dist);
    f.parent = std::move(up.parent);
    f.source = source;
    return f;
}

DistInterval HypMesh::distance(const Field& f, cplx target) const {
    if (std::abs(target - f.source) == 0.0) return {0.0, 0.0};
    double up = kInf, lo = kInf;
    for (int n : attachNodes(target)) {
        const Interval rho = model_.densityOnSegment(target, nodes_[n]);
        if (!std::isfinite(rho.upper)) continue;
        const double len = std::abs(nodes_[n] - target);
        up = std::min(up, f.upper[n] + rho.upper * len);
        lo = std::min(lo, f.lower[n] + rho.lower * len);
    }
    // Unreachable targets (e.g. curve vertices squeezed between grid
    // layers) report an infinite interval; callers taking minima over
    // many targets skip them.
    lo = lo / (1.0 + opt_.meshMargin);
    return {std::min(lo, up), up};
}

DistInterval HypMesh::pointDistance(cplx a, cplx b) const {
    if (std::abs(a - b) == 0.0) return {0.0, 0.0};
    if (auto d = model_.discDistance(a, b)) return {*d, *d};
    return distance(solve(a), b);
}

DistInterval HypMesh::distanceToCurve(const Field& f, const ClosedCurve& c) const {
    double up = kInf, lo = kInf;
    double slack = 0.0;
    const size_t n = c.size();
    for (size_t i = 0; i < n; ++i) {
        const DistInterval d = distance(f, c.at(i));
        up = std::min(up, d.upper);
        lo = std::min(lo, d.lower);
        // The continuum geodesic may end between samples; widen the
        // lower bound by half the largest hyperbolic sample gap.
        const Interval rho = model_.densityOnSegment(c.at(i), c.at(i + 1));
        if (!std::isfinite(rho.upper)) {
            slack = kInf;
        } else {
            slack = std::max(slack, 0.5 * rho.upper * std::abs(c.at(i + 1) - c.at(i)));
        }
    }
    if (!std::isfinite(up)) throw std::domain_error("mesh: curve unreachable");
    lo = std::isfinite(slack) ? std::max(0.0, lo - slack) : 0.0;
    return {std::min(lo, up), up};
}

std::vector<cplx> HypMesh::pathTo(const Field& f, cplx target) const {
    double best = kInf;
    int bestNode = -1;
    for (int n : attachNodes(target)) {
        const Interval rho = model_.densityOnSegment(target, nodes_[n]);
        if (!std::isfinite(rho.upper)) continue;
        const double d = f.upper[n] + rho.upper * std::abs(nodes_[n] - target);
        if (d < best) {
            best = d;
            bestNode = n;
        }
    }
    if (bestNode < 0) throw std::domain_error("mesh: target unreachable");
    std::vector<cplx> path{target};
    for (int n = bestNode; n >= 0; n = f.parent[n]) path.push_back(nodes_[n]);
    path.push_back(f.source);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<cplx> HypMesh::euclPath(cplx a, cplx b) const {
    std::vector<std::pair<int, double>> seeds;
    for (int n : attachNodes(a)) seeds.push_back({n, std::abs(nodes_[n] - a)});
    if (seeds.empty()) throw std::domain_error("mesh: path source cannot attach");
    auto r = dijkstra(adj_, edgeEucl_, seeds);
    double best = kInf;
    int bestNode = -1;
    for (int n : attachNodes(b)) {
        const double d = r.dist[n] + std::abs(nodes_[n] - b);
        if (d < best) {
            best = d;
            bestNode = n;
        }
    }
    if (bestNode < 0) throw std::domain_error("mesh: path target unreachable");
    std::vector<cplx> path{b};
    for (int n = bestNode; n >= 0; n = r.parent[n]) path.push_back(nodes_[n]);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace carab
