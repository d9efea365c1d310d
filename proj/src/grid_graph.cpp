#include "hypext/grid_graph.hpp"

#include "hypext/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hypext {

namespace {

constexpr int kDi[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDj[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

GridGraph::GridGraph(const JordanDomain& domain, double pitch) : domain_(&domain), pitch_(pitch) {
    if (!(pitch > 0.0)) throw Error(ErrorCode::InvalidArgument, "pitch must be positive");
    const auto& bb = domain.bbox();
    const auto& v = domain.vertices();
    const std::size_t n = v.size();
    j0_ = static_cast<int>(std::ceil(bb.ymin / pitch));
    const int j1 = static_cast<int>(std::floor(bb.ymax / pitch));
    const double floor_dist = 1e-9 * pitch;
    rows_.resize(std::max(j1 - j0_ + 1, 0));
    std::vector<double> xs;
    for (int j = j0_; j <= j1; ++j) {
        const double y = j * pitch;
        xs.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const Point a = v[k], b = v[(k + 1) % n];
            if ((a.imag() > y) != (b.imag() > y))
                xs.push_back(a.real() + (y - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag()));
        }
        std::sort(xs.begin(), xs.end());
        auto& row = rows_[j - j0_];
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            int i0 = static_cast<int>(std::floor(xs[k] / pitch)) + 1;
            int i1 = static_cast<int>(std::ceil(xs[k + 1] / pitch)) - 1;
            // Drop nodes touching the boundary.
            while (i0 <= i1) {
                const Point p(i0 * pitch, y);
                const double d = domain.boundary_distance(p);
                if (d > floor_dist) break;
                ++i0;
            }
            while (i1 >= i0) {
                const Point p(i1 * pitch, y);
                if (domain.boundary_distance(p) > floor_dist) break;
                --i1;
            }
            if (i0 > i1) continue;
            row.push_back(Run{i0, i1, static_cast<std::uint32_t>(nodes_.size())});
            for (int i = i0; i <= i1; ++i) {
                const Point p(i * pitch, y);
                nodes_.push_back(p);
                dist_.push_back(domain.boundary_distance(p));
                gi_.push_back(i);
                gj_.push_back(j);
            }
        }
    }
    mask_.assign(nodes_.size(), 0);
    for (std::uint32_t a = 0; a < nodes_.size(); ++a) {
        for (int k = 0; k < 4; ++k) {
            const std::int64_t b = find(gi_[a] + kDi[k], gj_[a] + kDj[k]);
            if (b < 0) continue;
            const double len = std::abs(nodes_[b] - nodes_[a]);
            bool ok = dist_[a] + dist_[b] > len;
            if (!ok) ok = !domain.segment_hits_boundary(nodes_[a], nodes_[b]);
            if (!ok) continue;
            mask_[a] |= static_cast<std::uint8_t>(1u << k);
            mask_[b] |= static_cast<std::uint8_t>(1u << (k + 4));
        }
    }
}

std::int64_t GridGraph::find(int i, int j) const {
    const int r = j - j0_;
    if (r < 0 || r >= static_cast<int>(rows_.size())) return -1;
    for (const Run& run : rows_[r])
        if (i >= run.i0 && i <= run.i1) return run.first + (i - run.i0);
    return -1;
}

double GridGraph::weight_of(double length, double da, double db, PathWeight weight) const {
    if (weight == PathWeight::Length) return length;
    return length * 0.5 * (1.0 / da + 1.0 / db);
}

GridGraph::Anchor GridGraph::anchor(Point z, PathWeight weight) const {
    Anchor an;
    an.point = z;
    const double scale = domain_->bbox().diagonal();
    an.dist = domain_->boundary_distance(z);
    const bool on_boundary = an.dist <= 1e-12 * scale;
    if (!on_boundary && !domain_->contains(z)) throw Error(ErrorCode::PointOutside, "query point outside domain");
    if (weight == PathWeight::QuasiHyperbolic && on_boundary)
        throw Error(ErrorCode::PointOutside, "quasi-hyperbolic distance needs interior points");
    const double radius = 2.0 * pitch_;
    const int ic = static_cast<int>(std::round(z.real() / pitch_));
    const int jc = static_cast<int>(std::round(z.imag() / pitch_));
    for (int j = jc - 3; j <= jc + 3; ++j) {
        for (int i = ic - 3; i <= ic + 3; ++i) {
            const std::int64_t b = find(i, j);
            if (b < 0) continue;
            const double len = std::abs(nodes_[b] - z);
            if (len > radius) continue;
            bool ok = an.dist + dist_[b] > len;
            if (!ok) ok = !domain_->segment_hits_boundary(z, nodes_[b], on_boundary ? 1e-9 : 0.0);
            if (ok) an.links.push_back(Link{static_cast<std::uint32_t>(b), len});
        }
    }
    if (an.links.empty())
        throw Error(ErrorCode::DisconnectedAtResolution, "no visible grid node within 2 pitch of query point");
    return an;
}

std::vector<double> GridGraph::search(const Anchor& source, PathWeight weight) const {
    std::vector<double> best(nodes_.size(), kInf);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (const Link& l : source.links) {
        const double w = weight_of(l.length, source.dist, dist_[l.node], weight);
        if (w < best[l.node]) {
            best[l.node] = w;
            queue.emplace(w, l.node);
        }
    }
    while (!queue.empty()) {
        const auto [d, a] = queue.top();
        queue.pop();
        if (d > best[a]) continue;
        for (int k = 0; k < 8; ++k) {
            if (!(mask_[a] & (1u << k))) continue;
            const auto b = static_cast<std::uint32_t>(find(gi_[a] + kDi[k], gj_[a] + kDj[k]));
            const double len = (k % 2 == 0) ? pitch_ : pitch_ * std::numbers::sqrt2;
            const double nd = d + weight_of(len, dist_[a], dist_[b], weight);
            if (nd < best[b]) {
                best[b] = nd;
                queue.emplace(nd, b);
            }
        }
    }
    return best;
}

std::vector<double> GridGraph::shortest_paths(Point x, const std::vector<Point>& targets, PathWeight weight) const {
    const Anchor src = anchor(x, weight);
    const std::vector<double> best = search(src, weight);
    std::vector<double> out;
    out.reserve(targets.size());
    for (const Point& y : targets) {
        const Anchor dst = anchor(y, weight);
        double d = kInf;
        for (const Link& l : dst.links) d = std::min(d, best[l.node] + weight_of(l.length, dist_[l.node], dst.dist, weight));
        const double direct = std::abs(y - x);
        if (direct <= 2.0 * pitch_) {
            const bool xb = src.dist <= 0.0, yb = dst.dist <= 0.0;
            bool ok = direct == 0.0 || src.dist + dst.dist > direct;
            if (!ok && !(xb && yb)) {
                ok = xb ? !domain_->segment_hits_boundary(x, y, 1e-9) : !domain_->segment_hits_boundary(y, x, yb ? 1e-9 : 0.0);
            }
            if (ok) d = std::min(d, weight_of(direct, src.dist, dst.dist, weight));
        }
        if (!std::isfinite(d)) throw Error(ErrorCode::DisconnectedAtResolution, "query points not connected on the grid");
        out.push_back(d);
    }
    return out;
}

double GridGraph::shortest_path(Point x, Point y, PathWeight weight) const {
    // Search from the lexicographically smaller point so the value is exactly symmetric.
    const bool swap = std::make_pair(y.real(), y.imag()) < std::make_pair(x.real(), x.imag());
    return swap ? shortest_paths(y, {x}, weight)[0] : shortest_paths(x, {y}, weight)[0];
}

double internal_distance(const JordanDomain& domain, Point x, Point y, double pitch) {
    return GridGraph(domain, pitch).shortest_path(x, y);
}

Point boundary_sample(const JordanDomain& domain, int k) {
    double f = 0.0, base = 0.5;
    for (unsigned m = static_cast<unsigned>(k); m; m >>= 1, base *= 0.5)
        if (m & 1u) f += base;
    return domain.point_at_arclength(f * domain.perimeter());
}

DiameterResult internal_diameter(const JordanDomain& domain, double pitch, int boundary_samples) {
    if (boundary_samples < 2) throw Error(ErrorCode::InvalidArgument, "boundary_samples must be >= 2");
    const GridGraph graph(domain, pitch);
    std::vector<Point> samples;
    for (int k = 0; k < boundary_samples; ++k) samples.push_back(boundary_sample(domain, k));
    DiameterResult res;
    res.x = res.y = samples[0];
    for (int a = 0; a + 1 < boundary_samples; ++a) {
        std::vector<Point> rest(samples.begin() + a + 1, samples.end());
        const auto d = graph.shortest_paths(samples[a], rest);
        for (std::size_t b = 0; b < d.size(); ++b)
            if (d[b] > res.value) {
                res.value = d[b];
                res.x = samples[a];
                res.y = rest[b];
            }
    }
    return res;
}

}  // namespace hypext
