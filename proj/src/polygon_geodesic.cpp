#include "hypext/error.hpp"
#include "hypext/grid_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace hypext {

namespace {

bool in_triangle_closed(Point p, Point a, Point b, Point c, double eps) {
    return orient(a, b, p) >= -eps && orient(b, c, p) >= -eps && orient(c, a, p) >= -eps;
}


}  // namespace

PolygonGeodesic::PolygonGeodesic(const JordanDomain& domain) : domain_(&domain) {
    // Collinear vertices stay on triangle edges; dropping them keeps triangles non-degenerate.
    const auto& v = domain.vertices();
    const std::size_t n0 = v.size();
    for (std::size_t i = 0; i < n0; ++i) {
        const Point u = v[(i + n0 - 1) % n0] - v[i];
        const Point w = v[(i + 1) % n0] - v[i];
        if (std::abs(cross(u, w)) > 1e-13 * std::abs(u) * std::abs(w)) pts_.push_back(v[i]);
    }
    const std::size_t n = pts_.size();

    // Ear clipping on a doubly linked ring.
    std::vector<std::uint32_t> prev(n), next(n);
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = static_cast<std::uint32_t>((i + n - 1) % n);
        next[i] = static_cast<std::uint32_t>((i + 1) % n);
    }
    std::vector<char> alive(n, 1);
    auto reflex = [&](std::uint32_t i) { return orient(pts_[prev[i]], pts_[i], pts_[next[i]]) <= 0; };
    auto is_ear = [&](std::uint32_t i) {
        const std::uint32_t a = prev[i], c = next[i];
        if (reflex(i)) return false;
        for (std::uint32_t k = next[c]; k != a; k = next[k]) {
            if (!reflex(k)) continue;
            const Point p = pts_[k];
            if (p == pts_[a] || p == pts_[i] || p == pts_[c]) continue;
            if (in_triangle_closed(p, pts_[a], pts_[i], pts_[c], 0.0)) return false;
        }
        return true;
    };
    std::vector<std::array<std::uint32_t, 3>> raw;
    raw.reserve(n > 2 ? n - 2 : 0);
    std::size_t remaining = n;
    std::uint32_t cur = 0;
    std::size_t stall = 0;
    while (remaining > 3) {
        if (is_ear(cur)) {
            raw.push_back({prev[cur], cur, next[cur]});
            alive[cur] = 0;
            next[prev[cur]] = next[cur];
            prev[next[cur]] = prev[cur];
            cur = prev[cur];
            --remaining;
            stall = 0;
        } else {
            cur = next[cur];
            if (++stall > 2 * remaining) throw Error(ErrorCode::NonConvergence, "ear clipping stalled");
        }
    }
    raw.push_back({prev[cur], cur, next[cur]});

    // Adjacency through shared edges.
    tris_.resize(raw.size());
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::int32_t, int>> open;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        Tri& tri = tris_[t];
        for (int k = 0; k < 3; ++k) {
            tri.v[k] = raw[t][k];
            tri.nb[k] = -1;
        }
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = tri.v[k], b = tri.v[(k + 1) % 3];
            auto it = open.find({b, a});
            if (it != open.end()) {
                tri.nb[k] = it->second.first;
                tris_[it->second.first].nb[it->second.second] = static_cast<std::int32_t>(t);
                open.erase(it);
            } else {
                open[{a, b}] = {static_cast<std::int32_t>(t), k};
            }
        }
    }
}

std::int32_t PolygonGeodesic::locate(Point z) const {
    const double scale = domain_->bbox().diagonal();
    for (double eps : {0.0, 1e-13, 1e-10}) {
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            const Tri& tri = tris_[t];
            if (in_triangle_closed(z, pts_[tri.v[0]], pts_[tri.v[1]], pts_[tri.v[2]], eps * scale * scale))
                return static_cast<std::int32_t>(t);
        }
    }
    throw Error(ErrorCode::PointOutside, "point not in any triangle");
}

Polyline PolygonGeodesic::path(Point x, Point y) const {
    const std::int32_t tx = locate(x);
    const std::int32_t ty = locate(y);
    // Dual tree walk.
    std::vector<std::int32_t> parent(tris_.size(), -2);
    std::queue<std::int32_t> q;
    parent[tx] = -1;
    q.push(tx);
    while (!q.empty() && parent[ty] == -2) {
        const std::int32_t t = q.front();
        q.pop();
        for (int k = 0; k < 3; ++k) {
            const std::int32_t nb = tris_[t].nb[k];
            if (nb >= 0 && parent[nb] == -2) {
                parent[nb] = t;
                q.push(nb);
            }
        }
    }
    std::vector<std::int32_t> chain;
    for (std::int32_t t = ty; t != -1; t = parent[t]) chain.push_back(t);
    std::reverse(chain.begin(), chain.end());

    // Portals as (left, right) seen when walking from x to y.
    std::vector<std::pair<Point, Point>> portals;
    portals.emplace_back(x, x);
    for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
        const Tri& tri = tris_[chain[c]];
        for (int k = 0; k < 3; ++k)
            if (tri.nb[k] == chain[c + 1]) portals.emplace_back(pts_[tri.v[(k + 1) % 3]], pts_[tri.v[k]]);
    }
    portals.emplace_back(y, y);

    // Simple stupid funnel.
    Polyline out{x};
    Point apex = x, left = x, right = x;
    std::size_t apex_i = 0, left_i = 0, right_i = 0;
    for (std::size_t i = 1; i < portals.size(); ++i) {
        const Point pl = portals[i].first, pr = portals[i].second;
        if (orient(apex, right, pr) >= 0.0) {
            if (apex == right || orient(apex, left, pr) < 0.0) {
                right = pr;
                right_i = i;
            } else {
                apex = left;
                apex_i = left_i;
                out.push_back(apex);
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
        if (orient(apex, left, pl) <= 0.0) {
            if (apex == left || orient(apex, right, pl) > 0.0) {
                left = pl;
                left_i = i;
            } else {
                apex = right;
                apex_i = right_i;
                out.push_back(apex);
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
    }
    if (out.back() != y) out.push_back(y);
    return out;
}

double PolygonGeodesic::distance(Point x, Point y) const {
    if (x == y) return 0.0;
    return polyline_length(path(x, y));
}

}  // namespace hypext
