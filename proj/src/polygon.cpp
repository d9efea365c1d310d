#include "hypext/geometry.hpp"

#include "hypext/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypext {

// Uniform bucket grid over edge bounding boxes.
class EdgeIndex {
public:
    EdgeIndex(const std::vector<Point>& v, const BoundingBox& box) : box_(box) {
        const std::size_t n = v.size();
        const double w = std::max(box.width(), 1e-300);
        const double h = std::max(box.height(), 1e-300);
        double cell = std::sqrt(w * h / static_cast<double>(std::max<std::size_t>(n, 1)));
        cell = std::max({cell, w / 1024.0, h / 1024.0});
        cell_ = cell;
        nx_ = std::max(1, static_cast<int>(std::ceil(w / cell)));
        ny_ = std::max(1, static_cast<int>(std::ceil(h / cell)));
        cells_.resize(static_cast<std::size_t>(nx_) * ny_);
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = v[i];
            const Point b = v[(i + 1) % n];
            const int x0 = col(std::min(a.real(), b.real()));
            const int x1 = col(std::max(a.real(), b.real()));
            const int y0 = row(std::min(a.imag(), b.imag()));
            const int y1 = row(std::max(a.imag(), b.imag()));
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x) cells_[idx(x, y)].push_back(static_cast<std::uint32_t>(i));
        }
    }

    int col(double x) const { return std::clamp(static_cast<int>(std::floor((x - box_.xmin) / cell_)), 0, nx_ - 1); }
    int row(double y) const { return std::clamp(static_cast<int>(std::floor((y - box_.ymin) / cell_)), 0, ny_ - 1); }
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * nx_ + x; }

    const std::vector<std::uint32_t>& cell(int x, int y) const { return cells_[idx(x, y)]; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double cell_size() const { return cell_; }

    void collect(const BoundingBox& q, std::vector<std::uint32_t>& out) const {
        out.clear();
        if (q.xmax < box_.xmin || q.xmin > box_.xmax || q.ymax < box_.ymin || q.ymin > box_.ymax) return;
        const int x0 = col(q.xmin), x1 = col(q.xmax), y0 = row(q.ymin), y1 = row(q.ymax);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const auto& c = cells_[idx(x, y)];
                out.insert(out.end(), c.begin(), c.end());
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

private:
    BoundingBox box_;
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
};

double signed_area(const std::vector<Point>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * s;
}

namespace {

bool on_segment(Point a, Point b, Point p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

int sign(double x) { return (x > 0) - (x < 0); }

// Parameter along a->b of its intersection with c-d, or nullopt.
std::optional<double> hit_parameter(Point a, Point b, Point c, Point d) {
    const Point r = b - a;
    const Point s = d - c;
    const double den = cross(r, s);
    const double scale = std::abs(r) * std::abs(s);
    if (std::abs(den) <= 1e-14 * scale) {
        if (std::abs(orient(a, b, c)) > 1e-14 * scale + 1e-300) return std::nullopt;
        // Collinear: first overlap parameter.
        const double rr = dot(r, r);
        if (rr == 0.0) return std::nullopt;
        double t0 = dot(c - a, r) / rr;
        double t1 = dot(d - a, r) / rr;
        if (t0 > t1) std::swap(t0, t1);
        if (t1 < 0.0 || t0 > 1.0) return std::nullopt;
        return std::max(t0, 0.0);
    }
    const double t = cross(c - a, s) / den;
    const double u = cross(c - a, r) / den;
    const double eps = 1e-12;
    if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
    const int o1 = sign(orient(a, b, c));
    const int o2 = sign(orient(a, b, d));
    const int o3 = sign(orient(c, d, a));
    const int o4 = sign(orient(c, d, b));
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double segment_distance(Point z, Point a, Point b, double* t_out) {
    const Point ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? std::clamp(dot(z - a, ab) / len2, 0.0, 1.0) : 0.0;
    if (t_out) *t_out = t;
    return std::abs(z - (a + t * ab));
}

std::vector<Point> regular_polygon(int n, double radius, Point center, double phase) {
    std::vector<Point> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) v.push_back(center + std::polar(radius, phase + kTwoPi * k / n));
    return v;
}

JordanDomain JordanDomain::from_vertices(std::vector<Point> v, double resolution_hint) {
    if (v.size() >= 2 && v.front() == v.back()) v.pop_back();
    if (v.size() < 3) throw Error(ErrorCode::TooFewVertices, "need at least 3 vertices, got " + std::to_string(v.size()));
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] == v[(i + 1) % n]) throw Error(ErrorCode::DegenerateEdge, "repeated vertex at index " + std::to_string(i));
    JordanDomain d;
    d.vertices_ = std::move(v);
    auto& bb = d.bbox_;
    bb.xmin = bb.xmax = d.vertices_[0].real();
    bb.ymin = bb.ymax = d.vertices_[0].imag();
    for (const Point& p : d.vertices_) {
        bb.xmin = std::min(bb.xmin, p.real());
        bb.xmax = std::max(bb.xmax, p.real());
        bb.ymin = std::min(bb.ymin, p.imag());
        bb.ymax = std::max(bb.ymax, p.imag());
    }
    d.index_ = std::make_shared<EdgeIndex>(d.vertices_, bb);

    // Simplicity: non-adjacent edges must not meet; adjacent edges meet only at the shared vertex.
    std::vector<std::uint32_t> near;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a0 = d.vertex(i), a1 = d.vertex(i + 1);
        BoundingBox q{std::min(a0.real(), a1.real()), std::max(a0.real(), a1.real()),
                      std::min(a0.imag(), a1.imag()), std::max(a0.imag(), a1.imag())};
        d.index_->collect(q, near);
        for (std::uint32_t j : near) {
            if (j <= i) continue;
            const Point b0 = d.vertex(j), b1 = d.vertex(j + 1);
            const bool next = j == i + 1;
            const bool prev = i == 0 && j == n - 1;
            if (next || prev) {
                // Shared vertex; reject folding back along the same line.
                const Point shared = next ? a1 : a0;
                const Point u = (next ? a0 : a1) - shared;
                const Point w = (next ? b1 : b0) - shared;
                if (std::abs(cross(u, w)) <= 1e-14 * std::abs(u) * std::abs(w) && dot(u, w) > 0.0)
                    throw Error(ErrorCode::SelfIntersecting, "edges " + std::to_string(i) + " and " +
                                                                 std::to_string(j) + " overlap");
                continue;
            }
            if (segments_intersect(a0, a1, b0, b1))
                throw Error(ErrorCode::SelfIntersecting,
                            "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
    }

    const double a = signed_area(d.vertices_);
    if (a == 0.0) throw Error(ErrorCode::DegenerateEdge, "zero signed area");
    if (a < 0.0) {
        std::reverse(d.vertices_.begin(), d.vertices_.end());
        d.index_ = std::make_shared<EdgeIndex>(d.vertices_, bb);
    }
    d.area_ = std::abs(a);
    d.cumulative_.resize(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) d.cumulative_[i + 1] = d.cumulative_[i] + std::abs(d.vertex(i + 1) - d.vertex(i));
    d.resolution_hint_ = resolution_hint > 0.0 ? resolution_hint : bb.diagonal() / 200.0;
    return d;
}

bool JordanDomain::contains(Point z) const {
    if (z.real() <= bbox_.xmin || z.real() >= bbox_.xmax || z.imag() <= bbox_.ymin || z.imag() >= bbox_.ymax)
        return false;
    const int y = index_->row(z.imag());
    const int x0 = index_->col(z.real());
    std::vector<std::uint32_t> edges;
    for (int x = x0; x < index_->nx(); ++x) {
        const auto& c = index_->cell(x, y);
        edges.insert(edges.end(), c.begin(), c.end());
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    bool inside = false;
    for (std::uint32_t i : edges) {
        const Point a = vertex(i), b = vertex(i + 1);
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
            if (x > z.real()) inside = !inside;
        }
    }
    if (!inside) return false;
    return project(z).distance > 0.0;
}

BoundaryProjection JordanDomain::project(Point z) const {
    BoundaryProjection best;
    best.distance = std::numeric_limits<double>::infinity();
    const int cx = index_->col(z.real());
    const int cy = index_->row(z.imag());
    const double h = index_->cell_size();
    const int rmax = std::max(index_->nx(), index_->ny());
    // Distance from z to the clamped grid box bounds every unvisited ring from below.
    const double off = std::hypot(std::max({bbox_.xmin - z.real(), 0.0, z.real() - bbox_.xmax}),
                                  std::max({bbox_.ymin - z.imag(), 0.0, z.imag() - bbox_.ymax}));
    for (int r = 0; r <= rmax; ++r) {
        if (r > 0 && off + (r - 1) * h > best.distance) break;
        for (int y = cy - r; y <= cy + r; ++y) {
            if (y < 0 || y >= index_->ny()) continue;
            const bool edge_row = (y == cy - r || y == cy + r);
            for (int x = cx - r; x <= cx + r; x += edge_row ? 1 : 2 * r) {
                if (x >= 0 && x < index_->nx()) {
                    for (std::uint32_t i : index_->cell(x, y)) {
                        double t = 0.0;
                        const double dist = segment_distance(z, vertex(i), vertex(i + 1), &t);
                        if (dist < best.distance) {
                            best.distance = dist;
                            best.edge = i;
                            best.t = t;
                        }
                    }
                }
                if (r == 0) break;
            }
        }
    }
    best.point = vertex(best.edge) + best.t * (vertex(best.edge + 1) - vertex(best.edge));
    return best;
}

double JordanDomain::distance_to_boundary(Point z) const {
    const BoundaryProjection p = project(z);
    if (p.distance > 0.0 && !contains(z))
        throw Error(ErrorCode::PointOutside, "point outside domain");
    return p.distance;
}

double JordanDomain::arclength_at(std::size_t edge, double t) const {
    edge %= vertices_.size();
    return cumulative_[edge] + t * (cumulative_[edge + 1] - cumulative_[edge]);
}

double JordanDomain::arclength_of(Point boundary_point) const {
    const BoundaryProjection p = project(boundary_point);
    return arclength_at(p.edge, p.t);
}

Point JordanDomain::point_at_arclength(double s) const {
    const double L = perimeter();
    s = std::fmod(s, L);
    if (s < 0.0) s += L;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0));
    i = std::min(i, vertices_.size() - 1);
    const double len = cumulative_[i + 1] - cumulative_[i];
    const double t = len > 0.0 ? (s - cumulative_[i]) / len : 0.0;
    return vertex(i) + std::clamp(t, 0.0, 1.0) * (vertex(i + 1) - vertex(i));
}

void JordanDomain::edges_near(const BoundingBox& box, std::vector<std::uint32_t>& out) const {
    index_->collect(box, out);
}

bool JordanDomain::segment_hits_boundary(Point a, Point b, double skip_start) const {
    BoundingBox q{std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
                  std::max(a.imag(), b.imag())};
    std::vector<std::uint32_t> near;
    index_->collect(q, near);
    for (std::uint32_t i : near) {
        const auto t = hit_parameter(a, b, vertex(i), vertex(i + 1));
        if (t && *t > skip_start) return true;
        // A segment leaving a boundary point may graze the neighbouring edges further on.
        if (t && skip_start > 0.0) {
            const Point r = b - a;
            const Point c = vertex(i), d = vertex(i + 1);
            const double rr = dot(r, r);
            const double tc = dot(c - a, r) / rr, td = dot(d - a, r) / rr;
            const bool cline = std::abs(orient(a, b, c)) <= 1e-14 * rr;
            const bool dline = std::abs(orient(a, b, d)) <= 1e-14 * rr;
            if ((cline && tc > skip_start && tc <= 1.0) || (dline && td > skip_start && td <= 1.0)) return true;
        }
    }
    return false;
}

}  // namespace hypext
