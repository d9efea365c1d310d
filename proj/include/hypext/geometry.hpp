#pragma once

#include "hypext/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace hypext {

struct BoundingBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::hypot(width(), height()); }
};

/// Closest boundary location of a query point.
struct BoundaryProjection {
    std::size_t edge = 0;  // edge i joins vertex i to vertex i+1
    double t = 0.0;        // position along the edge in [0,1]
    Point point;
    double distance = 0.0;
};

class EdgeIndex;

/// Polygonal Jordan domain, counterclockwise, validated simple.
///
/// Immutable after construction; all queries are const and safe to share
/// across threads.
class JordanDomain {
public:
    /// Validates and normalizes orientation. A trailing vertex equal to the
    /// first one is treated as an explicit closure and dropped.
    static JordanDomain from_vertices(std::vector<Point> vertices, double resolution_hint = 0.0);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    const BoundingBox& bbox() const { return bbox_; }
    double resolution_hint() const { return resolution_hint_; }
    double area() const { return area_; }
    double perimeter() const { return cumulative_.back(); }

    /// Strict interior test (even-odd rule).
    bool contains(Point z) const;

    /// Exact distance to the polygon boundary. Throws PointOutside for points
    /// strictly outside the closed domain.
    double distance_to_boundary(Point z) const;

    /// Distance to the boundary curve without the inside check.
    double boundary_distance(Point z) const { return project(z).distance; }

    BoundaryProjection project(Point z) const;

    /// Arclength coordinate of a boundary location, measured from vertex 0.
    double arclength_at(std::size_t edge, double t) const;
    double arclength_of(Point boundary_point) const;

    /// Boundary point at arclength s (taken modulo the perimeter).
    Point point_at_arclength(double s) const;

    /// True when the segment a->b meets the boundary at a parameter in
    /// (skip_start, 1]; skip_start lets segments leave a boundary point.
    bool segment_hits_boundary(Point a, Point b, double skip_start = 0.0) const;

    /// Edges whose bounding box meets the given box.
    void edges_near(const BoundingBox& box, std::vector<std::uint32_t>& out) const;

    /// Empty placeholder; assign from from_vertices before use.
    JordanDomain() = default;

private:

    std::vector<Point> vertices_;
    std::vector<double> cumulative_;  // cumulative_[i] = arclength at vertex i; back() = perimeter
    BoundingBox bbox_;
    double resolution_hint_ = 0.0;
    double area_ = 0.0;
    std::shared_ptr<const EdgeIndex> index_;
};

/// Signed area (positive for counterclockwise order).
double signed_area(const std::vector<Point>& vertices);

/// Closed-segment intersection test, touching counts.
bool segments_intersect(Point a, Point b, Point c, Point d);

/// Distance from z to the segment a-b, with the projection parameter.
double segment_distance(Point z, Point a, Point b, double* t_out = nullptr);

/// Regular n-gon inscribed in the circle of given radius about center.
std::vector<Point> regular_polygon(int n, double radius = 1.0, Point center = {0.0, 0.0}, double phase = 0.0);

}  // namespace hypext
