#pragma once

#include "hypext/geometry.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hypext {

enum class PathWeight {
    Length,           // Euclidean edge length
    QuasiHyperbolic,  // length times the endpoint average of 1/dist
};

/// 8-neighbour lattice of interior points at integer multiples of the pitch.
class GridGraph {
public:
    GridGraph(const JordanDomain& domain, double pitch);

    double pitch() const { return pitch_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<double>& boundary_distance() const { return dist_; }
    const JordanDomain& domain() const { return *domain_; }

    /// Shortest path between two points of the closed domain. Throws
    /// DisconnectedAtResolution when no grid path joins them.
    double shortest_path(Point x, Point y, PathWeight weight = PathWeight::Length) const;

    /// Shortest paths from x to each target (one search).
    std::vector<double> shortest_paths(Point x, const std::vector<Point>& targets,
                                       PathWeight weight = PathWeight::Length) const;

private:
    struct Link {
        std::uint32_t node;
        double length;
    };
    struct Anchor {
        Point point;
        double dist = 0.0;
        std::vector<Link> links;
    };

    std::int64_t find(int i, int j) const;
    Anchor anchor(Point z, PathWeight weight) const;
    double weight_of(double length, double da, double db, PathWeight weight) const;
    std::vector<double> search(const Anchor& source, PathWeight weight) const;

    const JordanDomain* domain_;
    double pitch_;
    int j0_ = 0;
    struct Run {
        int i0, i1;
        std::uint32_t first;
    };
    std::vector<std::vector<Run>> rows_;
    std::vector<Point> nodes_;
    std::vector<double> dist_;
    std::vector<std::int32_t> gi_, gj_;
    std::vector<std::uint8_t> mask_;
};

/// Grid approximation of d_I, converging from above as pitch -> 0.
double internal_distance(const JordanDomain& domain, Point x, Point y, double pitch);

struct DiameterResult {
    double value = 0.0;
    Point x, y;
};

/// Max of internal_distance over nested boundary samples (van der Corput
/// order in arclength), so the result is nondecreasing in the sample count.
DiameterResult internal_diameter(const JordanDomain& domain, double pitch, int boundary_samples);

/// Boundary sample k of the nested van der Corput arclength sequence.
Point boundary_sample(const JordanDomain& domain, int k);

/// Exact internal distance by triangulation and funnel shortest path.
class PolygonGeodesic {
public:
    explicit PolygonGeodesic(const JordanDomain& domain);

    /// Shortest path length inside the closed polygon.
    double distance(Point x, Point y) const;
    /// Vertices of the shortest path, endpoints included.
    Polyline path(Point x, Point y) const;

    std::size_t triangle_count() const { return tris_.size(); }

private:
    struct Tri {
        std::uint32_t v[3];
        std::int32_t nb[3];  // neighbour across edge v[k] -> v[k+1]
    };
    std::int32_t locate(Point z) const;

    const JordanDomain* domain_;
    std::vector<Point> pts_;
    std::vector<Tri> tris_;
};

}  // namespace hypext
