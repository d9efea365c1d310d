#pragma once

#include "hypext/crosscuts.hpp"

#include <optional>
#include <vector>

namespace hypext {

/// Disk geodesic between two circle points, parametrized on [0,1] by the
/// turning angle of its supporting circle (straight for a diameter).
struct GeodesicArc {
    Point xi1, xi2;
    Point center;
    double sweep = 0.0;
    bool diameter = false;

    static GeodesicArc between(Point xi1, Point xi2);
    Point at(double u) const;
    Point tangent(double u) const;
    /// True when z lies on the side of the arc that contains the origin.
    bool origin_side(Point z) const;
};

struct ExtensionCell {
    int n = 0;  // lune between gamma_{n,j} and its two children; n0 - 1 marks the inner polygon
    long j = 0;
    double energy = 0.0;
    std::size_t nodes = 0;
    std::size_t folded = 0;  // quadrature nodes where the Jacobian changes orientation
};

struct ExtensionResult {
    double p = 1.0;
    int n0 = 0, N = 0;
    double inner_energy = 0.0;
    /// E_p(n) for n = n0..N: energy over the ideal 2^n-gon with vertices e^{i theta_{n,j}}.
    std::vector<double> energy_by_depth;
    std::vector<ExtensionCell> cells;
    std::size_t folded_nodes = 0;
    std::vector<std::pair<int, long>> overlaps;  // cells with folded nodes
    double energy() const { return energy_by_depth.back(); }
};

/// Finite-depth extension Phi_N: the ideal 2^{n0}-gon is mapped by a fan map
/// onto the preimage polygon followed by the conformal map; each lune between
/// gamma_{n,j} and its two children is mapped by bilinear blending of the
/// corresponding image crosscuts.
class Extension {
public:
    Extension(const ConformalMap& map, BoundaryParam boundary_param, const DyadicCycles& cycles, int N);

    int n0() const { return n0_; }
    int N() const { return N_; }

    /// Phi_N on lune (n, j) at local coordinates u in [0,1] along the arc, v in [0,1] from parent to children.
    Point cell_point(int n, long j, double u, double v) const;
    /// Source point of lune (n, j) at (u, v).
    Point source_point(int n, long j, double u, double v) const;
    /// Phi_N at a disk point, or nothing outside the covered ideal 2^N-gon.
    std::optional<Point> evaluate(Point z) const;

    ExtensionResult energy(double p) const;

private:
    Point image_curve(int n, long j, double u) const;  // f(geodesic between xi's); endpoints from boundary_param
    double source_angle(int n, long j) const;
    Point source_vertex(int n, long j) const { return std::polar(1.0, source_angle(n, j)); }
    Point target_vertex(int n, long j) const { return std::polar(1.0, cycles_.xi_angle(n, j)); }
    std::optional<Point> evaluate_inner(Point z) const;

    const ConformalMap& map_;
    BoundaryParam bp_;
    const DyadicCycles& cycles_;
    int n0_, N_;
};

ExtensionResult build_extension(const ConformalMap& map, const BoundaryParam& boundary_param,
                                const DyadicCycles& cycles, int N, double p);

}  // namespace hypext
