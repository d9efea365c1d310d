#pragma once

#include "hypext/conformal.hpp"
#include "hypext/phi.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hypext {

/// Boundary parametrization theta -> point of the image boundary.
using BoundaryParam = std::function<Point(double)>;

/// theta -> f(e^{i theta}).
BoundaryParam own_trace(const ConformalMap& map);

/// Preimage angle of a boundary point under the map's boundary trace.
double boundary_preimage_angle(const ConformalMap& map, Point w);

/// Dyadic arcs I_{n,j} = [theta0 + 2 pi j / 2^n, theta0 + 2 pi (j+1) / 2^n], n0 <= n <= N.
class DyadicFamily {
public:
    DyadicFamily(int n0, int N, double theta0 = 0.0);

    int n0() const { return n0_; }
    int N() const { return N_; }
    double theta0() const { return theta0_; }
    double endpoint(int n, long j) const;  // j taken mod 2^n
    std::pair<double, double> arc(int n, long j) const { return {endpoint(n, j), endpoint(n, j + 1)}; }
    long count(int n) const { return 1L << n; }

    /// Equal length, disjoint interiors, cover and two-children axioms.
    bool verify(std::string* why = nullptr) const;

private:
    int n0_, N_;
    double theta0_;
};

struct DyadicCycles {
    DyadicFamily family{1, 1};
    int n0 = 0;
    /// xi angles for generation N (unwrapped, increasing); generation n uses every 2^{N-n}-th entry.
    std::vector<double> xi_angles;
    std::vector<double> max_gap;  // per generation 1..N (index n-1), chord length
    double xi_angle(int n, long j) const;
};

/// Preimages xi_{n,j} of boundary_param(theta_{n,j}) and the least n0 with all chord gaps <= 4 pi/(1+pi^2).
DyadicCycles build_dyadic_cycles(const BoundaryParam& boundary_param, const ConformalMap& map, int N);

struct Crosscut {
    int n = 0;
    long j = 0;
    Point xi1, xi2;      // disk endpoints
    Polyline polyline;   // image
    double length = 0.0;
    double refined_length = 0.0;  // with doubled samples (0 when not computed)
    double chord = 0.0;
};

/// Image of the disk geodesic between xi1 and xi2.
Crosscut crosscut(const ConformalMap& map, Point xi1, Point xi2, int samples = 65, bool refine = false);

/// All crosscuts of generations n0..N, generation-major.
struct CrosscutFamily {
    int n0 = 0, N = 0;
    std::vector<std::vector<Crosscut>> generations;  // index n - n0
    const Crosscut& at(int n, long j) const { return generations[n - n0][j]; }
};
CrosscutFamily build_crosscut_family(const ConformalMap& map, const BoundaryParam& boundary_param,
                                     const DyadicCycles& cycles, int n0, int N, int samples = 65);

struct CrosscutSum {
    double p = 1.0;
    int n0 = 0, N = 0;
    std::vector<double> terms;     // T_n
    std::vector<double> partials;  // S_p(n)
    std::vector<double> ratios;    // T_{n+1}/T_n
    bool convergent = false;       // last 4 ratios < 0.97
};
CrosscutSum crosscut_sum(const CrosscutFamily& family, double p);

struct DisjointnessAudit {
    std::size_t crosscuts = 0;
    std::size_t segments = 0;
    std::size_t endpoint_contacts = 0;
    std::size_t violations = 0;
    std::vector<std::pair<std::pair<int, long>, std::pair<int, long>>> examples;
    bool passed() const { return violations == 0; }
};
/// Pairwise polyline intersection test; contacts next to a shared endpoint are allowed.
DisjointnessAudit audit_disjointness(const CrosscutFamily& family);

/// Cells of the geodesic decomposition in half-plane coordinates after the
/// Moebius normalization; m ranges over +-1..+-m_max.
struct GeodesicCellDecomposition {
    double rotation = 0.0;  // disk rotation applied so that xi1 = conj(xi2) with xi1 in the first quadrant
    MobiusMap T{};
    int m_max = 0;
    double theta(int m) const;  // pi / 2^|m|
    double R(int m) const;      // 1 - 2^{-(|m|+1)}
    Point z(int m) const;       // corner point in half-plane coordinates
    /// Angular interval of A_m in half-plane polar coordinates.
    std::pair<double, double> angles(int m) const;
    double area_halfplane(int m) const;
    /// Map a half-plane point back to original disk coordinates.
    Point to_disk(Point w) const;
    /// Sampled boundary of A_m in disk coordinates.
    Polyline cell_boundary_disk(int m, int samples = 16) const;
    Polyline arc_disk(int m, int samples = 16) const;  // C_m
    bool disjoint = false;
};
GeodesicCellDecomposition cell_decomposition(Point xi1, Point xi2, int m_max);

struct LengthBoundReport {
    double length = 0.0;
    double lhs = 0.0;             // length^2
    double tail_integral = 0.0;   // int_{log2/2}^inf 1/phi
    double delta_integral = 0.0;  // int_Delta phi(h(z, f(0))) dz
    double empirical_c = 0.0;
};
LengthBoundReport crosscut_length_bound_check(const ConformalMap& map, const PhiSpec& spec, Point xi1, Point xi2,
                                              int m_max);

struct CycleReport {
    std::vector<double> lengths;
    double sum_sq = 0.0;
    /// sqrt(K * sum l^2) with K = number of legs: bound on d_I between cycle images.
    double diameter_bound = 0.0;
    std::vector<Crosscut> legs;
    /// Sum of leg lengths from x_l to x_m.
    double path_length(int l, int m) const;
};
CycleReport cycle_crosscut_sum(const ConformalMap& map, const std::vector<Point>& cycle, int samples = 129);

}  // namespace hypext
