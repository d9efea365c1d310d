#pragma once

#include "hypext/geometry.hpp"
#include "hypext/quadrature.hpp"

#include <string>
#include <vector>

namespace hypext {

/// T(z) = a (1-z)/(1+z): disk onto the upper half-plane with T(xi1) = 1,
/// T(conj xi1) = -1 and T(1) = 0.
struct MobiusMap {
    Point a;

    Point operator()(Point z) const { return a * (1.0 - z) / (1.0 + z); }
    Point inverse(Point w) const { return (a - w) / (a + w); }
};

/// Requires xi1 on the open first-quadrant arc of the unit circle.
MobiusMap mobius_disk_to_halfplane(Point xi1);

/// Hyperbolic geodesic of the disk between two circle points, sampled
/// uniformly in arc parameter; endpoints are exactly xi1 and xi2.
Polyline hyperbolic_geodesic_disk(Point xi1, Point xi2, int samples);

/// Circle through the geodesic (center, radius); radius is infinite for a diameter.
struct GeodesicCircle {
    Point center;
    double radius;
    bool diameter;
};
GeodesicCircle geodesic_circle(Point xi1, Point xi2);

enum class MapKind { DiskIdentity, DiskToSquare, SchwarzChristoffel };

std::string to_string(MapKind kind);

/// Riemann map f from the unit disk.
///
/// Schwarz-Christoffel form
///   f(z) = A + C * integral_0^z prod_k (1 - t/zeta_k)^{beta_k} dt,
/// normalized by f(0) = center_image and f'(0) > 0.
class ConformalMap {
public:
    static ConformalMap identity();
    /// Unit square [-1/2,1/2]^2 with f(0) = 0, prevertices at e^{i pi/4} i^k.
    static ConformalMap disk_to_square();
    /// Map with given prevertex angles, turning exponents and target vertices;
    /// A and C are fitted to the first two vertices.
    static ConformalMap from_parameters(MapKind kind, std::vector<double> prevertices, std::vector<double> betas,
                                        std::vector<Point> vertices);

    MapKind kind() const { return kind_; }
    const std::vector<double>& prevertices() const { return theta_; }
    const std::vector<double>& turning() const { return beta_; }
    const std::vector<Point>& vertices() const { return w_; }
    Point scale() const { return C_; }
    Point center_image() const { return A_; }
    /// Certificate: max normalized vertex/side residual.
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }
    /// Diameter scale of the image (bounding-box diagonal).
    double image_scale() const { return image_scale_; }

    Point operator()(Point z) const { return evaluate(z); }
    Point evaluate(Point z) const;
    Point derivative(Point z) const;

    /// Boundary value at angle theta.
    Point boundary_trace(double theta) const;
    /// Position of a boundary image point along the polygon, measured from
    /// the image of the first prevertex; increasing in theta.
    double boundary_arclength(double theta) const;
    /// Inverse of boundary_arclength, result in [theta_0, theta_0 + 2 pi).
    double boundary_angle(double arclength) const;
    double perimeter() const { return perimeter_; }
    /// Arclength position of a point on the image boundary (nearest side).
    double boundary_arclength_of_point(Point w) const;

    /// Newton preimage with multistart; residual |f(z) - w| < tol * image_scale.
    Point preimage(Point w, double tol = 1e-12) const;

    /// Map a polyline incrementally (short segment integrals).
    Polyline map_polyline(const Polyline& z) const;

    /// Integral of the SC integrand along the segment a -> b.
    Point integrate(Point a, Point b) const;

private:
    ConformalMap() = default;
    void prepare();
    int singular_index(Point z) const;
    Point integrate_from_singular(int k, Point b) const;
    Point integrate_regular(Point a, Point b) const;
    Point integrand(Point t, int skip = -1) const;

    MapKind kind_ = MapKind::DiskIdentity;
    std::vector<double> theta_;
    std::vector<double> beta_;
    std::vector<Point> zeta_;
    std::vector<Point> w_;
    std::vector<Point> I_;  // integral from 0 to zeta_k
    std::vector<double> side_start_;  // arclength at vertex k
    std::vector<quad::Rule> jacobi_;
    Point A_{0.0, 0.0};
    Point C_{1.0, 0.0};
    double residual_ = 0.0;
    int iterations_ = 0;
    double image_scale_ = 2.0;
    double perimeter_ = kTwoPi;

    friend ConformalMap solve_schwarz_christoffel(const JordanDomain&, Point, double, int);
};

/// Solve the prevertex problem for a polygon (at most 64 vertices).
ConformalMap solve_schwarz_christoffel(const JordanDomain& domain, Point z0_image, double tol = 1e-10,
                                       int max_iterations = 200);

}  // namespace hypext
