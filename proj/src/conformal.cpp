#include "hypext/conformal.hpp"

#include "hypext/error.hpp"

#include <cmath>

namespace hypext {

MobiusMap mobius_disk_to_halfplane(Point xi1) {
    if (std::abs(std::abs(xi1) - 1.0) > 1e-12 || !(xi1.real() > 0.0) || !(xi1.imag() > 0.0))
        throw Error(ErrorCode::InvalidNormalization, "xi1 must lie on the open first-quadrant arc of the unit circle");
    return MobiusMap{(1.0 + xi1) / (1.0 - xi1)};
}

GeodesicCircle geodesic_circle(Point xi1, Point xi2) {
    if (std::abs(xi1 - xi2) < 1e-15) throw Error(ErrorCode::CoincidentEndpoints, "geodesic endpoints coincide");
    const double sep = std::abs(std::arg(xi2 / xi1));  // in (0, pi]
    if (kPi - sep < 1e-12) return {Point(0.0, 0.0), std::numeric_limits<double>::infinity(), true};
    const Point dir = (xi1 + xi2) / std::abs(xi1 + xi2);
    const double half = 0.5 * sep;
    return {dir / std::cos(half), std::tan(half), false};
}

Polyline hyperbolic_geodesic_disk(Point xi1, Point xi2, int samples) {
    if (samples < 2) throw Error(ErrorCode::InvalidArgument, "geodesic needs at least 2 samples");
    const GeodesicCircle g = geodesic_circle(xi1, xi2);
    Polyline out(samples);
    if (g.diameter) {
        for (int i = 0; i < samples; ++i) {
            const double s = static_cast<double>(i) / (samples - 1);
            out[i] = (1.0 - s) * xi1 + s * xi2;
        }
    } else {
        const double a1 = std::arg(xi1 - g.center);
        const double sweep = std::arg((xi2 - g.center) / (xi1 - g.center));
        for (int i = 0; i < samples; ++i) {
            const double s = static_cast<double>(i) / (samples - 1);
            out[i] = g.center + std::polar(g.radius, a1 + s * sweep);
        }
    }
    out.front() = xi1;
    out.back() = xi2;
    return out;
}

std::string to_string(MapKind kind) {
    switch (kind) {
        case MapKind::DiskIdentity: return "closed_form_disk_identity";
        case MapKind::DiskToSquare: return "closed_form_disk_to_square";
        case MapKind::SchwarzChristoffel: return "schwarz_christoffel";
    }
    return "unknown";
}

}  // namespace hypext
