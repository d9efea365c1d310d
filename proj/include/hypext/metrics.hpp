#pragma once

#include "hypext/conformal.hpp"
#include "hypext/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypext {

/// 2 artanh(|z1 - z2| / |1 - conj(z1) z2|), exactly symmetric.
double hyperbolic_distance_disk(Point z1, Point z2);

/// Pullback of the disk metric through the map's preimages.
double hyperbolic_distance(const ConformalMap& map, Point w1, Point w2, double tol = 1e-12);

/// Grid shortest path with density 1/dist(z, boundary).
double quasi_hyperbolic_distance(const JordanDomain& domain, Point z1, Point z2, double pitch);

/// Hyperbolic geodesic segment between two interior disk points.
Polyline hyperbolic_segment_disk(Point z1, Point z2, int samples);

struct MetricSample {
    Point z1, z2;
    double h = 0.0;
    double k = 0.0;
    double geodesic_length = 0.0;
};

struct ComparabilityReport {
    std::vector<MetricSample> samples;
    double min = 0.0, median = 0.0, max = 0.0;
    int excluded = 0;  // coincident pairs
    double pitch = 0.0;
    /// Numeric gate 1/4 <= h/k <= 4 (continuum constants 1/2, 2 with factor-2 slack).
    bool within_gate = false;
};

ComparabilityReport comparability_report(const ConformalMap& map, const JordanDomain& domain, int samples, double pitch,
                                         std::uint64_t seed = 1);

/// Same statistics over caller-supplied pairs.
ComparabilityReport comparability_from_pairs(const ConformalMap& map, const JordanDomain& domain,
                                             const std::vector<std::pair<Point, Point>>& pairs, double pitch);

/// Length of the image geodesic between two circle points over d_I of its endpoints.
double gehring_hayman_ratio(const ConformalMap& map, const JordanDomain& domain, Point xi1, Point xi2, double pitch,
                            int geodesic_samples = 512);

/// CSV rows x1,y1,x2,y2,h,k,geodesic_length,pitch.
std::string metric_samples_csv(const ComparabilityReport& report);

}  // namespace hypext
