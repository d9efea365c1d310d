#include "hypext/metrics.hpp"

#include "hypext/error.hpp"
#include "hypext/grid_graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hypext {

double hyperbolic_distance_disk(Point z1, Point z2) {
    if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) throw Error(ErrorCode::OutsideDisk, "points must satisfy |z| < 1");
    if (std::make_pair(z2.real(), z2.imag()) < std::make_pair(z1.real(), z1.imag())) std::swap(z1, z2);
    const double rho = std::abs(z1 - z2) / std::abs(1.0 - std::conj(z1) * z2);
    return 2.0 * std::atanh(std::min(rho, 1.0));
}

double hyperbolic_distance(const ConformalMap& map, Point w1, Point w2, double tol) {
    return hyperbolic_distance_disk(map.preimage(w1, tol), map.preimage(w2, tol));
}

double quasi_hyperbolic_distance(const JordanDomain& domain, Point z1, Point z2, double pitch) {
    return GridGraph(domain, pitch).shortest_path(z1, z2, PathWeight::QuasiHyperbolic);
}

Polyline hyperbolic_segment_disk(Point z1, Point z2, int samples) {
    // Move z1 to 0; the geodesic through 0 is a radius.
    const Point b = (z2 - z1) / (1.0 - std::conj(z1) * z2);
    Polyline out(samples);
    for (int i = 0; i < samples; ++i) {
        const Point t = b * (static_cast<double>(i) / (samples - 1));
        out[i] = (t + z1) / (1.0 + std::conj(z1) * t);
    }
    out.front() = z1;
    out.back() = z2;
    return out;
}

ComparabilityReport comparability_from_pairs(const ConformalMap& map, const JordanDomain& domain,
                                             const std::vector<std::pair<Point, Point>>& pairs, double pitch) {
    const GridGraph graph(domain, pitch);
    ComparabilityReport rep;
    rep.pitch = pitch;
    std::vector<double> ratios;
    for (const auto& [w1, w2] : pairs) {
        if (w1 == w2) {
            ++rep.excluded;
            continue;
        }
        MetricSample s;
        s.z1 = w1;
        s.z2 = w2;
        const Point p1 = map.preimage(w1), p2 = map.preimage(w2);
        s.h = hyperbolic_distance_disk(p1, p2);
        s.k = graph.shortest_path(w1, w2, PathWeight::QuasiHyperbolic);
        s.geodesic_length = polyline_length(map.map_polyline(hyperbolic_segment_disk(p1, p2, 65)));
        ratios.push_back(s.h / s.k);
        rep.samples.push_back(s);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        rep.min = ratios.front();
        rep.max = ratios.back();
        const std::size_t m = ratios.size();
        rep.median = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
        rep.within_gate = rep.min >= 0.25 && rep.max <= 4.0;
    }
    return rep;
}

ComparabilityReport comparability_report(const ConformalMap& map, const JordanDomain& domain, int samples, double pitch,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& bb = domain.bbox();
    std::uniform_real_distribution<double> ux(bb.xmin, bb.xmax), uy(bb.ymin, bb.ymax);
    auto draw = [&] {
        for (;;) {
            const Point z(ux(rng), uy(rng));
            if (domain.contains(z) && domain.boundary_distance(z) > 2.0 * pitch) return z;
        }
    };
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < samples; ++i) {
        const Point a = draw();
        const Point b = draw();
        pairs.emplace_back(a, b);
    }
    return comparability_from_pairs(map, domain, pairs, pitch);
}

double gehring_hayman_ratio(const ConformalMap& map, const JordanDomain& domain, Point xi1, Point xi2, double pitch,
                            int geodesic_samples) {
    const Polyline image = map.map_polyline(hyperbolic_geodesic_disk(xi1, xi2, geodesic_samples));
    // endpoints of a polygonal approximation of a curved boundary are snapped onto it
    auto snap = [&domain](Point z) { return domain.contains(z) ? z : domain.project(z).point; };
    const double d = internal_distance(domain, snap(image.front()), snap(image.back()), pitch);
    return polyline_length(image) / d;
}

std::string metric_samples_csv(const ComparabilityReport& report) {
    std::ostringstream os;
    os.precision(12);
    os << "x1,y1,x2,y2,h,k,geodesic_length,pitch\n";
    for (const auto& s : report.samples)
        os << s.z1.real() << ',' << s.z1.imag() << ',' << s.z2.real() << ',' << s.z2.imag() << ',' << s.h << ','
           << s.k << ',' << s.geodesic_length << ',' << report.pitch << '\n';
    return os.str();
}

}  // namespace hypext
