#include "hypext/counterexample.hpp"

#include "hypext/error.hpp"
#include "hypext/grid_graph.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace hypext {

BoundaryParam arclength_reference(const JordanDomain& domain, Point tip) {
    auto dom = std::make_shared<JordanDomain>(domain);
    const double P = dom->perimeter();
    const double s_tip = dom->arclength_of(tip);
    return [dom, P, s_tip](double t) {
        double s = std::fmod(s_tip + (t - kPi) / kTwoPi * P, P);
        if (s < 0.0) s += P;
        return dom->point_at_arclength(s);
    };
}

DistanceOracle polygon_distance_oracle(const JordanDomain& domain, Point basepoint) {
    auto dom = std::make_shared<JordanDomain>(domain);
    auto pg = std::make_shared<PolygonGeodesic>(*dom);
    return [dom, pg, basepoint](const std::vector<Point>& pts) {
        std::vector<double> out;
        out.reserve(pts.size());
        for (const Point& z : pts) out.push_back(pg->distance(basepoint, z));
        return out;
    };
}

double BadParametrizationPlan::reference_angle(double t) const {
    t = std::remainder(t, kTwoPi);
    if (t <= table.front().first) return table.front().second;
    auto it = std::upper_bound(table.begin(), table.end(), t,
                               [](double x, const std::pair<double, double>& k) { return x < k.first; });
    if (it == table.end()) return table.back().second;
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
}

BadParametrizationPlan bad_parametrization(const BoundaryParam& reference, const DistanceOracle& oracle, int N,
                                           double unit, bool strict, int samples) {
    BadParametrizationPlan plan;
    if (N < plan.first_level) throw Error(ErrorCode::InvalidArgument, "N must be >= 2");
    plan.reference = reference;
    // Probe angles graded toward the accumulation angle pi.
    std::vector<double> t(samples);
    const double span = N + 8.0;
    for (int j = 0; j < samples; ++j) t[j] = kPi * (1.0 - std::exp2(-span * (j + 0.5) / samples));
    std::vector<Point> pts(samples);
    for (int j = 0; j < samples; ++j) pts[j] = reference(t[j]);
    const std::vector<double> D = oracle(pts);

    const auto lowest = std::min_element(D.begin(), D.end());
    plan.offset = *lowest;
    const double range = *std::max_element(D.begin(), D.end()) - plan.offset;
    if (unit <= 0.0) unit = 0.95 * range / (2.0 * std::ldexp(1.0, 2 * N));
    plan.unit = unit;

    double prev_end = t[lowest - D.begin()];
    for (int n = plan.first_level; n <= N; ++n) {
        const double threshold = plan.offset + unit * std::ldexp(1.0, 2 * n);
        const double lo = prev_end;
        int pick = -1;
        for (int j = 0; j < samples; ++j)
            if (t[j] > lo && D[j] - plan.offset >= 2.0 * (threshold - plan.offset)) {
                pick = j;
                break;
            }
        if (pick < 0) break;
        const double tn = t[pick];
        const double r = (D[pick] - threshold) / kTwoPi;
        double delta = 0.5 * std::min(tn - lo, kPi - tn);
        const Point centre = reference(tn);
        auto fits = [&](double dl) {
            for (int k = -16; k <= 16; ++k)
                if (std::abs(reference(tn + dl * k / 16.0) - centre) > r) return false;
            return true;
        };
        while (delta > 1e-15 && !fits(delta)) delta *= 0.5;
        std::vector<Point> probe(33);
        for (int k = 0; k < 33; ++k) probe[k] = reference(tn - delta + 2.0 * delta * k / 32.0);
        const std::vector<double> d = oracle(probe);
        const double dmin = *std::min_element(d.begin(), d.end());
        if (dmin < threshold) break;
        plan.levels.push_back(n);
        plan.theta.push_back(tn);
        plan.delta.push_back(delta);
        plan.alpha.push_back(kPi - kPi / std::ldexp(1.0, n));
        plan.width.push_back(kPi / std::ldexp(1.0, 2 * n));
        plan.certified_distance.push_back(dmin);
        plan.max_certified = n;
        prev_end = tn + delta;
    }
    if (plan.levels.empty() || (strict && plan.max_certified < N))
        throw Error(ErrorCode::InsufficientDepth,
                    "certified levels up to " + std::to_string(plan.max_certified) + " of " + std::to_string(N));

    plan.table.push_back({-kPi, -kPi});
    for (std::size_t k = 0; k < plan.levels.size(); ++k) {
        plan.table.push_back({plan.alpha[k], plan.theta[k] - plan.delta[k]});
        plan.table.push_back({plan.alpha[k] + plan.width[k], plan.theta[k] + plan.delta[k]});
    }
    plan.table.push_back({kPi, kPi});
    for (std::size_t k = 1; k < plan.table.size(); ++k)
        if (!(plan.table[k].first > plan.table[k - 1].first) || !(plan.table[k].second > plan.table[k - 1].second))
            throw Error(ErrorCode::NonMonotoneParametrization, "parametrization table is not strictly increasing");
    return plan;
}

W11Probe w11_lowerbound_probe(const std::vector<std::pair<double, double>>& arcs, const std::vector<int>& levels,
                              const std::function<Point(double)>& boundary, const DistanceOracle& oracle,
                              double inner_radius, double eta,
                              const std::function<std::optional<Point>(Point)>& extension, int radial_samples) {
    if (arcs.size() != levels.size()) throw Error(ErrorCode::InvalidArgument, "one level per arc");
    if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0,1)");
    W11Probe probe;
    double partial = 0.0;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto [start, width] = arcs[k];
        std::vector<Point> pts(33);
        for (int j = 0; j < 33; ++j) pts[j] = boundary(start + width * j / 32.0);
        const std::vector<double> d = oracle(pts);
        const double dmin = *std::min_element(d.begin(), d.end());
        const double L = width * std::max(0.0, dmin - inner_radius);
        probe.levels.push_back(levels[k]);
        probe.L.push_back(L);
        partial += L;
        probe.partials.push_back(partial);
        if (extension) {
            double total = 0.0;
            for (int j = 0; j < radial_samples; ++j) {
                const double tt = start + width * (j + 0.5) / radial_samples;
                const Point dir = std::polar(1.0, tt);
                double len = 0.0;
                std::optional<Point> prev = extension(eta * dir);
                if (!prev) continue;
                for (int i = 1; i <= 64; ++i) {
                    const double r = 1.0 - (1.0 - eta) * std::exp2(-0.25 * i);
                    const std::optional<Point> cur = extension(r * dir);
                    if (!cur) break;
                    len += std::abs(*cur - *prev);
                    prev = cur;
                }
                len += std::abs(boundary(tt) - *prev);
                total += len * width / radial_samples;
            }
            probe.radial.push_back(eta * total);
        }
    }
    if (probe.L.size() >= 3) {
        const double mx = *std::max_element(probe.L.begin(), probe.L.end());
        const double mn = *std::min_element(probe.L.begin(), probe.L.end());
        probe.linear_growth = mn > 0.0 && mn >= 0.25 * mx;
        probe.geometric_decay = mn > 0.0;
        for (std::size_t k = 1; k < probe.L.size(); ++k)
            probe.geometric_decay = probe.geometric_decay && probe.L[k] <= 0.5 * probe.L[k - 1];
    }
    return probe;
}

}  // namespace hypext
