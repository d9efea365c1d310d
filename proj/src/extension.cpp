#include "hypext/extension.hpp"

#include "hypext/error.hpp"
#include "hypext/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace hypext {

GeodesicArc GeodesicArc::between(Point xi1, Point xi2) {
    if (std::abs(xi1 - xi2) < 1e-14) throw Error(ErrorCode::CellDegenerate, "geodesic endpoints coincide");
    const GeodesicCircle gc = geodesic_circle(xi1, xi2);
    GeodesicArc a;
    a.xi1 = xi1;
    a.xi2 = xi2;
    a.diameter = gc.diameter;
    a.center = gc.center;
    if (!a.diameter) a.sweep = std::arg((xi2 - a.center) / (xi1 - a.center));
    return a;
}

Point GeodesicArc::at(double u) const {
    if (diameter) return xi1 + u * (xi2 - xi1);
    return center + (xi1 - center) * std::polar(1.0, sweep * u);
}

Point GeodesicArc::tangent(double u) const {
    if (diameter) return xi2 - xi1;
    return Point(0.0, sweep) * (at(u) - center);
}

bool GeodesicArc::origin_side(Point z) const {
    if (diameter) return cross(xi2 - xi1, z - xi1) >= 0.0;
    return std::abs(z - center) >= std::abs(xi1 - center);
}

namespace {

double operator_norm(Point qu, Point qv, Point pu, Point pv, double* det_p, double* det_q) {
    const double dp = cross(pu, pv);
    const double dq = cross(qu, qv);
    *det_p = dp;
    *det_q = dq;
    // M = [qu qv] [pu pv]^{-1}
    const double i00 = pv.imag() / dp, i01 = -pv.real() / dp;
    const double i10 = -pu.imag() / dp, i11 = pu.real() / dp;
    const double m00 = qu.real() * i00 + qv.real() * i10;
    const double m01 = qu.real() * i01 + qv.real() * i11;
    const double m10 = qu.imag() * i00 + qv.imag() * i10;
    const double m11 = qu.imag() * i01 + qv.imag() * i11;
    const double s = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
    const double det = m00 * m11 - m01 * m10;
    return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))));
}

// u = 1/2 (3s^2 - 2s^3) on each half of [0,1]; clusters nodes at 0, 1/2 and 1.
struct GradedNode {
    double s;  // graded parameter on [0,1]
    double w;  // weight including the substitution Jacobian, for one half
};

const std::vector<GradedNode>& graded_rule() {
    static const std::vector<GradedNode> rule = [] {
        const quad::Rule& gl = quad::legendre(12);
        std::vector<GradedNode> r;
        for (std::size_t k = 0; k < gl.size(); ++k) {
            const double s = 0.5 * (1.0 + gl.nodes[k]);
            r.push_back({3.0 * s * s - 2.0 * s * s * s, 0.5 * gl.weights[k] * 0.5 * 6.0 * s * (1.0 - s)});
        }
        return r;
    }();
    return rule;
}

}  // namespace

Extension::Extension(const ConformalMap& map, BoundaryParam boundary_param, const DyadicCycles& cycles, int N)
    : map_(map), bp_(std::move(boundary_param)), cycles_(cycles), n0_(cycles.n0), N_(N) {
    if (N < n0_ || N > cycles.family.N())
        throw Error(ErrorCode::InvalidArgument, "extension depth must lie in [n0, N of the cycles]");
}

double Extension::source_angle(int n, long j) const { return cycles_.family.endpoint(n, j); }

Point Extension::image_curve(int n, long j, double u) const {
    if (u <= 0.0) return bp_(source_angle(n, j));
    if (u >= 1.0) return bp_(source_angle(n, j + 1));
    return map_(GeodesicArc::between(target_vertex(n, j), target_vertex(n, j + 1)).at(u));
}

Point Extension::source_point(int n, long j, double u, double v) const {
    const GeodesicArc par = GeodesicArc::between(source_vertex(n, j), source_vertex(n, j + 1));
    const Point gc = u < 0.5 ? GeodesicArc::between(source_vertex(n + 1, 2 * j), source_vertex(n + 1, 2 * j + 1)).at(2 * u)
                             : GeodesicArc::between(source_vertex(n + 1, 2 * j + 1), source_vertex(n + 1, 2 * j + 2)).at(2 * u - 1);
    return (1.0 - v) * par.at(u) + v * gc;
}

Point Extension::cell_point(int n, long j, double u, double v) const {
    const Point gp = image_curve(n, j, u);
    const Point gc = u < 0.5 ? image_curve(n + 1, 2 * j, 2 * u) : image_curve(n + 1, 2 * j + 1, 2 * u - 1);
    return (1.0 - v) * gp + v * gc;
}

std::optional<Point> Extension::evaluate_inner(Point z) const {
    const long m = 1L << n0_;
    double t = std::arg(z);
    if (t < 0.0) t += kTwoPi;
    long j = std::min(m - 1, static_cast<long>(t / (kTwoPi / m)));
    const GeodesicArc s = GeodesicArc::between(source_vertex(n0_, j), source_vertex(n0_, j + 1));
    if (std::abs(z) == 0.0) return map_(Point(0.0, 0.0));
    if (!s.origin_side(z)) return std::nullopt;
    double u = (t - source_angle(n0_, j)) / (kTwoPi / m);
    double rho = std::abs(z) / std::abs(s.at(u));
    for (int it = 0; it < 60; ++it) {
        const Point g = s.at(u), gu = s.tangent(u);
        const Point r = rho * g - z;
        if (std::abs(r) < 1e-15) break;
        const double det = cross(g, rho * gu);
        const double dr = cross(r, rho * gu) / det;
        const double du = cross(g, r) / det;
        rho = std::clamp(rho - dr, 0.0, 1.0);
        u = std::clamp(u - du, 0.0, 1.0);
    }
    const GeodesicArc tg = GeodesicArc::between(target_vertex(n0_, j), target_vertex(n0_, j + 1));
    return map_(rho * tg.at(u));
}

std::optional<Point> Extension::evaluate(Point z) const {
    if (!(std::abs(z) < 1.0)) return std::nullopt;
    if (auto inner = evaluate_inner(z)) return inner;
    double t = std::arg(z);
    if (t < 0.0) t += kTwoPi;
    for (int n = n0_; n < N_; ++n) {
        const long m = 1L << (n + 1);
        const long jc = std::min(m - 1, static_cast<long>(t / (kTwoPi / m)));
        const GeodesicArc child = GeodesicArc::between(source_vertex(n + 1, jc), source_vertex(n + 1, jc + 1));
        if (!child.origin_side(z)) continue;
        const long j = jc / 2;
        double u = (t - source_angle(n, j)) / (kTwoPi / (m / 2));
        double v = 0.5;
        for (int it = 0; it < 80; ++it) {
            const Point p = source_point(n, j, u, v);
            const double h = 1e-7;
            const Point pu = (source_point(n, j, std::min(1.0, u + h), v) - source_point(n, j, std::max(0.0, u - h), v)) /
                             (std::min(1.0, u + h) - std::max(0.0, u - h));
            const Point pv = source_point(n, j, u, 1.0) - source_point(n, j, u, 0.0);
            const Point r = p - z;
            if (std::abs(r) < 1e-14) break;
            const double det = cross(pu, pv);
            u = std::clamp(u - cross(r, pv) / det, 0.0, 1.0);
            v = std::clamp(v - cross(pu, r) / det, 0.0, 1.0);
        }
        return cell_point(n, j, u, v);
    }
    return std::nullopt;
}

ExtensionResult Extension::energy(double p) const {
    if (!(p >= 1.0 && p < 2.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in [1, 2)");
    ExtensionResult res;
    res.p = p;
    res.n0 = n0_;
    res.N = N_;
    const std::vector<GradedNode>& G = graded_rule();
    const quad::Rule& gv = quad::legendre(8);

    // Inner ideal polygon through the fan map.
    {
        ExtensionCell cell;
        cell.n = n0_ - 1;
        std::vector<std::pair<double, double>> rho_cells{{0.0, 0.5}};
        for (int k = 1; k <= 12; ++k) rho_cells.push_back({1.0 - std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -(k + 1))});
        rho_cells.back().second = 1.0;
        for (long j = 0; j < (1L << n0_); ++j) {
            const GeodesicArc s = GeodesicArc::between(source_vertex(n0_, j), source_vertex(n0_, j + 1));
            const GeodesicArc t = GeodesicArc::between(target_vertex(n0_, j), target_vertex(n0_, j + 1));
            for (int h = 0; h < 2; ++h)
                for (const GradedNode& g : G) {
                    const double u = 0.5 * h + 0.5 * g.s;
                    const Point gs = s.at(u), gsu = s.tangent(u), gt = t.at(u), gtu = t.tangent(u);
                    double dp = 0.0, dq = 0.0;
                    const double nh = operator_norm(gt, gtu, gs, gsu, &dp, &dq);
                    for (const auto& [r0, r1] : rho_cells)
                        for (std::size_t k = 0; k < gv.size(); ++k) {
                            const double rho = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * gv.nodes[k];
                            const double w = g.w * 0.5 * (r1 - r0) * gv.weights[k];
                            const double df = std::abs(map_.derivative(rho * gt));
                            cell.energy += w * rho * std::abs(dp) * std::pow(df * nh, p);
                            ++cell.nodes;
                            if (dp * dq <= 0.0) ++cell.folded;
                        }
                }
        }
        res.inner_energy = cell.energy;
        res.energy_by_depth.push_back(cell.energy);
        res.folded_nodes += cell.folded;
        if (cell.folded) res.overlaps.push_back({cell.n, 0});
        res.cells.push_back(cell);
    }

    // Lunes between gamma_{n,j} and its children.
    for (int n = n0_; n < N_; ++n) {
        double gen = 0.0;
        for (long j = 0; j < (1L << n); ++j) {
            ExtensionCell cell;
            cell.n = n;
            cell.j = j;
            const GeodesicArc sp = GeodesicArc::between(source_vertex(n, j), source_vertex(n, j + 1));
            const GeodesicArc tp = GeodesicArc::between(target_vertex(n, j), target_vertex(n, j + 1));
            for (int h = 0; h < 2; ++h) {
                const GeodesicArc sc = GeodesicArc::between(source_vertex(n + 1, 2 * j + h), source_vertex(n + 1, 2 * j + h + 1));
                const GeodesicArc tc = GeodesicArc::between(target_vertex(n + 1, 2 * j + h), target_vertex(n + 1, 2 * j + h + 1));
                for (const GradedNode& g : G) {
                    const double u = 0.5 * h + 0.5 * g.s;
                    const Point zp = tp.at(u), zc = tc.at(g.s);
                    const Point Pp = sp.at(u), Ppu = sp.tangent(u);
                    const Point Pc = sc.at(g.s), Pcu = 2.0 * sc.tangent(g.s);
                    const Point Qp = map_(zp), Qpu = map_.derivative(zp) * tp.tangent(u);
                    const Point Qc = map_(zc), Qcu = map_.derivative(zc) * 2.0 * tc.tangent(g.s);
                    for (std::size_t k = 0; k < gv.size(); ++k) {
                        const double v = 0.5 * (1.0 + gv.nodes[k]);
                        const double w = g.w * 0.5 * gv.weights[k];
                        double dp = 0.0, dq = 0.0;
                        const double nm = operator_norm((1.0 - v) * Qpu + v * Qcu, Qc - Qp, (1.0 - v) * Ppu + v * Pcu,
                                                        Pc - Pp, &dp, &dq);
                        cell.energy += w * std::abs(dp) * std::pow(nm, p);
                        ++cell.nodes;
                        if (dp * dq <= 0.0) ++cell.folded;
                    }
                }
            }
            gen += cell.energy;
            res.folded_nodes += cell.folded;
            if (cell.folded) res.overlaps.push_back({n, j});
            res.cells.push_back(cell);
        }
        res.energy_by_depth.push_back(res.energy_by_depth.back() + gen);
    }
    return res;
}

ExtensionResult build_extension(const ConformalMap& map, const BoundaryParam& boundary_param,
                                const DyadicCycles& cycles, int N, double p) {
    return Extension(map, boundary_param, cycles, N).energy(p);
}

}  // namespace hypext
