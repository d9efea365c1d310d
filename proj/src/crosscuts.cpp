#include "hypext/crosscuts.hpp"

#include "hypext/error.hpp"
#include "hypext/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace hypext {

BoundaryParam own_trace(const ConformalMap& map) {
    return [&map](double theta) { return map.boundary_trace(theta); };
}

double boundary_preimage_angle(const ConformalMap& map, Point w) {
    return map.boundary_angle(map.boundary_arclength_of_point(w));
}

DyadicFamily::DyadicFamily(int n0, int N, double theta0) : n0_(n0), N_(N), theta0_(theta0) {
    if (n0 < 1 || N < n0 || N > 30) throw Error(ErrorCode::InvalidArgument, "dyadic family needs 1 <= n0 <= N <= 30");
}

double DyadicFamily::endpoint(int n, long j) const {
    const long m = count(n);
    long r = j % m;
    if (r < 0) r += m;
    const long wraps = (j - r) / m;
    return theta0_ + kTwoPi * wraps + std::ldexp(kTwoPi * static_cast<double>(r), -n);
}

bool DyadicFamily::verify(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int n = n0_; n <= N_; ++n) {
        const double len = kTwoPi / std::ldexp(1.0, n);
        double covered = 0.0;
        for (long j = 0; j < count(n); ++j) {
            const auto [a, b] = arc(n, j);
            if (std::abs((b - a) - len) > 1e-15 * kTwoPi) return fail("unequal arc length");
            if (j + 1 < count(n) && arc(n, j + 1).first != b) return fail("arcs not abutting");
            covered += b - a;
            if (n < N_) {
                const auto c1 = arc(n + 1, 2 * j);
                const auto c2 = arc(n + 1, 2 * j + 1);
                if (c1.first != a || c1.second != c2.first || std::abs(c2.second - b) > 1e-15 * kTwoPi)
                    return fail("children do not tile parent");
            }
        }
        if (std::abs(covered - kTwoPi) > 1e-12) return fail("arcs do not cover the circle");
    }
    return true;
}

double DyadicCycles::xi_angle(int n, long j) const {
    const long m = 1L << n;
    long r = j % m;
    if (r < 0) r += m;
    const long wraps = (j - r) / m;
    return xi_angles[static_cast<std::size_t>(r) << (family.N() - n)] + kTwoPi * wraps;
}

DyadicCycles build_dyadic_cycles(const BoundaryParam& boundary_param, const ConformalMap& map, int N) {
    DyadicCycles out;
    out.family = DyadicFamily(1, N);
    const long M = 1L << N;
    out.xi_angles.resize(M);
    for (long j = 0; j < M; ++j) out.xi_angles[j] = boundary_preimage_angle(map, boundary_param(out.family.endpoint(N, j)));
    // Unwrap into an increasing sequence spanning less than one turn.
    double total = 0.0;
    for (long j = 1; j <= M; ++j) {
        const double prev = out.xi_angles[j - 1];
        const double cur = j < M ? out.xi_angles[j] : out.xi_angles[0];
        double d = std::fmod(cur - prev, kTwoPi);
        if (d < 0.0) d += kTwoPi;
        if (!(d > 0.0)) throw Error(ErrorCode::NonMonotoneParametrization, "repeated preimage at index " + std::to_string(j));
        total += d;
        if (j < M) out.xi_angles[j] = prev + d;
    }
    if (std::abs(total - kTwoPi) > 1e-9)
        throw Error(ErrorCode::NonMonotoneParametrization, "preimages wind " + std::to_string(total / kTwoPi) + " times");
    out.max_gap.assign(N, 0.0);
    out.n0 = 0;
    for (int n = N; n >= 1; --n) {
        double g = 0.0;
        for (long j = 0; j < (1L << n); ++j) g = std::max(g, 2.0 * std::sin(0.5 * (out.xi_angle(n, j + 1) - out.xi_angle(n, j))));
        out.max_gap[n - 1] = g;
    }
    for (int n = 1; n <= N; ++n)
        if (out.max_gap[n - 1] <= kGapBound) {
            out.n0 = n;
            break;
        }
    if (out.n0 == 0) throw Error(ErrorCode::NoValidN0, "no generation up to " + std::to_string(N) + " meets the gap bound");
    out.family = DyadicFamily(out.n0, N);
    return out;
}

Crosscut crosscut(const ConformalMap& map, Point xi1, Point xi2, int samples, bool refine) {
    Crosscut c;
    c.xi1 = xi1;
    c.xi2 = xi2;
    c.polyline = map.map_polyline(hyperbolic_geodesic_disk(xi1, xi2, samples));
    c.length = polyline_length(c.polyline);
    c.chord = std::abs(c.polyline.back() - c.polyline.front());
    if (refine) c.refined_length = polyline_length(map.map_polyline(hyperbolic_geodesic_disk(xi1, xi2, 2 * samples - 1)));
    return c;
}

CrosscutFamily build_crosscut_family(const ConformalMap& map, const BoundaryParam& boundary_param,
                                     const DyadicCycles& cycles, int n0, int N, int samples) {
    if (n0 < cycles.n0 || N > cycles.family.N()) throw Error(ErrorCode::InvalidArgument, "generation range outside the cycles");
    CrosscutFamily fam;
    fam.n0 = n0;
    fam.N = N;
    const DyadicFamily& df = cycles.family;
    for (int n = n0; n <= N; ++n) {
        std::vector<Crosscut> gen;
        gen.reserve(static_cast<std::size_t>(1) << n);
        for (long j = 0; j < (1L << n); ++j) {
            const Point x1 = std::polar(1.0, cycles.xi_angle(n, j));
            const Point x2 = std::polar(1.0, cycles.xi_angle(n, j + 1));
            if (std::abs(x1 - x2) < 1e-14)
                throw Error(ErrorCode::CellDegenerate, "crosscut endpoints coincide at n=" + std::to_string(n));
            Crosscut c = crosscut(map, x1, x2, samples);
            c.n = n;
            c.j = j;
            c.polyline.front() = boundary_param(df.endpoint(n, j));
            c.polyline.back() = boundary_param(df.endpoint(n, j + 1));
            c.length = polyline_length(c.polyline);
            c.chord = std::abs(c.polyline.back() - c.polyline.front());
            gen.push_back(std::move(c));
        }
        fam.generations.push_back(std::move(gen));
    }
    return fam;
}

CrosscutSum crosscut_sum(const CrosscutFamily& family, double p) {
    if (!(p >= 1.0 && p < 2.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in [1, 2)");
    CrosscutSum s;
    s.p = p;
    s.n0 = family.n0;
    s.N = family.N;
    double partial = 0.0;
    for (int n = family.n0; n <= family.N; ++n) {
        double sum = 0.0;
        for (const Crosscut& c : family.generations[n - family.n0]) sum += std::pow(c.length, p);
        const double T = std::pow(2.0, (p - 2.0) * n) * sum;
        partial += T;
        if (!s.terms.empty()) s.ratios.push_back(T / s.terms.back());
        s.terms.push_back(T);
        s.partials.push_back(partial);
    }
    if (s.ratios.size() >= 4) {
        s.convergent = true;
        for (std::size_t i = s.ratios.size() - 4; i < s.ratios.size(); ++i) s.convergent = s.convergent && s.ratios[i] < 0.97;
    }
    return s;
}

DisjointnessAudit audit_disjointness(const CrosscutFamily& family) {
    struct Seg {
        std::uint32_t cut;
        std::uint32_t idx;
    };
    std::vector<const Crosscut*> cuts;
    for (const auto& g : family.generations)
        for (const auto& c : g) cuts.push_back(&c);
    std::vector<Seg> segs;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, total = 0.0;
    for (std::uint32_t c = 0; c < cuts.size(); ++c) {
        const auto& pl = cuts[c]->polyline;
        for (std::uint32_t i = 0; i + 1 < pl.size(); ++i) {
            segs.push_back({c, i});
            total += std::abs(pl[i + 1] - pl[i]);
        }
        for (const Point& p : pl) {
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
    }
    DisjointnessAudit audit;
    audit.crosscuts = cuts.size();
    audit.segments = segs.size();
    if (segs.empty()) return audit;
    const double h = std::max({2.0 * total / segs.size(), (xmax - xmin) / 4096.0, (ymax - ymin) / 4096.0, 1e-12});
    auto cx = [&](double x) { return static_cast<long>(std::floor((x - xmin) / h)); };
    auto cy = [&](double y) { return static_cast<long>(std::floor((y - ymin) / h)); };
    auto key = [](long x, long y) { return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::int64_t>(y); };
    auto seg_pts = [&](const Seg& s) {
        const auto& pl = cuts[s.cut]->polyline;
        return std::make_pair(pl[s.idx], pl[s.idx + 1]);
    };
    struct Range {
        long x0, x1, y0, y1;
    };
    std::vector<Range> ranges(segs.size());
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
    for (std::uint32_t s = 0; s < segs.size(); ++s) {
        const auto [a, b] = seg_pts(segs[s]);
        Range r{cx(std::min(a.real(), b.real())), cx(std::max(a.real(), b.real())), cy(std::min(a.imag(), b.imag())),
                cy(std::max(a.imag(), b.imag()))};
        ranges[s] = r;
        for (long y = r.y0; y <= r.y1; ++y)
            for (long x = r.x0; x <= r.x1; ++x) grid[key(x, y)].push_back(s);
    }
    auto incident = [&](const Crosscut* c, Point e) {
        const auto& pl = c->polyline;
        return e == pl.front() ? std::abs(pl[1] - pl[0]) : std::abs(pl[pl.size() - 1] - pl[pl.size() - 2]);
    };
    // Iterate cells in a fixed order for deterministic example lists.
    std::vector<std::int64_t> keys;
    keys.reserve(grid.size());
    for (const auto& kv : grid) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (std::int64_t k : keys) {
        const auto& list = grid[k];
        const long gx = static_cast<long>(k >> 32);
        const long gy = static_cast<long>(static_cast<std::int32_t>(k & 0xffffffff));
        for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                const Seg& s = segs[list[i]];
                const Seg& t = segs[list[j]];
                if (s.cut == t.cut) continue;
                const Range& r1 = ranges[list[i]];
                const Range& r2 = ranges[list[j]];
                if (std::max(r1.x0, r2.x0) != gx || std::max(r1.y0, r2.y0) != gy) continue;
                const auto [a, b] = seg_pts(s);
                const auto [c, d] = seg_pts(t);
                if (!segments_intersect(a, b, c, d)) continue;
                const Crosscut* A = cuts[s.cut];
                const Crosscut* B = cuts[t.cut];
                // Intersection point (or nearest endpoint for collinear contact).
                const double den = cross(b - a, d - c);
                Point p = a;
                if (den != 0.0) p = a + (cross(c - a, d - c) / den) * (b - a);
                bool allowed = false;
                for (Point e : {A->polyline.front(), A->polyline.back()}) {
                    if (e != B->polyline.front() && e != B->polyline.back()) continue;
                    const double zone = 4.0 * std::max(incident(A, e), incident(B, e));
                    if (std::abs(p - e) <= zone) allowed = true;
                }
                if (allowed) {
                    ++audit.endpoint_contacts;
                } else {
                    ++audit.violations;
                    if (audit.examples.size() < 10) audit.examples.push_back({{A->n, A->j}, {B->n, B->j}});
                }
            }
        }
    }
    return audit;
}

double GeodesicCellDecomposition::theta(int m) const { return kPi / std::ldexp(1.0, std::abs(m)); }
double GeodesicCellDecomposition::R(int m) const { return 1.0 - std::ldexp(1.0, -(std::abs(m) + 1)); }

Point GeodesicCellDecomposition::z(int m) const {
    const Point zm = std::polar(1.0, theta(m));
    return m > 0 ? zm : -std::conj(zm);
}

std::pair<double, double> GeodesicCellDecomposition::angles(int m) const {
    const int a = std::abs(m);
    if (m > 0) return {theta(a + 1), theta(a)};
    return {kPi - theta(a), kPi - theta(a + 1)};
}

double GeodesicCellDecomposition::area_halfplane(int m) const {
    const auto [lo, hi] = angles(m);
    const double r = R(m);
    return 0.5 * (1.0 - r * r) * (hi - lo);
}

Point GeodesicCellDecomposition::to_disk(Point w) const { return T.inverse(w) * std::polar(1.0, rotation); }

Polyline GeodesicCellDecomposition::cell_boundary_disk(int m, int samples) const {
    const auto [lo, hi] = angles(m);
    const double r = R(m);
    Polyline out;
    for (int i = 0; i <= samples; ++i) out.push_back(to_disk(std::polar(r, lo + (hi - lo) * i / samples)));
    for (int i = 0; i <= samples; ++i) out.push_back(to_disk(std::polar(1.0, hi - (hi - lo) * i / samples)));
    out.push_back(out.front());
    return out;
}

Polyline GeodesicCellDecomposition::arc_disk(int m, int samples) const {
    const auto [lo, hi] = angles(m);
    Polyline out;
    for (int i = 0; i <= samples; ++i) out.push_back(to_disk(std::polar(1.0, lo + (hi - lo) * i / samples)));
    return out;
}

GeodesicCellDecomposition cell_decomposition(Point xi1, Point xi2, int m_max) {
    if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "m_max must be >= 1");
    if (std::abs(xi1 - xi2) > kGapBound) throw Error(ErrorCode::GapTooWide, "|xi1 - xi2| exceeds 4 pi/(1+pi^2)");
    if (std::abs(xi1 - xi2) == 0.0) throw Error(ErrorCode::CoincidentEndpoints, "endpoints coincide");
    GeodesicCellDecomposition d;
    d.m_max = m_max;
    d.rotation = std::arg(xi1 + xi2);
    Point x1 = xi1 * std::polar(1.0, -d.rotation);
    if (x1.imag() < 0.0) x1 = std::conj(x1);
    d.T = mobius_disk_to_halfplane(x1);
    // Cells are disjoint when their angular windows are.
    std::vector<std::pair<double, double>> w;
    for (int m = 1; m <= m_max; ++m) {
        w.push_back(d.angles(m));
        w.push_back(d.angles(-m));
    }
    std::sort(w.begin(), w.end());
    d.disjoint = true;
    for (std::size_t i = 1; i < w.size(); ++i) d.disjoint = d.disjoint && w[i].first >= w[i - 1].second;
    return d;
}

LengthBoundReport crosscut_length_bound_check(const ConformalMap& map, const PhiSpec& spec, Point xi1, Point xi2,
                                              int m_max) {
    const GeodesicCellDecomposition cells = cell_decomposition(xi1, xi2, m_max);
    LengthBoundReport rep;
    const double s0 = 0.5 * std::log(2.0);
    TailOptions opt;
    opt.budget = 1000000;
    const TailClassification tail = classify_tail_integral(spec, 1.0, opt);
    if (tail.verdict == TailVerdict::Divergent) throw Error(ErrorCode::TailDivergent, "int 1/phi diverges; bound is vacuous");
    if (tail.verdict != TailVerdict::Convergent)
        throw Error(ErrorCode::QuadratureBudgetExceeded, "tail integral inconclusive");
    rep.tail_integral = tail.value + boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                                         [&](double s) { return 1.0 / spec(s); }, s0, 1.0, 10, 1e-12);

    const Crosscut c = crosscut(map, xi1, xi2, 257);
    rep.length = c.length;
    rep.lhs = c.length * c.length;

    // Delta pulled back to the upper half unit disk of half-plane coordinates.
    const quad::Rule& gl = quad::legendre(8);
    std::vector<std::pair<double, double>> th, sr;
    for (int m = 1; m <= m_max; ++m) {
        th.push_back(cells.angles(m));
        th.push_back(cells.angles(-m));
    }
    for (int k = 1; k <= m_max; ++k) {
        sr.push_back({std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k)});
        sr.push_back({1.0 - std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -(k + 1))});
    }
    const Point a = cells.T.a;
    double total = 0.0;
    for (const auto& [t0, t1] : th)
        for (const auto& [r0, r1] : sr)
            for (std::size_t i = 0; i < gl.size(); ++i)
                for (std::size_t k = 0; k < gl.size(); ++k) {
                    const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gl.nodes[i];
                    const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * gl.nodes[k];
                    const Point w = std::polar(r, t);
                    const Point zeta = cells.to_disk(w);
                    if (!(std::abs(zeta) < 1.0)) continue;
                    const double jac = std::norm(map.derivative(zeta)) * std::norm(2.0 * a / ((a + w) * (a + w)));
                    total += gl.weights[i] * gl.weights[k] * 0.25 * (t1 - t0) * (r1 - r0) * r *
                             spec(2.0 * std::atanh(std::abs(zeta))) * jac;
                }
    rep.delta_integral = total;
    rep.empirical_c = rep.lhs / (rep.tail_integral * rep.delta_integral);
    return rep;
}

double CycleReport::path_length(int l, int m) const {
    double s = 0.0;
    for (int i = l; i < m; ++i) s += lengths[i];
    return s;
}

CycleReport cycle_crosscut_sum(const ConformalMap& map, const std::vector<Point>& cycle, int samples) {
    if (cycle.size() < 2) throw Error(ErrorCode::InvalidArgument, "cycle needs at least 2 points");
    const std::size_t K = cycle.size();
    for (std::size_t i = 0; i < K; ++i)
        if (std::abs(cycle[i] - cycle[(i + 1) % K]) > kGapBound)
            throw Error(ErrorCode::GapTooWide, "cycle gap at leg " + std::to_string(i) + " exceeds 4 pi/(1+pi^2)");
    CycleReport rep;
    for (std::size_t i = 0; i < K; ++i) {
        Crosscut c = crosscut(map, cycle[i], cycle[(i + 1) % K], samples);
        rep.lengths.push_back(c.length);
        rep.sum_sq += c.length * c.length;
        rep.legs.push_back(std::move(c));
    }
    rep.diameter_bound = std::sqrt(static_cast<double>(K) * rep.sum_sq);
    return rep;
}

}  // namespace hypext
