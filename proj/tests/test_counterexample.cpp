#include "hypext/conformal.hpp"
#include "hypext/counterexample.hpp"
#include "hypext/crosscuts.hpp"
#include "hypext/error.hpp"
#include "hypext/grid_graph.hpp"

#include <doctest.h>

#include <numbers>

using namespace hypext;

namespace {

const CounterexamplePlan& plan6() {
    static const CounterexamplePlan p = make_counterexample_plan(PhiSpec::alpha_log(1), 6);
    return p;
}

const FoldedLayout& layout6() {
    static const FoldedLayout l = fold_layout(plan6(), 6);
    return l;
}

// Direct evaluation of a_n = 1/phi(n) S_n^{-2/3} in long double up to M terms.
std::vector<long double> direct_a(long M) {
    std::vector<long double> a(M + 1, 0.0L);
    long double S = 0.0L;
    for (long n = 1; n <= M; ++n) {
        const long double inv = 1.0L / (n * std::log(std::numbers::e_v<long double> + n));
        S += inv;
        a[n] = inv * std::pow(S, -2.0L / 3.0L);
    }
    return a;
}

}  // namespace

TEST_CASE("base sequences") {
    const BaseSequences b = base_sequences(PhiSpec::alpha_log(1), 100000);
    CHECK(b.a[1] == doctest::Approx(std::pow(std::log(std::numbers::e + 1.0), -1.0 / 3.0)).epsilon(1e-15));
    CHECK(b.a[1] == doctest::Approx(0.91317).epsilon(1e-5));
    CHECK(b.b[1] == 0.0);
    CHECK(b.nonincreasing);
    const std::vector<long double> a = direct_a(2000);
    for (long n = 1; n <= 2000; ++n) CHECK(b.a[n] == doctest::Approx(double(a[n])).epsilon(1e-12));
    double cm = 0.0;
    for (long n = 1; n < 100000; ++n) {
        CHECK(b.a[n] > 0.0);
        CHECK(b.a[n] / b.a[n + 1] <= b.c_M);
        CHECK(b.b[n + 1] >= b.b[n]);
        cm = std::max(cm, b.a[n] / b.a[n + 1]);
    }
    CHECK(b.c_M == cm);
    // b_N grows without bound but only like 3 S_N^{1/3}
    CHECK(b.b[100001] > b.b[10001]);
    CHECK(b.b[100001] < 10.0);
    CHECK_THROWS_AS(base_sequences(PhiSpec::alpha_log(2), 1000), Error);
    try {
        base_sequences(PhiSpec::alpha_log(2), 1000);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TailConvergent);
    }
}

TEST_CASE("grouping indices against a long direct tail") {
    const Grouping& g = plan6().grouping;
    const long M = 4000000;
    const std::vector<long double> a = direct_a(M);
    std::vector<long double> tail(M + 2, 0.0L);
    for (long k = M; k >= 1; --k) tail[k] = tail[k + 1] + a[k] * a[k];
    const long double s2 = (1.0L / 3.0L) / tail[1];
    CHECK(double(std::sqrt(s2)) == doctest::Approx(g.scale).epsilon(2e-3));
    for (int n = 1; n <= 7; ++n) {
        long i = 1;
        while (s2 * tail[i + 1] >= std::ldexp(1.0L, -2 * n) / 3.0L) ++i;
        CHECK(g.i[n] == i);
    }
    CHECK(g.i[1] == 1);
    for (int n = 1; n <= 6; ++n) {
        CHECK(g.i[n + 1] >= g.i[n]);
        CHECK(g.mass_bound_ok[n]);
        CHECK(g.group_mass[n] <= std::ldexp(1.0, -2 * (n - 1)));
    }
    CHECK(g.approximate);
}

TEST_CASE("segment plan windows") {
    // constant a = l/2: every window is a single index
    const int n = 3;
    const double l = std::ldexp(1.0, -n);
    std::vector<double> a(40, l / 2);
    const GroupSegments s = segment_plan(a, 1.5, 1, 30, n);
    for (std::size_t d = 0; d + 1 < s.windows.size(); ++d) {
        CHECK(s.windows[d].second - s.windows[d].first + 1 <= 2);
        CHECK(s.window_sums[d] >= l / 2);
        CHECK(s.window_sums[d] <= l);
    }
    for (long sd : s.s) CHECK(sd == 0);
    CHECK_THROWS_AS(segment_plan(a, 1.5, 5, 4, n), Error);

    for (const GroupSegments& g : plan6().segments) {
        for (std::size_t d = 0; d + 1 < g.windows.size(); ++d) {
            const double ln = plan6().l[g.n];
            CHECK(g.window_sums[d] >= ln / 2);
            CHECK(g.window_sums[d] <= 2 * ln);
            double sum = 0.0;
            for (long k = g.windows[d].first; k <= g.windows[d].second; ++k) sum += plan6().a[k];
            CHECK(sum == doctest::Approx(g.window_sums[d]).epsilon(1e-14));
        }
        for (std::size_t d = 0; d < g.s.size(); ++d) {
            // guard: 3 c_M a_{m_{d+1}} + a over the guard run >= c_M a_{m_d}
            const long m0 = g.windows[d].first, m1 = g.windows[d].second + 1;
            double acc = 3 * plan6().c_M * plan6().a[m1];
            for (long k = m1; k < m1 + g.s[d]; ++k) acc += plan6().a[k];
            CHECK(acc >= plan6().c_M * plan6().a[m0] * (1 - 1e-12));
        }
    }
}

TEST_CASE("folded layout") {
    const FoldedLayout one = fold_layout(plan6(), 1);
    CHECK(one.domain.size() >= 3);
    CHECK(one.domain.area() > 0.0);
    const FoldedLayout& L = layout6();
    CHECK_NOTHROW(JordanDomain::from_vertices(L.domain.vertices()));
    CHECK(L.domain.contains(L.basepoint));
    for (double c : L.clearance) CHECK(c > 0.0);

    // w_n / l_n fitted over groups 1..G stays within 20% for G = 3..6
    std::vector<double> C;
    double running = 0.0;
    for (int g = 1; g <= 6; ++g) {
        running = std::max(running, L.w[g] / plan6().l[g]);
        if (g >= 3) C.push_back(running);
    }
    CHECK(*std::max_element(C.begin(), C.end()) <= 1.2 * *std::min_element(C.begin(), C.end()));
    double sumw = 0.0;
    for (int g = 1; g <= 6; ++g) sumw += L.w[g];
    CHECK(L.w[6] <= std::ldexp(1.0, -6 + 2) * C.back());
}

TEST_CASE("unfolded chain") {
    const JordanDomain R = unfolded_chain(plan6(), 30);
    CHECK(R.contains({0.0, 0.0}));
    const PolygonGeodesic g(R);
    const double end = plan6().b[31];
    CHECK(g.distance({0.0, 0.0}, {end * 0.999, 0.0}) == doctest::Approx(end * 0.999).epsilon(1e-9));
}

TEST_CASE("verification report") {
    const CounterexampleReport r = verify_counterexample(plan6(), layout6(), 0.0, 2000000);
    CHECK(r.weighted_increment_at_1e5 < 1e-6);
    CHECK(r.cauchy_index > 100000);
    CHECK(r.series_slack >= 0.0);
    for (std::size_t k = 1; k < r.weighted_partials.size(); ++k) CHECK(r.weighted_partials[k] >= r.weighted_partials[k - 1]);
    CHECK(r.weighted_partials.back() <= std::pow(1.0 / std::log(std::numbers::e + 1.0), -1.0 / 3.0) + 3.0);
    for (std::size_t g = 1; g < r.diameter.size(); ++g) {
        CHECK(r.diameter[g] > r.diameter[g - 1]);
        CHECK(r.growth_ratio[g] >= 0.9);
    }
    CHECK(r.diameter.back() >= r.b_range - 1.0);
    CHECK(r.max_ratio < 10.0);
    CHECK(r.radial > 0.0);
}

TEST_CASE("spot checks of the chain bound") {
    const CounterexampleReport r = verify_counterexample(plan6(), layout6(), 0.002, 100000, 3);
    REQUIRE(!r.spot_checks.empty());
    for (const auto& [chain, grid] : r.spot_checks) CHECK(grid <= 4.0 * chain);
}

TEST_CASE("bad parametrization and the probe") {
    const FoldedLayout& L = layout6();
    const BoundaryParam ref = arclength_reference(L.domain, L.tip);
    CHECK(std::abs(ref(kPi) - L.tip) < 1e-12);
    const DistanceOracle d = polygon_distance_oracle(L.domain, L.basepoint);
    const BadParametrizationPlan bp = bad_parametrization(ref, d, 6);
    CHECK(bp.max_certified == 6);
    for (std::size_t k = 1; k < bp.table.size(); ++k) {
        CHECK(bp.table[k].first > bp.table[k - 1].first);
        CHECK(bp.table[k].second > bp.table[k - 1].second);
    }
    for (std::size_t k = 0; k < bp.levels.size(); ++k) {
        const int n = bp.levels[k];
        CHECK(bp.width[k] == doctest::Approx(kPi / std::ldexp(1.0, 2 * n)));
        CHECK(bp.alpha[k] == doctest::Approx(kPi - kPi / std::ldexp(1.0, n)));
        CHECK(bp.certified_distance[k] >= bp.offset + bp.unit * std::ldexp(1.0, 2 * n));
        if (k) CHECK(bp.theta[k] - bp.delta[k] > bp.theta[k - 1] + bp.delta[k - 1]);
        // A_n is sent onto I(theta_n, delta_n) at constant speed
        CHECK(bp.reference_angle(bp.alpha[k]) == doctest::Approx(bp.theta[k] - bp.delta[k]));
        CHECK(bp.reference_angle(bp.alpha[k] + bp.width[k]) == doctest::Approx(bp.theta[k] + bp.delta[k]));
    }
    CHECK_THROWS_AS(bad_parametrization(ref, d, 12, bp.unit * 64.0, true), Error);

    std::vector<std::pair<double, double>> arcs;
    for (std::size_t k = 0; k < bp.levels.size(); ++k) arcs.push_back({bp.alpha[k], bp.width[k]});
    const W11Probe pr = w11_lowerbound_probe(arcs, bp.levels, [&bp](double t) { return bp(t); }, d,
                                             bp.offset + 0.25 * bp.unit * 16.0);
    CHECK(pr.L.size() >= 3);
    CHECK(pr.linear_growth);
    CHECK_FALSE(pr.geometric_decay);
    for (std::size_t k = 1; k < pr.partials.size(); ++k) CHECK(pr.partials[k] > pr.partials[k - 1]);
}

TEST_CASE("probe on the square decays geometrically") {
    const ConformalMap sq = ConformalMap::disk_to_square();
    const JordanDomain box = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const DistanceOracle d = polygon_distance_oracle(box, 0.0);
    double inner = 0.0;
    for (int k = 0; k < 256; ++k) inner = std::max(inner, std::abs(sq(std::polar(0.5, kTwoPi * k / 256))));
    std::vector<std::pair<double, double>> arcs;
    std::vector<int> levels;
    for (int n = 2; n <= 7; ++n) {
        arcs.push_back({kPi - kPi / std::ldexp(1.0, n), kPi / std::ldexp(1.0, 2 * n)});
        levels.push_back(n);
    }
    const auto ext = [&sq](Point z) -> std::optional<Point> { return sq(z); };
    const W11Probe pr = w11_lowerbound_probe(arcs, levels, [&sq](double t) { return sq.boundary_trace(t); }, d,
                                             inner, 0.5, ext);
    CHECK(pr.geometric_decay);
    CHECK_FALSE(pr.linear_growth);
    REQUIRE(pr.radial.size() == pr.L.size());
    for (std::size_t k = 1; k < pr.radial.size(); ++k) CHECK(pr.radial[k] < 0.5 * pr.radial[k - 1]);
}
