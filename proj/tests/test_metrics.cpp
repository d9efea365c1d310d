#include "hypext/conformal.hpp"
#include "hypext/error.hpp"
#include "hypext/metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace hypext;

namespace {

const JordanDomain& disk64() {
    static const JordanDomain d = JordanDomain::from_vertices(regular_polygon(64));
    return d;
}

const JordanDomain& centred_square() {
    static const JordanDomain d = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    return d;
}

Point automorphism(Point z, Point a, double phi) { return std::polar(1.0, phi) * (z - a) / (1.0 - std::conj(a) * z); }

}  // namespace

TEST_CASE("disk hyperbolic distance closed form") {
    CHECK(std::abs(hyperbolic_distance_disk(0.0, 0.5) - std::log(3.0)) < 1e-12);
    CHECK(hyperbolic_distance_disk(Point(0.2, 0.1), Point(0.2, 0.1)) == 0.0);
    CHECK_THROWS_AS(hyperbolic_distance_disk(0.0, 1.0), Error);

    // line integral of 2/(1-|z|^2) along the segment joining 0.3i and -0.3i (a diameter, so a geodesic)
    const double line = oracle::gk([](double t) { return 2.0 * 0.6 / (1.0 - std::pow(-0.3 + 0.6 * t, 2)); }, 0.0, 1.0);
    CHECK(std::abs(hyperbolic_distance_disk(Point(0, 0.3), Point(0, -0.3)) - line) / line < 1e-6);

    // off-centre geodesic: integrate the density along the sampled arc
    const Point z1(0.5, 0.1), z2(-0.2, 0.6);
    const Polyline arc = hyperbolic_segment_disk(z1, z2, 4001);
    double sum = 0.0;
    for (std::size_t i = 1; i < arc.size(); ++i) {
        const Point m = 0.5 * (arc[i] + arc[i - 1]);
        sum += 2.0 * std::abs(arc[i] - arc[i - 1]) / (1.0 - std::norm(m));
    }
    CHECK(std::abs(hyperbolic_distance_disk(z1, z2) - sum) / sum < 1e-6);
}

TEST_CASE("disk distance symmetry and moebius invariance") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> r(0.0, 0.9), t(0.0, kTwoPi);
    for (int k = 0; k < 20; ++k) {
        const Point a = std::polar(r(rng), t(rng));
        const double phi = t(rng);
        const Point z1 = std::polar(r(rng), t(rng)), z2 = std::polar(r(rng), t(rng));
        const double d = hyperbolic_distance_disk(z1, z2);
        CHECK(d == hyperbolic_distance_disk(z2, z1));
        CHECK(std::abs(hyperbolic_distance_disk(automorphism(z1, a, phi), automorphism(z2, a, phi)) - d) < 1e-10);
    }
}

TEST_CASE("hyperbolic distance through conformal maps") {
    const ConformalMap id = ConformalMap::identity();
    CHECK(hyperbolic_distance(id, Point(0.1, 0.2), Point(-0.3, 0.4)) ==
          doctest::Approx(hyperbolic_distance_disk(Point(0.1, 0.2), Point(-0.3, 0.4))).epsilon(1e-14));

    const ConformalMap sq = ConformalMap::disk_to_square();
    CHECK(std::abs(hyperbolic_distance(sq, sq(0.0), sq(0.5)) - std::log(3.0)) < 1e-8);

    const Point w1(0.21, -0.13), w2(-0.35, 0.4);
    const double loose = hyperbolic_distance(sq, w1, w2, 1e-10);
    const double tight = hyperbolic_distance(sq, w1, w2, 1e-13);
    CHECK(std::abs(loose - tight) < 1e-8);
    CHECK(tight == doctest::Approx(hyperbolic_distance_disk(sq.preimage(w1), sq.preimage(w2))).epsilon(1e-12));
}

TEST_CASE("quasi-hyperbolic distance on the disk") {
    const double k5 = quasi_hyperbolic_distance(disk64(), 0.0, 0.5, 0.01);
    CHECK(std::abs(k5 - std::log(2.0)) / std::log(2.0) < 0.05);
    const double k9 = quasi_hyperbolic_distance(disk64(), 0.0, 0.9, 0.01);
    CHECK(std::abs(k9 - std::log(10.0)) / std::log(10.0) < 0.05);
    CHECK(quasi_hyperbolic_distance(disk64(), 0.5, 0.0, 0.01) == k5);
}

TEST_CASE("quasi-hyperbolic refinement") {
    const JordanDomain U =
        JordanDomain::from_vertices({{0, 0}, {1, 0}, {1, 0.9}, {2, 0.9}, {2, 0}, {3, 0}, {3, 1}, {0, 1}});
    const double a = quasi_hyperbolic_distance(U, {0.5, 0.5}, {2.5, 0.5}, 0.01);
    const double b = quasi_hyperbolic_distance(U, {0.5, 0.5}, {2.5, 0.5}, 0.005);
    CHECK(std::abs(a - b) / b < 0.03);
    CHECK(b <= a * 1.03);
}

TEST_CASE("h over k comparability") {
    const ConformalMap id = ConformalMap::identity();
    std::vector<std::pair<Point, Point>> pairs;
    for (double r : {0.3, 0.6, 0.9}) pairs.push_back({0.0, std::polar(r, 0.7)});
    pairs.push_back({Point(0.2, 0.2), Point(0.2, 0.2)});
    const ComparabilityReport rep = comparability_from_pairs(id, disk64(), pairs, 0.005);
    CHECK(rep.excluded == 1);
    REQUIRE(rep.samples.size() == 3);
    for (const MetricSample& s : rep.samples) {
        const double r = std::abs(s.z2);
        const double closed = std::log((1 + r) / (1 - r)) / std::log(1 / (1 - r));
        CHECK(s.h / s.k == doctest::Approx(closed).epsilon(0.06));
        CHECK(s.h / s.k > 1.0);
        CHECK(s.h / s.k < 2.0);
    }

    const ComparabilityReport sq = comparability_report(ConformalMap::disk_to_square(), centred_square(), 50, 0.01, 4);
    CHECK(sq.within_gate);
    CHECK(sq.min >= 0.25);
    CHECK(sq.max <= 4.0);
    const std::string csv = metric_samples_csv(sq);
    CHECK(csv.rfind("x1,y1,x2,y2,h,k,geodesic_length,pitch", 0) == 0);
}

TEST_CASE("radial h over k limits") {
    auto closed = [](double r) { return std::log((1 + r) / (1 - r)) / std::log(1 / (1 - r)); };
    CHECK(closed(1e-3) > 1.99);
    CHECK(closed(1.0 - 1e-3) == doctest::Approx(std::log(1999.0) / std::log(1000.0)).epsilon(1e-12));
    CHECK(closed(1.0 - 1e-3) < 1.11);

    const ConformalMap id = ConformalMap::identity();
    const JordanDomain fine = JordanDomain::from_vertices(regular_polygon(1024));
    const ComparabilityReport rep = comparability_from_pairs(id, fine, {{0.0, 0.05}, {0.0, 0.95}}, 0.002);
    CHECK(rep.samples[0].h / rep.samples[0].k == doctest::Approx(closed(0.05)).epsilon(0.05));
    CHECK(rep.samples[1].h / rep.samples[1].k == doctest::Approx(closed(0.95)).epsilon(0.05));
    CHECK(rep.samples[0].h / rep.samples[0].k > rep.samples[1].h / rep.samples[1].k);
}

TEST_CASE("gehring-hayman ratio") {
    const ConformalMap id = ConformalMap::identity();
    CHECK(std::abs(gehring_hayman_ratio(id, disk64(), 1.0, -1.0, 0.01) - 1.0) < 0.09);
    const double arc = gehring_hayman_ratio(id, disk64(), 1.0, std::polar(1.0, 1.0), 0.01);
    CHECK(arc >= 1.0 - 0.09);

    const ConformalMap sq = ConformalMap::disk_to_square();
    const double gh = gehring_hayman_ratio(sq, centred_square(), std::polar(1.0, 0.3), std::polar(1.0, 1.3), 0.01);
    CHECK(gh >= 0.91);
    CHECK(gh <= 30.0);
}
