#include "hypext/conformal.hpp"
#include "hypext/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace hypext;

namespace {

const JordanDomain& centred_square() {
    static const JordanDomain d = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    return d;
}

// Closed-form square map: C int_0^z (1 + t^4)^{-1/2} dt with C = |(1+i)/2| / int_0^1 (1 - s^4)^{-1/2} ds.
double square_constant() {
    const double K = oracle::ts([](double s) { return 1.0 / std::sqrt(1.0 - s * s * s * s); }, 0.0, 1.0);
    return std::abs(Point(0.5, 0.5)) / K;
}

Point square_oracle(Point z) {
    static const double C = square_constant();
    auto f = [z](double s) { return 1.0 / std::sqrt(1.0 + std::pow(s * z, 4)); };
    const double re = oracle::gk([&](double s) { return f(s).real(); }, 0.0, 1.0, 1e-14);
    const double im = oracle::gk([&](double s) { return f(s).imag(); }, 0.0, 1.0, 1e-14);
    return C * z * Point(re, im);
}

}  // namespace

TEST_CASE("moebius normalization to the half-plane") {
    const Point xi = std::polar(1.0, kPi / 4);
    const MobiusMap T = mobius_disk_to_halfplane(xi);
    const Point a = Point(0.0, std::sin(kPi / 4) / (1.0 - std::cos(kPi / 4)));
    CHECK(std::abs(T.a - a) < 1e-12);
    CHECK(std::abs(T(xi) - 1.0) < 1e-12);
    CHECK(std::abs(T(std::conj(xi)) + 1.0) < 1e-12);
    CHECK(T(1.0) == Point(0.0, 0.0));
    CHECK(T(Point(0.2, 0.3)).imag() > 0.0);

    const MobiusMap T3 = mobius_disk_to_halfplane(std::polar(1.0, kPi / 3));
    for (int k = 0; k < 20; ++k) {
        const double th = 0.1 + k * 0.3;
        CHECK(std::abs(T3(std::polar(1.0, th)).imag()) < 1e-10);
    }
    CHECK_THROWS_AS(mobius_disk_to_halfplane(std::polar(1.0, 2.0)), Error);
    CHECK_THROWS_AS(mobius_disk_to_halfplane(std::polar(1.0, -0.5)), Error);
}

TEST_CASE("identity map") {
    const ConformalMap id = ConformalMap::identity();
    CHECK(id(Point(0.3, 0.4)) == Point(0.3, 0.4));
    CHECK(id.derivative(Point(0.3, 0.4)) == Point(1.0, 0.0));
    CHECK(std::abs(id.boundary_trace(kPi) - Point(-1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(id.evaluate(Point(1.2, 0.0)), Error);
}

TEST_CASE("closed-form square map against elliptic integral oracle") {
    const ConformalMap sq = ConformalMap::disk_to_square();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 40;) {
        const Point z(u(rng), u(rng));
        if (std::abs(z) >= 0.98) continue;
        worst = std::max(worst, std::abs(sq(z) - square_oracle(z)));
        ++k;
    }
    CHECK(worst < 1e-8);
    CHECK(sq.derivative(0.0).real() > 0.0);
    CHECK(std::abs(sq.derivative(0.0).imag()) < 1e-15);
}

TEST_CASE("schwarz-christoffel solve of the square") {
    const ConformalMap m = solve_schwarz_christoffel(centred_square(), 0.0);
    CHECK(m.residual() < 1e-10);
    const auto& th = m.prevertices();
    REQUIRE(th.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double gap = wrap_angle(th[(k + 1) % 4] - th[k]);
        CHECK(std::abs(gap - kPi / 2) < 1e-8);
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(0.0, 0.95), t(0.0, kTwoPi);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Point z = std::polar(r(rng), t(rng));
        worst = std::max(worst, std::abs(m(z) - square_oracle(z)));
    }
    CHECK(worst < 1e-5);

    // prevertices go to vertices; mid-side angles land on the oracle side point
    for (std::size_t k = 0; k < 4; ++k) {
        const Point v = m.boundary_trace(th[k]);
        double best = 1e300;
        for (const Point& w : centred_square().vertices()) best = std::min(best, std::abs(v - w));
        CHECK(best < 1e-8);
        const double mid = th[k] + 0.5 * wrap_angle(th[(k + 1) % 4] - th[k]);
        const Point oracle_side = square_oracle(std::polar(1.0, mid));
        CHECK(std::abs(m.boundary_trace(mid) - oracle_side) < 1e-6);
    }
}

TEST_CASE("schwarz-christoffel rectangle side ratios") {
    const JordanDomain rect = JordanDomain::from_vertices({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    const ConformalMap m = solve_schwarz_christoffel(rect, Point(1.0, 0.5), 1e-10);
    CHECK(m.residual() < 1e-10);
    std::vector<Point> v;
    for (double th : m.prevertices()) v.push_back(m.boundary_trace(th));
    std::vector<double> sides;
    for (std::size_t k = 0; k < v.size(); ++k) sides.push_back(std::abs(v[(k + 1) % v.size()] - v[k]));
    std::sort(sides.begin(), sides.end());
    CHECK(sides[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sides[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sides[2] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(sides[3] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(m(0.0) - Point(1.0, 0.5)) < 1e-12);
    CHECK(m.derivative(0.0).real() > 0.0);
}

TEST_CASE("derivative agrees with finite differences") {
    const ConformalMap m = solve_schwarz_christoffel(centred_square(), 0.0);
    for (Point z : {Point(0.0, 0.0), Point(0.3, -0.2), Point(-0.5, 0.4)}) {
        const double h = 1e-5;
        const Point fd = (m(z + h) - m(z - h)) / (2.0 * h);
        CHECK(std::abs(m.derivative(z) - fd) / std::abs(fd) < 1e-6);
    }
}

TEST_CASE("boundary trace is monotone along the polygon") {
    const ConformalMap m = solve_schwarz_christoffel(centred_square(), 0.0);
    double prev = m.boundary_arclength(0.0);
    Point prev_point = m.boundary_trace(0.0);
    int back = 0, repeats = 0;
    for (int k = 1; k < 6283; ++k) {
        const double s = m.boundary_arclength(k * 1e-3);
        const Point p = m.boundary_trace(k * 1e-3);
        if (std::remainder(s - prev, m.perimeter()) <= 0.0) ++back;
        if (std::abs(p - prev_point) == 0.0) ++repeats;
        prev = s;
        prev_point = p;
    }
    CHECK(back == 0);
    CHECK(repeats == 0);
    for (double s : {0.1, 1.3, 2.7, 3.9})
        CHECK(m.boundary_arclength(m.boundary_angle(s)) == doctest::Approx(s).epsilon(1e-9));
}

TEST_CASE("disk geodesics") {
    const Polyline d = hyperbolic_geodesic_disk(1.0, -1.0, 33);
    CHECK(d.front() == Point(1.0, 0.0));
    CHECK(d.back() == Point(-1.0, 0.0));
    for (const Point& z : d) CHECK(std::abs(z.imag()) < 1e-15);

    const Polyline g = hyperbolic_geodesic_disk(1.0, Point(0.0, 1.0), 65);
    CHECK(g.front() == Point(1.0, 0.0));
    CHECK(g.back() == Point(0.0, 1.0));
    const GeodesicCircle c = geodesic_circle(1.0, Point(0.0, 1.0));
    CHECK(std::abs(c.center - Point(1.0, 1.0)) < 1e-12);
    CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g[32] - Point(1.0, 1.0) * (1.0 - 1.0 / std::sqrt(2.0))) < 1e-12);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(0.0, kTwoPi);
    for (int k = 0; k < 20; ++k) {
        const Point a = std::polar(1.0, t(rng)), b = std::polar(1.0, t(rng));
        const GeodesicCircle gc = geodesic_circle(a, b);
        const Polyline p = hyperbolic_geodesic_disk(a, b, 41);
        if (!gc.diameter) CHECK(std::abs(std::norm(gc.center) - (1.0 + gc.radius * gc.radius)) < 1e-12 * std::norm(gc.center));
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            CHECK(std::abs(p[i]) < 1.0);
            if (!gc.diameter) CHECK(std::abs(std::norm(p[i] - gc.center) - gc.radius * gc.radius) < 1e-12 * std::max(1.0, gc.radius * gc.radius));
        }
    }
    CHECK_THROWS_AS(hyperbolic_geodesic_disk(1.0, 1.0, 8), Error);
}
