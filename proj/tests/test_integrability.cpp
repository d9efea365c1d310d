#include "hypext/conformal.hpp"
#include "hypext/integrability.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hypext;

namespace {

// 2 pi int_0^1 r phi(log((1+r)/(1-r))) dr after r = 1 - e^{-u}
double disk_oracle(const PhiSpec& s) {
    auto g = [&s](double u) {
        const double r = -std::expm1(-u);
        return kTwoPi * r * s(std::log1p(r) + u) * std::exp(-u);
    };
    return oracle::gk(g, 0.0, 60.0, 1e-13) + oracle::gk(g, 60.0, 400.0, 1e-13);
}

}  // namespace

TEST_CASE("disk integral against substitution oracle") {
    for (double alpha : {0.0, 1.0, 2.0}) {
        const PhiSpec s = PhiSpec::alpha_log(alpha);
        CHECK(disk_phi_integral(s) == doctest::Approx(disk_oracle(s)).epsilon(1e-8));
    }
    // phi(t) = t: 2 pi int_0^1 r log((1+r)/(1-r)) dr = 2 pi
    CHECK(disk_phi_integral(PhiSpec::alpha_log(0)) == doctest::Approx(kTwoPi).epsilon(1e-9));
    const PhiSpec lin = PhiSpec::table({{0, 0}, {1, 1}}, TailKind::Power, 1.0);
    CHECK(disk_phi_integral(lin) == doctest::Approx(disk_phi_integral(PhiSpec::alpha_log(0))).epsilon(1e-6));
    CHECK(disk_phi_integral(PhiSpec::alpha_log(1), 1e-12) ==
          doctest::Approx(disk_phi_integral(PhiSpec::alpha_log(1), 1e-8)).epsilon(1e-6));
}

TEST_CASE("radial integral") {
    CHECK(radial_phi_integral(PhiSpec::alpha_log(0)) == doctest::Approx(1.0).epsilon(1e-10));
    const PhiSpec s = PhiSpec::alpha_log(1);
    const quad::Rule lag = quad::gauss_laguerre(60);
    double g = 0.0;
    for (std::size_t i = 0; i < lag.size(); ++i) g += lag.weights[i] * s(lag.nodes[i]);
    CHECK(radial_phi_integral(s) == doctest::Approx(g).epsilon(0.01));
    const double direct = oracle::gk([&s](double u) { return s(u) * std::exp(-u); }, 0.0, 200.0, 1e-13);
    CHECK(radial_phi_integral(s) == doctest::Approx(direct).epsilon(1e-8));
    CHECK(radial_phi_integral(PhiSpec::alpha_log(2)) > radial_phi_integral(s));
}

TEST_CASE("pullback area integral") {
    const ConformalMap id = ConformalMap::identity();
    const PhiSpec s = PhiSpec::alpha_log(1);
    const IntegralReport r = phi_hyperbolic_area_integral(id, s);
    CHECK(r.verdict == IntegralVerdict::Finite);
    CHECK(r.value == doctest::Approx(disk_phi_integral(s)).epsilon(0.01));
    CHECK(r.value == r.partial_by_radius.back());
    for (std::size_t k = 1; k < r.partial_by_radius.size(); ++k)
        CHECK(r.partial_by_radius[k] >= r.partial_by_radius[k - 1]);

    const IntegralReport deeper = phi_hyperbolic_area_integral(id, s, 28);
    for (std::size_t k = 0; k < r.partial_by_radius.size(); ++k)
        CHECK(deeper.partial_by_radius[k] >= r.partial_by_radius[k] * (1 - 1e-12));
}

TEST_CASE("square area integral converges") {
    const ConformalMap sq = ConformalMap::disk_to_square();
    const PhiSpec s = PhiSpec::alpha_log(1);
    const IntegralReport a = phi_hyperbolic_area_integral(sq, s, 20);
    const IntegralReport b = phi_hyperbolic_area_integral(sq, s, 24);
    CHECK(a.verdict == IntegralVerdict::Finite);
    CHECK(b.verdict == IntegralVerdict::Finite);
    CHECK(b.value == doctest::Approx(a.value).epsilon(1e-3));
    CHECK(radial_phi_integral(s) < 1e300);
}

TEST_CASE("exponential gauge is flagged") {
    const PhiSpec ex = PhiSpec::table({{0, 1}, {1, std::exp(1.0)}}, TailKind::Exp, 1.0);
    const IntegralReport r = phi_hyperbolic_area_integral(ConformalMap::identity(), ex);
    CHECK(r.verdict == IntegralVerdict::DivergenceSuspected);
    const std::size_t n = r.contributions.size();
    // annulus j contributes ~ 2 pi 2^{-j} (1+r)/(1-r) r, roughly constant
    CHECK(r.contributions[n - 1] / r.contributions[n - 2] == doctest::Approx(1.0).epsilon(0.05));
}
