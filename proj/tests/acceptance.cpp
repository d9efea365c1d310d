#include "hypext/conformal.hpp"
#include "hypext/counterexample.hpp"
#include "hypext/crosscuts.hpp"
#include "hypext/error.hpp"
#include "hypext/extension.hpp"
#include "hypext/metrics.hpp"
#include "hypext/phi.hpp"
#include "hypext/series.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#ifndef HYPEXT_CLI_PATH
#define HYPEXT_CLI_PATH "hypext"
#endif

using namespace hypext;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

template <class F>
double gk(F f, double a, double b, double tol = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

template <class F>
double ts(F f, double a, double b, double tol = 1e-12) {
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b, tol);
}

double square_constant() {
    const double K = ts([](double s) { return 1.0 / std::sqrt(1.0 - s * s * s * s); }, 0.0, 1.0);
    return std::abs(Point(0.5, 0.5)) / K;
}

// C int_0^z (1 + t^4)^{-1/2} dt
Point square_oracle(Point z) {
    static const double C = square_constant();
    auto f = [z](double s) { return 1.0 / std::sqrt(1.0 + std::pow(s * z, 4)); };
    const double re = gk([&](double s) { return f(s).real(); }, 0.0, 1.0, 1e-14);
    const double im = gk([&](double s) { return f(s).imag(); }, 0.0, 1.0, 1e-14);
    return C * z * Point(re, im);
}

Outcome c1() {
    const double h = hyperbolic_distance_disk(0.0, 0.5);
    const JordanDomain disk = JordanDomain::from_vertices(regular_polygon(64));
    const double k = quasi_hyperbolic_distance(disk, 0.0, 0.5, 0.01);
    const double rel = std::abs(k - std::log(2.0)) / std::log(2.0);
    return {std::abs(h - std::log(3.0)) < 1e-12 && rel < 0.05,
            "|h - ln3| = " + fmt("%.3g", std::abs(h - std::log(3.0))) + ", k rel err = " + fmt("%.4f", rel)};
}

Outcome c2() {
    auto verdict = [](double alpha, std::size_t budget) {
        TailOptions opt;
        opt.budget = budget;
        return classify_tail_integral(PhiSpec::alpha_log(alpha), 1.0, opt).verdict;
    };
    bool ok = true;
    std::string d;
    for (double a : {0.5, 1.0}) {
        const TailVerdict v = verdict(a, 1000000);
        ok = ok && v == TailVerdict::Divergent;
        d += fmt("a=%.1f ", a) + to_string(v) + "; ";
    }
    for (double a : {1.5, 2.0}) {
        const TailVerdict v = verdict(a, 1000000);
        ok = ok && v == TailVerdict::Convergent;
        d += fmt("a=%.1f ", a) + to_string(v) + "; ";
    }
    TailVerdict v11 = verdict(1.1, 1000000);
    if (v11 == TailVerdict::Inconclusive) v11 = verdict(1.1, 10000000);
    ok = ok && v11 == TailVerdict::Convergent;
    d += "a=1.1 " + to_string(v11);
    return {ok, d};
}

Outcome c3() {
    const JordanDomain sq = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const ConformalMap m = solve_schwarz_christoffel(sq, 0.0);
    const auto& th = m.prevertices();
    double gap_err = 0.0;
    for (std::size_t k = 0; k < th.size(); ++k)
        gap_err = std::max(gap_err, std::abs(wrap_angle(th[(k + 1) % th.size()] - th[k]) - kPi / 2));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(0.0, 0.95), t(0.0, kTwoPi);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Point z = std::polar(r(rng), t(rng));
        worst = std::max(worst, std::abs(m(z) - square_oracle(z)));
    }
    return {th.size() == 4 && gap_err < 1e-8 && worst < 1e-5,
            "max deviation " + fmt("%.3g", worst) + ", gap error " + fmt("%.3g", gap_err)};
}

Outcome c4() {
    const ConformalMap id = ConformalMap::identity();
    const BoundaryParam bp = own_trace(id);
    const DyadicCycles cyc = build_dyadic_cycles(bp, id, 12);
    const CrosscutFamily fam = build_crosscut_family(id, bp, cyc, cyc.n0, 12);
    std::size_t bad = 0, total = 0;
    for (int n = fam.n0; n <= fam.N; ++n)
        for (const Crosscut& c : fam.generations[n - fam.n0]) {
            ++total;
            const double lo = 2.0 * std::sin(kPi / std::ldexp(1.0, n)), hi = kTwoPi / std::ldexp(1.0, n);
            if (c.length < lo * (1 - 1e-9) || c.length > hi * (1 + 1e-9)) ++bad;
        }
    bool ok = bad == 0;
    std::string d = std::to_string(bad) + "/" + std::to_string(total) + " outside envelope";
    for (double p : {1.0, 1.5}) {
        const CrosscutSum s = crosscut_sum(fam, p);
        const double target = std::pow(2.0, p / 2 - 1);
        const double ratio = s.ratios.back();
        ok = ok && std::abs(ratio - target) <= 0.05;
        d += "; p=" + fmt("%.1f", p) + " ratio " + fmt("%.4f", ratio) + " vs " + fmt("%.4f", target);
    }
    return {ok, d};
}

Outcome c5() {
    bool ok = true;
    std::string d;
    const ConformalMap maps[2] = {ConformalMap::identity(), ConformalMap::disk_to_square()};
    const char* names[2] = {"disk", "square"};
    for (int k = 0; k < 2; ++k) {
        const BoundaryParam bp = own_trace(maps[k]);
        const DyadicCycles cyc = build_dyadic_cycles(bp, maps[k], 10);
        const DisjointnessAudit a = audit_disjointness(build_crosscut_family(maps[k], bp, cyc, cyc.n0, 10));
        ok = ok && a.passed();
        d += std::string(names[k]) + " " + std::to_string(a.crosscuts) + " crosscuts, " +
             std::to_string(a.violations) + " violations" + (k == 0 ? "; " : "");
    }
    return {ok, d};
}

// Integral of |f'|^p over the ideal 2^N-gon with vertices at e^{2 pi i j / 2^N}.
double square_polygon_energy(double p, int N) {
    const double C = square_constant();
    const double step = kTwoPi / std::ldexp(1.0, N);
    auto radial = [&](double th) {
        const double local = std::fmod(th, step) - 0.5 * step;
        const double rmax = std::cos(0.5 * step) / std::cos(local);
        return ts([&](double r) {
            const Point z = std::polar(r, th);
            return std::pow(C / std::sqrt(std::abs(1.0 + std::pow(z, 4))), p) * r;
        }, 0.0, rmax, 1e-10);
    };
    const long cells = std::lround(kPi / 4 / step);
    double total = 0.0;
    for (long c = 0; c < cells; ++c)
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(radial, c * step, (c + 1) * step, 0);
    return 8.0 * total;
}

Outcome c6() {
    const ConformalMap sq = ConformalMap::disk_to_square();
    const BoundaryParam bp = own_trace(sq);
    const DyadicCycles cyc = build_dyadic_cycles(bp, sq, 12);
    const ExtensionResult r = build_extension(sq, bp, cyc, 12, 1.5);
    double worst = 0.0;
    for (int n = 9; n <= 12; ++n) {
        const double prev = r.energy_by_depth[n - 1 - r.n0], cur = r.energy_by_depth[n - r.n0];
        worst = std::max(worst, std::abs(cur - prev) / prev);
    }
    const double direct = square_polygon_energy(1.5, 12);
    const double rel = std::abs(r.energy() - direct) / direct;
    return {worst < 0.02 && rel < 0.15, "max increment " + fmt("%.4f", worst) + ", E(12) = " +
                                            fmt("%.6f", r.energy()) + " vs direct " + fmt("%.6f", direct)};
}

Outcome c7() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    double worst = 1e300;
    for (double delta : {-1.0 / 3.0, -1.0})
        for (int k = 0; k < 20; ++k) {
            std::vector<double> a(2001);
            for (double& x : a) x = u(rng);
            const WeightedPartialSums w = weighted_partial_sums({[&a](long n) { return a[n]; }, delta}, 2000);
            const double scale = std::pow(a[1], delta);
            worst = std::min(worst, w.proof_slack / scale);
        }
    const double witness = divergence_witness({[](long n) { return 1.0 / n; }, 0.0}, 1000000);
    const double err = std::abs(witness - std::log(14.392726722865723));
    return {worst >= -1e-10 && err < 1e-4,
            "least relative slack " + fmt("%.3g", worst) + ", witness error " + fmt("%.3g", err)};
}

Outcome c8() {
    const CounterexamplePlan plan = make_counterexample_plan(PhiSpec::alpha_log(1.0), 6);
    std::size_t windows = 0, bad = 0;
    for (const GroupSegments& g : plan.segments)
        for (std::size_t d = 0; d + 1 < g.windows.size(); ++d) {
            ++windows;
            const double l = plan.l[g.n], s = g.window_sums[d];
            if (!(s >= 0.5 * l && s <= 2.0 * l)) ++bad;
        }
    bool simple = true;
    FoldedLayout L;
    try {
        L = fold_layout(plan, 6);
        JordanDomain::from_vertices(L.domain.vertices());
    } catch (const Error&) {
        simple = false;
    }
    if (!simple) return {false, "layout failed simplicity validation"};
    std::vector<double> C;
    double running = 0.0;
    for (int g = 1; g <= 6; ++g) {
        running = std::max(running, L.w[g] / plan.l[g]);
        if (g >= 3) C.push_back(running);
    }
    const double cmin = *std::min_element(C.begin(), C.end()), cmax = *std::max_element(C.begin(), C.end());
    const double mid = 0.5 * (cmin + cmax);
    const bool stable = cmax <= mid * 1.2 && cmin >= mid * 0.8;
    const CounterexampleReport r = verify_counterexample(plan, L, 0.0, 100000);
    double least_growth = 1e300;
    for (int g = 1; g <= 6; ++g) least_growth = std::min(least_growth, r.growth_ratio[g]);
    const bool ok = bad == 0 && windows > 0 && stable && r.weighted_increment_at_1e5 < 1e-6 && least_growth >= 0.9;
    return {ok, std::to_string(bad) + "/" + std::to_string(windows) + " windows off, C in [" + fmt("%.3f", cmin) + ", " +
                    fmt("%.3f", cmax) + "], increment " + fmt("%.3g", r.weighted_increment_at_1e5) +
                    ", least growth " + fmt("%.3f", least_growth) + ", simple"};
}

Outcome c9() {
    const CounterexamplePlan plan = make_counterexample_plan(PhiSpec::alpha_log(1.0), 6);
    const FoldedLayout L = fold_layout(plan, 6);
    const DistanceOracle d = polygon_distance_oracle(L.domain, L.basepoint);
    const BadParametrizationPlan bp = bad_parametrization(arclength_reference(L.domain, L.tip), d, 7, 0.0, false);
    std::vector<std::pair<double, double>> arcs;
    for (std::size_t k = 0; k < bp.levels.size(); ++k) arcs.push_back({bp.alpha[k], bp.width[k]});
    const W11Probe bad = w11_lowerbound_probe(arcs, bp.levels, [&bp](double t) { return bp(t); }, d,
                                              bp.offset + 0.25 * bp.unit * std::ldexp(1.0, 2 * bp.first_level));

    const ConformalMap sq = ConformalMap::disk_to_square();
    const JordanDomain box = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const DistanceOracle ds = polygon_distance_oracle(box, 0.0);
    double inner = 0.0;
    for (int k = 0; k < 256; ++k) inner = std::max(inner, std::abs(sq(std::polar(0.5, kTwoPi * k / 256))));
    std::vector<std::pair<double, double>> sarcs;
    std::vector<int> levels;
    for (int n = 2; n <= 7; ++n) {
        sarcs.push_back({kPi - kPi / std::ldexp(1.0, n), kPi / std::ldexp(1.0, 2 * n)});
        levels.push_back(n);
    }
    const W11Probe smooth = w11_lowerbound_probe(sarcs, levels, [&sq](double t) { return sq.boundary_trace(t); }, ds, inner);
    const bool ok = bad.L.size() >= 3 && bad.linear_growth && smooth.geometric_decay;
    std::string detail = std::to_string(bad.L.size()) + " certified levels, L_n min " +
                         fmt("%.3g", bad.L.empty() ? 0.0 : *std::min_element(bad.L.begin(), bad.L.end())) +
                         ", square ratios";
    for (std::size_t k = 1; k < smooth.L.size(); ++k) detail += " " + fmt("%.3f", smooth.L[k] / smooth.L[k - 1]);
    return {ok, detail};
}

std::string slurp_tree(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const fs::path& f : files) {
        std::ifstream in(f, std::ios::binary);
        all += fs::relative(f, dir).string() + "\n";
        all.append(std::istreambuf_iterator<char>(in), {});
    }
    return all;
}

Outcome c10() {
    const fs::path root = fs::temp_directory_path() / ("hypext_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(root);
    const fs::path domain = root / "square.json";
    std::ofstream(domain) << R"({"kind": "square"})";
    const std::vector<std::string> commands = {
        "integrability --domain " + domain.string() + " --phi alpha:1 --seed 5",
        "extension --domain " + domain.string() + " --p 1.5 --depth 8 --seed 5",
        "counterexample --phi alpha:1 --groups 4 --budget 200000 --pitch 0.004 --seed 5",
    };
    bool ok = true;
    std::string d;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::string runs[2];
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = root / ("cmd" + std::to_string(k) + "_" + std::to_string(rep));
            const std::string cmd = std::string(HYPEXT_CLI_PATH) + " " + commands[k] + " --out " + out.string() +
                                    " > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            if (rc != 0 || !fs::exists(out / "report.json")) {
                ok = false;
                d += commands[k].substr(0, commands[k].find(' ')) + " failed; ";
                break;
            }
            runs[rep] = slurp_tree(out);
        }
        const bool same = !runs[0].empty() && runs[0] == runs[1];
        ok = ok && same;
        d += commands[k].substr(0, commands[k].find(' ')) + (same ? " identical" : " differs") +
             (k + 1 < commands.size() ? "; " : "");
    }
    fs::remove_all(root);
    return {ok, d};
}

struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {"c1", "disk closed forms", c1},
        {"c2", "tail-integral dichotomy", c2},
        {"c3", "schwarz-christoffel square", c3},
        {"c4", "disk crosscut envelopes and trailing ratio", c4},
        {"c5", "crosscut disjointness audit", c5},
        {"c6", "extension energy on the square", c6},
        {"c7", "series dichotomy replay", c7},
        {"c8", "counterexample pipeline", c8},
        {"c9", "w11 probe", c9},
        {"c10", "determinism", c10},
    };
    const std::string which = argc > 1 ? argv[1] : "all";
    int failures = 0, ran = 0;
    for (const Criterion& c : all) {
        if (which != "all" && which != c.id) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-4s %-44s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion %s\n", which.c_str());
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
