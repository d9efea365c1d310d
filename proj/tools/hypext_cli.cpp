#include "hypext/counterexample.hpp"
#include "hypext/crosscuts.hpp"
#include "hypext/error.hpp"
#include "hypext/extension.hpp"
#include "hypext/integrability.hpp"
#include "hypext/io.hpp"
#include "hypext/phi.hpp"
#include "hypext/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypext;

namespace {

enum Exit { Ok = 0, Usage = 1, Divergent = 2, Inconclusive = 3, NoN0 = 4, Inapplicable = 5 };

struct RunConfig {
    std::string domain;
    std::string phi = "alpha:1";
    std::string basepoint = "0,0";
    double p = 1.5;
    int depth = 10;
    int groups = 6;
    double pitch = 0.0;
    long budget = 10000000;
    int levels = 7;
    std::string out = "out";
    unsigned seed = 1;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

int cmd_integrability(const RunConfig& cfg) {
    const DomainSpec dom = load_domain(cfg.domain);
    const PhiSpec spec = PhiSpec::parse(cfg.phi);
    const Point z0 = parse_point(cfg.basepoint);
    const ConformalMap map = conformal_map_for(dom, z0);
    const IntegralReport rep = phi_hyperbolic_area_integral(map, spec, cfg.depth > 0 ? 2 * cfg.depth : 24);

    json j;
    j["command"] = "integrability";
    j["domain"] = dom.name;
    j["phi"] = spec.describe();
    j["basepoint"] = to_json(z0);
    j["map_residual"] = map.residual();
    j["value"] = rep.value;
    j["verdict"] = to_string(rep.verdict);
    j["radial_levels"] = rep.radial_levels;
    j["angular_nodes"] = rep.angular_nodes;
    j["radial_nodes"] = rep.radial_nodes;
    write_json(fs::path(cfg.out) / "report.json", j);

    CsvTable table({"level", "radius", "contribution", "partial"});
    for (std::size_t k = 0; k < rep.radii.size(); ++k)
        table.add_row({double(k + 1), rep.radii[k], rep.contributions[k], rep.partial_by_radius[k]});
    write_text(fs::path(cfg.out) / "tables" / "integral_partials.csv", table.str());

    SvgFigure fig(dom.domain.bbox());
    fig.polygon(dom.domain.vertices(), "black", "#eef3fa");
    fig.circle(z0, 3.0, "#d62728");
    fig.save(fs::path(cfg.out) / "figures" / "domain.svg");

    switch (rep.verdict) {
        case IntegralVerdict::Finite: return Ok;
        case IntegralVerdict::DivergenceSuspected: return Divergent;
        case IntegralVerdict::Inconclusive: return Inconclusive;
    }
    return Inconclusive;
}

int cmd_extension(const RunConfig& cfg) {
    const DomainSpec dom = load_domain(cfg.domain);
    const Point z0 = parse_point(cfg.basepoint);
    const ConformalMap map = conformal_map_for(dom, z0);
    const BoundaryParam bp = own_trace(map);
    const DyadicCycles cycles = build_dyadic_cycles(bp, map, cfg.depth);
    const CrosscutFamily family = build_crosscut_family(map, bp, cycles, cycles.n0, cfg.depth);
    const CrosscutSum sum = crosscut_sum(family, cfg.p);
    const DisjointnessAudit audit = audit_disjointness(family);

    json j;
    j["command"] = "extension";
    j["domain"] = dom.name;
    j["basepoint"] = to_json(z0);
    j["p"] = cfg.p;
    j["depth"] = cfg.depth;
    j["n0"] = cycles.n0;
    j["max_gap"] = cycles.max_gap;
    j["sum"] = {{"terms", sum.terms}, {"partials", sum.partials}, {"ratios", sum.ratios},
                {"convergent", sum.convergent}};
    j["audit"] = {{"crosscuts", audit.crosscuts},
                  {"segments", audit.segments},
                  {"endpoint_contacts", audit.endpoint_contacts},
                  {"violations", audit.violations}};

    CsvTable lengths({"n", "j", "length", "chord"});
    for (const auto& gen : family.generations)
        for (const Crosscut& c : gen) lengths.add_row({double(c.n), double(c.j), c.length, c.chord});
    write_text(fs::path(cfg.out) / "tables" / "crosscuts.csv", lengths.str());

    CsvTable terms({"n", "T", "S", "ratio"});
    for (std::size_t k = 0; k < sum.terms.size(); ++k)
        terms.add_row({double(sum.n0 + int(k)), sum.terms[k], sum.partials[k], k ? sum.ratios[k - 1] : 0.0});
    write_text(fs::path(cfg.out) / "tables" / "crosscut_sum.csv", terms.str());

    if (sum.convergent) {
        const ExtensionResult ext = build_extension(map, bp, cycles, cfg.depth, cfg.p);
        j["extension"] = {{"energy", ext.energy()},
                          {"inner_energy", ext.inner_energy},
                          {"energy_by_depth", ext.energy_by_depth},
                          {"folded_nodes", ext.folded_nodes},
                          {"cells", ext.cells.size()}};
        CsvTable energy({"n", "energy"});
        for (std::size_t k = 0; k < ext.energy_by_depth.size(); ++k)
            energy.add_row({double(ext.n0 + int(k)), ext.energy_by_depth[k]});
        write_text(fs::path(cfg.out) / "tables" / "energy.csv", energy.str());
    }
    write_json(fs::path(cfg.out) / "report.json", j);

    SvgFigure fig(dom.domain.bbox());
    fig.polygon(dom.domain.vertices(), "black", "#f7f7f7");
    const int shown = std::min(family.N, family.n0 + 5);
    for (int n = family.n0; n <= shown; ++n)
        for (const Crosscut& c : family.generations[n - family.n0])
            fig.polyline(c.polyline, kPalette[(n - family.n0) % 8], 1.6 - 0.2 * (n - family.n0));
    fig.save(fs::path(cfg.out) / "figures" / "crosscuts.svg");

    return sum.convergent ? Ok : Inconclusive;
}

json to_json(const GroupSegments& s) {
    json w = json::array();
    for (const auto& [a, b] : s.windows) w.push_back({a, b});
    return {{"group", s.n}, {"first", s.first}, {"last", s.last}, {"m", s.m}, {"s", s.s},
            {"windows", w}, {"window_sums", s.window_sums}, {"exhausted", s.exhausted}};
}

int cmd_counterexample(const RunConfig& cfg) {
    const PhiSpec spec = PhiSpec::parse(cfg.phi);
    const CounterexamplePlan plan = make_counterexample_plan(spec, cfg.groups);
    const FoldedLayout layout = fold_layout(plan, cfg.groups);
    const CounterexampleReport rep = verify_counterexample(plan, layout, cfg.pitch, cfg.budget, cfg.seed);
    const fs::path out(cfg.out);

    json j;
    j["command"] = "counterexample";
    j["phi"] = spec.describe();
    j["groups"] = cfg.groups;
    j["seed"] = cfg.seed;
    j["sequences"] = {{"N", plan.base.N},
                      {"a1", plan.base.a[1]},
                      {"c_M", plan.c_M},
                      {"c_M_argmax", plan.base.c_M_argmax},
                      {"nonincreasing", plan.base.nonincreasing},
                      {"scale", plan.grouping.scale},
                      {"tail_exponent", plan.grouping.tail_exponent},
                      {"i", plan.grouping.i},
                      {"group_mass", plan.grouping.group_mass},
                      {"tail_modelled", plan.grouping.approximate}};
    json segs = json::array();
    for (const GroupSegments& s : plan.segments) segs.push_back(to_json(s));
    j["segments"] = segs;
    j["layout"] = {{"vertices", layout.domain.size()}, {"turns", layout.turns},   {"w", layout.w},
                   {"height", layout.height},          {"tube_length", layout.tube_length},
                   {"clearance", layout.clearance},    {"area", layout.domain.area()}};
    j["integrability"] = {{"weighted_indices", rep.weighted_indices},
                          {"weighted_partials", rep.weighted_partials},
                          {"increment_at_1e5", rep.weighted_increment_at_1e5},
                          {"cauchy_index", rep.cauchy_index},
                          {"series_slack", rep.series_slack},
                          {"trapezoid_integral_total", rep.integral_total},
                          {"rhs", rep.rhs},
                          {"radial_integral", rep.radial},
                          {"max_trapezoid_ratio", rep.max_ratio}};
    json spots = json::array();
    for (const auto& [c, g] : rep.spot_checks) spots.push_back({c, g});
    j["integrability"]["spot_checks"] = spots;
    j["diameter"] = {{"by_group", rep.diameter}, {"tube_added", rep.tube_added},
                     {"growth_ratio", rep.growth_ratio}, {"b_range", rep.b_range}};

    const BoundaryParam reference = arclength_reference(layout.domain, layout.tip);
    const DistanceOracle oracle = polygon_distance_oracle(layout.domain, layout.basepoint);
    const BadParametrizationPlan bad = bad_parametrization(reference, oracle, cfg.levels, 0.0, false);
    std::vector<std::pair<double, double>> arcs;
    for (std::size_t k = 0; k < bad.levels.size(); ++k) arcs.push_back({bad.alpha[k], bad.width[k]});
    const W11Probe probe = w11_lowerbound_probe(arcs, bad.levels, [&bad](double t) { return bad(t); }, oracle,
                                                bad.offset + 0.25 * bad.unit * std::ldexp(1.0, 2 * bad.first_level));
    json table = json::array();
    for (const auto& [x, y] : bad.table) table.push_back({x, y});
    j["bad_parametrization"] = {{"unit", bad.unit},          {"offset", bad.offset},
                                {"levels", bad.levels},      {"theta", bad.theta},
                                {"delta", bad.delta},        {"certified_distance", bad.certified_distance},
                                {"max_certified", bad.max_certified}, {"table", table}};
    j["w11_probe"] = {{"L", probe.L}, {"partials", probe.partials}, {"linear_growth", probe.linear_growth}};
    write_json(out / "report.json", j);

    CsvTable seq({"n", "a", "b", "a2_phi"});
    const long rows = std::min<long>(plan.grouping.i[cfg.groups + 1] + 1, plan.base.N);
    for (long n = 1; n <= rows; ++n)
        seq.add_row({double(n), plan.a[n], plan.b[n], plan.base.a[n] * plan.base.a[n] * spec(double(n))});
    write_text(out / "tables" / "sequences.csv", seq.str());

    CsvTable widths({"group", "l", "w", "height", "tube_length", "w_over_l"});
    for (int g = 1; g <= cfg.groups; ++g)
        widths.add_row({double(g), plan.l[g], layout.w[g], layout.height[g], layout.tube_length[g],
                        layout.w[g] / plan.l[g]});
    write_text(out / "tables" / "widths.csv", widths.str());

    CsvTable diam({"group", "diameter", "tube_added", "growth_ratio"});
    for (std::size_t g = 0; g < rep.diameter.size(); ++g)
        diam.add_row({double(g), rep.diameter[g], g < rep.tube_added.size() ? rep.tube_added[g] : 0.0,
                      g < rep.growth_ratio.size() ? rep.growth_ratio[g] : 0.0});
    write_text(out / "tables" / "diameter.csv", diam.str());

    CsvTable traps({"n", "integral", "ratio"});
    for (std::size_t n = 1; n < rep.trapezoid_integral.size(); ++n)
        traps.add_row({double(n), rep.trapezoid_integral[n], rep.trapezoid_ratio[n]});
    write_text(out / "tables" / "trapezoids.csv", traps.str());

    const long chain_last = std::min<long>(plan.grouping.i[std::min(cfg.groups, 3) + 1], plan.base.N - 1);
    const JordanDomain chain = unfolded_chain(plan, chain_last);
    SvgFigure fig3(chain.bbox());
    fig3.polygon(chain.vertices(), "black", "#eef3fa");
    fig3.circle({0.0, 0.0}, 3.0, "#d62728");
    fig3.save(out / "figures" / "trapezoid_chain.svg");

    SvgFigure fig4(layout.domain.bbox());
    fig4.polygon(layout.domain.vertices(), "#999999", "none", 0.5);
    std::size_t begin = 0;
    for (int g = 0; g <= cfg.groups; ++g) {
        std::size_t end = begin;
        while (end + 1 < layout.centerline.size() && layout.centerline[end] != layout.group_end[g]) ++end;
        fig4.polyline(Polyline(layout.centerline.begin() + begin, layout.centerline.begin() + end + 1),
                      kPalette[g % 8], 1.2);
        begin = end;
    }
    fig4.save(out / "figures" / "group_centerlines.svg");

    SvgFigure fig5(layout.domain.bbox());
    fig5.polygon(layout.domain.vertices(), "black", "#eef3fa", 0.6);
    fig5.circle(layout.basepoint, 3.0, "#d62728");
    fig5.circle(layout.tip, 3.0, "#2ca02c");
    fig5.save(out / "figures" / "folded_layout.svg");
    return Ok;
}

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::NoValidN0: return NoN0;
        case ErrorCode::TailConvergent: return Inapplicable;
        default: return Usage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic metrics, crosscut extensions and the folded counterexample"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* integ = app.add_subcommand("integrability", "integral of phi(h(z0, z)) over a domain");
    integ->add_option("--domain", cfg.domain, "domain JSON")->required()->check(CLI::ExistingFile);
    integ->add_option("--phi", cfg.phi, "alpha:A or table:PATH");
    integ->add_option("--basepoint", cfg.basepoint, "x,y");
    integ->add_option("--depth", cfg.depth, "radial dyadic levels / 2")->check(CLI::PositiveNumber);

    auto* ext = app.add_subcommand("extension", "crosscut sum and finite-depth extension");
    ext->add_option("--domain", cfg.domain, "domain JSON")->required()->check(CLI::ExistingFile);
    ext->add_option("--basepoint", cfg.basepoint, "x,y");
    ext->add_option("--p", cfg.p, "Sobolev exponent in [1,2)")
        ->check(CLI::Validator([](std::string& s) {
                    double p = 0.0;
                    try {
                        p = std::stod(s);
                    } catch (const std::exception&) {
                        return std::string("p must be a number");
                    }
                    return p >= 1.0 && p < 2.0 ? std::string() : std::string("p must lie in [1,2)");
                }, "[1,2)"));
    ext->add_option("--depth", cfg.depth, "deepest generation")->check(CLI::Range(1, 20));

    auto* cex = app.add_subcommand("counterexample", "folded trapezoid domain and its verification");
    cex->add_option("--phi", cfg.phi, "alpha:A or table:PATH");
    cex->add_option("--groups", cfg.groups, "number of groups")->check(CLI::Range(1, 12));
    cex->add_option("--pitch", cfg.pitch, "grid pitch for quasi-hyperbolic spot checks (0 disables)")
        ->check(CLI::NonNegativeNumber);
    cex->add_option("--budget", cfg.budget, "series terms")->check(CLI::Range(1000L, 1000000000L));
    cex->add_option("--depth", cfg.levels, "bad parametrization levels")->check(CLI::Range(2, 12));

    for (auto* sub : {integ, ext, cex}) {
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--seed", cfg.seed, "seed for sampled audits");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    }

    try {
        if (*integ) return cmd_integrability(cfg);
        if (*ext) return cmd_extension(cfg);
        return cmd_counterexample(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return Usage;
    }
}
