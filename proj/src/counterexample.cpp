#include "hypext/counterexample.hpp"

#include "hypext/error.hpp"
#include "hypext/grid_graph.hpp"
#include "hypext/integrability.hpp"
#include "hypext/metrics.hpp"
#include "hypext/quadrature.hpp"
#include "hypext/series.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace hypext {

BaseSequences base_sequences(const PhiSpec& spec, long N) {
    if (N < 2) throw Error(ErrorCode::InvalidArgument, "N must be >= 2");
    BaseSequences out;
    out.tail = classify_tail_integral(spec).verdict;
    if (out.tail == TailVerdict::Convergent)
        throw Error(ErrorCode::TailConvergent, "int 1/phi converges; the construction needs a divergent sum");
    out.N = N;
    out.a.assign(N + 1, 0.0);
    out.S.assign(N + 1, 0.0);
    out.b.assign(N + 2, 0.0);
    NeumaierSum S;
    for (long n = 1; n <= N; ++n) {
        const double inv = 1.0 / spec(static_cast<double>(n));
        S.add(inv);
        out.S[n] = S.value();
        out.a[n] = inv * std::pow(out.S[n], -2.0 / 3.0);
    }
    NeumaierSum b;
    for (long n = 1; n <= N; ++n) {
        out.b[n] = b.value();
        b.add(out.a[n]);
    }
    out.b[N + 1] = b.value();
    for (long n = 1; n < N; ++n) {
        const double r = out.a[n] / out.a[n + 1];
        if (r > out.c_M) {
            out.c_M = r;
            out.c_M_argmax = n;
        }
        if (out.a[n + 1] > out.a[n]) out.nonincreasing = false;
    }
    return out;
}

Grouping grouping_indices(const std::vector<double>& a, int groups) {
    if (groups < 1) throw Error(ErrorCode::InvalidArgument, "groups must be >= 1");
    const long N = static_cast<long>(a.size()) - 1;
    if (N < 16) throw Error(ErrorCode::TruncationTooShort, "sequence too short for a tail model");
    Grouping g;
    const long k1 = N / 2;
    g.tail_exponent = std::log((a[k1] * a[k1]) / (a[N] * a[N])) / std::log(static_cast<double>(N) / k1);
    if (!(g.tail_exponent > 1.05))
        throw Error(ErrorCode::TruncationTooShort, "tail of a_k^2 not summable at truncation (exponent " +
                                                       std::to_string(g.tail_exponent) + ")");
    g.tail_model = a[N] * a[N] * static_cast<double>(N) / (g.tail_exponent - 1.0);
    std::vector<double> tail(N + 2, 0.0);
    tail[N + 1] = g.tail_model;
    for (long k = N; k >= 1; --k) tail[k] = tail[k + 1] + a[k] * a[k];
    g.scale = std::sqrt((1.0 / 3.0) / tail[1]);
    const double s2 = g.scale * g.scale;
    g.i.assign(groups + 2, 0);
    for (int n = 1; n <= groups + 1; ++n) {
        const double target = std::ldexp(1.0, -2 * n) / 3.0;
        if (s2 * tail[N] >= target)
            throw Error(ErrorCode::TruncationTooShort, "i_" + std::to_string(n) + " lies beyond N = " + std::to_string(N));
        long lo = 1, hi = N;  // tail decreasing: largest k with s2 tail[k] >= target
        while (lo < hi) {
            const long mid = (lo + hi + 1) / 2;
            if (s2 * tail[mid] >= target)
                lo = mid;
            else
                hi = mid - 1;
        }
        g.i[n] = lo;
    }
    g.group_mass.assign(groups + 1, 0.0);
    g.mass_bound_ok.assign(groups + 1, true);
    for (int n = 1; n <= groups; ++n) {
        double m = 0.0;
        for (long k = g.i[n] + 1; k <= g.i[n + 1]; ++k) m += s2 * a[k] * a[k];
        g.group_mass[n] = m;
        g.mass_bound_ok[n] = g.i[n + 1] == g.i[n] || m <= std::ldexp(1.0, -2 * (n - 1)) * (1.0 + 1e-12);
    }
    return g;
}

GroupSegments segment_plan(const std::vector<double>& a, double c_M, long first, long last, int n) {
    GroupSegments seg;
    seg.n = n;
    seg.first = first;
    seg.last = last;
    if (last < first) throw Error(ErrorCode::GroupExhausted, "group " + std::to_string(n) + " is empty");
    const double l = std::ldexp(1.0, -n);
    long start = first;
    seg.m.push_back(first);
    while (true) {
        double sum = 0.0;
        long e = start;
        bool found = false;
        for (; e < last; ++e) {
            sum += a[e];
            if (sum >= 0.5 * l) {
                found = sum <= 2.0 * l;
                break;
            }
        }
        if (!found) {
            double fs = 0.0;
            for (long k = start; k <= last; ++k) fs += a[k];
            seg.windows.push_back({start, last});
            seg.window_sums.push_back(fs);
            if (seg.m.back() != last) seg.m.push_back(last);
            seg.exhausted = seg.windows.size() == 1;
            break;
        }
        seg.windows.push_back({start, e});
        seg.window_sums.push_back(sum);
        const long next = e + 1;
        seg.m.push_back(next);
        const double need = c_M * a[start];
        double acc = 3.0 * c_M * a[next];
        long s = 0;
        while (acc < need && next + s < last) {
            acc += a[next + s];
            ++s;
        }
        seg.s.push_back(s);
        start = next + s;
    }
    return seg;
}

CounterexamplePlan make_counterexample_plan(const PhiSpec& spec, int groups, long N) {
    if (groups < 1) throw Error(ErrorCode::InvalidArgument, "groups must be >= 1");
    CounterexamplePlan plan;
    plan.spec = spec;
    plan.groups = groups;
    plan.base = base_sequences(spec, N);
    plan.grouping = grouping_indices(plan.base.a, groups);
    plan.c_M = plan.base.c_M;
    plan.a = plan.base.a;
    plan.b = plan.base.b;
    for (double& x : plan.a) x *= plan.grouping.scale;
    for (double& x : plan.b) x *= plan.grouping.scale;
    plan.l.assign(groups + 1, 0.0);
    for (int n = 1; n <= groups; ++n) {
        plan.l[n] = std::ldexp(1.0, -n);
        const long first = plan.grouping.i[n] + 1, last = plan.grouping.i[n + 1];
        if (last < first) {
            GroupSegments empty;
            empty.n = n;
            empty.first = first;
            empty.last = last;
            plan.segments.push_back(empty);
        } else {
            plan.segments.push_back(segment_plan(plan.a, plan.c_M, first, last, n));
        }
    }
    return plan;
}

namespace {

// int_0^inf phi(K + u) e^{-u} du
double laguerre_mean(const PhiSpec& spec, double K) {
    static const quad::Rule rule = quad::gauss_laguerre(40);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * spec(K + rule.nodes[i]);
    return s;
}

}  // namespace

CounterexampleReport verify_counterexample(const CounterexamplePlan& plan, const FoldedLayout& layout, double pitch,
                                           long budget, unsigned seed) {
    CounterexampleReport rep;
    const PhiSpec& spec = plan.spec;
    const int G = static_cast<int>(layout.w.size()) - 1;
    const long last = plan.grouping.i[G + 1];

    // (1) sum a_n^2 phi(n) = sum (1/phi(n)) S_n^{-4/3}
    {
        SeriesProbe probe{[&spec](long n) { return 1.0 / spec(static_cast<double>(n)); }, -1.0 / 3.0};
        const WeightedPartialSums ws = weighted_partial_sums(probe, budget);
        rep.series_slack = ws.proof_slack;
        for (long k = 10; k <= budget; k *= 10) {
            rep.weighted_indices.push_back(k);
            rep.weighted_partials.push_back(ws.partials[k - 1]);
        }
        if (rep.weighted_indices.empty() || rep.weighted_indices.back() != budget) {
            rep.weighted_indices.push_back(budget);
            rep.weighted_partials.push_back(ws.partials[budget - 1]);
        }
        const long at = std::min<long>(100000, budget);
        rep.weighted_increment_at_1e5 = ws.partials[at - 1] - (at > 1 ? ws.partials[at - 2] : 0.0);
        for (long n = 2; n <= budget; ++n)
            if (ws.partials[n - 1] - ws.partials[n - 2] < 1e-8) {
                rep.cauchy_index = n;
                break;
            }
    }

    // (2) internal distance growth
    {
        PolygonGeodesic pg(layout.domain);
        rep.diameter.push_back(pg.distance(layout.basepoint, layout.group_end[0]));
        rep.tube_added.push_back(0.0);
        rep.growth_ratio.push_back(0.0);
        for (int g = 1; g <= G; ++g) {
            rep.diameter.push_back(pg.distance(layout.basepoint, layout.group_end[g]));
            rep.tube_added.push_back(layout.tube_length[g]);
            rep.growth_ratio.push_back(layout.tube_length[g] > 0.0
                                           ? (rep.diameter[g] - rep.diameter[g - 1]) / layout.tube_length[g]
                                           : 1.0);
        }
        rep.b_range = plan.b[last + 1];
    }

    // (3) chain-bound integral per trapezoid
    {
        rep.radial = radial_phi_integral(spec);
        const double c = plan.c_M;
        double K = 0.0, weighted = 0.0;
        rep.trapezoid_integral.assign(last + 1, 0.0);
        rep.trapezoid_ratio.assign(last + 1, 0.0);
        NeumaierSum total;
        for (long n = 1; n <= last; ++n) {
            const double an = plan.a[n], an1 = plan.a[n + 1];
            K += an / (c * an1);
            const double I = c * an * (an + an1) * laguerre_mean(spec, K);
            const double bound = an * an * spec(static_cast<double>(n)) + an * an * rep.radial;
            rep.trapezoid_integral[n] = I;
            rep.trapezoid_ratio[n] = I / bound;
            rep.max_ratio = std::max(rep.max_ratio, rep.trapezoid_ratio[n]);
            total.add(I);
            weighted += an * an * spec(static_cast<double>(n));
        }
        rep.integral_total = total.value();
        rep.rhs = weighted * (1.0 + rep.radial);
    }

    // Spot check of the chain bound on the unfolded chain.
    if (pitch > 0.0) {
        const JordanDomain R = unfolded_chain(plan, last);
        std::vector<long> candidates;
        for (long n = 1; n <= last; ++n)
            if (plan.c_M * plan.a[n + 1] >= 10.0 * pitch && plan.a[n] >= 4.0 * pitch) candidates.push_back(n);
        std::mt19937_64 rng(seed);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        candidates.resize(std::min<std::size_t>(3, candidates.size()));
        std::sort(candidates.begin(), candidates.end());
        for (long n : candidates) {
            double K = 0.0;
            for (long k = 1; k <= n; ++k) K += plan.a[k] / (plan.c_M * plan.a[k + 1]);
            const double s = 0.5 * plan.a[n];
            const double r = plan.c_M * (plan.a[n] - s * (plan.a[n] - plan.a[n + 1]) / plan.a[n]);
            const Point z(plan.b[n] + s, 0.5 * r);
            const double chain = K + std::log(2.0);
            const double grid = quasi_hyperbolic_distance(R, Point(0.0, 0.0), z, pitch);
            rep.spot_checks.push_back({chain, grid});
        }
    }
    return rep;
}

}  // namespace hypext
