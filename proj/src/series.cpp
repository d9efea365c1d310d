#include "hypext/series.hpp"

#include "hypext/error.hpp"

#include <cmath>
#include <string>

namespace hypext {

void NeumaierSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

namespace {

double term(const SeriesProbe& probe, long n) {
    const double a = probe.terms(n);
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::NonPositiveTerm, "a_" + std::to_string(n) + " is not positive");
    return a;
}

}  // namespace

WeightedPartialSums weighted_partial_sums(const SeriesProbe& probe, long N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    WeightedPartialSums out;
    out.N = N;
    out.partials.reserve(N);
    NeumaierSum S, P, tail;
    double a1 = 0.0;
    for (long n = 1; n <= N; ++n) {
        const double a = term(probe, n);
        if (n == 1) a1 = a;
        S.add(a);
        const double w = a * std::pow(S.value(), probe.delta - 1.0);
        P.add(w);
        if (n >= 2) tail.add(w);
        out.partials.push_back(P.value());
    }
    out.S_N = S.value();
    out.proof_slack = std::pow(a1, probe.delta) - std::pow(out.S_N, probe.delta) - (-probe.delta) * tail.value();
    return out;
}

double divergence_witness(const SeriesProbe& probe, long N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    NeumaierSum S;
    double a1 = 0.0;
    for (long n = 1; n <= N; ++n) {
        const double a = term(probe, n);
        if (n == 1) a1 = a;
        S.add(a);
    }
    return std::log(S.value()) - std::log(a1);
}

SeriesClassification classify_weighted_series(const SeriesProbe& probe, long budget, double threshold) {
    if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
    SeriesClassification c;
    const double a1 = term(probe, 1);
    if (probe.delta < 0.0) {
        c.verdict = SeriesVerdict::Converges;
        c.tail_bound = std::pow(a1, probe.delta) / (-probe.delta);
        c.bound = std::pow(a1, probe.delta) + c.tail_bound;
        c.N = 1;
        return c;
    }
    NeumaierSum S;
    const double log_a1 = std::log(a1);
    for (long n = 1; n <= budget; ++n) {
        S.add(term(probe, n));
        const double w = std::log(S.value()) - log_a1;
        if (w > threshold) {
            c.verdict = SeriesVerdict::Diverges;
            c.witness = w;
            c.N = n;
            return c;
        }
        c.witness = w;
    }
    throw Error(ErrorCode::BudgetExceeded, "witness " + std::to_string(c.witness) + " after " + std::to_string(budget) +
                                               " terms is below threshold " + std::to_string(threshold));
}

}  // namespace hypext
