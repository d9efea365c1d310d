#pragma once

#include <functional>
#include <vector>

namespace hypext {

/// Neumaier compensated summation.
class NeumaierSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Positive term generator a_n, n >= 1.
using TermFn = std::function<double(long)>;

struct SeriesProbe {
    TermFn terms;
    double delta = 0.0;
};

struct WeightedPartialSums {
    long N = 0;
    double S_N = 0.0;              // sum of a_k, k <= N
    std::vector<double> partials;  // index n-1: sum_{k<=n} a_k S_k^{delta-1}
    /// (a_1)^delta - (S_N)^delta - (-delta) sum_{k=2}^N a_k S_k^{delta-1}; nonnegative for delta < 0.
    double proof_slack = 0.0;
};

WeightedPartialSums weighted_partial_sums(const SeriesProbe& probe, long N);

/// log S_N - log a_1: lower bound for sum_{k<N} a_{k+1}/S_k.
double divergence_witness(const SeriesProbe& probe, long N);

enum class SeriesVerdict { Diverges, Converges };

struct SeriesClassification {
    SeriesVerdict verdict = SeriesVerdict::Converges;
    double witness = 0.0;     // Diverges: log S_N - log a_1
    double tail_bound = 0.0;  // Converges: (a_1)^delta / (-delta), bounds sum_{k>=2}
    double bound = 0.0;       // Converges: a_1^delta + tail_bound, bounds the whole series
    long N = 0;
};

/// Throws BudgetExceeded when delta >= 0 and the witness stays below threshold within budget terms.
SeriesClassification classify_weighted_series(const SeriesProbe& probe, long budget, double threshold = 3.0);

}  // namespace hypext
