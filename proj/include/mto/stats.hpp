#pragma once

#include <span>
#include <string>
#include <vector>

#include "mto/metric_result.hpp"
#include "mto/tensor.hpp"
#include "mto/types.hpp"

namespace mto {

inline constexpr double kSignificance = 0.05;

// Average ranks (1-based, ties averaged) of the values in ascending order.
std::vector<double> average_ranks(std::span<const double> values);

// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value: average ranks on ties,
// normal approximation with tie-corrected variance and 0.5 continuity
// correction. A degenerate (zero-variance) pooled sample gives p = 1.
double ranksum(std::span<const double> x, std::span<const double> y);

// Two-sided Wilcoxon signed-rank p-value on the nonzero paired differences,
// average ranks on tied magnitudes, normal approximation with continuity
// correction. All-zero differences give p = 1.
double signrank(std::span<const double> x, std::span<const double> y);

enum class TestKind { RankSum, SignRank, Friedman };
enum class FriedmanMode { Mean, AllReps };

// Result of annotate() or friedman(). For pairwise tests p is rows x cols
// with NaN in the base column and markers holds one char per cell:
// '+' significantly better than base, '-' significantly worse, '=' neither,
// ' ' for the base column. For Friedman p is 1 x cols (post-hoc vs base, NaN
// at base) and the rank fields are filled.
struct TestReport {
    TestKind kind = TestKind::RankSum;
    int base = 0;
    MetricResult::Orientation orientation = MetricResult::Orientation::Min;
    Matrix p;
    std::vector<std::string> markers;
    double chi2 = kNaN;
    int blocks = 0;
    Vector mean_ranks;
    Vector z;
};

// Friedman test over a metric table. Mean mode ranks one block per row (cells
// averaged over reps); all-reps mode ranks one block per (row, rep). Rank 1
// is the best value under the orientation. Post-hoc compares every algorithm
// against the base column.
TestReport friedman(const Tensor3& table, FriedmanMode mode, int base, MetricResult::Orientation orientation);

// Lower-level Friedman on prepared blocks (rows are blocks, columns
// algorithms, smaller is better).
TestReport friedman_blocks(const Matrix& blocks, int base);

// Pairwise rank-sum or signed-rank of every algorithm against the base
// column, one test per row, with +/-/= markers at the 0.05 level. Better
// central tendency = median comparison, falling back to means, then '='.
TestReport annotate(const Tensor3& table, int base, TestKind kind, MetricResult::Orientation orientation);

} // namespace mto
