#include "mto/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mto {

namespace {

double normal_two_sided(double z) { return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0))); }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n == 0) return kNaN;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return kNaN;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> finite_only(std::span<const double> v) {
    std::vector<double> out;
    for (double x : v)
        if (!std::isnan(x)) out.push_back(x);
    return out;
}

// Sum over tie groups of t^3 - t, needed by the tie-corrected variances.
double tie_term(std::vector<double> sorted) {
    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        auto t = static_cast<double>(j - i);
        total += t * t * t - t;
        i = j;
    }
    return total;
}

} // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double ranksum(std::span<const double> x, std::span<const double> y) {
    auto xs = finite_only(x);
    auto ys = finite_only(y);
    if (xs.empty() || ys.empty()) throw ConfigError("ranksum: empty sample");
    double n1 = static_cast<double>(xs.size());
    double n2 = static_cast<double>(ys.size());
    double n = n1 + n2;
    std::vector<double> pooled = xs;
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    auto ranks = average_ranks(pooled);
    double w = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) w += ranks[i];
    double u = w - n1 * (n1 + 1.0) / 2.0;
    double mu = n1 * n2 / 2.0;
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double ties = tie_term(std::move(sorted));
    double var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0;
    double z = (std::abs(u - mu) - 0.5) / std::sqrt(var);
    if (z < 0.0) z = 0.0;
    return normal_two_sided(z);
}

double signrank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("signrank: samples must be paired");
    std::vector<double> diff;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) continue;
        double d = x[i] - y[i];
        if (d != 0.0) diff.push_back(d);
    }
    if (diff.empty()) return 1.0;
    double n = static_cast<double>(diff.size());
    std::vector<double> mags;
    mags.reserve(diff.size());
    for (double d : diff) mags.push_back(std::abs(d));
    auto ranks = average_ranks(mags);
    double w_plus = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i)
        if (diff[i] > 0.0) w_plus += ranks[i];
    double mu = n * (n + 1.0) / 4.0;
    std::sort(mags.begin(), mags.end());
    double ties = tie_term(std::move(mags));
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ties / 48.0;
    if (var <= 0.0) return 1.0;
    double z = (std::abs(w_plus - mu) - 0.5) / std::sqrt(var);
    if (z < 0.0) z = 0.0;
    return normal_two_sided(z);
}

TestReport friedman_blocks(const Matrix& blocks, int base) {
    int n = static_cast<int>(blocks.rows());
    int k = static_cast<int>(blocks.cols());
    if (n < 1 || k < 2) throw ConfigError("friedman: needs at least one block and two algorithms");
    if (base < 0 || base >= k) throw ConfigError("friedman: base column out of range");
    Vector mean_ranks = Vector::Zero(k);
    for (int b = 0; b < n; ++b) {
        std::vector<double> row(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = blocks(b, j);
        auto ranks = average_ranks(row);
        for (int j = 0; j < k; ++j) mean_ranks[j] += ranks[static_cast<std::size_t>(j)];
    }
    mean_ranks /= static_cast<double>(n);

    TestReport rep;
    rep.kind = TestKind::Friedman;
    rep.base = base;
    rep.blocks = n;
    rep.mean_ranks = mean_ranks;
    double kk = static_cast<double>(k);
    double nn = static_cast<double>(n);
    double chi2 = 0.0;
    for (int j = 0; j < k; ++j) {
        double d = mean_ranks[j] - (kk + 1.0) / 2.0;
        chi2 += d * d;
    }
    rep.chi2 = 12.0 * nn / (kk * (kk + 1.0)) * chi2;
    rep.z = Vector::Zero(k);
    rep.p = Matrix::Constant(1, k, kNaN);
    double denom = std::sqrt(kk * (kk + 1.0) / (6.0 * nn));
    for (int j = 0; j < k; ++j) {
        if (j == base) continue;
        rep.z[j] = (mean_ranks[base] - mean_ranks[j]) / denom;
        rep.p(0, j) = normal_two_sided(rep.z[j]);
    }
    return rep;
}

TestReport friedman(const Tensor3& table, FriedmanMode mode, int base, MetricResult::Orientation orientation) {
    int rows = table.d0;
    int cols = table.d1;
    int reps = table.d2;
    double sign = orientation == MetricResult::Orientation::Min ? 1.0 : -1.0;
    Matrix blocks;
    if (mode == FriedmanMode::Mean) {
        blocks.resize(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double sum = 0.0;
                int n = 0;
                for (int r = 0; r < reps; ++r) {
                    double v = table.at(i, j, r);
                    if (!std::isnan(v)) {
                        sum += v;
                        ++n;
                    }
                }
                blocks(i, j) = n > 0 ? sign * sum / n : kNaN;
            }
    } else {
        blocks.resize(static_cast<Eigen::Index>(rows) * reps, cols);
        for (int i = 0; i < rows; ++i)
            for (int r = 0; r < reps; ++r)
                for (int j = 0; j < cols; ++j)
                    blocks(static_cast<Eigen::Index>(i) * reps + r, j) = sign * table.at(i, j, r);
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index b = 0; b < blocks.rows(); ++b)
        if (!blocks.row(b).hasNaN()) keep.push_back(b);
    Matrix complete(static_cast<Eigen::Index>(keep.size()), cols);
    for (Eigen::Index b = 0; b < complete.rows(); ++b) complete.row(b) = blocks.row(keep[static_cast<std::size_t>(b)]);
    TestReport rep = friedman_blocks(complete, base);
    rep.orientation = orientation;
    return rep;
}

TestReport annotate(const Tensor3& table, int base, TestKind kind, MetricResult::Orientation orientation) {
    if (kind == TestKind::Friedman) throw ConfigError("annotate: use friedman() for the Friedman test");
    int rows = table.d0;
    int cols = table.d1;
    if (base < 0 || base >= cols) throw ConfigError("annotate: base column out of range");
    TestReport rep;
    rep.kind = kind;
    rep.base = base;
    rep.orientation = orientation;
    rep.p = Matrix::Constant(std::max(rows, 0), cols, kNaN);
    double sign = orientation == MetricResult::Orientation::Min ? 1.0 : -1.0;
    for (int i = 0; i < rows; ++i) {
        std::string marks(static_cast<std::size_t>(cols), '=');
        std::vector<double> ref(static_cast<std::size_t>(table.d2));
        for (int r = 0; r < table.d2; ++r) ref[static_cast<std::size_t>(r)] = table.at(i, base, r);
        for (int j = 0; j < cols; ++j) {
            if (j == base) {
                marks[static_cast<std::size_t>(j)] = ' ';
                continue;
            }
            std::vector<double> cur(static_cast<std::size_t>(table.d2));
            for (int r = 0; r < table.d2; ++r) cur[static_cast<std::size_t>(r)] = table.at(i, j, r);
            double p = kind == TestKind::RankSum ? ranksum(cur, ref) : signrank(cur, ref);
            rep.p(i, j) = p;
            if (p < kSignificance) {
                auto cf = finite_only(cur);
                auto rf = finite_only(ref);
                double a = sign * median_of(cf);
                double b = sign * median_of(rf);
                if (a == b) {
                    a = sign * mean_of(cf);
                    b = sign * mean_of(rf);
                }
                if (a < b)
                    marks[static_cast<std::size_t>(j)] = '+';
                else if (a > b)
                    marks[static_cast<std::size_t>(j)] = '-';
            }
        }
        rep.markers.push_back(std::move(marks));
    }
    return rep;
}

} // namespace mto
