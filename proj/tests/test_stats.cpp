#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include "mto/rng.hpp"
#include "mto/stats.hpp"

namespace {

using mto::Matrix;
using mto::Tensor3;
using mto::Vector;
using Orientation = mto::MetricResult::Orientation;

// Rank by counting: 1 + #smaller + half the number of equal others. Agrees
// with tie-averaged sort ranks but shares no code with them.
double counting_rank(const std::vector<double>& v, std::size_t i) {
    double less = 0.0;
    double equal = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < v[i])
            less += 1.0;
        else if (v[j] == v[i] && j != i)
            equal += 1.0;
    }
    return 1.0 + less + 0.5 * equal;
}

double two_sided(double z) { return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0))); }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Direct recomputation of the tie-corrected rank-sum p from its definition,
// with counting ranks and a multiplicity map instead of sorting.
double ranksum_direct(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> pooled = xs;
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    double w = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) w += counting_rank(pooled, i);
    double n1 = static_cast<double>(xs.size());
    double n2 = static_cast<double>(ys.size());
    double n = n1 + n2;
    double u = w - n1 * (n1 + 1.0) / 2.0;
    std::map<double, double> mult;
    for (double v : pooled) mult[v] += 1.0;
    double ties = 0.0;
    for (auto& [value, t] : mult) ties += t * t * t - t;
    double var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0;
    double z = std::max(0.0, (std::abs(u - n1 * n2 / 2.0) - 0.5) / std::sqrt(var));
    return two_sided(z);
}

// Same for the signed-rank p: drop zero differences, rank magnitudes by
// counting, tie term from a multiplicity map.
double signrank_direct(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isnan(x[i]) && !std::isnan(y[i]) && x[i] - y[i] != 0.0) d.push_back(x[i] - y[i]);
    if (d.empty()) return 1.0;
    std::vector<double> mags;
    for (double v : d) mags.push_back(std::abs(v));
    double w_plus = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0.0) w_plus += counting_rank(mags, i);
    double n = static_cast<double>(d.size());
    std::map<double, double> mult;
    for (double v : mags) mult[v] += 1.0;
    double ties = 0.0;
    for (auto& [value, t] : mult) ties += t * t * t - t;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ties / 48.0;
    if (var <= 0.0) return 1.0;
    double z = std::max(0.0, (std::abs(w_plus - n * (n + 1.0) / 4.0) - 0.5) / std::sqrt(var));
    return two_sided(z);
}

Tensor3 single_row(const std::vector<std::vector<double>>& cols) {
    Tensor3 t(1, static_cast<int>(cols.size()), static_cast<int>(cols[0].size()));
    for (int j = 0; j < t.d1; ++j)
        for (int r = 0; r < t.d2; ++r) t.at(0, j, r) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    return t;
}

} // namespace

TEST_CASE("average ranks are one-based with ties averaged") {
    auto r1 = mto::average_ranks(std::vector<double>{3.0, 1.0, 2.0});
    CHECK(r1 == std::vector<double>{3.0, 1.0, 2.0});

    auto r2 = mto::average_ranks(std::vector<double>{10.0, 10.0, 10.0});
    CHECK(r2 == std::vector<double>{2.0, 2.0, 2.0});

    auto r3 = mto::average_ranks(std::vector<double>{1.0, 1.0, 2.0, 3.0});
    CHECK(r3 == std::vector<double>{1.5, 1.5, 3.0, 4.0});

    auto r4 = mto::average_ranks(std::vector<double>{5.0, 2.0, 5.0, 1.0, 5.0});
    CHECK(r4 == std::vector<double>{4.0, 2.0, 4.0, 1.0, 4.0});

    CHECK(mto::average_ranks(std::vector<double>{}).empty());

    mto::Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(1 + rng.uniform_int(12)));
        for (double& x : v) x = static_cast<double>(rng.uniform_int(5));
        auto ranks = mto::average_ranks(v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(ranks[i] == counting_rank(v, i));
    }
}

TEST_CASE("rank-sum p matches the exhaustive permutation test on every 3v3 split") {
    // All ways to deal the integers 1..6 into two samples of three. Any
    // untied 3v3 sample is rank-equivalent to one of these 20 splits, and the
    // ranks of the distinct pooled values 1..6 are the values themselves.
    std::vector<unsigned> splits;
    for (unsigned m = 0; m < 64; ++m)
        if (std::popcount(m) == 3) splits.push_back(m);
    REQUIRE(splits.size() == 20);

    auto rank_sum = [](unsigned m) {
        double w = 0.0;
        for (int i = 0; i < 6; ++i)
            if (m >> i & 1u) w += static_cast<double>(i + 1);
        return w;
    };

    for (unsigned obs : splits) {
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 6; ++i) (obs >> i & 1u ? x : y).push_back(static_cast<double>(i + 1));
        double dev = std::abs(rank_sum(obs) - 10.5);
        int hits = 0;
        for (unsigned m : splits)
            if (std::abs(rank_sum(m) - 10.5) >= dev - 1e-9) ++hits;
        double exact = hits / 20.0;
        double approx = mto::ranksum(x, y);
        CHECK(std::abs(approx - exact) <= 0.05);
        CHECK(approx > 0.0);
        CHECK(approx <= 1.0);

        // The p depends on the values only through their ranks.
        std::vector<double> xs;
        std::vector<double> ys;
        for (double v : x) xs.push_back(10.0 * v + 3.0);
        for (double v : y) ys.push_back(10.0 * v + 3.0);
        CHECK(mto::ranksum(xs, ys) == approx);
    }
}

TEST_CASE("rank-sum p agrees with a direct recomputation under heavy ties") {
    mto::Rng rng(405);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> x(static_cast<std::size_t>(1 + rng.uniform_int(8)));
        std::vector<double> y(static_cast<std::size_t>(1 + rng.uniform_int(8)));
        for (double& v : x) v = static_cast<double>(rng.uniform_int(4));
        for (double& v : y) v = static_cast<double>(rng.uniform_int(4));
        double p = mto::ranksum(x, y);
        CHECK(std::abs(p - ranksum_direct(x, y)) <= 1e-12);
        CHECK(mto::ranksum(y, x) == p);
    }

    CHECK(mto::ranksum(std::vector<double>{3.0, 3.0, 3.0}, std::vector<double>{3.0, 3.0, 3.0}) == 1.0);
    CHECK(mto::ranksum(std::vector<double>{7.0}, std::vector<double>{7.0}) == 1.0);

    double nan = mto::kNaN;
    double filtered = mto::ranksum(std::vector<double>{nan, 1.0, 2.0, nan}, std::vector<double>{3.0, 4.0});
    CHECK(filtered == mto::ranksum(std::vector<double>{1.0, 2.0}, std::vector<double>{3.0, 4.0}));

    CHECK_THROWS_AS(mto::ranksum(std::vector<double>{}, std::vector<double>{1.0}), mto::ConfigError);
    CHECK_THROWS_WITH_AS(mto::ranksum(std::vector<double>{nan}, std::vector<double>{1.0}), "ranksum: empty sample",
                         mto::ConfigError);
}

TEST_CASE("signed-rank p matches exhaustive sign enumeration for six distinct pairs") {
    // Differences with magnitudes 1..6; every observable outcome is one of
    // the 64 sign patterns, and the magnitude ranks are the magnitudes.
    auto w_plus = [](unsigned m) {
        double w = 0.0;
        for (int i = 0; i < 6; ++i)
            if (m >> i & 1u) w += static_cast<double>(i + 1);
        return w;
    };

    std::vector<double> zeros(6, 0.0);
    for (unsigned obs = 0; obs < 64; ++obs) {
        std::vector<double> x(6);
        for (int i = 0; i < 6; ++i) x[static_cast<std::size_t>(i)] = (obs >> i & 1u) ? i + 1.0 : -(i + 1.0);
        double dev = std::abs(w_plus(obs) - 10.5);
        int hits = 0;
        for (unsigned m = 0; m < 64; ++m)
            if (std::abs(w_plus(m) - 10.5) >= dev - 1e-9) ++hits;
        double exact = hits / 64.0;
        double approx = mto::signrank(x, zeros);
        CHECK(std::abs(approx - exact) <= 0.05);
        CHECK(approx > 0.0);
        CHECK(approx <= 1.0);
    }
}

TEST_CASE("signed-rank p agrees with a direct recomputation under ties and zeros") {
    mto::Rng rng(406);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = static_cast<std::size_t>(1 + rng.uniform_int(10));
        std::vector<double> x(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.uniform_int(5));
            y[i] = static_cast<double>(rng.uniform_int(5));
        }
        CHECK(std::abs(mto::signrank(x, y) - signrank_direct(x, y)) <= 1e-12);
    }

    CHECK(mto::signrank(std::vector<double>{1.0, 2.0, 3.0}, std::vector<double>{1.0, 2.0, 3.0}) == 1.0);

    double nan = mto::kNaN;
    double filtered = mto::signrank(std::vector<double>{1.0, nan, 5.0}, std::vector<double>{0.0, 2.0, 1.0});
    CHECK(filtered == mto::signrank(std::vector<double>{1.0, 5.0}, std::vector<double>{0.0, 1.0}));

    CHECK_THROWS_WITH_AS(mto::signrank(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
                         "signrank: samples must be paired", mto::ConfigError);
}

TEST_CASE("friedman blocks match a brute-force rank recomputation") {
    mto::Rng rng(407);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix blocks(5, 4);
        for (int b = 0; b < 5; ++b)
            for (int j = 0; j < 4; ++j) {
                double v = 10.0 * rng.uniform();
                // Half the tables get values rounded coarsely to force ties.
                blocks(b, j) = trial % 2 == 0 ? std::round(v) : v;
            }
        int base = trial % 4;
        auto rep = mto::friedman_blocks(blocks, base);

        std::vector<double> mean_ranks(4, 0.0);
        for (int b = 0; b < 5; ++b) {
            std::vector<double> row(4);
            for (int j = 0; j < 4; ++j) row[static_cast<std::size_t>(j)] = blocks(b, j);
            for (int j = 0; j < 4; ++j) mean_ranks[static_cast<std::size_t>(j)] += counting_rank(row, static_cast<std::size_t>(j));
        }
        for (double& r : mean_ranks) r /= 5.0;
        double chi2 = 0.0;
        for (double r : mean_ranks) chi2 += (r - 2.5) * (r - 2.5);
        chi2 *= 12.0 * 5.0 / (4.0 * 5.0);
        double denom = std::sqrt(4.0 * 5.0 / (6.0 * 5.0));

        CHECK(rep.kind == mto::TestKind::Friedman);
        CHECK(rep.base == base);
        CHECK(rep.blocks == 5);
        CHECK(rep.markers.empty());
        CHECK(std::abs(rep.chi2 - chi2) <= 1e-9);
        double rank_total = 0.0;
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(rep.mean_ranks[j] - mean_ranks[static_cast<std::size_t>(j)]) <= 1e-9);
            rank_total += rep.mean_ranks[j];
            if (j == base) {
                CHECK(rep.z[j] == 0.0);
                CHECK(std::isnan(rep.p(0, j)));
            } else {
                double z = (mean_ranks[static_cast<std::size_t>(base)] - mean_ranks[static_cast<std::size_t>(j)]) / denom;
                CHECK(std::abs(rep.z[j] - z) <= 1e-9);
                CHECK(std::abs(rep.p(0, j) - two_sided(z)) <= 1e-9);
            }
        }
        CHECK(rank_total == doctest::Approx(4.0 * 5.0 / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("friedman blocks hand case and degenerate table") {
    Matrix blocks(4, 3);
    blocks << 1, 2, 3,
              1, 2, 3,
              2, 1, 3,
              1, 3, 2;
    auto rep = mto::friedman_blocks(blocks, 0);
    CHECK(rep.mean_ranks[0] == 1.25);
    CHECK(rep.mean_ranks[1] == 2.0);
    CHECK(rep.mean_ranks[2] == 2.75);
    CHECK(rep.chi2 == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(rep.z[1] == doctest::Approx(-0.75 / std::sqrt(0.5)).epsilon(1e-12));
    CHECK(rep.p(0, 1) == doctest::Approx(two_sided(-0.75 / std::sqrt(0.5))).epsilon(1e-12));

    Matrix flat = Matrix::Constant(3, 4, 9.0);
    auto tied = mto::friedman_blocks(flat, 2);
    for (int j = 0; j < 4; ++j) CHECK(tied.mean_ranks[j] == 2.5);
    CHECK(tied.chi2 == 0.0);
    CHECK(tied.p(0, 0) == 1.0);
    CHECK(std::isnan(tied.p(0, 2)));

    CHECK_THROWS_WITH_AS(mto::friedman_blocks(Matrix(0, 3), 0),
                         "friedman: needs at least one block and two algorithms", mto::ConfigError);
    CHECK_THROWS_AS(mto::friedman_blocks(Matrix::Zero(4, 1), 0), mto::ConfigError);
    CHECK_THROWS_WITH_AS(mto::friedman_blocks(Matrix::Zero(4, 3), 3), "friedman: base column out of range",
                         mto::ConfigError);
    CHECK_THROWS_AS(mto::friedman_blocks(Matrix::Zero(4, 3), -1), mto::ConfigError);
}

TEST_CASE("friedman table modes average reps or rank every rep") {
    mto::Rng rng(408);
    Tensor3 t(3, 3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 2; ++r) t.at(i, j, r) = rng.uniform();

    Matrix means(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) means(i, j) = 0.5 * (t.at(i, j, 0) + t.at(i, j, 1));
    auto direct = mto::friedman_blocks(means, 1);
    auto via_mean = mto::friedman(t, mto::FriedmanMode::Mean, 1, Orientation::Min);
    CHECK(via_mean.blocks == 3);
    CHECK(via_mean.orientation == Orientation::Min);
    CHECK(via_mean.chi2 == direct.chi2);
    CHECK((via_mean.mean_ranks.array() == direct.mean_ranks.array()).all());
    CHECK((via_mean.z.array() == direct.z.array()).all());

    Matrix stacked(6, 3);
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < 3; ++j) stacked(2 * i + r, j) = t.at(i, j, r);
    auto all_direct = mto::friedman_blocks(stacked, 0);
    auto via_all = mto::friedman(t, mto::FriedmanMode::AllReps, 0, Orientation::Min);
    CHECK(via_all.blocks == 6);
    CHECK(via_all.chi2 == all_direct.chi2);
    CHECK((via_all.mean_ranks.array() == all_direct.mean_ranks.array()).all());

    // Larger values rank first under the Max orientation.
    Tensor3 one(1, 3, 1);
    one.at(0, 0, 0) = 1.0;
    one.at(0, 1, 0) = 3.0;
    one.at(0, 2, 0) = 2.0;
    auto maxed = mto::friedman(one, mto::FriedmanMode::Mean, 0, Orientation::Max);
    CHECK(maxed.orientation == Orientation::Max);
    CHECK(maxed.mean_ranks[0] == 3.0);
    CHECK(maxed.mean_ranks[1] == 1.0);
    CHECK(maxed.mean_ranks[2] == 2.0);

    Matrix negated = -means;
    auto max_mean = mto::friedman(t, mto::FriedmanMode::Mean, 1, Orientation::Max);
    auto neg_direct = mto::friedman_blocks(negated, 1);
    CHECK((max_mean.mean_ranks.array() == neg_direct.mean_ranks.array()).all());
}

TEST_CASE("friedman drops incomplete blocks but averages partial reps") {
    mto::Rng rng(409);
    Tensor3 t(3, 3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 2; ++r) t.at(i, j, r) = rng.uniform();
    t.at(1, 2, 0) = mto::kNaN;

    // Mean mode still has a finite mean in cell (1,2): the surviving rep.
    Matrix means(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) means(i, j) = 0.5 * (t.at(i, j, 0) + t.at(i, j, 1));
    means(1, 2) = t.at(1, 2, 1);
    auto via_mean = mto::friedman(t, mto::FriedmanMode::Mean, 0, Orientation::Min);
    CHECK(via_mean.blocks == 3);
    auto direct = mto::friedman_blocks(means, 0);
    CHECK(via_mean.chi2 == direct.chi2);
    CHECK((via_mean.mean_ranks.array() == direct.mean_ranks.array()).all());

    // All-reps mode drops the one block that contains the hole.
    auto via_all = mto::friedman(t, mto::FriedmanMode::AllReps, 0, Orientation::Min);
    CHECK(via_all.blocks == 5);

    // A cell with no finite rep at all takes its whole row down in Mean mode.
    t.at(2, 0, 0) = mto::kNaN;
    t.at(2, 0, 1) = mto::kNaN;
    auto holed = mto::friedman(t, mto::FriedmanMode::Mean, 0, Orientation::Min);
    CHECK(holed.blocks == 2);

    // Every block incomplete leaves nothing to rank.
    Tensor3 bad(2, 2, 1);
    bad.at(0, 0, 0) = mto::kNaN;
    bad.at(0, 1, 0) = 1.0;
    bad.at(1, 0, 0) = 1.0;
    bad.at(1, 1, 0) = mto::kNaN;
    CHECK_THROWS_AS(mto::friedman(bad, mto::FriedmanMode::Mean, 0, Orientation::Min), mto::ConfigError);
}

TEST_CASE("annotate marks significantly better and worse columns against the base") {
    Tensor3 t(2, 4, 10);
    for (int r = 0; r < 10; ++r) {
        t.at(0, 0, r) = 10.0 + r;
        t.at(0, 1, r) = static_cast<double>(r);
        t.at(0, 2, r) = 10.0 + r;
        t.at(0, 3, r) = 30.0 + r;
        for (int j = 0; j < 4; ++j) t.at(1, j, r) = 5.0 + r;
    }

    auto rep = mto::annotate(t, 0, mto::TestKind::RankSum, Orientation::Min);
    CHECK(rep.kind == mto::TestKind::RankSum);
    CHECK(rep.base == 0);
    CHECK(rep.markers.size() == 2);
    CHECK(rep.markers[0] == " +=-");
    CHECK(rep.markers[1] == " ===");
    CHECK(std::isnan(rep.p(0, 0)));
    CHECK(rep.p(0, 1) < 0.05);
    CHECK(rep.p(0, 2) == 1.0);
    CHECK(rep.p(0, 3) < 0.05);
    CHECK(rep.p(1, 1) == 1.0);
    CHECK(std::isnan(rep.chi2));
    CHECK(rep.blocks == 0);
    CHECK(rep.mean_ranks.size() == 0);

    // Same data, maximizing: better and worse swap.
    auto maxed = mto::annotate(t, 0, mto::TestKind::RankSum, Orientation::Max);
    CHECK(maxed.markers[0] == " -=+");
    CHECK(maxed.orientation == Orientation::Max);

    // Paired test on the same table gives the same picture.
    auto paired = mto::annotate(t, 0, mto::TestKind::SignRank, Orientation::Min);
    CHECK(paired.markers[0] == " +=-");
    CHECK(paired.p(0, 2) == 1.0);

    // The p in each cell is exactly the pairwise test of that column.
    std::vector<double> cur(10);
    std::vector<double> ref(10);
    for (int r = 0; r < 10; ++r) {
        cur[static_cast<std::size_t>(r)] = t.at(0, 1, r);
        ref[static_cast<std::size_t>(r)] = t.at(0, 0, r);
    }
    CHECK(rep.p(0, 1) == mto::ranksum(cur, ref));
    CHECK(paired.p(0, 1) == mto::signrank(cur, ref));

    auto based = mto::annotate(t, 2, mto::TestKind::RankSum, Orientation::Min);
    CHECK(based.markers[0] == "=+ -");

    CHECK_THROWS_WITH_AS(mto::annotate(t, 0, mto::TestKind::Friedman, Orientation::Min),
                         "annotate: use friedman() for the Friedman test", mto::ConfigError);
    CHECK_THROWS_WITH_AS(mto::annotate(t, 4, mto::TestKind::RankSum, Orientation::Min),
                         "annotate: base column out of range", mto::ConfigError);
    CHECK_THROWS_AS(mto::annotate(t, -1, mto::TestKind::RankSum, Orientation::Min), mto::ConfigError);
}

TEST_CASE("annotate falls back from tied medians to means") {
    // cur beats ref on most pairs, the medians tie at 10, and the mean
    // breaks the tie in cur's favor.
    std::vector<double> ref{1.0, 2.0, 3.0, 4.0, 10.0, 10.0, 20.0, 30.0, 40.0, 50.0};
    std::vector<double> cur{0.5, 1.0, 2.0, 3.0, 10.0, 10.2, 10.0, 25.0, 35.0, 45.0};
    REQUIRE(median_of(cur) == median_of(ref));
    REQUIRE(mean_of(cur) < mean_of(ref));
    REQUIRE(mto::signrank(cur, ref) < 0.05);

    auto rep = mto::annotate(single_row({ref, cur}), 0, mto::TestKind::SignRank, Orientation::Min);
    CHECK(rep.markers[0] == " +");
    auto maxed = mto::annotate(single_row({ref, cur}), 0, mto::TestKind::SignRank, Orientation::Max);
    CHECK(maxed.markers[0] == " -");

    // When the means tie as well, a significant p still yields no marker.
    std::vector<double> base(13);
    std::vector<double> drift(13);
    for (int i = 0; i < 13; ++i) {
        base[static_cast<std::size_t>(i)] = static_cast<double>(i);
        drift[static_cast<std::size_t>(i)] = i == 6 ? i + 12.0 : i - 1.0;
    }
    REQUIRE(median_of(drift) == median_of(base));
    REQUIRE(mean_of(drift) == mean_of(base));
    REQUIRE(mto::signrank(drift, base) < 0.05);
    auto tied = mto::annotate(single_row({base, drift}), 0, mto::TestKind::SignRank, Orientation::Min);
    CHECK(tied.p(0, 1) < 0.05);
    CHECK(tied.markers[0] == " =");
}

TEST_CASE("annotate markers and rank-sum p are invariant under increasing transforms") {
    mto::Rng rng(410);
    for (auto orientation : {Orientation::Min, Orientation::Max}) {
        Tensor3 raw(4, 3, 9);
        Tensor3 cubed(4, 3, 9);
        Tensor3 exped(4, 3, 9);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j)
                for (int r = 0; r < 9; ++r) {
                    double v = 1.0 + rng.uniform() + (j == 1 ? 0.8 : 0.0);
                    raw.at(i, j, r) = v;
                    cubed.at(i, j, r) = v * v * v;
                    exped.at(i, j, r) = std::exp(v);
                }
        auto a = mto::annotate(raw, 0, mto::TestKind::RankSum, orientation);
        auto b = mto::annotate(cubed, 0, mto::TestKind::RankSum, orientation);
        auto c = mto::annotate(exped, 0, mto::TestKind::RankSum, orientation);
        CHECK(a.markers == b.markers);
        CHECK(a.markers == c.markers);
        for (int i = 0; i < 4; ++i)
            for (int j = 1; j < 3; ++j) {
                CHECK(a.p(i, j) == b.p(i, j));
                CHECK(a.p(i, j) == c.p(i, j));
            }
    }
}

TEST_CASE("annotate skips missing reps when testing a cell") {
    Tensor3 t(1, 2, 6);
    std::vector<double> ref{4.0, 7.0, 1.0, 9.0, 3.0, 6.0};
    std::vector<double> cur{11.0, 15.0, 12.0, 17.0, 13.0, 0.0};
    for (int r = 0; r < 6; ++r) {
        t.at(0, 0, r) = ref[static_cast<std::size_t>(r)];
        t.at(0, 1, r) = cur[static_cast<std::size_t>(r)];
    }
    t.at(0, 1, 5) = mto::kNaN;
    auto rep = mto::annotate(t, 0, mto::TestKind::RankSum, Orientation::Min);
    std::vector<double> kept(cur.begin(), cur.end() - 1);
    CHECK(rep.p(0, 1) == mto::ranksum(kept, ref));
    CHECK(rep.markers[0] == " -");
}

TEST_CASE("significance level is five percent") { CHECK(mto::kSignificance == 0.05); }
