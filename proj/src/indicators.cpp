#include "mto/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mto/dominance.hpp"
#include "mto/rng.hpp"

namespace mto {

namespace {

// Rows strictly below ref in every coordinate, non-dominated, deduplicated.
Matrix clean_points(const Matrix& points, const Vector& ref) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        if ((points.row(i).transpose().array() < ref.array()).all()) keep.push_back(i);
    Matrix inside(static_cast<Eigen::Index>(keep.size()), points.cols());
    for (Eigen::Index r = 0; r < inside.rows(); ++r) inside.row(r) = points.row(keep[static_cast<std::size_t>(r)]);
    return nondominated_filter(inside);
}

double sweep_2d(Matrix pts, const Vector& ref) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return pts(a, 0) < pts(b, 0); });
    double volume = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        double x = pts(order[i], 0);
        double next_x = i + 1 < order.size() ? pts(order[i + 1], 0) : ref[0];
        volume += (next_x - x) * (ref[1] - pts(order[i], 1));
    }
    return volume;
}

// Slicing recursion: slabs along the last objective, each slab measured in
// one dimension fewer.
double slice_recursive(const Matrix& pts, const Vector& ref) {
    Eigen::Index m = ref.size();
    if (pts.rows() == 0) return 0.0;
    if (m == 2) return sweep_2d(pts, ref);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return pts(a, m - 1) < pts(b, m - 1); });
    double volume = 0.0;
    Vector sub_ref = ref.head(m - 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        double z = pts(order[i], m - 1);
        double next_z = i + 1 < order.size() ? pts(order[i + 1], m - 1) : ref[m - 1];
        if (next_z <= z) continue;
        Matrix proj(static_cast<Eigen::Index>(i + 1), m - 1);
        for (std::size_t j = 0; j <= i; ++j) proj.row(static_cast<Eigen::Index>(j)) = pts.row(order[j]).head(m - 1);
        volume += (next_z - z) * slice_recursive(nondominated_filter(proj), sub_ref);
    }
    return volume;
}

} // namespace

double hypervolume(const Matrix& points, const Vector& ref) {
    if (ref.size() < 2) throw DimensionError("hypervolume: needs at least two objectives");
    if (points.rows() > 0 && points.cols() != ref.size())
        throw DimensionError("hypervolume: point width must match the reference point");
    Matrix pts = clean_points(points, ref);
    if (pts.rows() == 0) return 0.0;
    if (ref.size() <= 3) return slice_recursive(pts, ref);
    return hypervolume_monte_carlo(pts, ref, kHvMcSamples, kHvMcSeed);
}

double hypervolume_monte_carlo(const Matrix& points, const Vector& ref, long long samples, std::uint64_t seed,
                               double* standard_error) {
    if (ref.size() < 1) throw DimensionError("hypervolume_monte_carlo: empty reference point");
    if (samples < 1) throw ConfigError("hypervolume_monte_carlo: needs at least one sample");
    Matrix pts = clean_points(points, ref);
    if (pts.rows() == 0) {
        if (standard_error) *standard_error = 0.0;
        return 0.0;
    }
    Vector low = pts.colwise().minCoeff();
    double box = (ref - low).prod();
    Rng rng(seed);
    Vector x(ref.size());
    long long hits = 0;
    for (long long s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(low[i], ref[i]);
        for (Eigen::Index p = 0; p < pts.rows(); ++p) {
            if ((pts.row(p).transpose().array() <= x.array()).all()) {
                ++hits;
                break;
            }
        }
    }
    double frac = static_cast<double>(hits) / static_cast<double>(samples);
    if (standard_error)
        *standard_error = box * std::sqrt(std::max(0.0, frac * (1.0 - frac) / static_cast<double>(samples)));
    return box * frac;
}

} // namespace mto
