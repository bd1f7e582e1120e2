#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "mto/types.hpp"

namespace mto {

// Inverted generational distance: mean over reference points of the distance
// to the nearest achieved point. Empty achieved set scores +infinity.
template <typename DA, typename DR>
double igd(const Eigen::MatrixBase<DA>& achieved, const Eigen::MatrixBase<DR>& reference) {
    if (reference.rows() == 0) throw DimensionError("igd: empty reference set");
    if (achieved.rows() > 0 && achieved.cols() != reference.cols())
        throw DimensionError("igd: objective counts differ");
    if (achieved.rows() == 0) return kInf;
    double total = 0.0;
    for (Eigen::Index z = 0; z < reference.rows(); ++z) {
        double best = kInf;
        for (Eigen::Index a = 0; a < achieved.rows(); ++a) {
            double d = (achieved.row(a) - reference.row(z)).norm();
            if (d < best) best = d;
        }
        total += best;
    }
    return total / static_cast<double>(reference.rows());
}

// IGD+ replaces the distance with the norm of the componentwise
// max(achieved - reference, 0), so achieved points dominating a reference
// point contribute nothing.
template <typename DA, typename DR>
double igd_plus(const Eigen::MatrixBase<DA>& achieved, const Eigen::MatrixBase<DR>& reference) {
    if (reference.rows() == 0) throw DimensionError("igd_plus: empty reference set");
    if (achieved.rows() > 0 && achieved.cols() != reference.cols())
        throw DimensionError("igd_plus: objective counts differ");
    if (achieved.rows() == 0) return kInf;
    double total = 0.0;
    for (Eigen::Index z = 0; z < reference.rows(); ++z) {
        double best = kInf;
        for (Eigen::Index a = 0; a < achieved.rows(); ++a) {
            double d = (achieved.row(a) - reference.row(z)).cwiseMax(0.0).norm();
            if (d < best) best = d;
        }
        total += best;
    }
    return total / static_cast<double>(reference.rows());
}

// Hypervolume dominated by the achieved set relative to ref (minimization):
// exact sweep for two objectives, recursive slicing for three, seeded Monte
// Carlo for more. Points not strictly below ref in every coordinate are
// discarded first, then dominated points and duplicates.
double hypervolume(const Matrix& points, const Vector& ref);

// Monte Carlo estimate with the given sample count and seed; the optional
// output receives the estimator's standard error (volume units).
double hypervolume_monte_carlo(const Matrix& points, const Vector& ref, long long samples, std::uint64_t seed,
                               double* standard_error = nullptr);

inline constexpr long long kHvMcSamples = 100000;
inline constexpr std::uint64_t kHvMcSeed = 1;

} // namespace mto
