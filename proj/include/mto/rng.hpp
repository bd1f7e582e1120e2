#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mto/errors.hpp"

namespace mto {

// Identifier of the random stream recorded in archives. Bump when either the
// engine or any transform below changes.
inline constexpr const char* kRngId = "mt19937_64/v1";

// Deterministic random stream, one per run.
//
// The raw generator is std::mt19937_64, whose 64-bit output sequence is fixed
// by the C++ standard. Every draw below is defined purely in terms of that
// sequence, never through std::uniform_*_distribution (whose mapping is
// implementation-defined), so a seed reproduces the same draws on any
// conforming compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). The floor mapping has bias below n / 2^53,
    // which is negligible for the population-scale n used here.
    int uniform_int(int n) {
        if (n <= 0) throw OperatorError("uniform_int needs a positive range");
        int v = static_cast<int>(uniform() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

    // Standard normal via the Box-Muller transform; the second value of each
    // pair is cached and returned by the next call.
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            int j = uniform_int(i + 1);
            std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
        }
    }

    // Random permutation of 0..n-1.
    std::vector<int> permutation(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        shuffle(p);
        return p;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace mto
