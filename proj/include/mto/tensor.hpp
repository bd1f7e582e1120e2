#pragma once

#include <cstddef>
#include <vector>

#include "mto/errors.hpp"

namespace mto {

// Dense row-major 3-d array, used for metric tables (rows x cols x reps).
struct Tensor3 {
    int d0 = 0, d1 = 0, d2 = 0;
    std::vector<double> v;

    Tensor3() = default;
    Tensor3(int a, int b, int c, double fill = 0.0)
        : d0(a), d1(b), d2(c),
          v(static_cast<std::size_t>(a) * static_cast<std::size_t>(b) * static_cast<std::size_t>(c), fill) {}

    double& at(int i, int j, int k) { return v[idx(i, j, k)]; }
    double at(int i, int j, int k) const { return v[idx(i, j, k)]; }

    std::size_t idx(int i, int j, int k) const {
        if (i < 0 || i >= d0 || j < 0 || j >= d1 || k < 0 || k >= d2)
            throw DimensionError("Tensor3 index out of range");
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(d1) + static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(d2) +
               static_cast<std::size_t>(k);
    }
};

// Dense row-major 4-d array, used for convergence series
// (rows x cols x reps x checkpoints).
struct Tensor4 {
    int d0 = 0, d1 = 0, d2 = 0, d3 = 0;
    std::vector<double> v;

    Tensor4() = default;
    Tensor4(int a, int b, int c, int d, double fill = 0.0)
        : d0(a), d1(b), d2(c), d3(d),
          v(static_cast<std::size_t>(a) * static_cast<std::size_t>(b) * static_cast<std::size_t>(c) *
                static_cast<std::size_t>(d),
            fill) {}

    double& at(int i, int j, int k, int l) { return v[idx(i, j, k, l)]; }
    double at(int i, int j, int k, int l) const { return v[idx(i, j, k, l)]; }

    std::size_t idx(int i, int j, int k, int l) const {
        if (i < 0 || i >= d0 || j < 0 || j >= d1 || k < 0 || k >= d2 || l < 0 || l >= d3)
            throw DimensionError("Tensor4 index out of range");
        return ((static_cast<std::size_t>(i) * static_cast<std::size_t>(d1) + static_cast<std::size_t>(j)) *
                    static_cast<std::size_t>(d2) +
                static_cast<std::size_t>(k)) *
                   static_cast<std::size_t>(d3) +
               static_cast<std::size_t>(l);
    }
};

} // namespace mto
