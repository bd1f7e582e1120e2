#pragma once

#include <optional>
#include <string>

#include "mto/rng.hpp"
#include "mto/types.hpp"

namespace mto {

enum class BaseKind { Sphere, Rosenbrock, Ackley, Rastrigin, Griewank, Weierstrass, Schwefel };

const char* base_kind_name(BaseKind kind);

// Conventional native search range per function family, applied to every
// coordinate.
std::pair<double, double> native_range(BaseKind kind);

// A classic benchmark function instance: f(x) = base(R (x - shift)), shifted
// so the global minimum value is 0 at x = shift. Schwefel keeps that
// invariant through a per-component peak offset plus an out-of-range penalty
// on the folded tail.
struct BaseFunction {
    BaseKind kind = BaseKind::Sphere;
    Vector shift;
    std::optional<Matrix> rotation;

    void validate() const;
};

double eval_base(const BaseFunction& fn, const Vector& x);

// Orthonormal matrix from a seeded Gaussian draw (QR with a fixed sign
// convention, so regeneration is bit-identical).
Matrix random_rotation(int dim, Rng& rng);

} // namespace mto
