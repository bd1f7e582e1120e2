#pragma once

#include "mto/types.hpp"

namespace mto {

// Affine map of a native point into the unified cube [0,1]^unified_dim.
// Dimensions beyond the task's own are padded with 0.5.
Vector encode_unified(const Vector& x, const TaskSpec& task, int unified_dim);

// Inverse map: takes the first task.dim components of a unified point back to
// the native box.
Vector decode_unified(const Vector& y, const TaskSpec& task);

} // namespace mto
