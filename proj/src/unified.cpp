#include "mto/unified.hpp"

namespace mto {

Vector encode_unified(const Vector& x, const TaskSpec& task, int unified_dim) {
    if (x.size() != task.dim) throw DimensionError("encode_unified: point size must equal the task dimension");
    if (unified_dim < task.dim) throw DimensionError("encode_unified: unified dimension below the task dimension");
    Vector y = Vector::Constant(unified_dim, 0.5);
    y.head(task.dim) = (x - task.lower).cwiseQuotient(task.upper - task.lower);
    return y;
}

Vector decode_unified(const Vector& y, const TaskSpec& task) {
    if (y.size() < task.dim) throw DimensionError("decode_unified: unified point shorter than the task dimension");
    return task.lower + y.head(task.dim).cwiseProduct(task.upper - task.lower);
}

} // namespace mto
