#include "mto/dominance.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace mto {

namespace {

// -1 when row a constraint-dominates row b, +1 for the reverse, 0 otherwise.
int cv_order(double cva, double cvb) {
    bool fa = cva <= 0.0;
    bool fb = cvb <= 0.0;
    if (fa != fb) return fa ? -1 : 1;
    if (!fa && cva != cvb) return cva < cvb ? -1 : 1;
    return 0;
}

std::vector<int> sort_with(const Matrix& objs, const std::function<int(int, int)>& beats) {
    int n = static_cast<int>(objs.rows());
    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    std::vector<int> front(static_cast<std::size_t>(n), -1);
    std::vector<int> current;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int c = beats(i, j);
            if (c < 0) {
                dominated[static_cast<std::size_t>(i)].push_back(j);
                ++count[static_cast<std::size_t>(j)];
            } else if (c > 0) {
                dominated[static_cast<std::size_t>(j)].push_back(i);
                ++count[static_cast<std::size_t>(i)];
            }
        }
        if (count[static_cast<std::size_t>(i)] == 0) {
            front[static_cast<std::size_t>(i)] = 0;
            current.push_back(i);
        }
    }
    // count[] entries only decrease later, so front-0 membership decided above
    // is final even though it is assigned before the j loop completes.
    int level = 0;
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current) {
            for (int j : dominated[static_cast<std::size_t>(i)]) {
                if (--count[static_cast<std::size_t>(j)] == 0) {
                    front[static_cast<std::size_t>(j)] = level + 1;
                    next.push_back(j);
                }
            }
        }
        current = std::move(next);
        ++level;
    }
    return front;
}

} // namespace

std::vector<int> nondominated_sort(const Matrix& objs) {
    return sort_with(objs, [&](int i, int j) {
        if (dominates(objs.row(i), objs.row(j))) return -1;
        if (dominates(objs.row(j), objs.row(i))) return 1;
        return 0;
    });
}

std::vector<int> nondominated_sort(const Matrix& objs, const Vector& cv) {
    if (cv.size() != objs.rows()) throw DimensionError("nondominated_sort: cv length must match the row count");
    return sort_with(objs, [&](int i, int j) {
        int c = cv_order(cv[i], cv[j]);
        if (c != 0) return c;
        if (cv[i] > 0.0) return 0; // equally infeasible rows tie unless cv differs
        if (dominates(objs.row(i), objs.row(j))) return -1;
        if (dominates(objs.row(j), objs.row(i))) return 1;
        return 0;
    });
}

std::vector<int> nondominated_front(const Matrix& objs) {
    auto fronts = nondominated_sort(objs);
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(fronts.size()); ++i)
        if (fronts[static_cast<std::size_t>(i)] == 0) idx.push_back(i);
    return idx;
}

Matrix nondominated_filter(const Matrix& objs) {
    auto idx = nondominated_front(objs);
    std::vector<int> keep;
    for (int i : idx) {
        bool dup = false;
        for (int j : keep) {
            if (objs.row(i) == objs.row(j)) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(i);
    }
    Matrix out(static_cast<Eigen::Index>(keep.size()), objs.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r) out.row(r) = objs.row(keep[static_cast<std::size_t>(r)]);
    return out;
}

Vector crowding_distance(const Matrix& front) {
    Eigen::Index n = front.rows();
    Vector dist = Vector::Zero(n);
    if (n == 0) return dist;
    if (n <= 2) return Vector::Constant(n, kInf);
    for (Eigen::Index m = 0; m < front.cols(); ++m) {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return front(a, m) < front(b, m); });
        double span = front(order.back(), m) - front(order.front(), m);
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        if (span <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
            dist[order[k]] += (front(order[k + 1], m) - front(order[k - 1], m)) / span;
    }
    return dist;
}

} // namespace mto
