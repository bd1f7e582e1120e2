#include "mto/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mto/dominance.hpp"
#include "mto/svg.hpp"

namespace mto {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

const char* color_of(int i) { return kPalette[i % kPaletteSize]; }

std::string fmtg(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Frame {
    double left = 70, right = 20, top = 40, bottom = 50;
    double width = 640, height = 420;
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;

    double px(double x) const {
        double span = x_hi - x_lo;
        if (span <= 0) span = 1;
        return left + (x - x_lo) / span * (width - left - right);
    }
    double py(double y) const {
        double span = y_hi - y_lo;
        if (span <= 0) span = 1;
        return height - bottom - (y - y_lo) / span * (height - top - bottom);
    }

    void pad_y() {
        double span = y_hi - y_lo;
        if (span <= 0) span = std::abs(y_hi) > 0 ? std::abs(y_hi) : 1.0;
        y_lo -= 0.05 * span;
        y_hi += 0.05 * span;
    }

    void draw_axes(SvgDoc& svg, const std::string& x_label, const std::string& y_label, bool y_is_log) const {
        svg.line(left, height - bottom, width - right, height - bottom, "#303030", 1.0);
        svg.line(left, top, left, height - bottom, "#303030", 1.0);
        for (int i = 0; i <= 4; ++i) {
            double fx = x_lo + (x_hi - x_lo) * i / 4.0;
            double fy = y_lo + (y_hi - y_lo) * i / 4.0;
            svg.line(px(fx), height - bottom, px(fx), height - bottom + 4, "#303030", 1.0);
            svg.text(px(fx), height - bottom + 18, fmtg(fx), 11, "middle");
            svg.line(left - 4, py(fy), left, py(fy), "#303030", 1.0);
            svg.text(left - 8, py(fy) + 4, y_is_log ? fmtg(std::pow(10.0, fy)) : fmtg(fy), 11, "end");
        }
        svg.text((left + width - right) / 2, height - bottom + 36, x_label, 12, "middle");
        svg.text(16, top - 12, y_label, 12, "start");
    }
};

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

std::string plot_convergence(const MetricResult& result, int row, std::vector<int> columns, bool log_y, bool ci_band) {
    result.validate();
    if (!result.converge) throw ConfigError("metric carries no convergence series");
    if (row < 0 || row >= result.table.d0) throw ConfigError("convergence row out of range");
    const Tensor4& conv = *result.converge;
    const int G = conv.d3;
    if (columns.empty())
        for (int c = 0; c < result.table.d1; ++c) columns.push_back(c);
    for (int c : columns)
        if (c < 0 || c >= result.table.d1) throw ConfigError("algorithm column out of range");

    struct SeriesData {
        int col;
        std::vector<double> mean, lo, hi;
        std::vector<bool> ok;
    };
    std::vector<SeriesData> series;
    for (int c : columns) {
        SeriesData s;
        s.col = c;
        s.mean.resize(static_cast<std::size_t>(G));
        s.lo.resize(static_cast<std::size_t>(G));
        s.hi.resize(static_cast<std::size_t>(G));
        s.ok.assign(static_cast<std::size_t>(G), false);
        for (int g = 0; g < G; ++g) {
            std::vector<double> vals;
            for (int r = 0; r < conv.d2; ++r) {
                double v = conv.at(row, c, r, g);
                if (std::isfinite(v)) vals.push_back(v);
            }
            if (vals.empty()) continue;
            double m = mean_of(vals);
            double half = ci_band ? 1.96 * sample_std(vals) / std::sqrt(static_cast<double>(vals.size())) : 0.0;
            auto gi = static_cast<std::size_t>(g);
            s.mean[gi] = m;
            s.lo[gi] = m - half;
            s.hi[gi] = m + half;
            s.ok[gi] = true;
        }
        series.push_back(std::move(s));
    }

    bool clipped = false;
    if (log_y) {
        double min_pos = kInf;
        for (const auto& s : series)
            for (int g = 0; g < G; ++g)
                if (s.ok[static_cast<std::size_t>(g)])
                    for (double v : {s.mean[static_cast<std::size_t>(g)], s.lo[static_cast<std::size_t>(g)],
                                     s.hi[static_cast<std::size_t>(g)]})
                        if (v > 0 && v < min_pos) min_pos = v;
        if (!std::isfinite(min_pos)) throw ConfigError("log scale needs at least one positive value");
        auto tolog = [&](double v) {
            if (v < min_pos) {
                clipped = true;
                v = min_pos;
            }
            return std::log10(v);
        };
        for (auto& s : series)
            for (int g = 0; g < G; ++g) {
                auto gi = static_cast<std::size_t>(g);
                if (!s.ok[gi]) continue;
                s.mean[gi] = tolog(s.mean[gi]);
                s.lo[gi] = tolog(s.lo[gi]);
                s.hi[gi] = tolog(s.hi[gi]);
            }
    }

    Frame frame;
    frame.x_lo = kInf;
    frame.x_hi = -kInf;
    frame.y_lo = kInf;
    frame.y_hi = -kInf;
    for (int g = 0; g < G; ++g) {
        double e = result.converge_evals(row, g);
        frame.x_lo = std::min(frame.x_lo, e);
        frame.x_hi = std::max(frame.x_hi, e);
    }
    bool any = false;
    for (const auto& s : series)
        for (int g = 0; g < G; ++g) {
            auto gi = static_cast<std::size_t>(g);
            if (!s.ok[gi]) continue;
            any = true;
            frame.y_lo = std::min(frame.y_lo, s.lo[gi]);
            frame.y_hi = std::max(frame.y_hi, s.hi[gi]);
        }
    if (!any) throw ConfigError("no finite values to plot");
    frame.pad_y();

    SvgDoc svg(frame.width, frame.height);
    frame.draw_axes(svg, "evaluations", log_y ? "metric (log10)" : "metric", log_y);
    svg.text(frame.left, frame.top - 12, result.row_names[static_cast<std::size_t>(row)], 13, "start");
    int li = 0;
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> band_pts, line_pts;
        for (int g = 0; g < G; ++g) {
            auto gi = static_cast<std::size_t>(g);
            if (!s.ok[gi]) continue;
            double x = frame.px(result.converge_evals(row, g));
            line_pts.emplace_back(x, frame.py(s.mean[gi]));
            band_pts.emplace_back(x, frame.py(s.hi[gi]));
        }
        for (int g = G - 1; g >= 0; --g) {
            auto gi = static_cast<std::size_t>(g);
            if (!s.ok[gi]) continue;
            band_pts.emplace_back(frame.px(result.converge_evals(row, g)), frame.py(s.lo[gi]));
        }
        if (ci_band && band_pts.size() >= 3) svg.polygon(band_pts, color_of(li), 0.15);
        if (line_pts.size() >= 2)
            svg.polyline(line_pts, color_of(li), 1.6);
        else if (line_pts.size() == 1)
            svg.circle(line_pts[0].first, line_pts[0].second, 2.5, color_of(li));
        double ly = frame.top + 14 + 16 * li;
        svg.line(frame.width - frame.right - 130, ly - 4, frame.width - frame.right - 106, ly - 4, color_of(li), 2.0);
        svg.text(frame.width - frame.right - 100, ly, result.column_names[static_cast<std::size_t>(s.col)], 11);
        ++li;
    }
    if (clipped)
        svg.text(frame.left, frame.height - 8, "nonpositive values clipped to the smallest positive datum", 10,
                 "start", "#808080");
    return svg.str();
}

std::string plot_pareto(const ExperimentData& data, int problem, int task, std::vector<int> algorithms) {
    if (problem < 0 || problem >= data.num_problems()) throw ConfigError("problem index out of range");
    const ProblemRecord& prob = data.problems[static_cast<std::size_t>(problem)];
    if (task < 0 || task >= prob.num_tasks()) throw ConfigError("task index out of range");
    const TaskRecord& trec = prob.tasks[static_cast<std::size_t>(task)];
    if (trec.num_objectives != 2) throw ConfigError("pareto plot supports exactly two objectives");
    if (algorithms.empty())
        for (int a = 0; a < data.num_algorithms(); ++a) algorithms.push_back(a);
    for (int a : algorithms)
        if (a < 0 || a >= data.num_algorithms()) throw ConfigError("algorithm index out of range");

    std::vector<Matrix> fronts;
    for (int a : algorithms) {
        std::vector<Vector> rows;
        for (int r = 0; r < data.reps; ++r) {
            const RunResult& res = data.results[data.idx(problem, a, r)];
            if (res.failed) continue;
            const Matrix& objs = res.tasks[static_cast<std::size_t>(task)].obj.back();
            for (Eigen::Index i = 0; i < objs.rows(); ++i) rows.push_back(objs.row(i).transpose());
        }
        Matrix pool(static_cast<Eigen::Index>(rows.size()), 2);
        for (Eigen::Index i = 0; i < pool.rows(); ++i) pool.row(i) = rows[static_cast<std::size_t>(i)].transpose();
        fronts.push_back(pool.rows() > 0 ? nondominated_filter(pool) : pool);
    }

    Frame frame;
    frame.x_lo = kInf;
    frame.x_hi = -kInf;
    frame.y_lo = kInf;
    frame.y_hi = -kInf;
    auto stretch = [&](const Matrix& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, 0)) || !std::isfinite(m(i, 1))) continue;
            frame.x_lo = std::min(frame.x_lo, m(i, 0));
            frame.x_hi = std::max(frame.x_hi, m(i, 0));
            frame.y_lo = std::min(frame.y_lo, m(i, 1));
            frame.y_hi = std::max(frame.y_hi, m(i, 1));
        }
    };
    for (const Matrix& f : fronts) stretch(f);
    if (trec.optimum.front) stretch(*trec.optimum.front);
    if (!std::isfinite(frame.x_lo) || !std::isfinite(frame.y_lo)) throw ConfigError("no finite points to plot");
    if (frame.x_hi == frame.x_lo) frame.x_hi = frame.x_lo + 1;
    frame.pad_y();

    SvgDoc svg(frame.width, frame.height);
    frame.draw_axes(svg, "objective 1", "objective 2", false);
    svg.text(frame.left, frame.top - 12, prob.name + " task " + std::to_string(task + 1), 13, "start");
    if (trec.optimum.front) {
        const Matrix& tf = *trec.optimum.front;
        std::vector<std::pair<double, double>> pts;
        std::vector<Eigen::Index> order(static_cast<std::size_t>(tf.rows()));
        for (Eigen::Index i = 0; i < tf.rows(); ++i) order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return tf(a, 0) < tf(b, 0); });
        for (Eigen::Index i : order) pts.emplace_back(frame.px(tf(i, 0)), frame.py(tf(i, 1)));
        svg.polyline(pts, "#303030", 1.2, "5,4");
    }
    for (std::size_t k = 0; k < fronts.size(); ++k) {
        const Matrix& f = fronts[k];
        for (Eigen::Index i = 0; i < f.rows(); ++i)
            if (std::isfinite(f(i, 0)) && std::isfinite(f(i, 1)))
                svg.circle(frame.px(f(i, 0)), frame.py(f(i, 1)), 3.0, color_of(static_cast<int>(k)), 0.8);
        double ly = frame.top + 14 + 16 * static_cast<double>(k);
        svg.circle(frame.width - frame.right - 120, ly - 4, 3.0, color_of(static_cast<int>(k)));
        svg.text(frame.width - frame.right - 110, ly,
                 data.algorithms[static_cast<std::size_t>(algorithms[k])].name, 11);
    }
    return svg.str();
}

std::string plot_landscape(const ProblemInstance& problem, int task, bool two_d, int resolution) {
    LandscapeGrid grid = sample_landscape(problem, task, two_d, resolution);
    Frame frame;
    if (!grid.two_d) {
        frame.x_lo = 0;
        frame.x_hi = 1;
        frame.y_lo = kInf;
        frame.y_hi = -kInf;
        for (Eigen::Index i = 0; i < grid.obj.cols(); ++i) {
            if (!std::isfinite(grid.obj(0, i))) continue;
            frame.y_lo = std::min(frame.y_lo, grid.obj(0, i));
            frame.y_hi = std::max(frame.y_hi, grid.obj(0, i));
        }
        if (!std::isfinite(frame.y_lo)) throw ConfigError("no finite values to plot");
        frame.pad_y();
        SvgDoc svg(frame.width, frame.height);
        double plot_top = frame.py(frame.y_hi);
        double plot_bot = frame.py(frame.y_lo);
        for (Eigen::Index i = 0; i + 1 < grid.obj.cols(); ++i)
            if (!grid.feasible(0, i) || !grid.feasible(0, i + 1)) {
                double x0 = frame.px(grid.axis[static_cast<std::size_t>(i)]);
                double x1 = frame.px(grid.axis[static_cast<std::size_t>(i + 1)]);
                svg.rect(x0, plot_top, x1 - x0, plot_bot - plot_top, "#c04040", 0.12);
            }
        frame.draw_axes(svg, "unified x1", "objective", false);
        svg.text(frame.left, frame.top - 12, problem.name + " task " + std::to_string(task + 1), 13, "start");
        std::vector<std::pair<double, double>> pts;
        for (Eigen::Index i = 0; i < grid.obj.cols(); ++i)
            if (std::isfinite(grid.obj(0, i)))
                pts.emplace_back(frame.px(grid.axis[static_cast<std::size_t>(i)]), frame.py(grid.obj(0, i)));
        if (pts.size() >= 2) svg.polyline(pts, kPalette[0], 1.6);
        return svg.str();
    }
    double lo = kInf, hi = -kInf;
    for (Eigen::Index r = 0; r < grid.obj.rows(); ++r)
        for (Eigen::Index c = 0; c < grid.obj.cols(); ++c)
            if (std::isfinite(grid.obj(r, c))) {
                lo = std::min(lo, grid.obj(r, c));
                hi = std::max(hi, grid.obj(r, c));
            }
    if (!std::isfinite(lo)) throw ConfigError("no finite values to plot");
    if (hi == lo) hi = lo + 1;
    Frame f2;
    f2.x_lo = 0;
    f2.x_hi = 1;
    f2.y_lo = 0;
    f2.y_hi = 1;
    SvgDoc svg(f2.width, f2.height);
    int n = static_cast<int>(grid.axis.size());
    double cw = (f2.width - f2.left - f2.right) / n;
    double ch = (f2.height - f2.top - f2.bottom) / n;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            double v = grid.obj(r, c);
            double t = std::isfinite(v) ? (v - lo) / (hi - lo) : 1.0;
            int red = static_cast<int>(30 + 225 * t);
            int green = static_cast<int>(60 + 140 * (1 - t));
            int blue = static_cast<int>(180 * (1 - t) + 40);
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", red, green, blue);
            double x = f2.left + cw * c;
            double y = f2.height - f2.bottom - ch * (r + 1);
            svg.rect(x, y, cw + 0.5, ch + 0.5, color);
            if (!grid.feasible(r, c)) svg.rect(x, y, cw + 0.5, ch + 0.5, "#404040", 0.55);
        }
    }
    f2.draw_axes(svg, "unified x1", "unified x2", false);
    svg.text(f2.left, f2.top - 12,
             problem.name + " task " + std::to_string(task + 1) + "  [" + fmtg(lo) + ", " + fmtg(hi) + "]", 13,
             "start");
    return svg.str();
}

} // namespace mto
