#include "mto/exports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mto/dominance.hpp"

namespace mto {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::vector<double> finite_reps(const Tensor3& table, int row, int col) {
    std::vector<double> out;
    for (int r = 0; r < table.d2; ++r) {
        double v = table.at(row, col, r);
        if (std::isfinite(v)) out.push_back(v);
    }
    return out;
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string tex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '%' || c == '&' || c == '#' || c == '$') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string cell_text(const MetricResult& m, int row, int col, TableShow show, TableFormat format) {
    std::vector<double> reps = finite_reps(m.table, row, col);
    if (reps.empty()) return "n/a";
    switch (show) {
    case TableShow::MeanStd: {
        double mean = 0.0;
        for (double v : reps) mean += v;
        mean /= static_cast<double>(reps.size());
        const char* pm = format == TableFormat::Tex ? " $\\pm$ " : "\u00b1";
        return fmt("%.2e", mean) + pm + fmt("%.2e", sample_std(reps));
    }
    case TableShow::Median: return fmt("%.2e", median_of(reps));
    case TableShow::Best: {
        double best = m.orientation == MetricResult::Orientation::Min ? *std::min_element(reps.begin(), reps.end())
                                                                      : *std::max_element(reps.begin(), reps.end());
        return fmt("%.2e", best);
    }
    }
    return "n/a";
}

} // namespace

TableFormat parse_table_format(const std::string& name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "tex") return TableFormat::Tex;
    throw ConfigError("unknown table format: " + name + " (expected csv or tex)");
}

TableShow parse_table_show(const std::string& name) {
    if (name == "mean_std") return TableShow::MeanStd;
    if (name == "median") return TableShow::Median;
    if (name == "best") return TableShow::Best;
    throw ConfigError("unknown table statistic: " + name + " (expected mean_std, median, or best)");
}

std::string render_table(const MetricResult& result, const TestReport* report, TableFormat format, TableShow show) {
    result.validate();
    const int rows = result.table.d0;
    const int cols = result.table.d1;
    if (report) {
        bool pairwise = report->kind != TestKind::Friedman;
        if (pairwise && (report->p.rows() != rows || static_cast<int>(report->markers.size()) != rows))
            throw ExportError("test report shape disagrees with the metric table");
        if (report->p.cols() != cols) throw ExportError("test report shape disagrees with the metric table");
    }
    bool tex = format == TableFormat::Tex;
    std::string out;
    if (tex) {
        out += "\\begin{tabular}{l";
        for (int c = 0; c < cols; ++c) out += "c";
        out += "}\n\\hline\nproblem";
        for (int c = 0; c < cols; ++c) out += " & " + tex_escape(result.column_names[static_cast<std::size_t>(c)]);
        out += " \\\\\n\\hline\n";
    } else {
        out += "problem";
        for (int c = 0; c < cols; ++c) out += "," + result.column_names[static_cast<std::size_t>(c)];
        out += "\n";
    }
    for (int r = 0; r < rows; ++r) {
        std::string name = result.row_names[static_cast<std::size_t>(r)];
        out += tex ? tex_escape(name) : name;
        for (int c = 0; c < cols; ++c) {
            std::string cell = cell_text(result, r, c, show, format);
            if (report && report->kind != TestKind::Friedman) {
                char mark = report->markers[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (mark != ' ') cell += std::string(" (") + mark + ")";
            }
            out += (tex ? " & " : ",") + cell;
        }
        out += tex ? " \\\\\n" : "\n";
    }
    if (report && report->kind == TestKind::Friedman) {
        if (tex) out += "\\hline\n";
        std::string ranks = tex ? "mean rank" : "mean rank";
        std::string ps = "post-hoc p";
        for (int c = 0; c < cols; ++c) {
            ranks += (tex ? " & " : ",") + fmt("%.2f", report->mean_ranks[c]);
            double p = report->p(0, c);
            ps += (tex ? " & " : ",") + (std::isnan(p) ? std::string("base") : fmt("%.3g", p));
        }
        out += ranks + (tex ? " \\\\\n" : "\n");
        out += ps + (tex ? " \\\\\n" : "\n");
    }
    if (tex) out += "\\hline\n\\end{tabular}\n";
    return out;
}

void export_table(const MetricResult& result, const TestReport* report, TableFormat format, TableShow show,
                  const std::string& path) {
    write_text_file(path, render_table(result, report, format, show));
}

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '-');
    return out;
}

} // namespace

std::vector<std::string> export_ioh(const ExperimentData& data, const std::string& out_dir) {
    for (const auto& prob : data.problems)
        for (const auto& task : prob.tasks)
            if (task.num_objectives != 1)
                throw ExportError("this export needs single-objective archives; task in '" + prob.name +
                                  "' has several objectives");
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    nlohmann::json index;
    index["schema"] = "ioh-export/1";
    index["files"] = nlohmann::json::array();
    for (int p = 0; p < data.num_problems(); ++p) {
        const ProblemRecord& prob = data.problems[static_cast<std::size_t>(p)];
        for (int t = 0; t < prob.num_tasks(); ++t) {
            for (int a = 0; a < data.num_algorithms(); ++a) {
                const std::string& alg = data.algorithms[static_cast<std::size_t>(a)].name;
                std::string name = sanitize(prob.name) + "_task" + std::to_string(t + 1) + "_" + sanitize(alg) +
                                   ".csv";
                std::string body;
                int blocks = 0;
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.results[data.idx(p, a, r)];
                    if (res.failed) continue;
                    body += "evaluations,raw_y\n";
                    const TaskSeries& series = res.tasks[static_cast<std::size_t>(t)];
                    for (std::size_t g = 0; g < res.eval_points.size(); ++g) {
                        body += std::to_string(res.eval_points[g]);
                        body += ",";
                        body += fmt("%.17g", series.obj[g](0, 0));
                        body += "\n";
                    }
                    ++blocks;
                }
                std::string path = (std::filesystem::path(out_dir) / name).string();
                write_text_file(path, body);
                files.push_back(name);
                index["files"].push_back({{"path", name},
                                          {"problem", prob.name},
                                          {"task", t},
                                          {"algorithm", alg},
                                          {"blocks", blocks},
                                          {"rows_per_block", data.data_length}});
            }
        }
    }
    write_text_file((std::filesystem::path(out_dir) / "index.json").string(), index.dump(2) + "\n");
    return files;
}

void export_best_dec(const ExperimentData& data, const std::string& out_path) {
    if (!data.save_dec)
        throw ExportError("archive was recorded without decision variables; rerun with save_dec enabled");
    nlohmann::json root;
    root["schema"] = "best-dec/1";
    root["problems"] = nlohmann::json::array();
    for (int p = 0; p < data.num_problems(); ++p) {
        const ProblemRecord& prob = data.problems[static_cast<std::size_t>(p)];
        nlohmann::json pj{{"problem", prob.name}, {"tasks", nlohmann::json::array()}};
        for (int t = 0; t < prob.num_tasks(); ++t) {
            const TaskRecord& task = prob.tasks[static_cast<std::size_t>(t)];
            nlohmann::json tj{{"task", t}, {"algorithms", nlohmann::json::array()}};
            for (int a = 0; a < data.num_algorithms(); ++a) {
                nlohmann::json aj{{"algorithm", data.algorithms[static_cast<std::size_t>(a)].name},
                                  {"reps", nlohmann::json::array()}};
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.results[data.idx(p, a, r)];
                    nlohmann::json rj{{"rep", r}};
                    if (res.failed) {
                        rj["failed"] = true;
                        aj["reps"].push_back(std::move(rj));
                        continue;
                    }
                    const TaskSeries& series = res.tasks[static_cast<std::size_t>(t)];
                    if (series.dec.empty()) throw ExportError("archive is missing recorded decision variables");
                    const Matrix& unit = series.dec.back();
                    auto decode_row = [&](Eigen::Index i) {
                        nlohmann::json vec = nlohmann::json::array();
                        for (Eigen::Index c = 0; c < unit.cols(); ++c)
                            vec.push_back(task.lower[c] + unit(i, c) * (task.upper[c] - task.lower[c]));
                        return vec;
                    };
                    if (!series.multi) {
                        rj["decision"] = decode_row(0);
                    } else {
                        const Matrix& objs = series.obj.back();
                        std::vector<Eigen::Index> keep;
                        for (int i : nondominated_front(objs)) {
                            bool dup = false;
                            for (Eigen::Index j : keep)
                                if ((objs.row(j).array() == objs.row(i).array()).all()) {
                                    dup = true;
                                    break;
                                }
                            if (!dup) keep.push_back(i);
                        }
                        nlohmann::json sets = nlohmann::json::array();
                        for (Eigen::Index i : keep) sets.push_back(decode_row(i));
                        rj["decisions"] = std::move(sets);
                    }
                    aj["reps"].push_back(std::move(rj));
                }
                tj["algorithms"].push_back(std::move(aj));
            }
            pj["tasks"].push_back(std::move(tj));
        }
        root["problems"].push_back(std::move(pj));
    }
    write_text_file(out_path, root.dump() + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ExportError("cannot create file: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            std::remove(tmp.c_str());
            throw ExportError("failed writing file: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ExportError("cannot move file into place: " + path);
    }
}

} // namespace mto
