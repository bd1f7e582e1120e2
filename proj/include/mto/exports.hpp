#pragma once

#include <optional>
#include <string>

#include "mto/archive.hpp"
#include "mto/stats.hpp"

namespace mto {

enum class TableFormat { Csv, Tex };
enum class TableShow { MeanStd, Median, Best };

TableFormat parse_table_format(const std::string& name);
TableShow parse_table_show(const std::string& name);

// Renders the per-rep metric table as rows x algorithms. Cells show the
// chosen statistic over reps; when a pairwise report is given its markers
// are appended as " (+)", " (-)", or " (=)". A Friedman report instead adds
// mean-rank and post-hoc p-value footer rows.
std::string render_table(const MetricResult& result, const TestReport* report, TableFormat format, TableShow show);

void export_table(const MetricResult& result, const TestReport* report, TableFormat format, TableShow show,
                  const std::string& path);

// Per (problem, task, algorithm) CSV files of best-so-far objective against
// evaluations, one `evaluations,raw_y` block per rep, plus an index.json.
// Only defined for single-objective archives; failed reps are skipped.
// Returns the written file names in index order.
std::vector<std::string> export_ioh(const ExperimentData& data, const std::string& out_dir);

// Best decision variables as structured JSON: per rep one native-space
// vector for single-objective tasks, the final non-dominated set for
// multi-objective tasks. Requires an archive recorded with save_dec.
void export_best_dec(const ExperimentData& data, const std::string& out_path);

// Writes text through a temp file and rename so failures leave no partial
// output behind.
void write_text_file(const std::string& path, const std::string& content);

} // namespace mto
