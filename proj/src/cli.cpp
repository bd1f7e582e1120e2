#include "mto/cli.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "mto/algorithm.hpp"
#include "mto/archive_ops.hpp"
#include "mto/experiment.hpp"
#include "mto/exports.hpp"
#include "mto/metrics.hpp"
#include "mto/plots.hpp"
#include "mto/suites.hpp"

namespace mto {

namespace {

int resolve_algorithm(const ExperimentData& data, const std::string& key) {
    for (int a = 0; a < data.num_algorithms(); ++a)
        if (data.algorithms[static_cast<std::size_t>(a)].name == key) return a;
    try {
        std::size_t used = 0;
        int idx = std::stoi(key, &used);
        if (used == key.size() && idx >= 0 && idx < data.num_algorithms()) return idx;
    } catch (const std::exception&) {
    }
    throw ConfigError("archive has no algorithm named '" + key + "'");
}

TestKind parse_test_kind(const std::string& name) {
    if (name == "ranksum") return TestKind::RankSum;
    if (name == "signrank") return TestKind::SignRank;
    if (name == "friedman") return TestKind::Friedman;
    throw ConfigError("unknown test: " + name + " (expected ranksum, signrank, or friedman)");
}

// <stem><suffix> with suffix one of the archive extensions; keeps the
// compression choice of the input.
std::pair<std::string, std::string> archive_stem(const std::string& path) {
    const std::string gz = std::string(kArchiveSuffix) + ".gz";
    const std::string plain = kArchiveSuffix;
    std::filesystem::path p(path);
    std::string name = p.filename().string();
    if (name.size() > gz.size() && name.compare(name.size() - gz.size(), gz.size(), gz) == 0)
        return {name.substr(0, name.size() - gz.size()), gz};
    if (name.size() > plain.size() && name.compare(name.size() - plain.size(), plain.size(), plain) == 0)
        return {name.substr(0, name.size() - plain.size()), plain};
    return {p.stem().string(), plain};
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
    std::vector<std::vector<int>> groups;
    if (text.empty()) return groups;
    std::vector<int> cur;
    std::string tok;
    auto flush_tok = [&] {
        if (tok.empty()) throw ConfigError("bad --groups syntax: empty index");
        cur.push_back(std::stoi(tok));
        tok.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush_tok();
        } else if (c == ';') {
            flush_tok();
            groups.push_back(std::move(cur));
            cur.clear();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            tok.push_back(c);
        } else {
            throw ConfigError(std::string("bad --groups syntax near '") + c + "'");
        }
    }
    flush_tok();
    groups.push_back(std::move(cur));
    return groups;
}

TestReport run_test(ExperimentData& data, const std::string& metric_name, TestKind kind, const std::string& base_key) {
    const MetricResult& metric = ensure_metric(data, metric_name);
    int base = base_key.empty() ? 0 : resolve_algorithm(data, base_key);
    if (kind == TestKind::Friedman) return friedman(metric.table, FriedmanMode::Mean, base, metric.orientation);
    return annotate(metric.table, base, kind, metric.orientation);
}

void print_report(const ExperimentData& data, const std::string& metric_name, const TestReport& report) {
    const MetricResult& metric = data.metrics.at(metric_name);
    std::ostream& out = std::cout;
    if (report.kind == TestKind::Friedman) {
        out << "friedman chi2=" << report.chi2 << " blocks=" << report.blocks << "\n";
        out << "algorithm,mean_rank,posthoc_p\n";
        for (int c = 0; c < report.mean_ranks.size(); ++c) {
            out << metric.column_names[static_cast<std::size_t>(c)] << "," << report.mean_ranks[c] << ",";
            if (std::isnan(report.p(0, c)))
                out << "base";
            else
                out << report.p(0, c);
            out << "\n";
        }
        return;
    }
    out << "problem";
    for (const auto& name : metric.column_names) out << "," << name << "_p," << name << "_mark";
    out << "\n";
    for (Eigen::Index r = 0; r < report.p.rows(); ++r) {
        out << metric.row_names[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < report.p.cols(); ++c) {
            char mark = report.markers[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            out << ",";
            if (std::isnan(report.p(r, c)))
                out << "base";
            else
                out << report.p(r, c);
            out << "," << mark;
        }
        out << "\n";
    }
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"evolutionary multitask optimization benchmark runner"};
    app.require_subcommand(1);

    // run
    auto* cmd_run = app.add_subcommand("run", "execute the experiment described by a config file");
    std::string run_config;
    std::string run_output;
    int run_reps = 0;
    long long run_seed = -1;
    int run_data_length = 0;
    int run_workers = -1;
    bool run_parallel = false;
    bool run_serial = false;
    bool run_save_dec = false;
    cmd_run->add_option("config", run_config, "experiment config (TOML)")->required();
    cmd_run->add_option("--output", run_output, "archive output path");
    cmd_run->add_option("--reps", run_reps, "override rep count");
    cmd_run->add_option("--seed", run_seed, "override base seed");
    cmd_run->add_option("--data-length", run_data_length, "override checkpoint count");
    cmd_run->add_option("--workers", run_workers, "override worker count");
    cmd_run->add_flag("--parallel", run_parallel, "run cells in parallel");
    cmd_run->add_flag("--serial", run_serial, "force serial execution");
    cmd_run->add_flag("--save-dec", run_save_dec, "record decision variables");
    cmd_run->callback([&] {
        ExperimentConfig config = load_config(run_config);
        if (!run_output.empty()) config.output = run_output;
        if (cmd_run->count("--reps")) config.reps = run_reps;
        if (cmd_run->count("--seed")) {
            if (run_seed < 0) throw ConfigError("base seed must be nonnegative");
            config.base_seed = static_cast<std::uint64_t>(run_seed);
        }
        if (cmd_run->count("--data-length")) config.data_length = run_data_length;
        if (cmd_run->count("--workers")) config.workers = run_workers;
        if (run_parallel) config.parallel = true;
        if (run_serial) {
            config.parallel = false;
            config.workers = 0;
        }
        if (run_save_dec) config.save_dec = true;
        validate_config(config);
        std::string out_path = config.output.empty() ? "experiment" + std::string(kArchiveSuffix) + ".gz"
                                                     : config.output;
        ExperimentData data = run_experiment(config);
        save(data, out_path);
        std::cout << "saved " << out_path << " (" << data.num_problems() << " problems x " << data.num_algorithms()
                  << " algorithms x " << data.reps << " reps)\n";
    });

    // metric
    auto* cmd_metric = app.add_subcommand("metric", "compute a metric table from an archive");
    std::string metric_archive, metric_name = "obj";
    bool metric_save = false;
    cmd_metric->add_option("archive", metric_archive, "archive path")->required();
    cmd_metric->add_option("--name", metric_name, "metric name");
    cmd_metric->add_flag("--save", metric_save, "cache the metric back into the archive file");
    cmd_metric->callback([&] {
        ExperimentData data = load(metric_archive);
        const MetricResult& result = ensure_metric(data, metric_name);
        std::cout << render_table(result, nullptr, TableFormat::Csv, TableShow::MeanStd);
        if (metric_save) save(data, metric_archive);
    });

    // stats
    auto* cmd_stats = app.add_subcommand("stats", "significance tests over a metric table");
    std::string stats_archive, stats_name = "obj", stats_test = "ranksum", stats_base;
    cmd_stats->add_option("archive", stats_archive, "archive path")->required();
    cmd_stats->add_option("--name", stats_name, "metric name");
    cmd_stats->add_option("--test", stats_test, "ranksum, signrank, or friedman");
    cmd_stats->add_option("--base", stats_base, "base algorithm (name or index)");
    cmd_stats->callback([&] {
        ExperimentData data = load(stats_archive);
        TestKind kind = parse_test_kind(stats_test);
        TestReport report = run_test(data, stats_name, kind, stats_base);
        print_report(data, stats_name, report);
    });

    // export
    auto* cmd_export = app.add_subcommand("export", "write tables or analysis files");
    std::string exp_archive, exp_format, exp_out, exp_name = "obj", exp_show = "mean_std", exp_test = "none",
                              exp_base;
    cmd_export->add_option("archive", exp_archive, "archive path")->required();
    cmd_export->add_option("--format", exp_format, "csv, tex, ioh, or best-dec")->required();
    cmd_export->add_option("--out", exp_out, "output file or directory")->required();
    cmd_export->add_option("--name", exp_name, "metric name (csv/tex)");
    cmd_export->add_option("--show", exp_show, "cell statistic: mean_std, median, or best");
    cmd_export->add_option("--test", exp_test, "marker test: none, ranksum, signrank, or friedman");
    cmd_export->add_option("--base", exp_base, "base algorithm for the test");
    cmd_export->callback([&] {
        ExperimentData data = load(exp_archive);
        if (exp_format == "ioh") {
            export_ioh(data, exp_out);
            std::cout << "wrote " << exp_out << "\n";
            return;
        }
        if (exp_format == "best-dec") {
            export_best_dec(data, exp_out);
            std::cout << "wrote " << exp_out << "\n";
            return;
        }
        TableFormat format = parse_table_format(exp_format);
        const MetricResult& result = ensure_metric(data, exp_name);
        std::optional<TestReport> report;
        if (exp_test != "none") report = run_test(data, exp_name, parse_test_kind(exp_test), exp_base);
        export_table(result, report ? &*report : nullptr, format, parse_table_show(exp_show), exp_out);
        std::cout << "wrote " << exp_out << "\n";
    });

    // merge
    auto* cmd_merge = app.add_subcommand("merge", "combine archives along one axis");
    std::vector<std::string> merge_inputs;
    std::string merge_axis, merge_out;
    cmd_merge->add_option("archives", merge_inputs, "two or more archive paths")->required()->expected(-2);
    cmd_merge->add_option("--axis", merge_axis, "reps, algorithms, or problems")->required();
    cmd_merge->add_option("--out", merge_out, "output archive path")->required();
    cmd_merge->callback([&] {
        SplitAxis axis = parse_split_axis(merge_axis);
        ExperimentData merged = load(merge_inputs[0]);
        for (std::size_t i = 1; i < merge_inputs.size(); ++i) {
            ExperimentData next = load(merge_inputs[i]);
            merged = axis == SplitAxis::Reps         ? merge_reps(merged, next)
                     : axis == SplitAxis::Algorithms ? merge_algorithms(merged, next)
                                                     : merge_problems(merged, next);
        }
        save(merged, merge_out);
        std::cout << "saved " << merge_out << "\n";
    });

    // split
    auto* cmd_split = app.add_subcommand("split", "partition an archive along one axis");
    std::string split_archive, split_axis, split_groups, split_dir = ".";
    cmd_split->add_option("archive", split_archive, "archive path")->required();
    cmd_split->add_option("--axis", split_axis, "reps, algorithms, or problems")->required();
    cmd_split->add_option("--groups", split_groups, "index groups, e.g. \"0,1;2\" (default: singletons)");
    cmd_split->add_option("--out-dir", split_dir, "output directory");
    cmd_split->callback([&] {
        ExperimentData data = load(split_archive);
        auto parts = split(data, parse_split_axis(split_axis), parse_groups(split_groups));
        std::filesystem::create_directories(split_dir);
        auto [stem, suffix] = archive_stem(split_archive);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::string path =
                (std::filesystem::path(split_dir) / (stem + "-part" + std::to_string(i + 1) + suffix)).string();
            save(parts[i], path);
            std::cout << "saved " << path << "\n";
        }
    });

    // plot
    auto* cmd_plot = app.add_subcommand("plot", "emit SVG figures");
    cmd_plot->require_subcommand(1);

    auto* plot_conv = cmd_plot->add_subcommand("convergence", "metric trajectory with confidence band");
    std::string conv_archive, conv_name = "obj", conv_out;
    int conv_row = 0;
    bool conv_log = false, conv_no_band = false;
    std::vector<int> conv_cols;
    plot_conv->add_option("archive", conv_archive, "archive path")->required();
    plot_conv->add_option("--name", conv_name, "metric name");
    plot_conv->add_option("--row", conv_row, "metric row index");
    plot_conv->add_option("--cols", conv_cols, "algorithm column indices")->delimiter(',');
    plot_conv->add_option("--out", conv_out, "output SVG path")->required();
    plot_conv->add_flag("--log-y", conv_log, "log10 vertical axis");
    plot_conv->add_flag("--no-band", conv_no_band, "draw means only");
    plot_conv->callback([&] {
        ExperimentData data = load(conv_archive);
        const MetricResult& result = ensure_metric(data, conv_name);
        write_text_file(conv_out, plot_convergence(result, conv_row, conv_cols, conv_log, !conv_no_band));
        std::cout << "wrote " << conv_out << "\n";
    });

    auto* plot_par = cmd_plot->add_subcommand("pareto", "final non-dominated objective vectors");
    std::string par_archive, par_out;
    int par_problem = 0, par_task = 0;
    plot_par->add_option("archive", par_archive, "archive path")->required();
    plot_par->add_option("--problem", par_problem, "problem index");
    plot_par->add_option("--task", par_task, "task index");
    plot_par->add_option("--out", par_out, "output SVG path")->required();
    plot_par->callback([&] {
        ExperimentData data = load(par_archive);
        write_text_file(par_out, plot_pareto(data, par_problem, par_task));
        std::cout << "wrote " << par_out << "\n";
    });

    auto* plot_land = cmd_plot->add_subcommand("landscape", "objective surface of one task");
    std::string land_suite, land_out;
    int land_task = 0, land_resolution = 101;
    long long land_seed = 1;
    int land_dim = 0;
    bool land_two_d = false;
    plot_land->add_option("--suite", land_suite, "problem id, e.g. a suite selector")->required();
    plot_land->add_option("--task", land_task, "task index");
    plot_land->add_option("--resolution", land_resolution, "grid resolution");
    plot_land->add_option("--seed", land_seed, "suite seed");
    plot_land->add_option("--dim", land_dim, "dimension override");
    plot_land->add_flag("--two-d", land_two_d, "sample the first two coordinates");
    plot_land->add_option("--out", land_out, "output SVG path")->required();
    plot_land->callback([&] {
        SuiteConfig sc;
        sc.suite_id = land_suite;
        if (land_seed < 0) throw ConfigError("suite seed must be nonnegative");
        sc.seed = static_cast<std::uint64_t>(land_seed);
        if (plot_land->count("--dim")) sc.dim = land_dim;
        auto problems = make_suite(sc);
        if (problems.size() != 1)
            throw ConfigError("landscape plots need a single problem id; '" + land_suite + "' expands to " +
                              std::to_string(problems.size()) + " problems");
        write_text_file(land_out, plot_landscape(problems[0], land_task, land_two_d, land_resolution));
        std::cout << "wrote " << land_out << "\n";
    });

    // list
    auto* cmd_list = app.add_subcommand("list", "print registered names");
    std::string list_what;
    cmd_list->add_option("what", list_what, "algorithms, problems, or metrics")->required();
    cmd_list->callback([&] {
        if (list_what == "algorithms") {
            for (const auto& name : AlgorithmRegistry::instance().names()) std::cout << name << "\n";
        } else if (list_what == "problems") {
            for (const auto& name : suite_ids()) std::cout << name << "\n";
        } else if (list_what == "metrics") {
            for (const auto& name : metric_names()) std::cout << name << "\n";
        } else {
            throw ConfigError("unknown listing: " + list_what + " (expected algorithms, problems, or metrics)");
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}

} // namespace mto
