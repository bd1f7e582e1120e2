#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mto/archive.hpp"
#include "mto/archive_ops.hpp"
#include "mto/rng.hpp"

namespace {

using mto::ExperimentData;
using mto::Matrix;
using mto::Vector;

namespace fs = std::filesystem;

// Scratch directory for the save/load cases, removed when the binary exits.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("mto-datastore-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

TempDir& tmp() {
    static TempDir dir;
    return dir;
}

mto::TaskSeries make_series(mto::Rng& rng, int g, int dim, bool multi, bool save_dec, bool with_nonfinite) {
    mto::TaskSeries s;
    s.multi = multi;
    int n = multi ? 2 + rng.uniform_int(3) : 1;
    int m = multi ? 2 : 1;
    for (int i = 0; i < g; ++i) {
        Matrix obj(n, m);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c) obj(r, c) = rng.uniform(-5.0, 5.0);
        if (with_nonfinite && i == 0) obj(0, 0) = rng.uniform() < 0.5 ? mto::kNaN : mto::kInf;
        Vector cv(n);
        for (int r = 0; r < n; ++r) cv[r] = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 2.0);
        s.obj.push_back(std::move(obj));
        s.cv.push_back(std::move(cv));
        if (save_dec) {
            Matrix dec(n, dim);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < dim; ++c) dec(r, c) = rng.uniform();
            s.dec.push_back(std::move(dec));
        }
    }
    return s;
}

// Randomized but always-valid archive. Mixes single- and multi-objective
// problems, failed cells, non-finite values, optional metadata, and an
// optional cached metric.
ExperimentData make_fixture(std::uint64_t seed, int num_problems = 2, int num_algorithms = 2, int reps = 2,
                            bool save_dec = true, bool with_extra = true, bool with_metric = false) {
    mto::Rng rng(seed);
    ExperimentData d;
    d.rng_id = mto::kRngId;
    d.reps = reps;
    d.data_length = 3;
    d.save_dec = save_dec;
    d.base_seed = seed;
    for (int r = 0; r < reps; ++r) {
        d.base_seeds.push_back(seed);
        d.rep_seeds.push_back(seed + static_cast<std::uint64_t>(r));
    }
    for (int a = 0; a < num_algorithms; ++a) {
        mto::AlgorithmRecord rec;
        rec.name = "alg-" + std::to_string(a + 1);
        rec.params.define("pc", 0.5 + 0.1 * a);
        rec.params.define("rmp", rng.uniform());
        d.algorithms.push_back(std::move(rec));
    }
    for (int p = 0; p < num_problems; ++p) {
        mto::ProblemRecord prob;
        prob.name = "prob-" + std::to_string(p + 1);
        prob.max_fe = 1000 + 10 * p;
        prob.pop_size = 20;
        int tasks = 1 + rng.uniform_int(2);
        bool multi = p % 2 == 1;
        for (int t = 0; t < tasks; ++t) {
            mto::TaskRecord task;
            task.dim = 2 + rng.uniform_int(3);
            task.num_objectives = multi ? 2 : 1;
            task.lower = Vector::Constant(task.dim, -5.0);
            task.upper = Vector::Constant(task.dim, 5.0);
            if (multi) {
                Matrix front(4, 2);
                for (int i = 0; i < 4; ++i) {
                    front(i, 0) = i / 3.0;
                    front(i, 1) = 1.0 - front(i, 0);
                }
                task.optimum.front = front;
                task.optimum.ref_point = Vector::Constant(2, 1.1);
            } else {
                task.optimum.value = 0.0;
                task.optimum.decision = Vector::Constant(task.dim, 0.25);
            }
            prob.tasks.push_back(std::move(task));
        }
        d.problems.push_back(std::move(prob));
    }
    for (int p = 0; p < num_problems; ++p)
        for (int a = 0; a < num_algorithms; ++a)
            for (int r = 0; r < reps; ++r) {
                mto::RunResult res;
                if (rng.uniform() < 0.1) {
                    res.failed = true;
                    res.error = "objective raised";
                } else {
                    res.eval_points = {100, 550, 1000};
                    res.nonfinite_evals = rng.uniform_int(3);
                    const auto& prob = d.problems[static_cast<std::size_t>(p)];
                    for (const auto& task : prob.tasks)
                        res.tasks.push_back(make_series(rng, d.data_length, task.dim, task.num_objectives > 1,
                                                        save_dec, rng.uniform() < 0.3));
                }
                double t = rng.uniform(0.1, 2.0);
                res.wall_time = t;
                d.results.push_back(std::move(res));
                d.run_times.push_back(t);
            }
    if (with_extra) d.extra = {{"note", "fixture"}, {"tags", {1, 2, 3}}};
    if (with_metric) {
        mto::MetricResult m;
        m.row_names = {"prob-1"};
        m.column_names = {"alg-1", "alg-2"};
        m.table = mto::Tensor3(1, 2, reps, 0.0);
        m.table.at(0, 0, 0) = mto::kNaN;
        m.table.at(0, 1, 0) = 4.5;
        d.metrics["obj"] = std::move(m);
    }
    d.validate();
    return d;
}

} // namespace

TEST_CASE("serialization round trips preserve every field") {
    mto::Rng rng(500);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = make_fixture(1000 + static_cast<std::uint64_t>(trial), 1 + rng.uniform_int(3),
                              1 + rng.uniform_int(3), 1 + rng.uniform_int(3), trial % 2 == 0, trial % 3 == 0,
                              trial % 4 == 0);
        std::string text = mto::serialize(d);
        auto back = mto::deserialize(text);
        CHECK(mto::deep_equal(back, d));
        // A second pass re-emits byte-identical JSON.
        CHECK(mto::serialize(back) == text);
    }
}

TEST_CASE("save and load round trip plain and gzipped archives") {
    auto d = make_fixture(2000, 2, 2, 2, true, true, true);

    std::string plain = tmp().file("roundtrip.mtodata.json");
    mto::save(d, plain);
    CHECK(mto::deep_equal(mto::load(plain), d));
    {
        std::ifstream in(plain, std::ios::binary);
        char c = 0;
        in.get(c);
        CHECK(c == '{');
    }

    std::string gz = tmp().file("roundtrip.mtodata.json.gz");
    mto::save(d, gz);
    CHECK(mto::deep_equal(mto::load(gz), d));
    {
        std::ifstream in(gz, std::ios::binary);
        unsigned char magic[2] = {0, 0};
        in.read(reinterpret_cast<char*>(magic), 2);
        CHECK(magic[0] == 0x1f);
        CHECK(magic[1] == 0x8b);
        CHECK(fs::file_size(gz) < mto::serialize(d).size());
    }

    // Atomic write leaves no temp file behind.
    CHECK(!fs::exists(plain + ".tmp"));
    CHECK(!fs::exists(gz + ".tmp"));
}

TEST_CASE("extra top-level fields survive the round trip") {
    auto d = make_fixture(2100, 1, 1, 1);
    d.extra = {{"campaign", "desk"}, {"budget", 12345}, {"nested", {{"a", 1}}}};
    auto back = mto::deserialize(mto::serialize(d));
    CHECK(back.extra == d.extra);
    CHECK(mto::deep_equal(back, d));
}

TEST_CASE("loading rejects corrupted and mismatched archives") {
    auto d = make_fixture(2200, 1, 1, 1);

    std::string truncated = mto::serialize(d);
    truncated.resize(truncated.size() / 2);
    CHECK_THROWS_AS(mto::deserialize(truncated), mto::IntegrityError);

    CHECK_THROWS_AS(mto::deserialize("[1, 2, 3]"), mto::IntegrityError);
    CHECK_THROWS_AS(mto::deserialize("{\"reps\": 1}"), mto::SchemaError);

    nlohmann::json j = nlohmann::json::parse(mto::serialize(d));
    j["schema_version"] = "mtodata/9";
    CHECK_THROWS_WITH_AS(mto::deserialize(j.dump()), "unsupported archive schema: mtodata/9 (expected mtodata/1)",
                         mto::SchemaError);

    // Tensor data that disagrees with its declared shape.
    nlohmann::json bad = nlohmann::json::parse(mto::serialize(d));
    bad["results"][0]["tasks"][0]["obj"]["data"].push_back(0.0);
    CHECK_THROWS_AS(mto::deserialize(bad.dump()), mto::IntegrityError);

    // Shape mismatch at the archive level.
    nlohmann::json extra_rep = nlohmann::json::parse(mto::serialize(d));
    extra_rep["reps"] = 2;
    CHECK_THROWS_AS(mto::deserialize(extra_rep.dump()), mto::IntegrityError);

    // A file that begins with the gzip magic but is not a gzip stream.
    std::string fake = tmp().file("fake.mtodata.json.gz");
    {
        std::ofstream out(fake, std::ios::binary);
        out << "\x1f\x8b" << "this is not deflate data at all";
    }
    CHECK_THROWS_AS(mto::load(fake), mto::IntegrityError);

    CHECK_THROWS_AS(mto::load(tmp().file("missing.mtodata.json")), mto::IntegrityError);
}

TEST_CASE("non-finite values travel as tagged strings") {
    auto d = make_fixture(2300, 1, 1, 1, false, false, false);
    auto& series = d.results[0].tasks[0];
    series.obj[0](0, 0) = mto::kNaN;
    series.obj[1](0, 0) = mto::kInf;
    series.obj[2](0, 0) = -mto::kInf;
    std::string text = mto::serialize(d);
    CHECK(text.find("\"NaN\"") != std::string::npos);
    CHECK(text.find("\"Infinity\"") != std::string::npos);
    CHECK(text.find("\"-Infinity\"") != std::string::npos);
    auto back = mto::deserialize(text);
    CHECK(std::isnan(back.results[0].tasks[0].obj[0](0, 0)));
    CHECK(back.results[0].tasks[0].obj[1](0, 0) == mto::kInf);
    CHECK(back.results[0].tasks[0].obj[2](0, 0) == -mto::kInf);
    CHECK(mto::deep_equal(back, d));
}

TEST_CASE("deep equality treats NaN cells as equal and flags real differences") {
    auto a = make_fixture(2400);
    auto b = make_fixture(2400);
    CHECK(mto::deep_equal(a, b));

    auto& cell = a.results[a.idx(0, 0, 0)];
    if (cell.failed) {
        cell.failed = false;
        CHECK(!mto::deep_equal(a, b));
    } else {
        cell.tasks[0].obj[0](0, 0) += 1.0;
        CHECK(!mto::deep_equal(a, b));
        cell.tasks[0].obj[0](0, 0) = mto::kNaN;
        CHECK(!mto::deep_equal(a, b));
        b.results[b.idx(0, 0, 0)].tasks[0].obj[0](0, 0) = mto::kNaN;
        CHECK(mto::deep_equal(a, b));
    }

    auto c = make_fixture(2400);
    c.rep_seeds[0] ^= 1;
    CHECK(!mto::deep_equal(c, b));

    auto e = make_fixture(2400);
    e.extra["note"] = "changed";
    CHECK(!mto::deep_equal(e, b));
}

TEST_CASE("validate rejects inconsistent archives") {
    auto d = make_fixture(2500, 2, 2, 2);
    CHECK_NOTHROW(d.validate());

    auto short_results = d;
    short_results.results.pop_back();
    CHECK_THROWS_AS(short_results.validate(), mto::IntegrityError);

    auto bad_seeds = d;
    bad_seeds.rep_seeds.pop_back();
    CHECK_THROWS_AS(bad_seeds.validate(), mto::IntegrityError);

    auto bad_base = d;
    bad_base.base_seeds[0] += 1;
    CHECK_THROWS_AS(bad_base.validate(), mto::IntegrityError);

    auto bad_len = d;
    bad_len.data_length = 0;
    CHECK_THROWS_AS(bad_len.validate(), mto::IntegrityError);

    auto bad_bounds = d;
    bad_bounds.problems[0].tasks[0].lower = Vector::Zero(1);
    CHECK_THROWS_AS(bad_bounds.validate(), mto::IntegrityError);

    auto bad_series = d;
    for (auto& res : bad_series.results)
        if (!res.failed) {
            res.eval_points.push_back(1);
            break;
        }
    CHECK_THROWS_AS(bad_series.validate(), mto::IntegrityError);
}

TEST_CASE("merging reps concatenates runs and seeds in order") {
    auto whole = make_fixture(2600, 2, 2, 4);
    auto parts = mto::split(whole, mto::SplitAxis::Reps, {{0, 1}, {2, 3}});
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].reps == 2);
    CHECK(parts[1].reps == 2);
    CHECK(parts[0].rep_seeds == std::vector<std::uint64_t>{whole.rep_seeds[0], whole.rep_seeds[1]});
    CHECK(parts[1].rep_seeds == std::vector<std::uint64_t>{whole.rep_seeds[2], whole.rep_seeds[3]});

    auto merged = mto::merge_reps(parts[0], parts[1]);
    CHECK(mto::deep_equal(merged, whole));

    // Merging is also defined for unequal rep counts.
    auto uneven = mto::split(whole, mto::SplitAxis::Reps, {{0}});
    auto remerged = mto::merge_reps(uneven[0], uneven[1]);
    CHECK(mto::deep_equal(remerged, whole));
}

TEST_CASE("merging algorithms and problems restores the original archive") {
    auto whole = make_fixture(2700, 3, 3, 2);

    auto by_alg = mto::split(whole, mto::SplitAxis::Algorithms, {{0, 1}});
    REQUIRE(by_alg.size() == 2);
    CHECK(by_alg[0].num_algorithms() == 2);
    CHECK(by_alg[1].num_algorithms() == 1);
    CHECK(by_alg[1].algorithms[0].name == "alg-3");
    CHECK(mto::deep_equal(mto::merge_algorithms(by_alg[0], by_alg[1]), whole));

    auto by_prob = mto::split(whole, mto::SplitAxis::Problems, {{0}, {1, 2}});
    REQUIRE(by_prob.size() == 2);
    CHECK(by_prob[0].num_problems() == 1);
    CHECK(mto::deep_equal(mto::merge_problems(by_prob[0], by_prob[1]), whole));

    // Singleton split and left fold over every axis.
    auto singles = mto::split(whole, mto::SplitAxis::Algorithms);
    REQUIRE(singles.size() == 3);
    auto folded = mto::merge_algorithms(mto::merge_algorithms(singles[0], singles[1]), singles[2]);
    CHECK(mto::deep_equal(folded, whole));
}

TEST_CASE("merge rejects incompatible or colliding archives") {
    auto a = make_fixture(2800, 2, 2, 2);

    auto wrong_len = a;
    wrong_len.data_length = 4;
    for (auto& res : wrong_len.results) {
        if (res.failed) continue;
        res.eval_points.push_back(2000);
        for (auto& s : res.tasks) {
            s.obj.push_back(s.obj.back());
            s.cv.push_back(s.cv.back());
            if (!s.dec.empty()) s.dec.push_back(s.dec.back());
        }
    }
    CHECK_THROWS_WITH_AS(mto::merge_reps(a, wrong_len), "archives are incompatible: field 'data_length' differs",
                         mto::MergeError);

    auto wrong_dec = a;
    wrong_dec.save_dec = false;
    for (auto& res : wrong_dec.results)
        for (auto& s : res.tasks) s.dec.clear();
    CHECK_THROWS_WITH_AS(mto::merge_reps(a, wrong_dec), "archives are incompatible: field 'save_dec' differs",
                         mto::MergeError);

    auto wrong_algs = a;
    wrong_algs.algorithms[0].params.define("pc", 0.99);
    CHECK_THROWS_WITH_AS(mto::merge_reps(a, wrong_algs), "archives are incompatible: field 'algorithms' differs",
                         mto::MergeError);

    auto wrong_seeds = a;
    wrong_seeds.rep_seeds[1] += 7;
    CHECK_THROWS_WITH_AS(mto::merge_algorithms(a, wrong_seeds), "archives are incompatible: field 'rep_seeds' differs",
                         mto::MergeError);

    // Same-name collisions on the joined axis.
    CHECK_THROWS_WITH_AS(mto::merge_algorithms(a, a), "duplicate algorithm name in merge: alg-1", mto::MergeError);
    CHECK_THROWS_WITH_AS(mto::merge_problems(a, a), "duplicate problem name in merge: prob-1", mto::MergeError);

    // Problem merges need identical algorithm columns.
    auto renamed = a;
    renamed.algorithms[1].name = "alg-x";
    CHECK_THROWS_WITH_AS(mto::merge_problems(a, renamed), "archives are incompatible: field 'algorithms' differs",
                         mto::MergeError);
}

TEST_CASE("merge and split drop cached metrics") {
    auto d = make_fixture(2900, 2, 2, 2, true, true, true);
    REQUIRE(!d.metrics.empty());

    auto parts = mto::split(d, mto::SplitAxis::Reps, {{0}});
    for (const auto& part : parts) CHECK(part.metrics.empty());

    auto halves = mto::split(d, mto::SplitAxis::Problems, {{0}});
    CHECK(mto::merge_problems(halves[0], halves[1]).metrics.empty());

    CHECK(mto::set_precision(d, 3).metrics.empty());
}

TEST_CASE("split validates its groups") {
    auto d = make_fixture(3000, 2, 3, 2);

    CHECK_THROWS_WITH_AS(mto::split(d, mto::SplitAxis::Algorithms, {{0}, {}}), "split groups must not be empty",
                         mto::ConfigError);
    CHECK_THROWS_WITH_AS(mto::split(d, mto::SplitAxis::Algorithms, {{0, 3}}), "split index out of range: 3",
                         mto::ConfigError);
    CHECK_THROWS_WITH_AS(mto::split(d, mto::SplitAxis::Algorithms, {{0, 1}, {1}}), "split index listed twice: 1",
                         mto::ConfigError);

    // Explicit groups that cover everything leave no complement part.
    auto exact = mto::split(d, mto::SplitAxis::Problems, {{1}, {0}});
    REQUIRE(exact.size() == 2);
    CHECK(exact[0].problems[0].name == "prob-2");
    CHECK(exact[1].problems[0].name == "prob-1");

    CHECK(mto::parse_split_axis("reps") == mto::SplitAxis::Reps);
    CHECK(mto::parse_split_axis("algorithms") == mto::SplitAxis::Algorithms);
    CHECK(mto::parse_split_axis("problems") == mto::SplitAxis::Problems);
    CHECK_THROWS_AS(mto::parse_split_axis("tasks"), mto::ConfigError);
}

TEST_CASE("set precision rounds measurements half away from zero") {
    auto d = make_fixture(3100, 1, 1, 1, true, false, false);
    auto& res = d.results[0];
    if (res.failed) {
        res.failed = false;
        res.error.clear();
        res.eval_points = {100, 550, 1000};
        res.tasks.clear();
        mto::Rng rng(7);
        for (const auto& task : d.problems[0].tasks)
            res.tasks.push_back(make_series(rng, d.data_length, task.dim, task.num_objectives > 1, true, false));
    }
    auto& series = res.tasks[0];
    series.obj[0](0, 0) = 1.2345;
    series.obj[1](0, 0) = -1.25;
    series.obj[2](0, 0) = mto::kInf;
    series.cv[0][0] = 0.0049999;
    series.cv[1][0] = mto::kNaN;
    double dec_before = series.dec.empty() ? 0.0 : series.dec[0](0, 0);
    d.run_times[0] = 0.9951;
    res.wall_time = 0.9951;

    auto rounded = mto::set_precision(d, 2);
    const auto& r = rounded.results[0].tasks[0];
    CHECK(r.obj[0](0, 0) == 1.23);
    CHECK(r.obj[1](0, 0) == -1.25);
    CHECK(r.obj[2](0, 0) == mto::kInf);
    CHECK(r.cv[0][0] == 0.0);
    CHECK(std::isnan(r.cv[1][0]));
    CHECK(rounded.run_times[0] == 1.0);
    CHECK(rounded.results[0].wall_time == 1.0);

    auto one_digit = mto::set_precision(d, 1);
    CHECK(one_digit.results[0].tasks[0].obj[1](0, 0) == -1.3);

    // Decision vectors, seeds, and problem metadata keep full precision.
    if (!series.dec.empty()) CHECK(rounded.results[0].tasks[0].dec[0](0, 0) == dec_before);
    CHECK(rounded.rep_seeds == d.rep_seeds);
    CHECK(rounded.problems[0].tasks[0].optimum.decision.value()[0] == 0.25);

    // Idempotent at a fixed precision.
    auto twice = mto::set_precision(rounded, 2);
    CHECK(mto::deep_equal(twice, rounded));
}

TEST_CASE("randomized merge split and save load round trips hold together") {
    mto::Rng rng(3200);
    for (int trial = 0; trial < 20; ++trial) {
        int P = 1 + rng.uniform_int(3);
        int A = 1 + rng.uniform_int(3);
        int R = 1 + rng.uniform_int(4);
        auto d = make_fixture(4000 + static_cast<std::uint64_t>(trial), P, A, R, trial % 2 == 0, trial % 3 == 0,
                              false);

        mto::SplitAxis axis = trial % 3 == 0   ? mto::SplitAxis::Reps
                              : trial % 3 == 1 ? mto::SplitAxis::Algorithms
                                               : mto::SplitAxis::Problems;
        int n = axis == mto::SplitAxis::Reps ? R : axis == mto::SplitAxis::Algorithms ? A : P;
        auto parts = mto::split(d, axis);
        REQUIRE(static_cast<int>(parts.size()) == n);
        auto acc = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) {
            acc = axis == mto::SplitAxis::Reps         ? mto::merge_reps(acc, parts[i])
                  : axis == mto::SplitAxis::Algorithms ? mto::merge_algorithms(acc, parts[i])
                                                       : mto::merge_problems(acc, parts[i]);
        }
        CHECK(mto::deep_equal(acc, d));

        std::string path = tmp().file("trial-" + std::to_string(trial) + (trial % 2 == 0 ? ".json" : ".json.gz"));
        mto::save(d, path);
        CHECK(mto::deep_equal(mto::load(path), d));
    }
}
