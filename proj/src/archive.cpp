#include "mto/archive.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <zlib.h>

namespace mto {

namespace {

using nlohmann::json;

// Non-finite doubles have no JSON literal; they travel as strings.
json encode_value(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "NaN";
    return v > 0 ? "Infinity" : "-Infinity";
}

double decode_value(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "NaN") return kNaN;
        if (s == "Infinity") return kInf;
        if (s == "-Infinity") return -kInf;
    }
    throw IntegrityError("archive holds a malformed numeric value");
}

json encode_tensor(const std::vector<Eigen::Index>& shape, const double* data, std::size_t n) {
    json out;
    out["shape"] = json::array();
    for (auto s : shape) out["shape"].push_back(s);
    json flat = json::array();
    for (std::size_t i = 0; i < n; ++i) flat.push_back(encode_value(data[i]));
    out["data"] = std::move(flat);
    return out;
}

std::vector<double> decode_tensor(const json& j, std::vector<Eigen::Index>& shape) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
        throw IntegrityError("archive tensor is missing shape or data");
    shape.clear();
    std::size_t expect = 1;
    for (const auto& s : j.at("shape")) {
        shape.push_back(s.get<Eigen::Index>());
        expect *= static_cast<std::size_t>(shape.back());
    }
    const json& flat = j.at("data");
    if (!flat.is_array() || flat.size() != expect)
        throw IntegrityError("archive tensor data disagrees with its shape");
    std::vector<double> out;
    out.reserve(expect);
    for (const auto& v : flat) out.push_back(decode_value(v));
    return out;
}

// Matrices serialize row-major regardless of Eigen's internal layout.
json encode_matrix(const Matrix& m) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    return encode_tensor({m.rows(), m.cols()}, flat.data(), flat.size());
}

Matrix decode_matrix(const json& j) {
    std::vector<Eigen::Index> shape;
    auto flat = decode_tensor(j, shape);
    if (shape.size() != 2) throw IntegrityError("archive matrix must have two dimensions");
    Matrix m(shape[0], shape[1]);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat[i++];
    return m;
}

json encode_vector(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode_value(v[i]));
    return out;
}

Vector decode_vector(const json& j) {
    if (!j.is_array()) throw IntegrityError("archive vector must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& x : j) v[i++] = decode_value(x);
    return v;
}

json encode_params(const Params& p) {
    json out = json::object();
    for (const auto& [k, v] : p.items()) out[k] = v;
    return out;
}

Params decode_params(const json& j) {
    Params p;
    if (!j.is_object()) throw IntegrityError("algorithm params must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) p.define(it.key(), it.value().get<double>());
    return p;
}

json encode_optimum(const OptimumData& o) {
    json out = json::object();
    if (o.value) out["value"] = encode_value(*o.value);
    if (o.decision) out["decision"] = encode_vector(*o.decision);
    if (o.front) out["front"] = encode_matrix(*o.front);
    if (o.ref_point) out["ref_point"] = encode_vector(*o.ref_point);
    return out;
}

OptimumData decode_optimum(const json& j) {
    OptimumData o;
    if (j.contains("value")) o.value = decode_value(j.at("value"));
    if (j.contains("decision")) o.decision = decode_vector(j.at("decision"));
    if (j.contains("front")) o.front = decode_matrix(j.at("front"));
    if (j.contains("ref_point")) o.ref_point = decode_vector(j.at("ref_point"));
    return o;
}

json encode_series(const TaskSeries& s, bool save_dec) {
    json out;
    int g = static_cast<int>(s.obj.size());
    if (!s.multi) {
        out["kind"] = "single";
        std::vector<double> obj(static_cast<std::size_t>(g)), cv(static_cast<std::size_t>(g));
        for (int i = 0; i < g; ++i) {
            obj[static_cast<std::size_t>(i)] = s.obj[static_cast<std::size_t>(i)](0, 0);
            cv[static_cast<std::size_t>(i)] = s.cv[static_cast<std::size_t>(i)][0];
        }
        out["obj"] = encode_tensor({g}, obj.data(), obj.size());
        out["cv"] = encode_tensor({g}, cv.data(), cv.size());
        if (save_dec && !s.dec.empty()) {
            Eigen::Index d = s.dec[0].cols();
            std::vector<double> dec;
            dec.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(d));
            for (int i = 0; i < g; ++i)
                for (Eigen::Index c = 0; c < d; ++c) dec.push_back(s.dec[static_cast<std::size_t>(i)](0, c));
            out["dec"] = encode_tensor({g, d}, dec.data(), dec.size());
        }
        return out;
    }
    out["kind"] = "multi";
    Eigen::Index n = g > 0 ? s.obj[0].rows() : 0;
    Eigen::Index m = g > 0 ? s.obj[0].cols() : 0;
    std::vector<double> obj, cv;
    obj.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    cv.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(n));
    for (int i = 0; i < g; ++i) {
        const Matrix& mat = s.obj[static_cast<std::size_t>(i)];
        if (mat.rows() != n || mat.cols() != m)
            throw IntegrityError("multi-objective series must keep one population shape");
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < m; ++c) obj.push_back(mat(r, c));
        for (Eigen::Index r = 0; r < n; ++r) cv.push_back(s.cv[static_cast<std::size_t>(i)][r]);
    }
    out["obj"] = encode_tensor({g, n, m}, obj.data(), obj.size());
    out["cv"] = encode_tensor({g, n}, cv.data(), cv.size());
    if (save_dec && !s.dec.empty()) {
        Eigen::Index d = s.dec[0].cols();
        std::vector<double> dec;
        dec.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (int i = 0; i < g; ++i)
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < d; ++c) dec.push_back(s.dec[static_cast<std::size_t>(i)](r, c));
        out["dec"] = encode_tensor({g, n, d}, dec.data(), dec.size());
    }
    return out;
}

TaskSeries decode_series(const json& j) {
    TaskSeries s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "single" && kind != "multi") throw IntegrityError("unknown task series kind: " + kind);
    s.multi = kind == "multi";
    std::vector<Eigen::Index> shape;
    auto obj = decode_tensor(j.at("obj"), shape);
    if (!s.multi) {
        if (shape.size() != 1) throw IntegrityError("single-objective obj series must be one-dimensional");
        Eigen::Index g = shape[0];
        std::vector<Eigen::Index> cv_shape;
        auto cv = decode_tensor(j.at("cv"), cv_shape);
        if (cv_shape.size() != 1 || cv_shape[0] != g) throw IntegrityError("cv series length mismatch");
        for (Eigen::Index i = 0; i < g; ++i) {
            s.obj.push_back(Matrix::Constant(1, 1, obj[static_cast<std::size_t>(i)]));
            s.cv.push_back(Vector::Constant(1, cv[static_cast<std::size_t>(i)]));
        }
        if (j.contains("dec")) {
            std::vector<Eigen::Index> ds;
            auto dec = decode_tensor(j.at("dec"), ds);
            if (ds.size() != 2 || ds[0] != g) throw IntegrityError("dec series shape mismatch");
            for (Eigen::Index i = 0; i < g; ++i) {
                Matrix row(1, ds[1]);
                for (Eigen::Index c = 0; c < ds[1]; ++c)
                    row(0, c) = dec[static_cast<std::size_t>(i * ds[1] + c)];
                s.dec.push_back(std::move(row));
            }
        }
        return s;
    }
    if (shape.size() != 3) throw IntegrityError("multi-objective obj series must be three-dimensional");
    Eigen::Index g = shape[0], n = shape[1], m = shape[2];
    std::vector<Eigen::Index> cv_shape;
    auto cv = decode_tensor(j.at("cv"), cv_shape);
    if (cv_shape.size() != 2 || cv_shape[0] != g || cv_shape[1] != n)
        throw IntegrityError("cv series shape mismatch");
    for (Eigen::Index i = 0; i < g; ++i) {
        Matrix mat(n, m);
        Vector cvec(n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) mat(r, c) = obj[static_cast<std::size_t>((i * n + r) * m + c)];
            cvec[r] = cv[static_cast<std::size_t>(i * n + r)];
        }
        s.obj.push_back(std::move(mat));
        s.cv.push_back(std::move(cvec));
    }
    if (j.contains("dec")) {
        std::vector<Eigen::Index> ds;
        auto dec = decode_tensor(j.at("dec"), ds);
        if (ds.size() != 3 || ds[0] != g || ds[1] != n) throw IntegrityError("dec series shape mismatch");
        for (Eigen::Index i = 0; i < g; ++i) {
            Matrix mat(n, ds[2]);
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < ds[2]; ++c)
                    mat(r, c) = dec[static_cast<std::size_t>((i * n + r) * ds[2] + c)];
            s.dec.push_back(std::move(mat));
        }
    }
    return s;
}

json encode_result(const RunResult& r, bool save_dec) {
    json out;
    out["eval_points"] = r.eval_points;
    out["nonfinite_evals"] = r.nonfinite_evals;
    out["failed"] = r.failed;
    out["error"] = r.error;
    json tasks = json::array();
    for (const auto& t : r.tasks) tasks.push_back(encode_series(t, save_dec));
    out["tasks"] = std::move(tasks);
    return out;
}

RunResult decode_result(const json& j) {
    RunResult r;
    r.eval_points = j.at("eval_points").get<std::vector<long long>>();
    r.nonfinite_evals = j.value("nonfinite_evals", 0LL);
    r.failed = j.value("failed", false);
    r.error = j.value("error", std::string{});
    for (const auto& t : j.at("tasks")) r.tasks.push_back(decode_series(t));
    return r;
}

json encode_tensor3(const Tensor3& t) { return encode_tensor({t.d0, t.d1, t.d2}, t.v.data(), t.v.size()); }

Tensor3 decode_tensor3(const json& j) {
    std::vector<Eigen::Index> shape;
    auto flat = decode_tensor(j, shape);
    if (shape.size() != 3) throw IntegrityError("expected a three-dimensional tensor");
    Tensor3 t(static_cast<int>(shape[0]), static_cast<int>(shape[1]), static_cast<int>(shape[2]));
    t.v = std::move(flat);
    return t;
}

json encode_tensor4(const Tensor4& t) { return encode_tensor({t.d0, t.d1, t.d2, t.d3}, t.v.data(), t.v.size()); }

Tensor4 decode_tensor4(const json& j) {
    std::vector<Eigen::Index> shape;
    auto flat = decode_tensor(j, shape);
    if (shape.size() != 4) throw IntegrityError("expected a four-dimensional tensor");
    Tensor4 t(static_cast<int>(shape[0]), static_cast<int>(shape[1]), static_cast<int>(shape[2]),
              static_cast<int>(shape[3]));
    t.v = std::move(flat);
    return t;
}

json encode_metric(const MetricResult& m) {
    json out;
    out["orientation"] = m.orientation == MetricResult::Orientation::Min ? "min" : "max";
    out["row_names"] = m.row_names;
    out["column_names"] = m.column_names;
    out["table"] = encode_tensor3(m.table);
    if (m.converge) {
        out["converge"] = encode_tensor4(*m.converge);
        out["converge_evals"] = encode_matrix(m.converge_evals);
    }
    if (!m.pareto.empty()) {
        json sets = json::array();
        for (const auto& set : m.pareto) sets.push_back(encode_matrix(set));
        out["pareto"] = std::move(sets);
    }
    return out;
}

MetricResult decode_metric(const json& j) {
    MetricResult m;
    const std::string o = j.at("orientation").get<std::string>();
    if (o == "min")
        m.orientation = MetricResult::Orientation::Min;
    else if (o == "max")
        m.orientation = MetricResult::Orientation::Max;
    else
        throw IntegrityError("unknown metric orientation: " + o);
    m.row_names = j.at("row_names").get<std::vector<std::string>>();
    m.column_names = j.at("column_names").get<std::vector<std::string>>();
    m.table = decode_tensor3(j.at("table"));
    if (j.contains("converge")) {
        m.converge = decode_tensor4(j.at("converge"));
        m.converge_evals = decode_matrix(j.at("converge_evals"));
    }
    if (j.contains("pareto"))
        for (const auto& set : j.at("pareto")) m.pareto.push_back(decode_matrix(set));
    m.validate();
    return m;
}

const char* const kKnownKeys[] = {"schema_version", "rng",      "reps",      "data_length", "save_dec",
                                  "base_seed",      "base_seeds", "rep_seeds", "algorithms",  "problems",
                                  "results",        "run_times", "metrics"};

bool is_known_key(const std::string& k) {
    for (const char* known : kKnownKeys)
        if (k == known) return true;
    return false;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IntegrityError("cannot open archive: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

std::string gunzip_file(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw IntegrityError("cannot open archive: " + path);
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
    bool bad = n < 0;
    if (!bad) {
        int err = Z_OK;
        gzerror(f, &err);
        bad = err != Z_OK;
    }
    gzclose(f);
    if (bad) throw IntegrityError("archive is not a valid gzip stream: " + path);
    return out;
}

} // namespace

std::size_t ExperimentData::idx(int p, int a, int r) const {
    if (p < 0 || p >= num_problems() || a < 0 || a >= num_algorithms() || r < 0 || r >= reps)
        throw DimensionError("archive cell index out of range");
    return (static_cast<std::size_t>(p) * static_cast<std::size_t>(num_algorithms()) + static_cast<std::size_t>(a)) *
               static_cast<std::size_t>(reps) +
           static_cast<std::size_t>(r);
}

void ExperimentData::validate() const {
    if (reps < 0) throw IntegrityError("negative rep count");
    if (data_length < 1) throw IntegrityError("data_length must be at least 1");
    std::size_t cells = static_cast<std::size_t>(num_problems()) * static_cast<std::size_t>(num_algorithms()) *
                        static_cast<std::size_t>(reps);
    if (results.size() != cells) throw IntegrityError("results block disagrees with the P x A x R shape");
    if (run_times.size() != cells) throw IntegrityError("run_times block disagrees with the P x A x R shape");
    if (rep_seeds.size() != static_cast<std::size_t>(reps)) throw IntegrityError("one seed per rep required");
    if (base_seeds.size() != static_cast<std::size_t>(reps))
        throw IntegrityError("one base seed per rep required");
    if (reps > 0 && base_seeds.front() != base_seed)
        throw IntegrityError("base_seed must match the first rep's base seed");
    for (const auto& prob : problems) {
        if (prob.tasks.empty()) throw IntegrityError("problem without tasks: " + prob.name);
        for (const auto& t : prob.tasks)
            if (t.lower.size() != t.dim || t.upper.size() != t.dim)
                throw IntegrityError("task bounds disagree with its dimension in " + prob.name);
    }
    for (int p = 0; p < num_problems(); ++p) {
        const ProblemRecord& prob = problems[static_cast<std::size_t>(p)];
        for (int a = 0; a < num_algorithms(); ++a) {
            for (int r = 0; r < reps; ++r) {
                const RunResult& res = results[idx(p, a, r)];
                if (res.failed) continue;
                if (static_cast<int>(res.tasks.size()) != prob.num_tasks())
                    throw IntegrityError("run task count disagrees with its problem");
                if (static_cast<int>(res.eval_points.size()) != data_length)
                    throw IntegrityError("run eval_points length disagrees with data_length");
                for (const auto& series : res.tasks) {
                    if (static_cast<int>(series.obj.size()) != data_length ||
                        static_cast<int>(series.cv.size()) != data_length)
                        throw IntegrityError("run series length disagrees with data_length");
                    if (!series.dec.empty() && static_cast<int>(series.dec.size()) != data_length)
                        throw IntegrityError("run dec series length disagrees with data_length");
                }
            }
        }
    }
    for (const auto& [name, metric] : metrics) metric.validate();
}

std::string serialize(const ExperimentData& data) {
    data.validate();
    json out = data.extra.is_object() ? data.extra : json::object();
    out["schema_version"] = data.schema_version;
    out["rng"] = data.rng_id;
    out["reps"] = data.reps;
    out["data_length"] = data.data_length;
    out["save_dec"] = data.save_dec;
    out["base_seed"] = data.base_seed;
    out["base_seeds"] = data.base_seeds;
    out["rep_seeds"] = data.rep_seeds;
    json algs = json::array();
    for (const auto& a : data.algorithms) algs.push_back({{"name", a.name}, {"params", encode_params(a.params)}});
    out["algorithms"] = std::move(algs);
    json probs = json::array();
    for (const auto& p : data.problems) {
        json tasks = json::array();
        for (const auto& t : p.tasks)
            tasks.push_back({{"dim", t.dim},
                             {"num_objectives", t.num_objectives},
                             {"lower", encode_vector(t.lower)},
                             {"upper", encode_vector(t.upper)},
                             {"optimum", encode_optimum(t.optimum)}});
        probs.push_back(
            {{"name", p.name}, {"max_fe", p.max_fe}, {"pop_size", p.pop_size}, {"tasks", std::move(tasks)}});
    }
    out["problems"] = std::move(probs);
    json results = json::array();
    for (const auto& r : data.results) results.push_back(encode_result(r, data.save_dec));
    out["results"] = std::move(results);
    json times = json::array();
    for (double t : data.run_times) times.push_back(encode_value(t));
    out["run_times"] = std::move(times);
    json metrics = json::object();
    for (const auto& [name, metric] : data.metrics) metrics[name] = encode_metric(metric);
    out["metrics"] = std::move(metrics);
    return out.dump();
}

ExperimentData deserialize(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IntegrityError(std::string("archive is not valid JSON: ") + e.what());
    }
    if (!in.is_object()) throw IntegrityError("archive root must be a JSON object");
    if (!in.contains("schema_version")) throw SchemaError("archive is missing schema_version");
    ExperimentData data;
    data.schema_version = in.at("schema_version").get<std::string>();
    if (data.schema_version != kSchemaVersion)
        throw SchemaError("unsupported archive schema: " + data.schema_version + " (expected " + kSchemaVersion +
                          ")");
    try {
        data.rng_id = in.value("rng", std::string{});
        data.reps = in.at("reps").get<int>();
        data.data_length = in.at("data_length").get<int>();
        data.save_dec = in.at("save_dec").get<bool>();
        data.base_seed = in.at("base_seed").get<std::uint64_t>();
        data.base_seeds = in.at("base_seeds").get<std::vector<std::uint64_t>>();
        data.rep_seeds = in.at("rep_seeds").get<std::vector<std::uint64_t>>();
        for (const auto& a : in.at("algorithms")) {
            AlgorithmRecord rec;
            rec.name = a.at("name").get<std::string>();
            rec.params = decode_params(a.at("params"));
            data.algorithms.push_back(std::move(rec));
        }
        for (const auto& p : in.at("problems")) {
            ProblemRecord rec;
            rec.name = p.at("name").get<std::string>();
            rec.max_fe = p.at("max_fe").get<long long>();
            rec.pop_size = p.at("pop_size").get<int>();
            for (const auto& t : p.at("tasks")) {
                TaskRecord task;
                task.dim = t.at("dim").get<int>();
                task.num_objectives = t.at("num_objectives").get<int>();
                task.lower = decode_vector(t.at("lower"));
                task.upper = decode_vector(t.at("upper"));
                task.optimum = decode_optimum(t.at("optimum"));
                rec.tasks.push_back(std::move(task));
            }
            data.problems.push_back(std::move(rec));
        }
        for (const auto& r : in.at("results")) data.results.push_back(decode_result(r));
        for (const auto& t : in.at("run_times")) data.run_times.push_back(decode_value(t));
        if (in.contains("metrics"))
            for (auto it = in.at("metrics").begin(); it != in.at("metrics").end(); ++it)
                data.metrics[it.key()] = decode_metric(it.value());
    } catch (const json::exception& e) {
        throw IntegrityError(std::string("archive structure is malformed: ") + e.what());
    }
    data.extra = json::object();
    for (auto it = in.begin(); it != in.end(); ++it)
        if (!is_known_key(it.key())) data.extra[it.key()] = it.value();
    // run_times is authoritative for wall time; mirror it into the results.
    if (data.run_times.size() == data.results.size())
        for (std::size_t i = 0; i < data.results.size(); ++i) data.results[i].wall_time = data.run_times[i];
    data.validate();
    return data;
}

void save(const ExperimentData& data, const std::string& path) {
    std::string payload = serialize(data);
    std::string tmp = path + ".tmp";
    bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    try {
        if (gz) {
            gzFile f = gzopen(tmp.c_str(), "wb6");
            if (!f) throw Error("cannot create archive: " + tmp);
            std::size_t off = 0;
            while (off < payload.size()) {
                unsigned chunk = static_cast<unsigned>(std::min<std::size_t>(payload.size() - off, 1u << 24));
                if (gzwrite(f, payload.data() + off, chunk) != static_cast<int>(chunk)) {
                    gzclose(f);
                    throw Error("failed writing archive: " + tmp);
                }
                off += chunk;
            }
            if (gzclose(f) != Z_OK) throw Error("failed closing archive: " + tmp);
        } else {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot create archive: " + tmp);
            out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
            if (!out) throw Error("failed writing archive: " + tmp);
            out.close();
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot move archive into place: " + path);
    } catch (...) {
        std::remove(tmp.c_str());
        throw;
    }
}

ExperimentData load(const std::string& path) {
    std::string bytes = read_file_bytes(path);
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
        static_cast<unsigned char>(bytes[1]) == 0x8b)
        bytes = gunzip_file(path);
    return deserialize(bytes);
}

} // namespace mto
