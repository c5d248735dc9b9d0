#include "irred/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace irred {

namespace {

using json = nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

void dump(const json& j, std::string& out, int level)
{
    const auto pad = [&](int l) { out.append(static_cast<std::size_t>(2 * l), ' '); };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            pad(level + 1);
            out += json(it.key()).dump();
            out += ": ";
            dump(it.value(), out, level + 1);
        }
        out += '\n';
        pad(level);
        out += '}';
        return;
    }
    case json::value_t::array: {
        // Arrays of scalars or of short scalar arrays stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) {
            return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) {
                                           return x.is_primitive();
                                       }));
        });
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += flat ? ", " : ",";
            first = false;
            if (!flat) {
                out += '\n';
                pad(level + 1);
            }
            dump(e, out, level + 1);
        }
        if (!flat && !j.empty()) {
            out += '\n';
            pad(level);
        }
        out += ']';
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_number(v) : "null";
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

std::string dump17(const json& j)
{
    std::string out;
    dump(j, out, 0);
    out += '\n';
    return out;
}

json parse(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

json matrix_json(const Matrix& m)
{
    json j = json::object();
    if (m.rows() == m.cols()) {
        j["dim"] = m.rows();
    } else {
        j["rows"] = m.rows();
        j["cols"] = m.cols();
    }
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    j["entries"] = std::move(entries);
    return j;
}

double as_double(const json& j, const char* what)
{
    if (j.is_null())
        return kInf;
    if (!j.is_number())
        throw FormatError(std::string(what) + " must be a number");
    return j.get<double>();
}

Matrix matrix_from(const json& j)
{
    if (!j.is_object() || !j.contains("entries"))
        throw FormatError("matrix JSON must be an object with \"entries\"");
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (j.contains("dim")) {
        rows = cols = j.at("dim").get<Eigen::Index>();
    } else if (j.contains("rows") && j.contains("cols")) {
        rows = j.at("rows").get<Eigen::Index>();
        cols = j.at("cols").get<Eigen::Index>();
    } else {
        throw FormatError("matrix JSON needs \"dim\" (or \"rows\" and \"cols\")");
    }
    if (rows < 1 || cols < 1)
        throw FormatError("matrix dimensions must be positive");
    const json& entries = j.at("entries");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
        throw FormatError("matrix JSON: expected " + std::to_string(rows * cols) + " entry pairs");

    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c, ++k) {
            const json& e = entries[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw FormatError("matrix JSON: entry " + std::to_string(k) + " must be [re, im]");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

std::string matrix_to_json(const Matrix& m) { return dump17(matrix_json(m)); }

Matrix matrix_from_json(std::string_view text) { return matrix_from(parse(text)); }

CMatrix cmatrix_from_json(std::string_view text) { return CMatrix(matrix_from_json(text)); }

std::string subalgebra_to_json(const SubalgebraSpec& spec)
{
    json j;
    j["label"] = spec.label;
    j["generators"] = json::array();
    for (const auto& g : spec.generators)
        j["generators"].push_back(matrix_json(g.matrix()));
    return dump17(j);
}

SubalgebraSpec subalgebra_from_json(std::string_view text)
{
    const json j = parse(text);
    if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array())
        throw FormatError("subalgebra JSON needs a \"generators\" array");
    SubalgebraSpec spec;
    spec.label = j.value("label", std::string{});
    for (const auto& g : j.at("generators"))
        spec.generators.emplace_back(matrix_from(g));
    if (spec.generators.empty())
        throw FormatError("subalgebra JSON: generators must be nonempty");
    spec.dim();
    return spec;
}

std::string commutant_to_json(const CommutantResult& res, bool with_basis)
{
    json j;
    j["dimension"] = res.dimension;
    j["verdict"] = std::string(to_string(res.verdict));
    j["tol"] = res.tol;
    j["singular_value_margin"] = res.singular_value_margin;
    if (with_basis) {
        j["basis"] = json::array();
        for (const auto& b : res.basis)
            j["basis"].push_back(matrix_json(b.matrix()));
    }
    return dump17(j);
}

std::string trace_to_json(const PerturbationTrace& trace)
{
    json j;
    j["epsilon"] = trace.epsilon;
    j["tol"] = trace.tol;
    j["rng_seed"] = trace.rng_seed;
    j["shortcut"] = trace.shortcut;
    j["delta"] = trace.delta;
    j["bounds"] = {{"t_t1", trace.bounds.t_t1},
                   {"t_t2", trace.bounds.t_t2},
                   {"t2_t3", trace.bounds.t2_t3},
                   {"t_t3", trace.bounds.t_t3}};
    j["certificate"] = {{"dimension", trace.certificate.dimension},
                        {"verdict", std::string(to_string(trace.certificate.verdict))},
                        {"singular_value_margin", trace.certificate.singular_value_margin}};
    if (trace.decomposition) {
        const auto& dec = *trace.decomposition;
        json sizes = json::array();
        for (std::size_t b = 0; b < dec.blocks.count(); ++b)
            sizes.push_back(dec.blocks.size(b));
        j["decomposition"] = {{"outer_reps", dec.outer.reps},
                              {"block_sizes", sizes},
                              {"lambdas", dec.flat_lambdas()},
                              {"etas", dec.flat_etas()}};
    }
    j["T"] = matrix_json(trace.t.matrix());
    j["T1"] = matrix_json(trace.t1.matrix());
    j["T2"] = matrix_json(trace.t2.matrix());
    j["T3"] = matrix_json(trace.t3.matrix());
    return dump17(j);
}

PerturbationTrace trace_from_json(std::string_view text)
{
    const json j = parse(text);
    try {
        PerturbationTrace trace{CMatrix(matrix_from(j.at("T"))),
                                as_double(j.at("epsilon"), "epsilon"),
                                as_double(j.at("tol"), "tol"),
                                j.at("rng_seed").get<std::uint64_t>(),
                                std::nullopt,
                                CMatrix(matrix_from(j.at("T1"))),
                                CMatrix(matrix_from(j.at("T2"))),
                                CMatrix(matrix_from(j.at("T3"))),
                                as_double(j.at("delta"), "delta"),
                                StageBounds{},
                                CommutantResult{},
                                j.value("shortcut", false)};
        const json& b = j.at("bounds");
        trace.bounds = {as_double(b.at("t_t1"), "t_t1"), as_double(b.at("t_t2"), "t_t2"),
                        as_double(b.at("t2_t3"), "t2_t3"), as_double(b.at("t_t3"), "t_t3")};
        const json& c = j.at("certificate");
        trace.certificate.dimension = c.at("dimension").get<int>();
        trace.certificate.tol = trace.tol;
        trace.certificate.singular_value_margin = as_double(c.at("singular_value_margin"), "margin");
        const auto verdict = c.at("verdict").get<std::string>();
        trace.certificate.verdict = verdict == "Irreducible" ? Verdict::Irreducible
                                    : verdict == "Borderline" ? Verdict::Borderline
                                                              : Verdict::Reducible;
        return trace;
    } catch (const json::exception& e) {
        throw FormatError(std::string("trace JSON: ") + e.what());
    }
}

ExperimentConfig config_from_json(std::string_view text)
{
    const json j = parse(text);
    ExperimentConfig cfg;
    try {
        cfg.dim = j.at("dim").get<Eigen::Index>();
        cfg.trials = j.at("trials").get<int>();
        cfg.epsilons = j.at("epsilons").get<std::vector<double>>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
        cfg.tol = j.value("tol", kDefaultTol);
    } catch (const json::exception& e) {
        throw FormatError(std::string("experiment config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << text;
}

} // namespace irred
