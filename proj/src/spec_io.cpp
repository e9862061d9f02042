#include "wickflow/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wickflow::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SpecParseError("problem spec: " + msg); }

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number()) fail("missing numeric field '" + key + "'");
    return j[key].get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer()) fail("missing integer field '" + key + "'");
    return j[key].get<int>();
}

std::string require_string(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string()) fail("missing string field '" + key + "'");
    return j[key].get<std::string>();
}

SpatialOperator parse_operator(const json& j) {
    std::string preset = require_string(j, "preset");
    if (preset.rfind("scaled:", 0) == 0) {
        std::string profile = preset.substr(7);
        if (!j.contains("base") || !j["base"].is_object()) fail("scaled operator needs a 'base' object");
        SpatialOperator base = parse_operator(j["base"]);
        if (base.time_dependent()) fail("scaled operator base must be autonomous");
        double amplitude = j.contains("amplitude") ? require_number(j, "amplitude") : 1.0;
        double omega = j.contains("omega") ? require_number(j, "omega") : 1.0;
        std::function<double(double)> fn;
        if (profile == "sin")
            fn = [amplitude, omega](double t) { return amplitude * std::sin(omega * t); };
        else if (profile == "cos")
            fn = [amplitude, omega](double t) { return amplitude * std::cos(omega * t); };
        else if (profile == "linear")
            fn = [amplitude](double t) { return amplitude * t; };
        else if (profile == "const")
            fn = [amplitude](double) { return amplitude; };
        else
            fail("unknown scale profile '" + profile + "' (sin, cos, linear, const)");
        return scaled_operator(std::move(base), std::move(fn), profile);
    }
    if (preset == "laplacian1d") {
        int M = require_int(j, "M");
        double L = require_number(j, "L");
        if (M < 2 || L <= 0.0) fail("laplacian1d needs M >= 2 and L > 0");
        return laplacian_1d(M, L);
    }
    if (preset == "scalar") return scalar_operator(require_number(j, "value"));
    if (preset == "diagonal") {
        if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
            fail("diagonal operator needs a non-empty 'values' array");
        Eigen::VectorXd d(j["values"].size());
        for (std::size_t i = 0; i < j["values"].size(); ++i) {
            if (!j["values"][i].is_number()) fail("diagonal values must be numbers");
            d[static_cast<Eigen::Index>(i)] = j["values"][i].get<double>();
        }
        return diagonal_operator(d);
    }
    fail("unknown operator preset '" + preset + "'");
}

struct GridInfo {
    int M = 1;
    double L = 0.0;  // 0 when the operator carries no spatial extent
};

Eigen::VectorXd parse_spatial(const json& j, const GridInfo& grid) {
    std::string kind = require_string(j, "kind");
    if (kind == "const") {
        return Eigen::VectorXd::Constant(grid.M, require_number(j, "value"));
    }
    if (kind == "sine") {
        if (grid.L <= 0.0) fail("'sine' spatial profiles need the laplacian1d operator");
        int mode = require_int(j, "mode");
        double amplitude = require_number(j, "amplitude");
        if (mode < 1) fail("sine mode must be >= 1");
        Eigen::VectorXd v(grid.M);
        const double h = grid.L / (grid.M + 1);
        for (int i = 0; i < grid.M; ++i) v[i] = amplitude * std::sin(mode * M_PI * (i + 1) * h / grid.L);
        return v;
    }
    if (kind == "values") {
        if (!j.contains("values") || !j["values"].is_array() ||
            j["values"].size() != static_cast<std::size_t>(grid.M))
            fail("'values' spatial profile needs exactly M numbers");
        Eigen::VectorXd v(grid.M);
        for (int i = 0; i < grid.M; ++i) {
            if (!j["values"][static_cast<std::size_t>(i)].is_number()) fail("spatial values must be numbers");
            v[i] = j["values"][static_cast<std::size_t>(i)].get<double>();
        }
        return v;
    }
    fail("unknown spatial kind '" + kind + "' (const, sine, values)");
}

std::function<double(double)> parse_time_profile(const json& j) {
    std::string kind = require_string(j, "kind");
    if (kind == "const") {
        double v = require_number(j, "value");
        return [v](double) { return v; };
    }
    if (kind == "sin") {
        double amplitude = require_number(j, "amplitude");
        double omega = j.contains("omega") ? require_number(j, "omega") : 1.0;
        double phase = j.contains("phase") ? require_number(j, "phase") : 0.0;
        return [amplitude, omega, phase](double t) { return amplitude * std::sin(omega * t + phase); };
    }
    if (kind == "samples") {
        SampledScalar s;
        s.t0 = require_number(j, "t0");
        s.dt = require_number(j, "dt");
        if (s.dt <= 0.0) fail("sampled time profile needs dt > 0");
        if (!j.contains("values") || !j["values"].is_array() || j["values"].size() < 2)
            fail("sampled time profile needs >= 2 values");
        for (const auto& v : j["values"]) {
            if (!v.is_number()) fail("sampled values must be numbers");
            s.values.push_back(v.get<double>());
        }
        return [s](double t) { return s(t); };
    }
    fail("unknown time kind '" + kind + "' (const, sin, samples)");
}

MultiIndex parse_alpha(const json& j) {
    if (!j.is_string()) fail("'alpha' must be a string like \"1^2 3^1\" or \"0\"");
    try {
        return MultiIndex::decode(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

Forcing parse_forcing(const json& j, const GridInfo& grid, const Truncation& trunc) {
    std::string preset = require_string(j, "preset");
    double amplitude = j.contains("amplitude") ? require_number(j, "amplitude") : 1.0;
    if (preset == "zero") return Forcing::zero();
    if (preset == "white-noise") return Forcing::white_noise(amplitude);
    if (preset == "brownian") return Forcing::brownian(amplitude);
    if (preset == "table" || preset == "deterministic") {
        if (!j.contains("entries") || !j["entries"].is_array()) fail("table forcing needs 'entries'");
        std::map<MultiIndex, Forcing::ModeFn, GrlexLess> modes;
        for (const auto& entry : j["entries"]) {
            MultiIndex alpha =
                entry.contains("alpha") ? parse_alpha(entry["alpha"]) : MultiIndex::zero();
            if (!trunc.contains(alpha))
                fail("forcing entry " + alpha.encode() + " lies outside the truncation");
            if (!entry.contains("time") || !entry.contains("spatial"))
                fail("forcing entries need 'time' and 'spatial'");
            auto time_fn = parse_time_profile(entry["time"]);
            Eigen::VectorXd spatial = parse_spatial(entry["spatial"], grid);
            if (modes.count(alpha)) fail("duplicate forcing entry for " + alpha.encode());
            modes.emplace(alpha, [time_fn, spatial](double t, int dof) -> Eigen::VectorXd {
                if (spatial.size() != dof) throw std::invalid_argument("forcing grid size mismatch");
                return time_fn(t) * spatial;
            });
        }
        return Forcing::table(std::move(modes));
    }
    fail("unknown forcing preset '" + preset + "' (zero, white-noise, brownian, table)");
}

ProblemSpec parse_spec_json(const json& root, const SpecOverrides& overrides) {
    if (!root.is_object()) fail("top level must be a JSON object");
    for (const char* key : {"operator", "trunc", "time", "initial", "forcing"})
        if (!root.contains(key)) fail(std::string("missing section '") + key + "'");

    ProblemSpec spec;
    spec.op = parse_operator(root["operator"]);

    GridInfo grid;
    grid.M = spec.op.dof;
    if (spec.op.preset.find("laplacian1d") != std::string::npos && root["operator"].contains("L"))
        grid.L = root["operator"]["L"].get<double>();
    else if (root["operator"].contains("base") && root["operator"]["base"].contains("L"))
        grid.L = root["operator"]["base"]["L"].get<double>();

    if (root.contains("poly")) {
        const json& jp = root["poly"];
        if (!jp.is_object() || !jp.contains("coeffs") || !jp["coeffs"].is_array())
            fail("'poly' needs a 'coeffs' array");
        std::vector<double> coeffs;
        for (const auto& v : jp["coeffs"]) {
            if (!v.is_number()) fail("polynomial coefficients must be numbers");
            coeffs.push_back(v.get<double>());
        }
        if (!coeffs.empty()) {
            try {
                spec.poly = WickPolynomial(std::move(coeffs));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
    }

    spec.trunc.max_position = require_int(root["trunc"], "K");
    spec.trunc.max_order = require_int(root["trunc"], "P");
    if (overrides.trunc_K > 0) spec.trunc.max_position = overrides.trunc_K;
    if (overrides.trunc_P >= 0) spec.trunc.max_order = overrides.trunc_P;
    if (spec.trunc.max_position < 1 || spec.trunc.max_order < 0) fail("truncation needs K >= 1, P >= 0");

    spec.horizon = require_number(root["time"], "T");
    spec.steps = require_int(root["time"], "steps");
    if (overrides.steps > 0) spec.steps = overrides.steps;
    if (spec.horizon <= 0.0 || spec.steps < 1) fail("time section needs T > 0, steps >= 1");

    spec.initial = ChaosField::zeros(spec.trunc, spec.op.dof);
    const json& ji = root["initial"];
    if (!ji.is_object() || !ji.contains("modes") || !ji["modes"].is_array())
        fail("'initial' needs a 'modes' array");
    for (const auto& entry : ji["modes"]) {
        MultiIndex alpha = entry.contains("alpha") ? parse_alpha(entry["alpha"]) : MultiIndex::zero();
        if (!spec.trunc.contains(alpha))
            fail("initial mode " + alpha.encode() + " lies outside the truncation");
        if (!entry.contains("spatial")) fail("initial modes need a 'spatial' profile");
        if (spec.initial.coeffs.count(alpha)) fail("duplicate initial mode " + alpha.encode());
        spec.initial.set(alpha, parse_spatial(entry["spatial"], grid));
    }

    spec.forcing = parse_forcing(root["forcing"], grid, spec.trunc);

    if (root.contains("blow_up_cap")) {
        if (!root["blow_up_cap"].is_number()) fail("'blow_up_cap' must be a number");
        spec.blow_up_cap = root["blow_up_cap"].get<double>();
    }

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return spec;
}

}  // namespace

ProblemSpec parse_problem_spec_text(const std::string& text, const SpecOverrides& overrides) {
    json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded()) fail("invalid JSON");
    try {
        return parse_spec_json(root, overrides);
    } catch (const json::exception& e) {
        fail(e.what());
    }
}

ProblemSpec parse_problem_spec_file(const std::filesystem::path& path, const SpecOverrides& overrides) {
    std::ifstream is(path);
    if (!is) fail("cannot open " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_problem_spec_text(buf.str(), overrides);
}

}  // namespace wickflow::io
