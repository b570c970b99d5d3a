#include "cns/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace cns::cli {

using nlohmann::json;

namespace {

/// Object reader that records consumed keys so that leftovers can be reported.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(path_, "expected an object");
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key, bool required) {
        seen_.insert(key);
        auto it = node_.find(key);
        if (it == node_.end()) {
            if (required) throw ConfigError(key_path(key), "missing required key");
            return nullptr;
        }
        return &*it;
    }

    void number(const std::string& key, double& out, bool required = false) {
        if (const json* v = find(key, required)) {
            if (!v->is_number()) throw ConfigError(key_path(key), "expected a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out, bool required = false) {
        if (const json* v = find(key, required)) {
            if (!v->is_number_integer()) throw ConfigError(key_path(key), "expected an integer");
            out = v->get<int>();
        }
    }

    void unsigned_integer(const std::string& key, std::uint64_t& out) {
        if (const json* v = find(key, false)) {
            if (!v->is_number_unsigned()) throw ConfigError(key_path(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key, false)) {
            if (!v->is_boolean()) throw ConfigError(key_path(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out, bool required = false) {
        if (const json* v = find(key, required)) {
            if (!v->is_string()) throw ConfigError(key_path(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    template <class T>
    void list(const std::string& key, std::vector<T>& out) {
        if (const json* v = find(key, false)) {
            if (!v->is_array() || v->empty()) throw ConfigError(key_path(key), "expected a non-empty array");
            std::vector<T> values;
            for (const auto& item : *v) {
                const bool ok = std::is_integral_v<T> ? item.is_number_integer() : item.is_number();
                if (!ok) throw ConfigError(key_path(key), "unexpected element type");
                values.push_back(item.get<T>());
            }
            out = std::move(values);
        }
    }

    /// Sub-object; a missing optional section reads as empty.
    Section child(const std::string& key, bool required = false) {
        static const json empty = json::object();
        const json* v = find(key, required);
        return Section(v ? *v : empty, key_path(key));
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(key_path(it.key()), "unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

void validate_experiment(const ExperimentSettings& e) {
    if (e.kind != "single" && e.kind != "striated-sweep" && e.kind != "uniqueness-pair") {
        throw ConfigError("experiment.kind", "must be single, striated-sweep or uniqueness-pair");
    }
    if (!(e.perturbation >= 0.0)) throw ConfigError("experiment.perturbation", "must be non-negative");
    for (int n : e.sweep_n) {
        if (n < 16 || n % 2 != 0) throw ConfigError("experiment.sweep_n", "entries must be even and at least 16");
    }
    for (double w : e.sweep_widths) {
        if (!(w > 0.0)) throw ConfigError("experiment.sweep_widths", "entries must be positive");
    }
    if (!(e.sweep_radius > 0.0 && 1.95 * e.sweep_radius < 0.5)) {
        throw ConfigError("experiment.sweep_radius", "must lie in (0, 0.5 / 1.95)");
    }
    if (!(e.eta > 0.0 && e.eta <= 1.0)) throw ConfigError("experiment.eta", "must lie in (0, 1]");
    if (e.checkerboard_cells < 1) throw ConfigError("experiment.checkerboard_cells", "must be positive");
}

}  // namespace

Config config_from_json(const json& j) {
    Config c;
    auto& r = c.run;
    Section root(j, "");
    root.string("preset", c.preset);

    Section grid = root.child("grid", true);
    grid.integer("dim", r.dim, true);
    grid.integer("n", r.n, true);
    grid.number("length", r.length);
    grid.finish();

    Section physics = root.child("physics");
    physics.number("mu", r.mu);
    physics.number("lambda", r.lambda);
    physics.finish();

    Section pressure = root.child("pressure", true);
    pressure.string("law", r.law, true);
    pressure.number("a", r.a);
    pressure.number("gamma", r.gamma);
    pressure.number("epsilon", r.epsilon);
    pressure.finish();

    Section time = root.child("time", true);
    time.number("dt", r.dt);
    time.number("cfl", r.cfl);
    time.number("horizon", r.horizon, true);
    time.integer("output_every", r.output_every);
    time.boolean("stop_at_budget_exit", r.stop_at_budget_exit);
    time.number("budget_constant", r.budget_constant);
    time.finish();

    Section diag = root.child("diagnostics");
    diag.number("p", r.exponents.p);
    diag.number("r", r.exponents.r);
    diag.number("weight_exponent", c.weight_exponent);
    diag.finish();

    Section init = root.child("initial");
    auto& ic = r.initial;
    init.string("kind", ic.kind);
    init.number("rho_amplitude", ic.rho_amplitude);
    init.number("w_amplitude", ic.w_amplitude);
    init.number("center_x", ic.center_x);
    init.number("center_y", ic.center_y);
    init.number("center_z", ic.center_z);
    init.number("radius", ic.radius);
    init.number("width_cells", ic.width_cells);
    init.number("omega", ic.omega);
    init.number("inner_radius", ic.inner_radius);
    init.number("outer_radius", ic.outer_radius);
    init.finish();

    Section exp = root.child("experiment");
    auto& e = c.experiment;
    exp.string("kind", e.kind);
    exp.unsigned_integer("seed", e.seed);
    exp.number("perturbation", e.perturbation);
    exp.list("sweep_n", e.sweep_n);
    exp.list("sweep_widths", e.sweep_widths);
    exp.number("sweep_radius", e.sweep_radius);
    exp.number("eta", e.eta);
    exp.integer("checkerboard_cells", e.checkerboard_cells);
    exp.finish();

    root.finish();

    try {
        r.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError("", err.what());
    }
    if (c.weight_exponent < 0.0) throw ConfigError("diagnostics.weight_exponent", "must be non-negative");
    validate_experiment(e);
    return c;
}

Config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError("", std::string("syntax error: ") + err.what());
    }
    return config_from_json(j);
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json config_to_json(const Config& c) {
    const auto& r = c.run;
    const auto& ic = r.initial;
    const auto& e = c.experiment;
    json j;
    if (!c.preset.empty()) j["preset"] = c.preset;
    j["grid"] = {{"dim", r.dim}, {"n", r.n}, {"length", r.length}};
    j["physics"] = {{"mu", r.mu}, {"lambda", r.lambda}};
    j["pressure"] = {{"law", r.law}, {"a", r.a}, {"gamma", r.gamma}, {"epsilon", r.epsilon}};
    j["time"] = {{"dt", r.dt},
                 {"cfl", r.cfl},
                 {"horizon", r.horizon},
                 {"output_every", r.output_every},
                 {"stop_at_budget_exit", r.stop_at_budget_exit},
                 {"budget_constant", r.budget_constant}};
    j["diagnostics"] = {{"p", r.exponents.p}, {"r", r.exponents.r}, {"weight_exponent", c.weight_exponent}};
    j["initial"] = {{"kind", ic.kind},
                    {"rho_amplitude", ic.rho_amplitude},
                    {"w_amplitude", ic.w_amplitude},
                    {"center_x", ic.center_x},
                    {"center_y", ic.center_y},
                    {"center_z", ic.center_z},
                    {"radius", ic.radius},
                    {"width_cells", ic.width_cells},
                    {"omega", ic.omega},
                    {"inner_radius", ic.inner_radius},
                    {"outer_radius", ic.outer_radius}};
    j["experiment"] = {{"kind", e.kind},
                       {"seed", e.seed},
                       {"perturbation", e.perturbation},
                       {"sweep_n", e.sweep_n},
                       {"sweep_widths", e.sweep_widths},
                       {"sweep_radius", e.sweep_radius},
                       {"eta", e.eta},
                       {"checkerboard_cells", e.checkerboard_cells}};
    return j;
}

std::string canonical_config(const Config& config) { return config_to_json(config).dump(); }

std::uint64_t config_hash(const Config& config) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canonical_config(config)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace cns::cli
