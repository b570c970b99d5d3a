#include "cns/cli/presets.hpp"

namespace cns::cli {

namespace {

Config base(const std::string& name) {
    Config c;
    c.preset = name;
    auto& r = c.run;
    r.dim = 2;
    r.n = 128;
    r.law = "gamma";
    r.a = 1.0;
    r.gamma = 1.4;
    r.epsilon = 0.01;
    r.mu = 0.5;
    r.lambda = 0.5;
    r.horizon = 0.5;
    return c;
}

Config smooth_small() {
    Config c = base("smooth-small");
    auto& r = c.run;
    r.dt = 0.01;
    r.output_every = 5;
    r.stop_at_budget_exit = false;
    r.initial.kind = "smooth";
    r.initial.rho_amplitude = 0.005;
    r.initial.w_amplitude = 0.05;
    return c;
}

Config patch_2d() {
    Config c = base("patch-2d");
    auto& r = c.run;
    r.dt = 0.005;
    r.output_every = 10;
    r.initial.kind = "patch";
    r.initial.radius = 0.25;
    r.initial.width_cells = 2.0;
    return c;
}

Config rotation_audit() {
    Config c = patch_2d();
    c.preset = "rotation-audit";
    c.run.initial.kind = "rotation";
    c.run.initial.omega = 0.2;
    c.run.initial.inner_radius = 0.2;
    c.run.initial.outer_radius = 0.4;
    return c;
}

Config striated_sweep() {
    Config c = base("striated-sweep");
    c.run.initial.kind = "zero";
    c.run.dt = 0.01;
    c.experiment.kind = "striated-sweep";
    c.experiment.sweep_n = {128, 256};
    c.experiment.sweep_widths = {8.0, 4.0, 2.0, 1.0};
    c.experiment.sweep_radius = 0.25;
    c.experiment.eta = 1.0;
    c.experiment.checkerboard_cells = 64;
    return c;
}

Config uniqueness_pair() {
    Config c = smooth_small();
    c.preset = "uniqueness-pair";
    c.run.n = 64;
    c.run.dt = 0.005;
    c.run.output_every = 10;
    c.experiment.kind = "uniqueness-pair";
    c.experiment.perturbation = 1e-6;
    c.experiment.seed = 1;
    return c;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"smooth-small", "patch-2d", "rotation-audit", "striated-sweep",
                                                "uniqueness-pair"};
    return names;
}

Config preset(const std::string& name) {
    if (name == "smooth-small") return smooth_small();
    if (name == "patch-2d") return patch_2d();
    if (name == "rotation-audit") return rotation_audit();
    if (name == "striated-sweep") return striated_sweep();
    if (name == "uniqueness-pair") return uniqueness_pair();
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace cns::cli
