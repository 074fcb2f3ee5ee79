#include "swanson_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "swanson/error.hpp"
#include "swanson/spectrum.hpp"

namespace swanson::cli {

using nlohmann::json;

void RunConfig::validate() const {
    auto bad = [](const std::string& what) { fail(Errc::config, what); };
    if (mode == Mode::inverse) {
        ModelParams{omega, alpha, beta, delta}.validate();
    } else {
        if (!(omega_bar > 0.0) || !(rho_q > 0.0) || !(d > 0.0))
            bad("forward mode needs omega_bar, rho_q, d > 0");
        if (alpha == beta) bad("alpha != beta is required (the gauge would be trivial)");
    }
    if (n_max < 0) bad("n_max must be >= 0");
    if (n_max > 9) bad("n_max must be <= 9");
    if (!(z_min > 0.0)) bad("z_min must be > 0");
    if (z_max && !(*z_max > z_min)) bad("z_max must exceed z_min");
    if (grids.size() < 2) bad("at least two grids are required");
    for (std::size_t i = 0; i + 1 < grids.size(); ++i)
        if (grids[i + 1] != 2 * grids[i]) bad("grid sizes must double");
    if (grids.front() < 4) bad("grids must have at least 4 points");
    if (workers < 1) bad("workers must be >= 1");
    if (side != "plus" && side != "minus" && side != "psi") bad("side must be plus, minus or psi");
    for (int n : n_list)
        if (n < 0) bad("wavefunction indices must be >= 0");
    if (sweep_param != "rho_q" && sweep_param != "d" && sweep_param != "omega_bar")
        bad("sweep parameter must be rho_q, d or omega_bar");
    if (sweep_steps < 1) bad("sweep needs at least one step");
}

void apply_json(RunConfig& cfg, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::config, "config must be a JSON object");
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            const json& v = it.value();
            if (k == "mode") {
                const auto s = v.get<std::string>();
                if (s == "forward") cfg.mode = Mode::forward;
                else if (s == "inverse") cfg.mode = Mode::inverse;
                else fail(Errc::config, "mode must be forward or inverse");
            } else if (k == "omega_bar") cfg.omega_bar = v.get<double>();
            else if (k == "rho_q") cfg.rho_q = v.get<double>();
            else if (k == "d") cfg.d = v.get<double>();
            else if (k == "omega") cfg.omega = v.get<double>();
            else if (k == "alpha") cfg.alpha = v.get<double>();
            else if (k == "beta") cfg.beta = v.get<double>();
            else if (k == "delta") cfg.delta = v.get<double>();
            else if (k == "c") cfg.c = v.get<double>();
            else if (k == "n_max") cfg.n_max = v.get<int>();
            else if (k == "z_min") cfg.z_min = v.get<double>();
            else if (k == "z_max") cfg.z_max = v.get<double>();
            else if (k == "grids") cfg.grids = v.get<std::vector<int>>();
            else if (k == "tol") {
                for (auto t = v.begin(); t != v.end(); ++t) cfg.tol[t.key()] = t.value().get<double>();
            } else if (k == "format") {
                const auto s = v.get<std::string>();
                if (s == "json") cfg.format = Format::json;
                else if (s == "csv") cfg.format = Format::csv;
                else fail(Errc::config, "format must be json or csv");
            } else if (k == "out") cfg.out = v.get<std::string>();
            else if (k == "workers") cfg.workers = v.get<int>();
            else if (k == "side") cfg.side = v.get<std::string>();
            else if (k == "n") cfg.n_list = v.get<std::vector<int>>();
            else if (k == "z") cfg.z_grid = v.get<std::vector<double>>();
            else if (k == "sweep") {
                for (auto t = v.begin(); t != v.end(); ++t) {
                    if (t.key() == "param") cfg.sweep_param = t.value().get<std::string>();
                    else if (t.key() == "from") cfg.sweep_from = t.value().get<double>();
                    else if (t.key() == "to") cfg.sweep_to = t.value().get<double>();
                    else if (t.key() == "steps") cfg.sweep_steps = t.value().get<int>();
                    else fail(Errc::config, "unknown sweep key: " + t.key());
                }
            } else {
                fail(Errc::config, "unknown config key: " + k);
            }
        }
    } catch (const json::exception& e) {
        fail(Errc::config, std::string("config type error: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::config, "cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg;
    cfg.workers = default_workers();
    apply_json(cfg, ss.str());
    return cfg;
}

std::pair<std::string, double> parse_tol(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) fail(Errc::config, "--tol expects NAME=VALUE, got " + spec);
    const std::string name = spec.substr(0, eq);
    const std::string val = spec.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(val.c_str(), &end);
    if (val.empty() || *end != '\0' || !(v >= 0.0)) fail(Errc::config, "bad tolerance value in " + spec);
    return {name, v};
}

int default_workers() {
    if (const char* env = std::getenv("SWANSON_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Model build_model(const RunConfig& cfg) {
    if (cfg.mode == Mode::inverse) {
        const ModelParams mp{cfg.omega, cfg.alpha, cfg.beta, cfg.delta};
        return Model::inverse(solve_inverse(mp).params, mp);
    }
    return Model::with_gauge(solve_forward(cfg.omega_bar, cfg.rho_q, cfg.d), cfg.alpha, cfg.beta, cfg.c,
                             cfg.delta);
}

double default_z_max(const FactorizationParams& fp, int n_max) {
    // quadratic part alone bounds the turning point from above
    const double e = spectrum::energy_plus(fp, n_max);
    const double b = spectrum::plus_gk(fp).B;
    return std::max(10.0, 2.0 * std::sqrt(e / b));
}

} // namespace swanson::cli
