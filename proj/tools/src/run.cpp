#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "swanson_cli/commands.hpp"

namespace swanson::cli {
namespace {

struct Flags {
    std::string config;
    std::optional<std::string> mode, format, out, side, param;
    std::optional<double> omega_bar, rho_q, d, omega, alpha, beta, delta, c, z_min, z_max, from, to;
    std::optional<int> n_max, workers, steps;
    std::vector<int> grids, n_list;
    std::vector<double> z_grid;
    std::vector<std::string> tol;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON config file");
    app->add_option("--mode", f.mode, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));
    app->add_option("--omega-bar", f.omega_bar);
    app->add_option("--rho-q", f.rho_q);
    app->add_option("--d", f.d);
    app->add_option("--omega", f.omega);
    app->add_option("--alpha", f.alpha);
    app->add_option("--beta", f.beta);
    app->add_option("--delta", f.delta);
    app->add_option("--c", f.c, "gauge constant in forward mode");
    app->add_option("--n-max", f.n_max);
    app->add_option("--z-min", f.z_min);
    app->add_option("--z-max", f.z_max);
    app->add_option("--grids", f.grids, "doubling grid sizes")->delimiter(',');
    app->add_option("--out", f.out, "output path (default stdout)");
    app->add_option("--format", f.format)->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--workers", f.workers);
    app->add_option("--tol", f.tol, "NAME=VALUE tolerance override");
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (f.config.empty()) cfg.workers = default_workers();
    if (f.mode) cfg.mode = *f.mode == "inverse" ? Mode::inverse : Mode::forward;
    if (f.format) cfg.format = *f.format == "csv" ? Format::csv : Format::json;
    if (f.out) cfg.out = *f.out;
    if (f.side) cfg.side = *f.side;
    if (f.param) cfg.sweep_param = *f.param;
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = *src;
    };
    set(cfg.omega_bar, f.omega_bar);
    set(cfg.rho_q, f.rho_q);
    set(cfg.d, f.d);
    set(cfg.omega, f.omega);
    set(cfg.alpha, f.alpha);
    set(cfg.beta, f.beta);
    set(cfg.delta, f.delta);
    set(cfg.c, f.c);
    set(cfg.z_min, f.z_min);
    if (f.z_max) cfg.z_max = *f.z_max;
    set(cfg.sweep_from, f.from);
    set(cfg.sweep_to, f.to);
    set(cfg.n_max, f.n_max);
    set(cfg.workers, f.workers);
    set(cfg.sweep_steps, f.steps);
    if (!f.grids.empty()) cfg.grids = f.grids;
    if (!f.n_list.empty()) cfg.n_list = f.n_list;
    if (!f.z_grid.empty()) cfg.z_grid = f.z_grid;
    for (const auto& t : f.tol) {
        const auto [name, value] = parse_tol(t);
        cfg.tol.insert_or_assign(name, value);
    }
    cfg.validate();
    return cfg;
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"swanson: factorized non-Hermitian oscillators, spectra and identity checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SWANSON_VERSION);

    Flags f;
    auto* solve = app.add_subcommand("solve", "solve for superpotential parameters");
    auto* spec = app.add_subcommand("spectrum", "analytic vs finite-difference spectra");
    auto* wave = app.add_subcommand("wavefunctions", "tabulate eigenfunctions");
    auto* verify = app.add_subcommand("verify", "check every identity and report printed-form residuals");
    auto* sweep = app.add_subcommand("sweep", "scan one forward parameter");
    for (auto* sc : {solve, spec, wave, verify, sweep}) add_common(sc, f);
    wave->add_option("--side", f.side)->check(CLI::IsMember({"plus", "minus", "psi"}));
    wave->add_option("--n", f.n_list, "level indices")->delimiter(',');
    wave->add_option("--z", f.z_grid, "sample points")->delimiter(',');
    sweep->add_option("--param", f.param)->check(CLI::IsMember({"rho_q", "d", "omega_bar"}));
    sweep->add_option("--from", f.from);
    sweep->add_option("--to", f.to);
    sweep->add_option("--steps", f.steps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const RunConfig cfg = resolve(f);
        CommandResult res;
        if (*solve) res = cmd_solve(cfg);
        else if (*spec) res = cmd_spectrum(cfg);
        else if (*wave) res = cmd_wavefunctions(cfg);
        else if (*verify) res = cmd_verify(cfg);
        else res = cmd_sweep(cfg);

        for (const auto& w : res.warnings) err << "warning: " << w << '\n';
        if (cfg.out.empty()) {
            out << res.body;
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) {
                err << "error: cannot write " << cfg.out << '\n';
                return kExitConfig;
            }
            file << res.body;
        }
        return res.exit_code;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace swanson::cli
