#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swanson/params.hpp"
#include "swanson/potentials.hpp"

namespace swanson::cli {

enum class Mode { forward, inverse };
enum class Format { json, csv };

struct RunConfig {
    Mode mode = Mode::forward;

    // forward
    double omega_bar = 1.0;
    double rho_q = 1.0;
    double d = 1.0;
    // inverse; in forward mode alpha, beta and c are only a similarity gauge
    double omega = 2.0;
    double alpha = 0.5;
    double beta = 0.1;
    double delta = 0.0;
    double c = -2.0;

    int n_max = 2;
    double z_min = 1e-3;
    std::optional<double> z_max;
    std::vector<int> grids{2000, 4000};
    std::map<std::string, double> tol;
    Format format = Format::json;
    std::string out;
    int workers = 1;

    // wavefunctions
    std::string side = "plus";
    std::vector<int> n_list;
    std::vector<double> z_grid;

    // sweep
    std::string sweep_param = "rho_q";
    double sweep_from = 0.5;
    double sweep_to = 2.0;
    int sweep_steps = 4;

    /// Throws Errc::config for anything that cannot be run.
    void validate() const;
};

/// Reads a JSON config document; unknown keys are rejected.
RunConfig load_config(const std::string& path);
void apply_json(RunConfig& cfg, const std::string& text);

/// Parses "NAME=VALUE".
std::pair<std::string, double> parse_tol(const std::string& spec);

int default_workers();

/// The model a config describes: forward parameters with the (alpha, beta, c)
/// gauge attached, or an inverse solve. Inverse failures propagate.
Model build_model(const RunConfig& cfg);

/// Right end of the finite-difference box for the given top level.
double default_z_max(const FactorizationParams& fp, int n_max);

} // namespace swanson::cli
