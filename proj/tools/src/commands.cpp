#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "swanson/swanson.hpp"
#include "swanson_cli/commands.hpp"

namespace swanson::cli {
namespace {

using nlohmann::ordered_json;
using potentials::Form;
using potentials::Side;

ordered_json params_json(const FactorizationParams& fp) {
    ordered_json j;
    j["omega_bar"] = fp.omega_bar;
    j["rho_q"] = fp.rho_q;
    j["d"] = fp.d;
    if (fp.c) j["c"] = *fp.c;
    j["mu"] = fp.mu;
    j["lambda"] = fp.lambda;
    j["omega_hat"] = fp.omega_hat;
    j["gamma"] = fp.gamma;
    return j;
}

ordered_json report_json(const ConstraintReport& r) {
    ordered_json j;
    j["inverse_square"] = r.inverse_square;
    j["quadratic"] = r.quadratic;
    j["constant"] = r.constant;
    j["pole_quadratic"] = r.pole_quadratic;
    j["pole_constant"] = r.pole_constant;
    j["x_value"] = r.x_value;
    j["feasible_4x"] = r.feasible_4x;
    j["d_root_count"] = r.d_root_count;
    return j;
}

std::string csv_kv(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << k << ',' << v << '\n';
    return os.str();
}

std::vector<std::pair<std::string, std::string>> params_kv(const FactorizationParams& fp) {
    std::vector<std::pair<std::string, std::string>> kv{
        {"omega_bar", fmt(fp.omega_bar)}, {"rho_q", fmt(fp.rho_q)}, {"d", fmt(fp.d)}};
    if (fp.c) kv.emplace_back("c", fmt(*fp.c));
    kv.emplace_back("mu", fmt(fp.mu));
    kv.emplace_back("lambda", fmt(fp.lambda));
    kv.emplace_back("omega_hat", fmt(fp.omega_hat));
    kv.emplace_back("gamma", fmt(fp.gamma));
    return kv;
}

std::function<double(double)> z_potential(const Model& m, Side side) {
    return [m, side](double z) { return potentials::eval_potential_z(side, Form::z_canonical, z, m); };
}

struct SpectrumRow {
    int n = 0;
    double analytic = 0.0;
    double plus = 0.0;
    double minus = 0.0;
    double plus_order = 0.0;
    double minus_order = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(const Model& m, const RunConfig& cfg) {
    const int k = cfg.n_max + 1;
    const double zmax = cfg.z_max.value_or(default_z_max(m.fp, cfg.n_max));
    const auto plus = numeric::refine_extrapolate(z_potential(m, Side::plus), k, cfg.grids, cfg.z_min, zmax);
    const auto minus = numeric::refine_extrapolate(z_potential(m, Side::minus), k, cfg.grids, cfg.z_min, zmax);
    std::vector<SpectrumRow> rows;
    for (int n = 0; n < k; ++n)
        rows.push_back({n, spectrum::energy_plus(m.fp, n), plus.values[n], minus.values[n],
                        plus.observed_order[n], minus.observed_order[n]});
    return rows;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Largest operator-identity residual, used as the per-row health column of a sweep.
double identity_residual(const Model& m) {
    using diffop::OpKind;
    using diffop::build;
    using diffop::compose;
    const auto xs = diffop::generic_sample_points(20);
    const auto A = build(OpKind::A, m), Ad = build(OpKind::A_dag, m);
    const auto hm = build(OpKind::h_minus, m), hp = build(OpKind::h_plus, m);
    double r = diffop::residual(hm, compose(Ad, A), xs);
    r = std::max(r, diffop::residual(hp, compose(A, Ad), xs));
    r = std::max(r, diffop::residual(compose(hp, A), compose(A, hm), xs));
    return r;
}

} // namespace

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::config:
    case Errc::invalid_parameter: return kExitConfig;
    case Errc::no_positive_root:
    case Errc::infeasible_4x:
    case Errc::branch_violation: return kExitInfeasible;
    case Errc::non_convergent: return kExitNonConvergent;
    default: return kExitConfig;
    }
}

CommandResult cmd_solve(const RunConfig& cfg) {
    CommandResult res;
    if (cfg.mode == Mode::forward) {
        const auto fp = solve_forward(cfg.omega_bar, cfg.rho_q, cfg.d);
        if (cfg.format == Format::csv) {
            res.body = csv_kv(params_kv(fp));
        } else {
            ordered_json j;
            j["mode"] = "forward";
            j["params"] = params_json(fp);
            res.body = j.dump(2) + "\n";
        }
        return res;
    }

    const ModelParams mp{cfg.omega, cfg.alpha, cfg.beta, cfg.delta};
    mp.validate();
    if (mp.reality_warning()) res.warnings.push_back("omega^2 - 4 alpha beta <= 0");
    ordered_json j;
    j["mode"] = "inverse";
    j["input"] = {{"omega", mp.omega}, {"alpha", mp.alpha}, {"beta", mp.beta}, {"delta", mp.delta_gauge}};
    std::vector<std::pair<std::string, std::string>> kv;
    try {
        const auto sol = solve_inverse(mp);
        j["status"] = "ok";
        j["params"] = params_json(sol.params);
        j["constraints"] = report_json(sol.report);
        kv = params_kv(sol.params);
        kv.emplace_back("pole_quadratic", fmt(sol.report.pole_quadratic));
        kv.emplace_back("pole_constant", fmt(sol.report.pole_constant));
        kv.emplace_back("x_value", fmt(sol.report.x_value));
    } catch (const Error& e) {
        if (exit_code_for(e.code()) != kExitInfeasible) throw;
        res.exit_code = kExitInfeasible;
        j["status"] = to_string(e.code());
        j["message"] = e.what();
        kv.emplace_back("status", to_string(e.code()));
        if (e.code() == Errc::infeasible_4x) {
            // the rho-independent stages still succeeded
            const auto st = solve_inverse_stage(mp);
            FactorizationParams partial;
            partial.omega_bar = mp.omega_bar();
            partial.d = st.d;
            partial.c = st.c;
            const auto rep = check_constraints(partial, st.constants, st.c, st.d);
            j["partial"] = {{"d", st.d},
                            {"c", st.c},
                            {"x_value", st.x_value},
                            {"d_root_count", st.d_root_count},
                            {"pole_quadratic", rep.pole_quadratic},
                            {"pole_constant", rep.pole_constant}};
            kv.emplace_back("d", fmt(st.d));
            kv.emplace_back("c", fmt(st.c));
            kv.emplace_back("x_value", fmt(st.x_value));
            kv.emplace_back("pole_quadratic", fmt(rep.pole_quadratic));
            kv.emplace_back("pole_constant", fmt(rep.pole_constant));
        }
    }
    res.body = cfg.format == Format::csv ? csv_kv(kv) : j.dump(2) + "\n";
    return res;
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
    const Model m = build_model(cfg);
    const auto rows = spectrum_rows(m, cfg);
    CommandResult res;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "n,E_analytic,E_numeric_plus,E_numeric_minus,rel_error_plus,rel_error_minus,order_plus,order_minus\n";
        for (const auto& r : rows)
            os << r.n << ',' << fmt(r.analytic) << ',' << fmt(r.plus) << ',' << fmt(r.minus) << ','
               << fmt(rel(r.plus, r.analytic)) << ',' << fmt(rel(r.minus, r.analytic)) << ','
               << fmt(r.plus_order) << ',' << fmt(r.minus_order) << '\n';
        res.body = os.str();
        return res;
    }
    ordered_json j;
    j["params"] = params_json(m.fp);
    j["z_min"] = cfg.z_min;
    j["z_max"] = cfg.z_max.value_or(default_z_max(m.fp, cfg.n_max));
    j["grids"] = cfg.grids;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"E_analytic", r.analytic},
                       {"E_numeric_plus", r.plus},
                       {"E_numeric_minus", r.minus},
                       {"rel_error_plus", rel(r.plus, r.analytic)},
                       {"rel_error_minus", rel(r.minus, r.analytic)},
                       {"order_plus", r.plus_order},
                       {"order_minus", r.minus_order}});
    j["rows"] = arr;
    res.body = j.dump(2) + "\n";
    return res;
}

CommandResult cmd_wavefunctions(const RunConfig& cfg) {
    const Model m = build_model(cfg);
    std::vector<double> zs = cfg.z_grid;
    if (zs.empty())
        for (int i = 1; i <= 40; ++i) zs.push_back(0.1 * i);

    struct Row {
        int n;
        double z, value, derivative;
    };
    std::vector<Row> rows;
    int skipped = 0;
    for (int n : cfg.n_list) {
        for (double z : zs) {
            try {
                spectrum::WavefunctionEval w;
                if (cfg.side == "plus") w = spectrum::phi_plus(m.fp, n, z);
                else if (cfg.side == "minus") w = spectrum::phi_minus(m.fp, n, z, spectrum::PhiMinusMethod::normalized);
                else w = spectrum::psi_plus(m.fp, n, z);
                rows.push_back({n, z, w.value, w.derivative});
            } catch (const Error& e) {
                if (e.code() != Errc::domain_error) throw;
                ++skipped;
            }
        }
    }
    CommandResult res;
    if (skipped > 0) res.warnings.push_back(std::to_string(skipped) + " rows skipped (z must be > 0)");
    if (cfg.n_list.empty()) return res;

    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "side,n,z,value,derivative\n";
        for (const auto& r : rows)
            os << cfg.side << ',' << r.n << ',' << fmt(r.z) << ',' << fmt(r.value) << ',' << fmt(r.derivative) << '\n';
        res.body = os.str();
        return res;
    }
    ordered_json j;
    j["side"] = cfg.side;
    j["skipped"] = skipped;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back({{"n", r.n}, {"z", r.z}, {"value", r.value}, {"derivative", r.derivative}});
    j["rows"] = arr;
    res.body = j.dump(2) + "\n";
    return res;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    if (cfg.mode != Mode::forward) fail(Errc::config, "sweep runs in forward mode only");
    const int steps = cfg.sweep_steps;
    std::vector<double> values(steps);
    for (int i = 0; i < steps; ++i)
        values[i] = steps == 1 ? cfg.sweep_from
                               : cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * i / (steps - 1.0);
    std::sort(values.begin(), values.end());

    struct Row {
        double value = 0.0;
        std::vector<SpectrumRow> levels;
        double identity = 0.0;
        std::string error;
    };
    std::vector<Row> rows(steps);
    const int levels = std::min(cfg.n_max, 2);

    auto work = [&](int i) {
        Row& row = rows[i];
        row.value = values[i];
        RunConfig c = cfg;
        c.n_max = levels;
        if (cfg.sweep_param == "rho_q") c.rho_q = values[i];
        else if (cfg.sweep_param == "d") c.d = values[i];
        else c.omega_bar = values[i];
        try {
            c.validate();
            const Model m = build_model(c);
            row.levels = spectrum_rows(m, c);
            row.identity = identity_residual(m);
        } catch (const Error& e) {
            row.error = std::string(to_string(e.code())) + ": " + e.what();
        }
    };

    std::atomic<int> next{0};
    const int nthreads = std::max(1, std::min(cfg.workers, steps));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < steps; i = next++) work(i);
        });
    for (auto& t : pool) t.join();

    CommandResult res;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << cfg.sweep_param;
        for (int n = 0; n <= levels; ++n) os << ",E" << n << "_analytic,E" << n << "_numeric";
        os << ",max_identity_residual,error\n";
        for (const auto& r : rows) {
            os << fmt(r.value);
            for (int n = 0; n <= levels; ++n) {
                if (r.error.empty())
                    os << ',' << fmt(r.levels[n].analytic) << ',' << fmt(r.levels[n].plus);
                else
                    os << ",,";
            }
            os << ',' << (r.error.empty() ? fmt(r.identity) : std::string()) << ',' << r.error << '\n';
        }
        res.body = os.str();
        return res;
    }
    ordered_json j;
    j["param"] = cfg.sweep_param;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o;
        o[cfg.sweep_param] = r.value;
        if (r.error.empty()) {
            ordered_json ls = ordered_json::array();
            for (const auto& l : r.levels)
                ls.push_back({{"n", l.n}, {"E_analytic", l.analytic}, {"E_numeric", l.plus}});
            o["levels"] = ls;
            o["max_identity_residual"] = r.identity;
        } else {
            o["error"] = r.error;
        }
        arr.push_back(o);
    }
    j["rows"] = arr;
    res.body = j.dump(2) + "\n";
    return res;
}

} // namespace swanson::cli
