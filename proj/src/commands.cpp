#include "festab/commands.hpp"

#include <chrono>
#include <functional>

#include "festab/scenarios.hpp"

namespace festab::cli {

namespace {

using Clock = std::chrono::steady_clock;

RunReport run_guarded(const std::string& command,
                      const std::function<void(RunReport&)>& body) {
    RunReport rep;
    rep.command = command;
    const auto t0 = Clock::now();
    try {
        body(rep);
    } catch (const Error& e) {
        rep.status = RunReport::Status::Error;
        rep.failure = e.what();
    } catch (const nlohmann::json::exception& e) {
        rep.status = RunReport::Status::Error;
        rep.failure = std::string("config: ") + e.what();
    } catch (const std::exception& e) {
        rep.status = RunReport::Status::Error;
        rep.failure = e.what();
    }
    rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

SupOptions sup_options(const ojson& config, const RunOptions& opts) {
    SupOptions s;
    if (config.contains("max_pairs")) s.max_pairs = config.at("max_pairs").get<std::size_t>();
    if (config.contains("seed")) s.seed = config.at("seed").get<std::uint64_t>();
    if (opts.seed) s.seed = *opts.seed;
    if (config.contains("threads")) s.threads = config.at("threads").get<int>();
    if (opts.threads) s.threads = *opts.threads;
    if (s.threads < 1) throw ConfigError("threads must be >= 1");
    return s;
}

ojson echo_sup_options(const SupOptions& s) {
    ojson j;
    j["max_pairs"] = s.max_pairs;
    j["seed"] = s.seed;
    j["threads"] = s.threads;
    return j;
}

std::optional<Direction> direction_from_config(const ojson& config) {
    if (!config.contains("direction")) return std::nullopt;
    const auto& d = config.at("direction");
    if (d.is_string()) {
        const std::string s = d.get<std::string>();
        if (s == "auto") return std::nullopt;
        if (s == "+1" || s == "1") return Direction::contracting();
        if (s == "-1") return Direction::expanding();
        throw ConfigError("direction must be \"auto\", 1 or -1");
    }
    if (d.is_number_integer()) return Direction::of(d.get<int>());
    throw ConfigError("direction must be \"auto\", 1 or -1");
}

}  // namespace

ojson RunReport::to_json() const {
    ojson j;
    j["command"] = command;
    j["config"] = config;
    j["results"] = results;
    switch (status) {
        case Status::Pass: j["status"] = "pass"; break;
        case Status::Fail: j["status"] = "fail"; break;
        case Status::Error: j["status"] = "error"; break;
    }
    j["failure"] = failure.empty() ? ojson() : ojson(failure);
    j["wall_time"] = wall_time;
    return j;
}

int RunReport::exit_code() const {
    switch (status) {
        case Status::Pass: return 0;
        case Status::Fail: return 1;
        case Status::Error: return 2;
    }
    return 2;
}

RunReport cmd_residual(const ojson& config, const RunOptions& opts) {
    return run_guarded("residual", [&](RunReport& rep) {
        check_keys(config, {"model", "grid"},
                   {"threshold", "max_pairs", "seed", "threads"}, "residual config");
        const FunctionModel model = model_from_json(config.at("model"));
        const SampleGrid grid = grid_from_json(config.at("grid"));
        const Scalar threshold = config.contains("threshold")
                                     ? scalar_from_json(config.at("threshold"), "threshold")
                                     : Scalar::zero(Scalar::Mode::Exact);
        const SupOptions sup = sup_options(config, opts);

        rep.config["model"] = model_to_json(model);
        rep.config["grid"] = grid_to_json(grid);
        rep.config["threshold"] = scalar_to_json(threshold);
        rep.config.update(echo_sup_options(sup));

        const ResidualReport rr = sup_residual(model, grid, sup);
        rep.results["residual"] = residual_report_to_json(rr);
        if (model.kind() == FunctionModel::Kind::Polynomial) {
            const BivariatePoly sym = symbolic_residual(model);
            rep.results["symbolic"] = sym.str();
            rep.results["symbolic_zero"] = sym.is_zero();
        } else {
            rep.results["symbolic"] = ojson();
            rep.results["symbolic_zero"] = ojson();
        }

        const bool pass = (rr.sup.is_exact() && threshold.is_exact())
                              ? rr.sup <= threshold
                              : rr.sup.dbl() <= threshold.dbl();
        if (!pass) {
            rep.status = RunReport::Status::Fail;
            rep.failure = "sup |D_f| = " + rr.sup.str() + " exceeds threshold " + threshold.str();
        }
    });
}

RunReport cmd_identities(const ojson& config, const RunOptions& opts) {
    return run_guarded("identities", [&](RunReport& rep) {
        check_keys(config, {"model"},
                   {"parity", "mode", "grid", "tol", "max_pairs", "seed", "threads"},
                   "identities config");
        const FunctionModel model = model_from_json(config.at("model"));
        const std::string parity = config.value("parity", std::string("all"));
        if (parity != "all" && parity != "even" && parity != "odd")
            throw ConfigError("parity must be \"even\", \"odd\" or \"all\"");
        std::string mode = config.value("mode", std::string("auto"));
        if (mode == "auto")
            mode = model.kind() == FunctionModel::Kind::Polynomial ? "symbolic" : "numeric";
        if (mode != "symbolic" && mode != "numeric")
            throw ConfigError("mode must be \"auto\", \"symbolic\" or \"numeric\"");
        if (mode == "symbolic" && model.kind() != FunctionModel::Kind::Polynomial)
            throw ConfigError("symbolic identity checks need a polynomial model");

        const SampleGrid grid = config.contains("grid")
                                    ? grid_from_json(config.at("grid"))
                                    : SampleGrid::dyadic(mpq_class(-1), mpq_class(1), 3);
        const SupOptions sup = sup_options(config, opts);

        rep.config["model"] = model_to_json(model);
        rep.config["parity"] = parity;
        rep.config["mode"] = mode;
        if (mode == "numeric") {
            rep.config["grid"] = grid_to_json(grid);
            rep.config.update(echo_sup_options(sup));
        }

        ojson table = ojson::array();
        std::size_t checked = 0, failed = 0;
        for (const auto& id : registry()) {
            if (parity == "even" && id.parity != Parity::Even) continue;
            if (parity == "odd" && id.parity != Parity::Odd) continue;
            IdentityCheckReport r;
            if (mode == "symbolic") {
                r = check_symbolic(id, model);
            } else {
                const Scalar tol = config.contains("tol")
                                       ? scalar_from_json(config.at("tol"), "tol")
                                       : default_numeric_tol(id, model);
                r = check_numeric(id, model, grid, tol, sup);
            }
            ++checked;
            if (!r.passed()) ++failed;
            table.push_back(identity_report_to_json(r, id.parity));
        }
        rep.results["checked"] = checked;
        rep.results["failed"] = failed;
        rep.results["identities"] = std::move(table);
        if (failed > 0) {
            rep.status = RunReport::Status::Fail;
            rep.failure = std::to_string(failed) + " identity check(s) failed";
        }
    });
}

RunReport cmd_stabilize(const ojson& config, const RunOptions& opts) {
    return run_guarded("stabilize", [&](RunReport& rep) {
        check_keys(config, {"model", "phi", "grid"},
                   {"direction", "criteria", "margin_tol", "residual_check", "series_tol",
                    "max_pairs", "seed", "threads"},
                   "stabilize config");
        const FunctionModel model = model_from_json(config.at("model"));
        const ControlFunction phi = phi_from_json(config.at("phi"));
        const SampleGrid grid = grid_from_json(config.at("grid"));

        StabilizeOptions sopts;
        sopts.direction = direction_from_config(config);
        if (config.contains("criteria"))
            sopts.criteria = criteria_from_json(config.at("criteria"));
        sopts.residual_opts = sup_options(config, opts);
        sopts.check_hypothesis = config.value("residual_check", true);
        if (config.contains("series_tol"))
            sopts.series_tol = double_from_json(config.at("series_tol"), "series_tol");
        const double margin_tol =
            config.contains("margin_tol") ? double_from_json(config.at("margin_tol"), "margin_tol")
                                          : 1e-9;

        rep.config["model"] = model_to_json(model);
        rep.config["phi"] = phi_to_json(phi);
        rep.config["grid"] = grid_to_json(grid);
        rep.config["direction"] = sopts.direction ? ojson(sopts.direction->s) : ojson("auto");
        rep.config["criteria"] = criteria_to_json(sopts.criteria);
        rep.config["margin_tol"] = margin_tol;
        rep.config["residual_check"] = sopts.check_hypothesis;
        rep.config["series_tol"] = sopts.series_tol;
        rep.config.update(echo_sup_options(sopts.residual_opts));

        const StabilizationReport sr = stabilize(model, phi, grid, sopts);
        rep.results = stabilization_report_to_json(sr);

        if (!sr.converged()) {
            rep.status = RunReport::Status::Fail;
            rep.failure = std::string("extraction did not converge (quartic: ") +
                          to_string(sr.status_quartic) + ", cubic: " +
                          to_string(sr.status_cubic) + ")";
            return;
        }
        const double margin = sr.margin.dbl();
        if (!(margin >= -margin_tol)) {
            rep.status = RunReport::Status::Fail;
            rep.failure = "margin " + sr.margin.str() + " below -" +
                          shortest_double(margin_tol) +
                          " (bound violated: sup |f - Q - C| exceeds the series bound)";
        }
    });
}

RunReport cmd_bounds(const ojson& config, const RunOptions& opts) {
    (void)opts;
    return run_guarded("bounds", [&](RunReport& rep) {
        check_keys(config, {"phi"}, {"x", "direction", "tol"}, "bounds config");
        const ControlFunction phi = phi_from_json(config.at("phi"));
        const Scalar x = config.contains("x") ? scalar_from_json(config.at("x"), "x")
                                              : Scalar::exact(1L);
        const double tol =
            config.contains("tol") ? double_from_json(config.at("tol"), "tol") : 1e-12;
        const std::optional<Direction> dopt = direction_from_config(config);
        const Direction dir = dopt ? *dopt : select_direction(phi);

        rep.config["phi"] = phi_to_json(phi);
        rep.config["x"] = scalar_to_json(x);
        rep.config["direction"] = dopt ? ojson(dopt->s) : ojson("auto");
        rep.config["tol"] = tol;

        rep.results["direction"] = dir.s;
        rep.results["precheck_quartic"] = convergence_precheck(phi, dir, 4);
        rep.results["precheck_cubic"] = convergence_precheck(phi, dir, 3);
        rep.results["quartic_series"] = series_eval_to_json(quartic_series_bound(phi, x, dir, tol));
        rep.results["cubic_series"] = series_eval_to_json(cubic_series_bound(phi, x, dir, tol));
        rep.results["combined"] = series_eval_to_json(combined_bound(phi, x, dir, tol));
        try {
            rep.results["closed_form"] = scalar_to_json(closed_form_bound(phi, x));
        } catch (const InadmissibleControl&) {
            rep.results["closed_form"] = ojson();
        }
    });
}

RunReport cmd_reproduce(const ojson& config, const RunOptions& opts) {
    (void)opts;
    return run_guarded("reproduce", [&](RunReport& rep) {
        check_keys(config, {"scenario"}, {}, "reproduce config");
        const std::string name = config.at("scenario").get<std::string>();
        rep.config["scenario"] = name;
        const accept::ScenarioOutcome out = accept::run_scenario(name);
        rep.results = out.details;
        rep.results["scenario"] = out.name;
        rep.results["passed"] = out.passed;
        if (!out.passed) {
            rep.status = RunReport::Status::Fail;
            rep.failure = "scenario " + name + " failed";
        }
    });
}

}  // namespace festab::cli
