#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "festab/commands.hpp"
#include "festab/scenarios.hpp"

namespace {

using festab::cli::RunOptions;
using festab::cli::RunReport;
using festab::ojson;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
    auto* c = cmd->add_option("--config", flags.config_path, "experiment config (JSON)");
    if (config_required) c->required();
    cmd->add_option("--out", flags.out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", flags.format, "json, md or both")
        ->check(CLI::IsMember({"json", "md", "both"}));
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&flags](const std::uint64_t v) { flags.seed = v; },
        "override the config seed");
    cmd->add_option_function<int>(
        "--threads", [&flags](const int v) { flags.threads = v; },
        "worker threads (fallback: FE_STAB_THREADS)");
}

ojson load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw festab::ConfigError("cannot open config file: " + path);
    ojson j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw festab::ConfigError("config parse error in " + path + ": " + e.what());
    }
    return j;
}

RunOptions run_options(const CommonFlags& flags) {
    RunOptions o;
    o.seed = flags.seed;
    o.threads = flags.threads;
    if (!o.threads) {
        if (const char* env = std::getenv("FE_STAB_THREADS")) {
            try {
                o.threads = std::stoi(env);
            } catch (...) {
                throw festab::ConfigError("FE_STAB_THREADS is not an integer");
            }
        }
    }
    return o;
}

int emit(const RunReport& report, const CommonFlags& flags) {
    const ojson j = report.to_json();
    const std::string json_text = j.dump(2) + "\n";
    const std::string md_text = festab::render_markdown(j);

    if (flags.out_path.empty()) {
        if (flags.format == "json")
            std::cout << json_text;
        else if (flags.format == "md")
            std::cout << md_text;
        else
            std::cout << json_text << "\n---\n\n" << md_text;
    } else {
        const auto write = [](const std::string& path, const std::string& text) {
            std::ofstream out(path);
            if (!out) throw festab::ConfigError("cannot write output file: " + path);
            out << text;
        };
        if (flags.format == "json") {
            write(flags.out_path, json_text);
        } else if (flags.format == "md") {
            write(flags.out_path, md_text);
        } else {
            write(flags.out_path + ".json", json_text);
            write(flags.out_path + ".md", md_text);
        }
    }
    if (report.status != RunReport::Status::Pass && !report.failure.empty())
        std::cerr << "festab " << report.command << ": " << report.failure << "\n";
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifier for the mixed cubic-quartic functional equation and its stability bounds"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string scenario;

    auto* residual = app.add_subcommand("residual", "sup and symbolic residual of D_f");
    add_common(residual, flags);
    auto* identities = app.add_subcommand("identities", "check the derivation-chain identities");
    add_common(identities, flags);
    auto* stabilize = app.add_subcommand("stabilize", "extract quartic/cubic components and margins");
    add_common(stabilize, flags);
    auto* bounds = app.add_subcommand("bounds", "stability-bound series and closed forms");
    add_common(bounds, flags);
    auto* reproduce = app.add_subcommand("reproduce", "run a named verification scenario");
    add_common(reproduce, flags, /*config_required=*/false);
    reproduce->add_option("--scenario", scenario, "scenario name (see --list)");
    bool list_scenarios = false;
    reproduce->add_flag("--list", list_scenarios, "list known scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors map to the config-error exit code
    }

    try {
        const RunOptions opts = run_options(flags);
        RunReport report;
        if (residual->parsed()) {
            report = festab::cli::cmd_residual(load_config(flags.config_path), opts);
        } else if (identities->parsed()) {
            report = festab::cli::cmd_identities(load_config(flags.config_path), opts);
        } else if (stabilize->parsed()) {
            report = festab::cli::cmd_stabilize(load_config(flags.config_path), opts);
        } else if (bounds->parsed()) {
            report = festab::cli::cmd_bounds(load_config(flags.config_path), opts);
        } else if (reproduce->parsed()) {
            if (list_scenarios) {
                for (const auto& n : festab::accept::scenario_names()) std::cout << n << "\n";
                return 0;
            }
            ojson config;
            if (!flags.config_path.empty()) config = load_config(flags.config_path);
            if (!scenario.empty()) config["scenario"] = scenario;
            report = festab::cli::cmd_reproduce(config, opts);
        }
        return emit(report, flags);
    } catch (const festab::ConfigError& e) {
        std::cerr << "festab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "festab: " << e.what() << "\n";
        return 2;
    }
}
