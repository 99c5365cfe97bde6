#pragma once

#include <optional>
#include <string>

#include "festab/json_io.hpp"

namespace festab::cli {

// Flag-level overrides applied on top of the config file.
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

struct RunReport {
    enum class Status { Pass, Fail, Error };

    std::string command;
    ojson config;      // effective config after defaults and overrides
    ojson results;
    Status status = Status::Pass;
    std::string failure;  // violated assertion (Fail) or error message (Error)
    double wall_time = 0.0;

    ojson to_json() const;
    // 0 = Pass, 1 = Fail, 2 = usage/config error.
    int exit_code() const;
};

// Sup of |D_f| over sampled grid pairs, plus the symbolic expansion for
// polynomial models; Pass iff sup <= threshold.
RunReport cmd_residual(const ojson& config, const RunOptions& opts = {});

// Checks the derivation-chain identities against the model (symbolically for
// polynomials); Pass iff every identity of the requested parity passes.
RunReport cmd_identities(const ojson& config, const RunOptions& opts = {});

// Full direct-method run; Pass iff both components converged and
// margin >= -margin_tol.
RunReport cmd_stabilize(const ojson& config, const RunOptions& opts = {});

// Stability-bound series and closed forms for a control function.
RunReport cmd_bounds(const ojson& config, const RunOptions& opts = {});

// Runs a named acceptance scenario.
RunReport cmd_reproduce(const ojson& config, const RunOptions& opts = {});

}  // namespace festab::cli
