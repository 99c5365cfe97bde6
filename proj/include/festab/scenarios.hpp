#pragma once

#include <string>
#include <vector>

#include "festab/json_io.hpp"

namespace festab::accept {

// One named reproduction scenario with its measured-vs-expected payload.
struct ScenarioOutcome {
    std::string name;
    bool passed = false;
    ojson details;
    double seconds = 0.0;
};

const std::vector<std::string>& scenario_names();

// Throws ConfigError for unknown names; assertion failures land in the
// outcome, never as exceptions.
ScenarioOutcome run_scenario(const std::string& name);

}  // namespace festab::accept
