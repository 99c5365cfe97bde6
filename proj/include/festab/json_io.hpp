#pragma once

#include <json.hpp>

#include <string>

#include "festab/bounds.hpp"
#include "festab/diffop.hpp"
#include "festab/function_model.hpp"
#include "festab/grid.hpp"
#include "festab/hyers.hpp"
#include "festab/identities.hpp"
#include "festab/scalar.hpp"

namespace festab {

// Reports keep insertion order so identical runs serialize byte-identically.
using ojson = nlohmann::ordered_json;

// Scalars: exact values travel as fraction strings ("22/105"), floats as
// JSON numbers.  Parsing accepts strings, integers (exact) and floats.
ojson scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const ojson& j, const std::string& context);

// Plain double knob that also accepts "p/q" fraction strings.
double double_from_json(const ojson& j, const std::string& context);

// {"kind":"poly","coeffs":["0","0","0","1","1"]}
// {"kind":"perturbed","base":{...},"delta":1e-3,"seed":7}
// {"kind":"table","entries":{"1/2":"3/16", ...}}
FunctionModel model_from_json(const ojson& j);
ojson model_to_json(const FunctionModel& m);

// {"lo":"-2","hi":"2","depth":12}
SampleGrid grid_from_json(const ojson& j);
ojson grid_to_json(const SampleGrid& g);

// {"kind":"constant","epsilon":...} | {"kind":"power-sum","theta":...,"p":...}
// | {"kind":"product-sum","theta":...,"u":...,"v":...,"p":...}
ControlFunction phi_from_json(const ojson& j);
ojson phi_to_json(const ControlFunction& phi);

ConvergenceCriteria criteria_from_json(const ojson& j);
ojson criteria_to_json(const ConvergenceCriteria& c);

ojson residual_report_to_json(const ResidualReport& r);
ojson series_eval_to_json(const SeriesEvaluation& ev);
ojson identity_report_to_json(const IdentityCheckReport& rep, Parity parity);
ojson stabilization_report_to_json(const StabilizationReport& rep);

// Rejects unknown keys; every config parser runs through this.
void check_keys(const ojson& obj, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional, const std::string& context);

// Markdown rendering is a pure function of the JSON report.
std::string render_markdown(const ojson& run_report);

}  // namespace festab
