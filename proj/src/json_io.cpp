#include "festab/json_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace festab {

ojson scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return ojson(s.str());
    return ojson(s.dbl());
}

Scalar scalar_from_json(const ojson& j, const std::string& context) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return Scalar::exact(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_float()) return Scalar::real(j.get<double>());
    throw ConfigError(context + ": expected a number or a \"p/q\" string");
}

double double_from_json(const ojson& j, const std::string& context) {
    return scalar_from_json(j, context).dbl();
}

void check_keys(const ojson& obj, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional, const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const char* k : required)
        if (!obj.contains(k)) throw ConfigError(context + ": missing key \"" + k + "\"");
    std::set<std::string> allowed;
    for (const char* k : required) allowed.insert(k);
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) throw ConfigError(context + ": unknown key \"" + key + "\"");
}

FunctionModel model_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("model: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poly") {
        check_keys(j, {"kind", "coeffs"}, {}, "model(poly)");
        const auto& arr = j.at("coeffs");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("model(poly): \"coeffs\" must be a nonempty array");
        std::vector<mpq_class> coeffs;
        for (const auto& c : arr) {
            const Scalar s = scalar_from_json(c, "model(poly) coefficient");
            if (!s.is_exact())
                throw ConfigError("model(poly): coefficients must be exact (use \"p/q\" strings)");
            coeffs.push_back(s.rational());
        }
        return FunctionModel::polynomial(std::move(coeffs));
    }
    if (kind == "perturbed") {
        check_keys(j, {"kind", "base", "delta", "seed"}, {}, "model(perturbed)");
        FunctionModel base = model_from_json(j.at("base"));
        const double delta = double_from_json(j.at("delta"), "model(perturbed) delta");
        if (!j.at("seed").is_number_integer())
            throw ConfigError("model(perturbed): \"seed\" must be an integer");
        return FunctionModel::perturbed(std::move(base), delta, j.at("seed").get<std::uint64_t>());
    }
    if (kind == "table") {
        check_keys(j, {"kind", "entries"}, {}, "model(table)");
        const auto& obj = j.at("entries");
        if (!obj.is_object() || obj.empty())
            throw ConfigError("model(table): \"entries\" must be a nonempty object");
        DyadicTable entries;
        for (const auto& [key, val] : obj.items()) {
            const Scalar point = Scalar::parse(key);
            if (!point.is_exact()) throw ConfigError("model(table): keys must be exact rationals");
            entries.emplace(point.rational(), scalar_from_json(val, "model(table) value"));
        }
        return FunctionModel::tabulated(std::move(entries));
    }
    throw ConfigError("model: unknown kind \"" + kind + "\"");
}

ojson model_to_json(const FunctionModel& m) {
    ojson j;
    switch (m.kind()) {
        case FunctionModel::Kind::Polynomial: {
            j["kind"] = "poly";
            ojson arr = ojson::array();
            for (const auto& c : m.coefficients()) arr.push_back(c.get_str());
            j["coeffs"] = std::move(arr);
            break;
        }
        case FunctionModel::Kind::Perturbed:
            j["kind"] = "perturbed";
            j["base"] = model_to_json(m.base());
            j["delta"] = m.delta();
            j["seed"] = m.seed();
            break;
        case FunctionModel::Kind::Tabulated: {
            j["kind"] = "table";
            ojson entries = ojson::object();
            for (const auto& [k, v] : m.entries()) entries[k.get_str()] = scalar_to_json(v);
            j["entries"] = std::move(entries);
            break;
        }
    }
    return j;
}

SampleGrid grid_from_json(const ojson& j) {
    check_keys(j, {"lo", "hi", "depth"}, {}, "grid");
    const Scalar lo = scalar_from_json(j.at("lo"), "grid lo");
    const Scalar hi = scalar_from_json(j.at("hi"), "grid hi");
    if (!lo.is_exact() || !hi.is_exact())
        throw ConfigError("grid: endpoints must be exact rationals");
    if (!j.at("depth").is_number_integer()) throw ConfigError("grid: \"depth\" must be an integer");
    return SampleGrid::dyadic(lo.rational(), hi.rational(), j.at("depth").get<int>());
}

ojson grid_to_json(const SampleGrid& g) {
    ojson j;
    j["lo"] = g.lo().get_str();
    j["hi"] = g.hi().get_str();
    j["depth"] = g.depth();
    return j;
}

ControlFunction phi_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("phi: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    const auto exponent = [&](const char* name) {
        const auto& e = j.at(name);
        if (!e.is_number()) throw ConfigError(std::string("phi: \"") + name + "\" must be a number");
        return e.get<double>();
    };
    if (kind == "constant") {
        check_keys(j, {"kind", "epsilon"}, {}, "phi(constant)");
        return ControlFunction::constant(scalar_from_json(j.at("epsilon"), "phi epsilon"));
    }
    if (kind == "power-sum") {
        check_keys(j, {"kind", "theta", "p"}, {}, "phi(power-sum)");
        return ControlFunction::power_sum(scalar_from_json(j.at("theta"), "phi theta"),
                                          exponent("p"));
    }
    if (kind == "product-sum") {
        check_keys(j, {"kind", "theta", "u", "v", "p"}, {}, "phi(product-sum)");
        return ControlFunction::product_sum(scalar_from_json(j.at("theta"), "phi theta"),
                                            exponent("u"), exponent("v"), exponent("p"));
    }
    throw ConfigError("phi: unknown kind \"" + kind + "\"");
}

ojson phi_to_json(const ControlFunction& phi) {
    ojson j;
    switch (phi.kind()) {
        case ControlFunction::Kind::Constant:
            j["kind"] = "constant";
            j["epsilon"] = scalar_to_json(phi.theta());
            break;
        case ControlFunction::Kind::PowerSum:
            j["kind"] = "power-sum";
            j["theta"] = scalar_to_json(phi.theta());
            j["p"] = phi.p();
            break;
        case ControlFunction::Kind::ProductSum:
            j["kind"] = "product-sum";
            j["theta"] = scalar_to_json(phi.theta());
            j["u"] = phi.u();
            j["v"] = phi.v();
            j["p"] = phi.p();
            break;
        case ControlFunction::Kind::Custom:
            j["kind"] = "custom";
            break;
    }
    return j;
}

ConvergenceCriteria criteria_from_json(const ojson& j) {
    check_keys(j, {}, {"max_iterations", "tol", "stall_window"}, "criteria");
    ConvergenceCriteria c;
    if (j.contains("max_iterations")) c.max_iterations = j.at("max_iterations").get<int>();
    if (j.contains("tol")) c.tol = double_from_json(j.at("tol"), "criteria tol");
    if (j.contains("stall_window")) c.stall_window = j.at("stall_window").get<int>();
    if (c.max_iterations < 1) throw ConfigError("criteria: max_iterations must be >= 1");
    if (!(c.tol > 0)) throw ConfigError("criteria: tol must be positive");
    return c;
}

ojson criteria_to_json(const ConvergenceCriteria& c) {
    ojson j;
    j["max_iterations"] = c.max_iterations;
    j["tol"] = c.tol;
    j["stall_window"] = c.stall_window;
    return j;
}

ojson residual_report_to_json(const ResidualReport& r) {
    ojson j;
    j["sup"] = scalar_to_json(r.sup);
    j["argmax"] = ojson::array({r.arg_x.get_str(), r.arg_y.get_str()});
    j["samples"] = r.samples;
    j["subsampled"] = r.subsampled;
    return j;
}

ojson series_eval_to_json(const SeriesEvaluation& ev) {
    ojson j;
    j["value"] = scalar_to_json(ev.value);
    j["tail_bound"] = scalar_to_json(ev.tail_bound);
    j["terms_used"] = ev.terms_used;
    j["closed_form"] = ev.exact_closed_form ? scalar_to_json(*ev.exact_closed_form) : ojson();
    j["printed_form"] = ev.printed_form ? scalar_to_json(*ev.printed_form) : ojson();
    j["discrepancy"] = ev.printed_form_discrepancy;
    j["rigorous"] = ev.rigorous;
    return j;
}

namespace {

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::Any: return "any";
    }
    return "any";
}

const char* status_name(IdentityCheckReport::Status s) {
    switch (s) {
        case IdentityCheckReport::Status::ExactPass: return "exact-pass";
        case IdentityCheckReport::Status::ExactFail: return "exact-fail";
        case IdentityCheckReport::Status::NumericPass: return "numeric-pass";
        case IdentityCheckReport::Status::NumericFail: return "numeric-fail";
    }
    return "?";
}

}  // namespace

ojson identity_report_to_json(const IdentityCheckReport& rep, Parity parity) {
    ojson j;
    j["label"] = rep.label;
    j["parity"] = parity_name(parity);
    j["status"] = status_name(rep.status);
    j["residual"] = rep.residual ? ojson(rep.residual->str()) : ojson();
    j["max_abs"] = rep.max_abs ? scalar_to_json(*rep.max_abs) : ojson();
    if (rep.argmax)
        j["argmax"] = ojson::array({rep.argmax->first.get_str(), rep.argmax->second.get_str()});
    else
        j["argmax"] = ojson();
    j["samples"] = rep.samples;
    return j;
}

ojson stabilization_report_to_json(const StabilizationReport& rep) {
    ojson j;
    j["a_quartic"] = scalar_to_json(rep.a_quartic);
    j["b_cubic"] = scalar_to_json(rep.b_cubic);
    j["direction"] = rep.direction.s;
    ojson q;
    q["status"] = to_string(rep.status_quartic);
    q["converged"] = rep.converged_quartic;
    q["iterations"] = rep.iterations_quartic;
    q["cross_check_deviation"] = rep.cross_check_quartic;
    j["quartic_extraction"] = std::move(q);
    ojson c;
    c["status"] = to_string(rep.status_cubic);
    c["converged"] = rep.converged_cubic;
    c["iterations"] = rep.iterations_cubic;
    c["cross_check_deviation"] = rep.cross_check_cubic;
    j["cubic_extraction"] = std::move(c);
    j["grid_error"] = scalar_to_json(rep.grid_error);
    j["grid_error_at"] = rep.grid_error_at.get_str();
    j["bound"] = scalar_to_json(rep.bound);
    j["margin"] = scalar_to_json(rep.margin);
    j["pointwise_margin"] = scalar_to_json(rep.pointwise_margin);
    j["residual_sup"] = scalar_to_json(rep.residual_sup);
    j["residual_samples"] = rep.residual_samples;
    j["residual_violations"] = rep.residual_violations;
    j["hypothesis_ok"] = rep.hypothesis_ok;
    return j;
}

namespace {

std::string md_value(const ojson& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_object(const ojson& obj, std::ostringstream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [key, val] : obj.items()) {
        if (val.is_object()) {
            out << pad << "- **" << key << "**:\n";
            render_object(val, out, indent + 1);
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            continue;  // tables are rendered separately
        } else {
            out << pad << "- **" << key << "**: " << md_value(val) << "\n";
        }
    }
}

}  // namespace

std::string render_markdown(const ojson& report) {
    std::ostringstream out;
    out << "# festab " << report.value("command", std::string("run")) << " report\n\n";
    out << "**status**: " << report.value("status", std::string("?")) << "\n\n";
    if (report.contains("failure") && !report.at("failure").is_null() &&
        report.at("failure") != "")
        out << "**failure**: " << md_value(report.at("failure")) << "\n\n";

    if (report.contains("results")) {
        const ojson& res = report.at("results");
        out << "## results\n\n";
        if (res.is_object()) {
            render_object(res, out, 0);
            // Any array of uniform objects becomes a table.
            for (const auto& [key, val] : res.items()) {
                if (!val.is_array() || val.empty() || !val.front().is_object()) continue;
                out << "\n### " << key << "\n\n";
                std::vector<std::string> cols;
                for (const auto& [col, _] : val.front().items()) cols.push_back(col);
                out << "|";
                for (const auto& c : cols) out << " " << c << " |";
                out << "\n|";
                for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
                out << "\n";
                for (const auto& row : val) {
                    out << "|";
                    for (const auto& c : cols)
                        out << " " << (row.contains(c) ? md_value(row.at(c)) : "-") << " |";
                    out << "\n";
                }
            }
        }
    }
    if (report.contains("config")) {
        out << "\n## config\n\n```json\n" << report.at("config").dump(2) << "\n```\n";
    }
    return out.str();
}

}  // namespace festab
