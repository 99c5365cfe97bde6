#include "festab/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "festab/commands.hpp"
#include "festab/hyers.hpp"

namespace festab::accept {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

bool rel_close(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale;
}

struct Check {
    bool ok = true;
    ojson notes = ojson::object();

    void require(bool cond, const std::string& what) {
        notes[what] = cond;
        ok = ok && cond;
    }
};

// 100 pseudo-random rational pairs (a, b) with numerators and denominators
// up to 1e6 must be annihilated symbolically.
ScenarioOutcome kernel_annihilation() {
    Check c;
    std::uint64_t state = 0x6b5dca2e1f304a77ull;
    const auto draw = [&]() -> mpq_class {
        state = splitmix64(state);
        const long num = static_cast<long>(state % 2000001ull) - 1000000L;  // [-1e6, 1e6]
        state = splitmix64(state);
        const long den = static_cast<long>(state % 1000000ull) + 1L;  // [1, 1e6]
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };
    int annihilated = 0;
    for (int i = 0; i < 100; ++i) {
        const mpq_class a = draw(), b = draw();
        const FunctionModel f = make_polynomial({0, 0, 0, b, a});
        if (symbolic_residual(f).is_zero()) ++annihilated;
    }
    c.notes["annihilated"] = annihilated;
    c.require(annihilated == 100, "all 100 random a*x^4 + b*x^3 annihilated exactly");
    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// Frozen fingerprints of the two canonical non-solutions.
ScenarioOutcome non_solution_fingerprints() {
    Check c;
    const BivariatePoly rx2 = symbolic_residual(make_polynomial({0, 0, 1}));
    const BivariatePoly expected_x2 =
        BivariatePoly::monomial(72, 2, 0) + BivariatePoly::monomial(12, 0, 2);
    c.notes["residual_x2"] = rx2.str();
    c.require(rx2 == expected_x2, "D on x^2 equals 72x^2 + 12y^2 exactly");

    const BivariatePoly rx1 = symbolic_residual(make_polynomial({0, 1}));
    const BivariatePoly expected_x1 =
        BivariatePoly::monomial(132, 1, 0) + BivariatePoly::monomial(6, 0, 1);
    c.notes["residual_x"] = rx1.str();
    c.require(rx1 == expected_x1, "D on x equals 132x + 6y exactly");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// All 40 chain identities pass on their parity's monomial; the designated
// non-solutions are rejected.
ScenarioOutcome chain_verification() {
    Check c;
    const FunctionModel x4 = make_polynomial({0, 0, 0, 0, 1});
    const FunctionModel x3 = make_polynomial({0, 0, 0, 1});
    const FunctionModel x2 = make_polynomial({0, 0, 1});
    const FunctionModel x1 = make_polynomial({0, 1});

    const auto& reg = registry();
    c.notes["registry_size"] = reg.size();
    c.require(reg.size() == 40, "registry holds exactly 40 identities");

    int even_count = 0, odd_count = 0, passes = 0;
    for (const auto& id : reg) {
        (id.parity == Parity::Even ? even_count : odd_count) += 1;
        const auto& mono = id.parity == Parity::Even ? x4 : x3;
        if (check_symbolic(id, mono).passed()) ++passes;
    }
    c.notes["even_identities"] = even_count;
    c.notes["odd_identities"] = odd_count;
    c.notes["monomial_passes"] = passes;
    c.require(even_count == 11 && odd_count == 29, "11 even and 29 odd identities");
    c.require(passes == 40, "all 40 pass symbolically on their monomial solution");

    c.require(!check_symbolic(find_identity("2.6"), x2).passed(), "2.6 rejects x^2");
    c.require(!check_symbolic(find_identity("2.26"), x1).passed(), "2.26 rejects x");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// Constant control, expanding direction: the combined bound is 22/105 eps.
ScenarioOutcome corollary_3_6() {
    Check c;
    const Scalar target = Scalar::exact(22L, 105L);

    const ControlFunction exact_phi = ControlFunction::constant(Scalar::exact(1L));
    const SeriesEvaluation ev =
        combined_bound(exact_phi, Scalar::exact(1L), Direction::expanding(), 1e-12);
    c.notes["exact_total"] = (ev.value + ev.tail_bound).str();
    c.notes["exact_closed_form"] = ev.exact_closed_form ? ev.exact_closed_form->str() : "";
    c.notes["terms_used"] = ev.terms_used;
    c.require(ev.exact_closed_form && *ev.exact_closed_form == target,
              "exact closed form equals 22/105");
    c.require(ev.value + ev.tail_bound == target, "exact partial sum plus tail equals 22/105");
    c.require(ev.printed_form && !ev.printed_form_discrepancy,
              "printed corollary form matches the series");

    const ControlFunction float_phi = ControlFunction::constant(Scalar::real(1.0));
    const SeriesEvaluation fv =
        combined_bound(float_phi, Scalar::real(1.0), Direction::expanding(), 1e-12);
    const double t = 22.0 / 105.0;
    c.notes["float_total"] = fv.total().dbl();
    c.require(rel_close(fv.total().dbl(), t, 1e-9), "float total within 1e-9 of 22/105");
    c.require(fv.exact_closed_form && rel_close(fv.exact_closed_form->dbl(), t, 1e-9),
              "float closed form within 1e-9 of 22/105");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// Power-sum control at p=5 (contracting) and p=2 (expanding) against the
// printed per-branch constants.
ScenarioOutcome corollary_3_4(int p) {
    Check c;
    const Direction dir = p > 4 ? Direction::contracting() : Direction::expanding();
    const Scalar expected = p > 4 ? Scalar::exact(1L, 16L) + Scalar::exact(1L, 24L)
                                  : Scalar::exact(1L, 12L) + Scalar::exact(1L, 4L);

    const ControlFunction phi =
        ControlFunction::power_sum(Scalar::exact(1L), static_cast<double>(p));
    const SeriesEvaluation ev = combined_bound(phi, Scalar::exact(1L), dir, 1e-12);
    c.notes["series_total"] = (ev.value + ev.tail_bound).str();
    c.notes["expected"] = expected.str();
    c.notes["terms_used"] = ev.terms_used;
    c.require(ev.value + ev.tail_bound == expected, "series total equals the printed constant");
    c.require(ev.exact_closed_form && *ev.exact_closed_form == expected,
              "closed form equals the printed constant");
    c.require(ev.tail_bound.dbl() <= 1e-12 * ev.value.dbl(),
              "tail bound certified below 1e-12 of the value");
    const Scalar printed = closed_form_bound(phi, Scalar::exact(1L));
    c.require(rel_close(printed.dbl(), expected.dbl(), 1e-9),
              "printed closed form within 1e-9 of the series");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// End-to-end desk-scale run: noisy x^4 + x^3 over [-2, 2] at depth 12.
ScenarioOutcome theorem_3_3_desk_scale() {
    Check c;
    const double delta = 1e-3;
    const FunctionModel f =
        make_perturbed(make_polynomial({0, 0, 0, 1, 1}), delta, 42);
    const SampleGrid grid = SampleGrid::dyadic(mpq_class(-2), mpq_class(2), 12);

    SupOptions sup;
    sup.max_pairs = 200000;
    sup.seed = 1;
    const ResidualReport rr = sup_residual(f, grid, sup);
    const double E = rr.sup.dbl();
    c.notes["measured_sup"] = E;
    c.notes["sampled_pairs"] = rr.samples;
    c.require(E <= 287.0 * delta, "measured sup |D_f| within the 287*delta envelope");
    c.require(E > 0.0, "noise produces a nonzero residual");

    StabilizeOptions opts;
    opts.direction = Direction::expanding();
    opts.criteria = {40, 1e-9, 5};
    opts.residual_opts = sup;
    const StabilizationReport sr = stabilize(f, ControlFunction::constant(Scalar::real(E)), grid, opts);

    const double cap = 22.0 / 105.0 * E;
    c.notes["a_quartic"] = sr.a_quartic.dbl();
    c.notes["b_cubic"] = sr.b_cubic.dbl();
    c.notes["grid_error"] = sr.grid_error.dbl();
    c.notes["bound"] = sr.bound.dbl();
    c.notes["margin"] = sr.margin.dbl();
    c.notes["hypothesis_ok"] = sr.hypothesis_ok;
    c.require(sr.converged(), "both components converged");
    c.require(std::abs(sr.a_quartic.dbl() - 1.0) <= cap, "|a - 1| within 22/105 * E");
    c.require(std::abs(sr.b_cubic.dbl() - 1.0) <= cap, "|b - 1| within 22/105 * E");
    c.require(sr.grid_error.dbl() <= cap, "grid error within 22/105 * E");
    c.require(sr.margin.dbl() >= 0.0, "margin nonnegative");
    c.require(sr.hypothesis_ok, "sampled pairs satisfy |D_f| <= phi");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// Exact parity purity: a pure quartic yields b = 0 exactly and vice versa.
ScenarioOutcome parity_purity() {
    Check c;
    const SampleGrid grid = SampleGrid::dyadic(mpq_class(-1), mpq_class(1), 4);
    StabilizeOptions opts;
    opts.criteria = {20, 1e-9, 5};

    const StabilizationReport even = stabilize(make_polynomial({0, 0, 0, 0, 7}),
                                               ControlFunction::constant(Scalar::exact(1L)),
                                               grid, opts);
    c.notes["a_of_7x4"] = even.a_quartic.str();
    c.notes["b_of_7x4"] = even.b_cubic.str();
    c.require(even.converged(), "7x^4 run converged");
    c.require(even.a_quartic.is_exact() && even.a_quartic == Scalar::exact(7L),
              "a recovered exactly as 7");
    c.require(even.b_cubic.is_exact() && even.b_cubic.is_zero(), "b is exactly zero on 7x^4");

    const StabilizationReport odd = stabilize(make_polynomial({0, 0, 0, mpq_class(-2)}),
                                              ControlFunction::constant(Scalar::exact(1L)),
                                              grid, opts);
    c.notes["a_of_-2x3"] = odd.a_quartic.str();
    c.notes["b_of_-2x3"] = odd.b_cubic.str();
    c.require(odd.converged(), "-2x^3 run converged");
    c.require(odd.a_quartic.is_exact() && odd.a_quartic.is_zero(), "a is exactly zero on -2x^3");
    c.require(odd.b_cubic.is_exact() && odd.b_cubic == Scalar::exact(-2L),
              "b recovered exactly as -2");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// The dead band p in [3,4] must be rejected, and the stabilize command must
// surface it as a config-class error rather than computing.
ScenarioOutcome gap_rejection() {
    Check c;
    for (const double p : {3.0, 3.5, 4.0}) {
        bool rejected = false;
        try {
            select_direction(ControlFunction::power_sum(Scalar::exact(1L), p));
        } catch (const InadmissibleControl&) {
            rejected = true;
        }
        c.require(rejected, "select_direction rejects p = " + shortest_double(p));
    }

    ojson config;
    config["model"] = ojson{{"kind", "poly"}, {"coeffs", {"0", "0", "0", "1", "1"}}};
    config["phi"] = ojson{{"kind", "power-sum"}, {"theta", "1"}, {"p", 3.5}};
    config["grid"] = ojson{{"lo", "-1"}, {"hi", "1"}, {"depth", 3}};
    const cli::RunReport rep = cli::cmd_stabilize(config);
    c.notes["cmd_stabilize_status"] =
        rep.status == cli::RunReport::Status::Error ? "error" : "not-error";
    c.notes["cmd_stabilize_exit_code"] = rep.exit_code();
    c.require(rep.status == cli::RunReport::Status::Error && rep.exit_code() == 2,
              "cmd_stabilize reports Error (exit 2) instead of computing");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

// Quartic scaling on cubic content doubles every step and must be flagged.
ScenarioOutcome divergence_detection() {
    Check c;
    const SampleGrid grid = SampleGrid::dyadic(mpq_class(-1), mpq_class(1), 4);
    const ExtractionResult r = extract_component(make_polynomial({0, 0, 0, 1}), 4, grid,
                                                 Direction::contracting(), {20, 1e-9, 5});
    c.notes["status"] = to_string(r.status);
    c.notes["iterations_used"] = r.iterations_used;
    c.require(r.status == ExtractionStatus::Diverged, "status is Diverged");
    c.require(r.iterations_used <= 20, "detected within 20 iterations");

    ScenarioOutcome out;
    out.details = c.notes;
    out.passed = c.ok;
    return out;
}

const std::map<std::string, std::function<ScenarioOutcome()>>& table() {
    static const std::map<std::string, std::function<ScenarioOutcome()>> t = {
        {"kernel-annihilation", kernel_annihilation},
        {"non-solution-fingerprints", non_solution_fingerprints},
        {"chain-verification", chain_verification},
        {"corollary-3.6", corollary_3_6},
        {"corollary-3.4-p5", [] { return corollary_3_4(5); }},
        {"corollary-3.4-p2", [] { return corollary_3_4(2); }},
        {"theorem-3.3-desk-scale", theorem_3_3_desk_scale},
        {"parity-purity", parity_purity},
        {"gap-rejection", gap_rejection},
        {"divergence-detection", divergence_detection},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, _] : table()) v.push_back(name);
        return v;
    }();
    return names;
}

ScenarioOutcome run_scenario(const std::string& name) {
    const auto it = table().find(name);
    if (it == table().end()) {
        std::string known;
        for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown scenario \"" + name + "\" (known: " + known + ")");
    }
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioOutcome out = it->second();
    out.name = name;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace festab::accept
