#include "festab/hyers.hpp"

#include <algorithm>
#include <cmath>

namespace festab {

const char* to_string(ExtractionStatus s) {
    switch (s) {
        case ExtractionStatus::Converged: return "converged";
        case ExtractionStatus::Diverged: return "diverged";
        case ExtractionStatus::Stalled: return "stalled";
        case ExtractionStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

namespace {

Scalar scaled_iterate(const PointFunction& f, const Scalar& x, int n, int degree, Direction s,
                      Scalar::Mode mode) {
    const long shift = static_cast<long>(s.s) * n;
    const Scalar arg = x * pow2(-shift, mode);
    try {
        return pow2(static_cast<long>(degree) * shift, mode) * f(arg);
    } catch (const TabulatedMiss& e) {
        throw OutOfDomain(std::string("iterate escaped the tabulated domain: ") + e.what());
    }
}

PointFunction model_fn(const FunctionModel& f) {
    return [&f](const Scalar& x) { return f.eval(x); };
}

}  // namespace

Scalar quartic_approximant(const FunctionModel& f, const Scalar& x, int n, Direction s) {
    if (n < 0) throw Error("approximant index must be nonnegative");
    return scaled_iterate(model_fn(f), x, n, 4, s, x.mode());
}

Scalar cubic_approximant(const FunctionModel& f, const Scalar& x, int n, Direction s) {
    if (n < 0) throw Error("approximant index must be nonnegative");
    return scaled_iterate(model_fn(f), x, n, 3, s, x.mode());
}

ExtractionResult extract_limit(const PointFunction& f, int degree,
                               const std::vector<mpq_class>& grid_points, Direction s,
                               const ConvergenceCriteria& crit, Scalar::Mode mode) {
    if (degree != 3 && degree != 4) throw Error("component degree must be 3 or 4");
    if (crit.max_iterations < 1) throw Error("max_iterations must be >= 1");
    if (!(crit.tol > 0)) throw Error("tolerance must be positive");

    // Probe points: the coefficient is read off at x=1 and cross-checked at
    // -1 and 1/2.  The grid rides along for the convergence sweep.
    std::vector<Scalar> track;
    const std::size_t nprobe = 3;
    track.push_back(Scalar::one(mode));
    track.push_back(-Scalar::one(mode));
    track.push_back(Scalar::one(mode) / Scalar::integer(2, mode));
    for (const auto& p : grid_points)
        track.push_back(mode == Scalar::Mode::Exact ? Scalar::exact(p)
                                                    : Scalar::real(mpq_class(p).get_d()));

    ExtractionResult res;
    const auto sweep = [&](int n, std::vector<Scalar>& out) {
        out.clear();
        out.reserve(track.size());
        for (const auto& x : track) out.push_back(scaled_iterate(f, x, n, degree, s, mode));
    };

    std::vector<Scalar> prev, cur;
    sweep(0, prev);

    double best_delta = std::numeric_limits<double>::infinity();
    double prev_delta = std::numeric_limits<double>::infinity();
    int non_improving = 0;

    for (int n = 0; n < crit.max_iterations; ++n) {
        sweep(n + 1, cur);

        double delta = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double d = (cur[i] - prev[i]).abs().dbl();
            if (!std::isfinite(d) || !std::isfinite(cur[i].dbl())) finite = false;
            delta = std::max(delta, d);
        }
        res.iterations_used = n;
        res.last_delta = delta;

        if (!finite || std::abs(cur[0].dbl()) > 1e100) {
            res.status = ExtractionStatus::Diverged;
            break;
        }
        if (delta < crit.tol) {
            res.status = ExtractionStatus::Converged;
            res.converged = true;
            break;
        }
        non_improving = delta >= prev_delta ? non_improving + 1 : 0;
        best_delta = std::min(best_delta, delta);
        if (non_improving >= crit.stall_window) {
            res.status = delta > 10.0 * best_delta ? ExtractionStatus::Diverged
                                                   : ExtractionStatus::Stalled;
            break;
        }
        prev_delta = delta;
        prev.swap(cur);
    }
    if (cur.empty()) cur = prev;

    res.coefficient = cur[0];
    res.grid_limits.assign(cur.begin() + nprobe, cur.end());

    if (res.converged) {
        // A degree-k limit is determined by one value: A(-1) and A(1/2)
        // must agree with the coefficient after unscaling.
        const Scalar sign = Scalar::integer(degree == 4 ? 1 : -1, mode);
        const Scalar from_neg = cur[1] * sign;
        const Scalar from_half = cur[2] * pow2(degree, mode);
        const double dev = std::max((from_neg - res.coefficient).abs().dbl(),
                                    (from_half - res.coefficient).abs().dbl());
        res.cross_check_deviation = dev;
        const double scale = 1.0 + std::abs(res.coefficient.dbl());
        if (dev > std::max(100.0 * crit.tol, 1e-9 * scale)) res.converged = false;
    }
    return res;
}

ExtractionResult extract_component(const FunctionModel& f, int degree, const SampleGrid& grid,
                                   Direction s, const ConvergenceCriteria& crit) {
    if (!f.origin_anchored()) throw NotAnchored("component extraction requires f(0) = 0");
    const auto mode = f.exact_capable() ? Scalar::Mode::Exact : Scalar::Mode::Float;
    return extract_limit(model_fn(f), degree, grid.points(), s, crit, mode);
}

namespace {

// Max of the combined bound over the grid and the matching margins.
struct BoundSweep {
    Scalar bound;
    Scalar pointwise_margin;
    mpq_class worst_at;
};

}  // namespace

StabilizationReport stabilize(const FunctionModel& f, const ControlFunction& phi,
                              const SampleGrid& grid, const StabilizeOptions& opts) {
    if (!f.origin_anchored()) throw NotAnchored("stabilization requires f(0) = 0");

    StabilizationReport rep;
    rep.direction = opts.direction ? *opts.direction : select_direction(phi);

    const bool exact = f.exact_capable() && phi.exact_capable();
    const auto mode = exact ? Scalar::Mode::Exact : Scalar::Mode::Float;

    // Hypothesis |D_f| <= phi over the sampled pairs; violations downgrade
    // the report but do not stop the extraction.
    if (opts.check_hypothesis) {
        const ResidualReport rr = sup_residual(f, grid, opts.residual_opts);
        rep.residual_sup = rr.sup;
        rep.residual_samples = rr.samples;
        const auto& pts = grid.points();
        for (const std::size_t k : sampled_pair_indices(pts.size(), opts.residual_opts)) {
            const mpq_class& px = pts[k / pts.size()];
            const mpq_class& py = pts[k % pts.size()];
            const Scalar d =
                residual_at(f, natural_argument(f, px), natural_argument(f, py)).abs();
            Scalar bound_here;
            try {
                bound_here = phi.eval(Scalar::exact(px), Scalar::exact(py));
            } catch (const DomainError&) {
                continue;  // negative exponents exclude zero arguments
            }
            if (d.dbl() > bound_here.dbl()) ++rep.residual_violations;
        }
        rep.hypothesis_ok = rep.residual_violations == 0;
    } else {
        rep.residual_sup = Scalar::zero(mode);
        rep.hypothesis_ok = true;
    }

    const PointFunction even = [&f](const Scalar& x) { return eval_even_part(f, x); };
    const PointFunction odd = [&f](const Scalar& x) { return eval_odd_part(f, x); };

    ExtractionResult eq =
        extract_limit(even, 4, grid.points(), rep.direction, opts.criteria, mode);
    ExtractionResult ec =
        extract_limit(odd, 3, grid.points(), rep.direction, opts.criteria, mode);

    rep.a_quartic = eq.coefficient;
    rep.b_cubic = ec.coefficient;
    rep.status_quartic = eq.status;
    rep.status_cubic = ec.status;
    rep.converged_quartic = eq.converged;
    rep.converged_cubic = ec.converged;
    rep.iterations_quartic = eq.iterations_used;
    rep.iterations_cubic = ec.iterations_used;
    rep.cross_check_quartic = eq.cross_check_deviation;
    rep.cross_check_cubic = ec.cross_check_deviation;

    // Grid error sup |f - a x^4 - b x^3| and the bound sweep.
    bool err_first = true;
    bool bound_first = true;
    for (const auto& p : grid.points()) {
        const Scalar x = mode == Scalar::Mode::Exact ? Scalar::exact(p)
                                                     : Scalar::real(mpq_class(p).get_d());
        const Scalar fitted = rep.a_quartic * x.pow_int(4) + rep.b_cubic * x.pow_int(3);
        const Scalar err = (f.eval(x) - fitted).abs();
        if (err_first || err > rep.grid_error) {
            rep.grid_error = err;
            rep.grid_error_at = p;
            err_first = false;
        }

        Scalar bound_here;
        try {
            bound_here = combined_bound(phi, x, rep.direction, opts.series_tol).total();
        } catch (const DomainError&) {
            continue;  // bound blows up at 0 for negative exponents; error there is 0
        }
        const Scalar m = bound_here - err;
        if (bound_first || bound_here > rep.bound) rep.bound = bound_here;
        if (bound_first || m < rep.pointwise_margin) rep.pointwise_margin = m;
        bound_first = false;
    }
    rep.margin = rep.bound - rep.grid_error;
    return rep;
}

std::pair<Scalar, Scalar> recover_coefficients(const FunctionModel& f) {
    if (f.kind() == FunctionModel::Kind::Polynomial) {
        if (!symbolic_residual(f).is_zero())
            throw NotASolution("polynomial does not solve the functional equation");
        const Scalar one = Scalar::one(Scalar::Mode::Exact);
        return {eval_even_part(f, one), eval_odd_part(f, one)};
    }

    // Non-polynomial models: sample the residual on a default grid.
    const SampleGrid probe = SampleGrid::dyadic(mpq_class(-1), mpq_class(1), 3);
    const auto mode = f.exact_capable() ? Scalar::Mode::Exact : Scalar::Mode::Float;
    for (const auto& px : probe.points()) {
        for (const auto& py : probe.points()) {
            Scalar d;
            try {
                d = residual_at(f, natural_argument(f, px), natural_argument(f, py)).abs();
            } catch (const TabulatedMiss&) {
                continue;  // composite argument outside the table: unverifiable pair
            }
            const bool zero = mode == Scalar::Mode::Exact ? d.is_zero() : d.dbl() <= 1e-12;
            if (!zero) throw NotASolution("sampled residual is nonzero at (" + px.get_str() +
                                          ", " + py.get_str() + ")");
        }
    }
    const Scalar one = Scalar::one(mode);
    return {eval_even_part(f, one), eval_odd_part(f, one)};
}

}  // namespace festab
