#include "festab/bounds.hpp"

#include <cmath>
#include <vector>

namespace festab {

namespace {

bool integral_exponent(double q, long* out = nullptr) {
    if (!std::isfinite(q) || q != std::rint(q) || std::abs(q) > 1e6) return false;
    if (out) *out = static_cast<long>(q);
    return true;
}

// |t|^q with the |t|^0 = 1 convention; 0 with a negative exponent raises
// DomainError.  Exact result only for integral q and exact t.
Scalar pow_abs(const Scalar& t, double q, Scalar::Mode mode) {
    long k = 0;
    if (mode == Scalar::Mode::Exact) {
        if (!integral_exponent(q, &k)) throw Error("exact power needs an integer exponent");
        if (k == 0) return Scalar::exact(1L);
        if (t.is_zero()) {
            if (k < 0) throw DomainError("zero argument with negative exponent");
            return Scalar::exact(0L);
        }
        return Scalar::exact(mpq_pow_int(abs(t.exact_value()), k));
    }
    const double td = std::abs(t.dbl());
    if (q == 0.0) return Scalar::real(1.0);
    if (td == 0.0) {
        if (q < 0.0) throw DomainError("zero argument with negative exponent");
        return Scalar::real(0.0);
    }
    return Scalar::real(std::pow(td, q));
}

}  // namespace

ControlFunction ControlFunction::constant(Scalar eps) {
    if (eps.sign() < 0) throw Error("control function must be nonnegative");
    ControlFunction c;
    c.kind_ = Kind::Constant;
    c.theta_ = std::move(eps);
    return c;
}

ControlFunction ControlFunction::power_sum(Scalar theta, double p) {
    if (theta.sign() < 0) throw Error("control function must be nonnegative");
    if (!std::isfinite(p)) throw Error("exponent must be finite");
    ControlFunction c;
    c.kind_ = Kind::PowerSum;
    c.theta_ = std::move(theta);
    c.p_ = p;
    return c;
}

ControlFunction ControlFunction::product_sum(Scalar theta, double u, double v, double p) {
    if (theta.sign() < 0) throw Error("control function must be nonnegative");
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(p))
        throw Error("exponents must be finite");
    ControlFunction c;
    c.kind_ = Kind::ProductSum;
    c.theta_ = std::move(theta);
    c.u_ = u;
    c.v_ = v;
    c.p_ = p;
    return c;
}

ControlFunction ControlFunction::custom(std::function<double(double, double)> eval) {
    if (!eval) throw Error("custom control needs an evaluator");
    ControlFunction c;
    c.kind_ = Kind::Custom;
    c.custom_ = std::move(eval);
    return c;
}

bool ControlFunction::exact_capable() const {
    if (!theta_.is_exact()) return false;
    switch (kind_) {
        case Kind::Constant: return true;
        case Kind::PowerSum: return integral_exponent(p_);
        case Kind::ProductSum:
            return integral_exponent(p_) && integral_exponent(u_) && integral_exponent(v_);
        case Kind::Custom: return false;
    }
    return false;
}

Scalar ControlFunction::eval(const Scalar& x, const Scalar& y) const {
    if (kind_ == Kind::Custom) {
        const double v = custom_(x.dbl(), y.dbl());
        if (!(v >= 0.0)) throw Error("custom control returned a negative or NaN value");
        return Scalar::real(v);
    }
    const bool exact = exact_capable() && x.is_exact() && y.is_exact();
    const auto mode = exact ? Scalar::Mode::Exact : Scalar::Mode::Float;
    const Scalar th = exact ? theta_ : Scalar::real(theta_.dbl());
    const Scalar xx = exact ? x : x.to_float();
    const Scalar yy = exact ? y : y.to_float();
    switch (kind_) {
        case Kind::Constant:
            return th;
        case Kind::PowerSum:
            return th * (pow_abs(xx, p_, mode) + pow_abs(yy, p_, mode));
        case Kind::ProductSum:
            return th * (pow_abs(xx, u_, mode) * pow_abs(yy, v_, mode) + pow_abs(xx, p_, mode) +
                         pow_abs(yy, p_, mode));
        case Kind::Custom: break;
    }
    throw Error("unreachable control kind");
}

Scalar phi_eval(const ControlFunction& phi, const Scalar& x, const Scalar& y) {
    return phi.eval(x, y);
}

namespace {

// w -> phi(0, w) decomposed into sum of c * |w|^q pieces.  The zero slot
// follows the nonzero-argument caveat for negative exponents: terms that
// would evaluate |0|^q with q != 0 contribute nothing.
struct WeightComponent {
    Scalar coeff;
    double exponent;
};

std::vector<WeightComponent> series_weight(const ControlFunction& phi) {
    std::vector<WeightComponent> out;
    const Scalar& th = phi.theta();
    switch (phi.kind()) {
        case ControlFunction::Kind::Constant:
            out.push_back({th, 0.0});
            break;
        case ControlFunction::Kind::PowerSum:
            if (phi.p() == 0.0) {
                out.push_back({th + th, 0.0});
            } else {
                out.push_back({th, phi.p()});
            }
            break;
        case ControlFunction::Kind::ProductSum:
            if (phi.u() == 0.0) out.push_back({th, phi.v()});
            if (phi.p() == 0.0) {
                out.push_back({th + th, 0.0});
            } else {
                out.push_back({th, phi.p()});
            }
            break;
        case ControlFunction::Kind::Custom:
            throw Error("custom control has no weight decomposition");
    }
    return out;
}

struct GeomTerm {
    Scalar first;  // value of the earliest term
    Scalar ratio;  // successive-term ratio, must be < 1 to converge
};

// One geometric strand of the degree-d series for weight c*|w|^q:
//   s=+1: sum_{j>=1} c |x|^q 2^{-q} (2^{d-q})^{j-1}
//   s=-1: sum_{j>=0} (c |x|^q / 2^d) (2^{q-d})^j
GeomTerm geometric_strand(const WeightComponent& comp, const Scalar& x, Direction s, int degree,
                          Scalar::Mode mode) {
    const Scalar c = mode == Scalar::Mode::Exact ? comp.coeff : Scalar::real(comp.coeff.dbl());
    const Scalar xq = pow_abs(x, comp.exponent, mode);
    GeomTerm g;
    if (mode == Scalar::Mode::Exact) {
        long q = 0;
        integral_exponent(comp.exponent, &q);
        if (s.s > 0) {
            g.first = c * xq * pow2(-q, mode);
            g.ratio = pow2(degree - q, mode);
        } else {
            g.first = c * xq * pow2(-degree, mode);
            g.ratio = pow2(q - degree, mode);
        }
    } else {
        const double q = comp.exponent;
        if (s.s > 0) {
            g.first = c * xq * Scalar::real(std::pow(2.0, -q));
            g.ratio = Scalar::real(std::pow(2.0, degree - q));
        } else {
            g.first = c * xq * Scalar::real(std::pow(2.0, -static_cast<double>(degree)));
            g.ratio = Scalar::real(std::pow(2.0, q - degree));
        }
    }
    return g;
}

SeriesEvaluation sum_strands(const std::vector<GeomTerm>& strands, Scalar::Mode mode,
                             double tol) {
    const Scalar one = Scalar::one(mode);
    for (const auto& g : strands)
        if (!g.first.is_zero() && g.ratio >= one)
            throw DivergentSeries("bound series ratio >= 1");

    SeriesEvaluation ev;
    ev.value = Scalar::zero(mode);
    ev.tail_bound = Scalar::zero(mode);

    // Exact infinite sum of each strand.
    Scalar closed = Scalar::zero(mode);
    for (const auto& g : strands)
        if (!g.first.is_zero()) closed = closed + g.first / (one - g.ratio);
    ev.exact_closed_form = closed;

    std::vector<Scalar> term(strands.size());
    for (std::size_t m = 0; m < strands.size(); ++m) term[m] = strands[m].first;

    double compensation = 0.0;  // float mode only
    const int max_terms = 1 << 16;
    for (int n = 0; n < max_terms; ++n) {
        Scalar step = Scalar::zero(mode);
        for (const auto& t : term) step = step + t;
        if (mode == Scalar::Mode::Float) {
            // Kahan update keeps long float sums honest.
            const double y = step.dbl() - compensation;
            const double t = ev.value.dbl() + y;
            compensation = (t - ev.value.dbl()) - y;
            ev.value = Scalar::real(t);
        } else {
            ev.value = ev.value + step;
        }
        ev.terms_used = n + 1;
        for (std::size_t m = 0; m < strands.size(); ++m)
            term[m] = term[m] * strands[m].ratio;

        Scalar tail = Scalar::zero(mode);
        for (std::size_t m = 0; m < strands.size(); ++m)
            if (!term[m].is_zero()) tail = tail + term[m] / (one - strands[m].ratio);
        ev.tail_bound = tail;
        if (tail.dbl() <= tol * ev.value.dbl() || step.is_zero()) break;
    }
    return ev;
}

SeriesEvaluation series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                              int degree, double tol);

// Literal term-by-term evaluation for custom controls; the tail certificate
// comes from an empirical ratio probe and is flagged non-rigorous.
SeriesEvaluation custom_series(const ControlFunction& phi, const Scalar& x, Direction s,
                               int degree, double tol, bool combined) {
    const double xd = x.dbl();
    const auto term_at = [&](int j) -> double {
        // s=+1: index j>=1 with weight 2^{d j}/2^d; s=-1: j>=0 with 2^{-d j}/2^d.
        const int jj = s.s > 0 ? j + 1 : j;
        const double arg = s.s > 0 ? std::ldexp(xd, -jj) : std::ldexp(xd, jj);
        if (combined) {
            const double w = phi.eval(Scalar::real(0.0), Scalar::real(arg)).dbl() +
                             phi.eval(Scalar::real(0.0), Scalar::real(-arg)).dbl();
            const double q4 = std::ldexp(1.0, 4 * s.s * jj) / 32.0;
            const double q3 = std::ldexp(1.0, 3 * s.s * jj) / 16.0;
            return (q4 + q3) * w;
        }
        const double w = phi.eval(Scalar::real(0.0), Scalar::real(arg)).dbl();
        return std::ldexp(1.0, degree * s.s * jj) / std::ldexp(1.0, degree) * w;
    };

    // Ratio probe over a window of 64 terms.
    double worst_ratio = 0.0;
    double prev = term_at(0);
    for (int j = 1; j < 64; ++j) {
        const double cur = term_at(j);
        if (!std::isfinite(cur)) throw DivergentSeries("custom series term overflow");
        if (prev > 0.0 && j >= 32) worst_ratio = std::max(worst_ratio, cur / prev);
        prev = cur;
    }
    if (worst_ratio >= 1.0) throw DivergentSeries("custom series fails the empirical ratio test");

    SeriesEvaluation ev;
    ev.rigorous = false;
    ev.value = Scalar::real(0.0);
    double sum = 0.0, comp = 0.0, t = 0.0;
    const int max_terms = 1 << 14;
    for (int j = 0; j < max_terms; ++j) {
        t = term_at(j);
        const double y = t - comp;
        const double ss = sum + y;
        comp = (ss - sum) - y;
        sum = ss;
        ev.terms_used = j + 1;
        const double tail = worst_ratio < 1.0 ? t * worst_ratio / (1.0 - worst_ratio) : 0.0;
        ev.tail_bound = Scalar::real(tail);
        if (tail <= tol * sum || t == 0.0) break;
    }
    ev.value = Scalar::real(sum);
    return ev;
}

SeriesEvaluation series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                              int degree, double tol) {
    if (phi.kind() == ControlFunction::Kind::Custom)
        return custom_series(phi, x, s, degree, tol, /*combined=*/false);

    const bool exact = phi.exact_capable() && x.is_exact();
    const auto mode = exact ? Scalar::Mode::Exact : Scalar::Mode::Float;
    const Scalar xx = exact ? x : x.to_float();

    std::vector<GeomTerm> strands;
    for (const auto& comp : series_weight(phi))
        strands.push_back(geometric_strand(comp, xx, s, degree, mode));
    return sum_strands(strands, mode, tol);
}

}  // namespace

SeriesEvaluation quartic_series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                      double tol) {
    return series_bound(phi, x, s, 4, tol);
}

SeriesEvaluation cubic_series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                    double tol) {
    return series_bound(phi, x, s, 3, tol);
}

SeriesEvaluation combined_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                double tol) {
    SeriesEvaluation ev;
    if (phi.kind() == ControlFunction::Kind::Custom) {
        ev = custom_series(phi, x, s, 0, tol, /*combined=*/true);
    } else {
        // Built-in controls are symmetric in the series slot, so the combined
        // series splits exactly into the quartic and cubic parts.
        const SeriesEvaluation q = series_bound(phi, x, s, 4, tol);
        const SeriesEvaluation c = series_bound(phi, x, s, 3, tol);
        ev.value = q.value + c.value;
        ev.tail_bound = q.tail_bound + c.tail_bound;
        ev.terms_used = std::max(q.terms_used, c.terms_used);
        ev.rigorous = q.rigorous && c.rigorous;
        if (q.exact_closed_form && c.exact_closed_form)
            ev.exact_closed_form = *q.exact_closed_form + *c.exact_closed_form;
    }

    // Attach the printed corollary form when the control admits one; flag
    // disagreement instead of asserting either side.
    try {
        const Scalar printed = closed_form_bound(phi, x);
        ev.printed_form = printed;
        const Scalar total = ev.total();
        if (ev.exact_closed_form && ev.exact_closed_form->is_exact() && printed.is_exact()) {
            ev.printed_form_discrepancy = !(*ev.exact_closed_form == printed);
        } else {
            const double a = ev.exact_closed_form ? ev.exact_closed_form->dbl() : total.dbl();
            const double b = printed.dbl();
            const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            ev.printed_form_discrepancy = std::abs(a - b) > 1e-9 * scale;
        }
    } catch (const InadmissibleControl&) {
        // Explicitly chosen direction outside the corollary range: series
        // stands on its own.
    } catch (const Error&) {
    }
    return ev;
}

Direction select_direction(const ControlFunction& phi) {
    std::vector<double> exponents;
    switch (phi.kind()) {
        case ControlFunction::Kind::Constant:
            exponents = {0.0};
            break;
        case ControlFunction::Kind::PowerSum:
            exponents = {phi.p()};
            break;
        case ControlFunction::Kind::ProductSum:
            exponents = {phi.p(), phi.u() + phi.v()};
            break;
        case ControlFunction::Kind::Custom:
            throw InadmissibleControl("custom control has no closed-form direction");
    }
    bool all_above = true, all_below = true;
    for (const double q : exponents) {
        all_above = all_above && q > 4.0;
        all_below = all_below && q < 3.0;
    }
    if (all_above) return Direction::contracting();
    if (all_below) return Direction::expanding();
    throw InadmissibleControl("control exponents fall in the dead band [3,4] or mix regimes");
}

bool convergence_precheck(const ControlFunction& phi, Direction s, int degree) {
    if (phi.kind() == ControlFunction::Kind::Custom) {
        try {
            custom_series(phi, Scalar::real(1.0), s, degree, 1e-9, false);
            return true;
        } catch (const DivergentSeries&) {
            return false;
        }
    }
    std::vector<double> exponents;
    switch (phi.kind()) {
        case ControlFunction::Kind::Constant:
            exponents = {0.0};
            break;
        case ControlFunction::Kind::PowerSum:
            exponents = {phi.p()};
            break;
        case ControlFunction::Kind::ProductSum:
            exponents = {phi.p(), phi.u() + phi.v()};
            break;
        case ControlFunction::Kind::Custom:
            return false;
    }
    for (const double q : exponents) {
        const bool ok = s.s > 0 ? q > static_cast<double>(degree) : q < static_cast<double>(degree);
        if (!ok) return false;
    }
    return true;
}

Scalar closed_form_bound(const ControlFunction& phi, const Scalar& x) {
    const Direction s = select_direction(phi);

    if (phi.kind() == ControlFunction::Kind::Constant) {
        if (phi.theta().is_exact())
            return Scalar::exact(mpq_class(22, 105)) * phi.theta();
        return Scalar::real(22.0 / 105.0 * phi.theta().dbl());
    }

    const double p = phi.p();
    long pi = 0;
    const bool exact = phi.theta().is_exact() && x.is_exact() && integral_exponent(p, &pi);
    if (exact) {
        const mpq_class two_p = mpq_pow_int(mpq_class(2), pi);
        const mpq_class g4 = s.s > 0 ? mpq_class(two_p - 16) : mpq_class(16 - two_p);
        const mpq_class g3 = s.s > 0 ? mpq_class(two_p - 8) : mpq_class(8 - two_p);
        const mpq_class coef = mpq_class(1) / g4 + mpq_class(1) / g3;
        return phi.theta() * pow_abs(x, p, Scalar::Mode::Exact) * Scalar::exact(coef);
    }
    const double two_p = std::pow(2.0, p);
    const double g4 = s.s > 0 ? two_p - 16.0 : 16.0 - two_p;
    const double g3 = s.s > 0 ? two_p - 8.0 : 8.0 - two_p;
    const double xp = pow_abs(x.is_exact() ? x.to_float() : x, p, Scalar::Mode::Float).dbl();
    return Scalar::real(phi.theta().dbl() * xp * (1.0 / g4 + 1.0 / g3));
}

}  // namespace festab
