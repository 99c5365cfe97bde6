#pragma once

#include <functional>
#include <optional>
#include <string>

#include "festab/errors.hpp"
#include "festab/scalar.hpp"

namespace festab {

// Iteration direction of the direct method: +1 contracts arguments (x/2^n),
// -1 expands them (x*2^n).  Which one makes the bound series converge is
// dictated by the growth rate of the control function.
struct Direction {
    int s = -1;

    static Direction contracting() { return {+1}; }
    static Direction expanding() { return {-1}; }
    static Direction of(int s) {
        if (s != 1 && s != -1) throw Error("direction must be +1 or -1");
        return {s};
    }
};

// The residual envelope phi with |D_f(x,y)| <= phi(x,y):
//   Constant    phi = eps
//   PowerSum    phi = theta (|x|^p + |y|^p)
//   ProductSum  phi = theta (|x|^u |y|^v + |x|^p + |y|^p)
//   Custom      arbitrary nonnegative evaluator (float only, heuristics only)
// Convention |t|^0 = 1 everywhere; negative exponents at 0 raise DomainError.
class ControlFunction {
public:
    enum class Kind { Constant, PowerSum, ProductSum, Custom };

    static ControlFunction constant(Scalar eps);
    static ControlFunction power_sum(Scalar theta, double p);
    static ControlFunction product_sum(Scalar theta, double u, double v, double p);
    static ControlFunction custom(std::function<double(double, double)> eval);

    Kind kind() const { return kind_; }
    const Scalar& theta() const { return theta_; }
    double p() const { return p_; }
    double u() const { return u_; }
    double v() const { return v_; }

    Scalar eval(const Scalar& x, const Scalar& y) const;
    // Exact series arithmetic is possible: theta exact and exponents integral.
    bool exact_capable() const;

private:
    ControlFunction() = default;

    Kind kind_ = Kind::Constant;
    Scalar theta_;
    double p_ = 0, u_ = 0, v_ = 0;
    std::function<double(double, double)> custom_;
};

Scalar phi_eval(const ControlFunction& phi, const Scalar& x, const Scalar& y);

// Direction admissible for the combined quartic+cubic bound: s=+1 needs all
// growth exponents > 4, s=-1 needs them < 3; the band [3,4] (for any
// exponent) is rejected with InadmissibleControl.
Direction select_direction(const ControlFunction& phi);

// Ratio-test certificate that the degree-d bound series converges for this
// direction.  Closed-form for the built-in families; a 64-term empirical
// probe (heuristic, not a proof) for Custom.
bool convergence_precheck(const ControlFunction& phi, Direction s, int degree = 4);

struct SeriesEvaluation {
    Scalar value;                            // partial sum
    Scalar tail_bound;                       // certified bound on the rest
    int terms_used = 0;
    std::optional<Scalar> exact_closed_form; // infinite-sum value (built-ins)
    std::optional<Scalar> printed_form;      // corollary closed form, when one exists
    bool printed_form_discrepancy = false;   // series disagrees with printed form
    bool rigorous = true;                    // false when the ratio was probed empirically

    Scalar total() const { return value + tail_bound; }
};

// The quartic-part bound series
//   (1/16) sum_{i=(s-1)/2}^inf 2^{4s(i+1)} phi(0, x/2^{s(i+1)})
// summed until tail_bound <= tol * value.  Throws DivergentSeries when the
// ratio test fails.
SeriesEvaluation quartic_series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                      double tol = 1e-12);

// Same with base 2^3 and prefactor 1/8: the cubic-part series.
SeriesEvaluation cubic_series_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                    double tol = 1e-12);

// The combined bound series
//   sum (2^{4s(i+1)}/32 + 2^{3s(i+1)}/16) [phi(0, x/2^{s(i+1)}) + phi(0, -x/2^{s(i+1)})].
// For the built-in (symmetric) families this equals the quartic plus the
// cubic series; the printed corollary form is attached with a discrepancy
// flag instead of being asserted.
SeriesEvaluation combined_bound(const ControlFunction& phi, const Scalar& x, Direction s,
                                double tol = 1e-12);

// The printed corollary closed forms: 22/105 * eps for Constant, and
//   theta |x|^p (1/|2^p - 2^4| + 1/|2^p - 2^3|)
// on the admissible branches for PowerSum and ProductSum (the printed
// ProductSum bound carries no u,v dependence).
Scalar closed_form_bound(const ControlFunction& phi, const Scalar& x);

}  // namespace festab
