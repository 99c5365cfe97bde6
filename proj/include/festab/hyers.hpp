#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "festab/bounds.hpp"
#include "festab/diffop.hpp"
#include "festab/function_model.hpp"
#include "festab/grid.hpp"
#include "festab/scalar.hpp"

namespace festab {

struct ConvergenceCriteria {
    int max_iterations = 40;
    double tol = 1e-9;
    int stall_window = 5;
};

enum class ExtractionStatus { Converged, Diverged, Stalled, IterationLimit };

const char* to_string(ExtractionStatus s);

struct ExtractionResult {
    Scalar coefficient;                // limit value at x = 1
    ExtractionStatus status = ExtractionStatus::IterationLimit;
    bool converged = false;
    int iterations_used = 0;
    double last_delta = 0.0;           // final max |A_{n+1} - A_n| over the grid
    double cross_check_deviation = 0.0;
    std::vector<Scalar> grid_limits;   // final approximant per grid point
};

// The scaled iterates whose limits recover the solution components:
//   quartic: 2^{4sn} f(x / 2^{sn})      cubic: 2^{3sn} f(x / 2^{sn})
// s=+1 halves the argument, s=-1 doubles it.
Scalar quartic_approximant(const FunctionModel& f, const Scalar& x, int n, Direction s);
Scalar cubic_approximant(const FunctionModel& f, const Scalar& x, int n, Direction s);

// Runs the degree-3 or degree-4 iteration until the grid-wide step delta
// drops below tol, reporting Diverged on sustained growth and Stalled at a
// noise floor.  The caller is expected to feed a parity-pure f (even for
// degree 4, odd for degree 3), typically via decompose_parity or the
// on-the-fly parity views.
ExtractionResult extract_component(const FunctionModel& f, int degree, const SampleGrid& grid,
                                   Direction s, const ConvergenceCriteria& crit);

// Same iteration over an arbitrary evaluator (used internally for parity
// views of closed-form models, which must escape any finite grid).
using PointFunction = std::function<Scalar(const Scalar&)>;
ExtractionResult extract_limit(const PointFunction& f, int degree,
                               const std::vector<mpq_class>& grid_points, Direction s,
                               const ConvergenceCriteria& crit, Scalar::Mode mode);

struct StabilizationReport {
    Scalar a_quartic;           // extracted coefficient of x^4
    Scalar b_cubic;             // extracted coefficient of x^3
    ExtractionStatus status_quartic = ExtractionStatus::IterationLimit;
    ExtractionStatus status_cubic = ExtractionStatus::IterationLimit;
    bool converged_quartic = false;
    bool converged_cubic = false;
    int iterations_quartic = 0;
    int iterations_cubic = 0;
    double cross_check_quartic = 0.0;
    double cross_check_cubic = 0.0;

    Scalar grid_error;          // sup |f - a x^4 - b x^3| over the grid
    mpq_class grid_error_at;
    Scalar bound;               // max combined series bound over the grid
    Scalar margin;              // bound - grid_error
    Scalar pointwise_margin;    // min over the grid of bound(x) - error(x)

    Direction direction;
    Scalar residual_sup;        // measured sup |D_f| over sampled pairs
    std::size_t residual_samples = 0;
    std::size_t residual_violations = 0;  // pairs with |D_f| > phi
    bool hypothesis_ok = true;

    bool converged() const { return converged_quartic && converged_cubic; }
};

struct StabilizeOptions {
    std::optional<Direction> direction;  // empty = auto via select_direction
    ConvergenceCriteria criteria;
    SupOptions residual_opts;
    bool check_hypothesis = true;
    double series_tol = 1e-12;
};

// End-to-end extraction: parity-split f, pull out the quartic and cubic
// coefficients by the direct method, measure sup |f - a x^4 - b x^3| on the
// grid and compare against the bound series of the control function.
// Requires f(0) = 0 (NotAnchored otherwise).
StabilizationReport stabilize(const FunctionModel& f, const ControlFunction& phi,
                              const SampleGrid& grid, const StabilizeOptions& opts = {});

// For exact solutions only: a = f_e(1), b = f_o(1), so that
// f(x) = a x^4 + b x^3.  Throws NotASolution when the residual is nonzero
// (symbolically for polynomials, on a default grid otherwise).
std::pair<Scalar, Scalar> recover_coefficients(const FunctionModel& f);

}  // namespace festab
