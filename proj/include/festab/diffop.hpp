#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "festab/bivariate_poly.hpp"
#include "festab/function_model.hpp"
#include "festab/grid.hpp"
#include "festab/linear_form.hpp"
#include "festab/scalar.hpp"

namespace festab {

// The mixed cubic-quartic difference operator
//   D_f(x,y) = 4[f(3x+y)+f(3x-y)] - 12[f(2x+y)+f(2x-y)] + 12[f(x+y)+f(x-y)]
//              - f(2y) + 8f(y) - 30f(2x) + 192f(x).
// D_f vanishes identically exactly when f solves the mixed equation; its
// scalar-line kernel among polynomials is span{x^4, x^3}.
//
// The ten (coeff, alpha, beta) rows below are the single source of truth for
// both the numeric and the symbolic evaluation paths.
std::span<const LinearTerm> difference_operator_terms();

// Classical quartic equation, as LHS - RHS of
//   f(x+2y) + f(x-2y) = 4(f(x+y) + f(x-y)) + 24 f(y) - 6 f(x).
std::span<const LinearTerm> quartic_operator_terms();

// Classical cubic equation, as LHS - RHS of
//   f(2x+y) + f(2x-y) = 2 f(x+y) + 2 f(x-y) + 12 f(x).
std::span<const LinearTerm> cubic_operator_terms();

// Sum of absolute operator coefficients (= 287); multiplied by a noise
// envelope it bounds how far a perturbation can move D_f.
const mpq_class& difference_operator_envelope();

Scalar residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y);
Scalar quartic_residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y);
Scalar cubic_residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y);

// D_f expanded as an exact bivariate polynomial; requires a polynomial model.
BivariatePoly symbolic_residual(const FunctionModel& f);

struct SupOptions {
    std::size_t max_pairs = 200000;  // cap on evaluated grid pairs
    std::uint64_t seed = 0;          // subsample stream seed
    int threads = 1;
};

struct ResidualReport {
    Scalar sup;                 // max |D_f| over the sampled pairs
    mpq_class arg_x, arg_y;     // smallest pair attaining it
    std::size_t samples = 0;    // pairs evaluated
    bool subsampled = false;    // true when max_pairs < full pair count
};

// Max |D_f(x,y)| over ordered grid pairs.  Beyond max_pairs the pair set is
// a deterministic seeded subsample, so reports reproduce bit-for-bit.  The
// reduction is deterministic for any thread count (ties resolve to the
// lexicographically smallest pair).
ResidualReport sup_residual(const FunctionModel& f, const SampleGrid& grid,
                            const SupOptions& opts = {});

// The pair sample sup_residual evaluates, exposed so hypothesis checks can
// visit exactly the same set.  Indices below the full ordered-pair count map
// to (points[i / n], points[i % n]).
std::vector<std::size_t> sampled_pair_indices(std::size_t point_count, const SupOptions& opts,
                                              bool* subsampled = nullptr);

}  // namespace festab
