#pragma once

#include <gmpxx.h>

#include <span>

#include "festab/function_model.hpp"
#include "festab/scalar.hpp"

namespace festab {

// One term coeff * f(alpha*x + beta*y) of a two-variable functional form.
struct LinearTerm {
    mpq_class coeff;
    long alpha = 0;
    long beta = 0;
};

// Sum of all terms evaluated on f at (x, y).  Modes of x and y must match;
// the result is in that mode (integer alpha/beta keep arguments in-mode).
Scalar linear_combination_at(std::span<const LinearTerm> terms, const FunctionModel& f,
                             const Scalar& x, const Scalar& y);

// Sum of |coeff| over the terms, the triangle-inequality envelope factor.
mpq_class absolute_coefficient_sum(std::span<const LinearTerm> terms);

}  // namespace festab
