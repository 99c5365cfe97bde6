#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "festab/errors.hpp"
#include "festab/grid.hpp"
#include "festab/scalar.hpp"

namespace festab {

using DyadicTable = std::map<mpq_class, Scalar, MpqLess>;

// One-variable function under test.  Three representations:
//   Polynomial  -- exact rational coefficients c0..cd, evaluates x in either mode;
//   Perturbed   -- base + deterministic seeded noise with |n(x)| <= delta, n(0) = 0;
//   Tabulated   -- exact point -> value table, lookup requires an exact key match.
// Models are immutable after construction; evaluation is a pure function, so
// the same model at the same point always yields the bit-identical value.
class FunctionModel {
public:
    enum class Kind { Polynomial, Perturbed, Tabulated };

    static FunctionModel polynomial(std::vector<mpq_class> coeffs);
    static FunctionModel perturbed(FunctionModel base, double delta, std::uint64_t seed);
    static FunctionModel tabulated(DyadicTable entries);

    Kind kind() const { return kind_; }

    // f(x) in the mode of x.  Perturbed models are inherently inexact and
    // reject exact-mode arguments with ModeMismatch; Tabulated models return
    // the stored value (in its stored mode) and throw TabulatedMiss when the
    // key is absent.
    Scalar eval(const Scalar& x) const;
    Scalar operator()(const Scalar& x) const { return eval(x); }

    // True when evaluation at exact rational input yields exact output.
    bool exact_capable() const;
    // f(0) == 0.
    bool origin_anchored() const;
    // Total declared noise envelope (0 for exact kinds).
    double noise_amplitude() const;

    const std::vector<mpq_class>& coefficients() const;  // Polynomial only
    const DyadicTable& entries() const;                  // Tabulated only
    const FunctionModel& base() const;                   // Perturbed only
    double delta() const;                                // Perturbed only
    std::uint64_t seed() const;                          // Perturbed only

private:
    FunctionModel() = default;

    Kind kind_ = Kind::Polynomial;
    std::vector<mpq_class> coeffs_;
    std::shared_ptr<const FunctionModel> base_;
    double delta_ = 0.0;
    std::uint64_t seed_ = 0;
    std::shared_ptr<const DyadicTable> table_;
};

FunctionModel make_polynomial(std::vector<mpq_class> coefficients);
FunctionModel make_perturbed(FunctionModel base, double delta, std::uint64_t seed);

// The noise term of Perturbed models: a pure function of the mathematical
// point value and the seed.  Counter-based generator over the canonical "p/q"
// byte encoding of the point, mapped into [-delta, delta], forced to 0 at 0.
double perturbation_noise(const mpq_class& point, std::uint64_t seed, double delta);

// f_e(x) = (f(x) + f(-x))/2 and f_o(x) = (f(x) - f(-x))/2, evaluated on the
// fly.  These views let the direct-method iteration leave any finite grid.
Scalar eval_even_part(const FunctionModel& f, const Scalar& x);
Scalar eval_odd_part(const FunctionModel& f, const Scalar& x);

// Tabulates both parity parts of f on a symmetric grid.
// Throws AsymmetricGrid when the grid is not closed under negation.
std::pair<FunctionModel, FunctionModel> decompose_parity(const FunctionModel& f,
                                                         const SampleGrid& grid);

struct GridExtremum {
    Scalar value;    // max |f(x)| over the grid
    mpq_class at;    // smallest point attaining it
};

GridExtremum sup_norm_on_grid(const FunctionModel& f, const SampleGrid& grid);

// Evaluation argument in the model's natural mode: exact when the model is
// exact-capable, demoted to float otherwise.
Scalar natural_argument(const FunctionModel& f, const mpq_class& x);

}  // namespace festab
