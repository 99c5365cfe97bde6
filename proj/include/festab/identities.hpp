#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "festab/bivariate_poly.hpp"
#include "festab/diffop.hpp"
#include "festab/function_model.hpp"
#include "festab/grid.hpp"
#include "festab/linear_form.hpp"

namespace festab {

enum class Parity { Even, Odd, Any };

// One step of the derivation chain: sum coeff * f(alpha*x + beta*y) == 0.
// Even-tagged identities hold for every even solution component (so for
// x^4 identically); Odd-tagged ones hold for x^3.
struct FunctionalIdentity {
    std::string label;
    Parity parity = Parity::Any;
    std::vector<LinearTerm> terms;
};

// The full 40-step chain, labels "2.1".."2.40": steps 1-11 reduce the even
// part to the quartic equation, steps 12-40 reduce the odd part to the cubic
// equation.  Construction self-checks each identity against its parity's
// monomial solution.
const std::vector<FunctionalIdentity>& registry();

// The unnumbered chain conclusions: the even chain ends in the quartic
// equation, the odd chain in four times the cubic equation.
const FunctionalIdentity& even_chain_conclusion();
const FunctionalIdentity& odd_chain_conclusion();

const FunctionalIdentity& find_identity(const std::string& label);

struct IdentityCheckReport {
    enum class Status { ExactPass, ExactFail, NumericPass, NumericFail };

    std::string label;
    Status status = Status::ExactPass;
    std::optional<BivariatePoly> residual;                   // ExactFail
    std::optional<Scalar> max_abs;                           // numeric checks
    std::optional<std::pair<mpq_class, mpq_class>> argmax;   // numeric checks
    std::size_t samples = 0;

    bool passed() const {
        return status == Status::ExactPass || status == Status::NumericPass;
    }
};

// Expands the identity over a polynomial model; ExactPass iff the expansion
// is the zero polynomial.
IdentityCheckReport check_symbolic(const FunctionalIdentity& id, const FunctionModel& f);

// Max |sum coeff * f(alpha*x+beta*y)| over sampled grid pairs vs tol.
IdentityCheckReport check_numeric(const FunctionalIdentity& id, const FunctionModel& f,
                                  const SampleGrid& grid, const Scalar& tol,
                                  const SupOptions& opts = {});

// Sharp generic tolerance: |coeff|-sum times the model's declared noise
// amplitude; exact zero for exact models.
Scalar default_numeric_tol(const FunctionalIdentity& id, const FunctionModel& f);

}  // namespace festab
