#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <utility>

namespace festab {

// Exact bivariate polynomial over the rationals, the carrier for symbolic
// residuals.  Zero coefficients are never stored; the zero polynomial has an
// empty term map.
class BivariatePoly {
public:
    using Key = std::pair<int, int>;  // (x-degree, y-degree)
    using TermMap = std::map<Key, mpq_class>;

    BivariatePoly() = default;

    static BivariatePoly monomial(mpq_class coeff, int xdeg, int ydeg);

    // f(alpha*x + beta*y) for the univariate f with coefficients c0..cd.
    static BivariatePoly substitute_linear(std::span<const mpq_class> coeffs, long alpha,
                                           long beta);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly scaled(const mpq_class& c) const;
    BivariatePoly pow(unsigned k) const;

    bool operator==(const BivariatePoly& o) const { return terms_ == o.terms_; }

    mpq_class eval(const mpq_class& x, const mpq_class& y) const;

    // Deterministic human form, e.g. "72*x^2 + 12*y^2"; "0" when zero.
    std::string str() const;

private:
    void add_term(const Key& k, const mpq_class& c);

    TermMap terms_;
};

}  // namespace festab
