#pragma once

// Brute-force expansion oracle, deliberately independent of BivariatePoly:
// every term coeff * f(alpha*x + beta*y) is expanded monomial by monomial
// with explicit binomial coefficients into a plain std::map.  Used to check
// the symbolic residual engine against a second, dumber route.

#include <gmpxx.h>

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "festab/linear_form.hpp"

namespace festab::oracle {

using TermMap = std::map<std::pair<int, int>, mpq_class>;

inline mpz_class binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline mpz_class int_pow(long base, int e) {
    mpz_class r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// (alpha*x + beta*y)^k = sum_i C(k,i) alpha^i beta^(k-i) x^i y^(k-i)
inline void accumulate_power(TermMap& acc, const mpq_class& scale, long alpha, long beta, int k) {
    for (int i = 0; i <= k; ++i) {
        const mpq_class c = scale * mpq_class(binomial(k, i) * int_pow(alpha, i) *
                                              int_pow(beta, k - i));
        if (sgn(c) == 0) continue;
        auto [it, inserted] = acc.emplace(std::make_pair(i, k - i), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) acc.erase(it);
        }
    }
}

// Expands sum over rows of row.coeff * f(row.alpha * x + row.beta * y) for
// the univariate f with coefficients c0..cd.
inline TermMap expand(std::span<const LinearTerm> rows, const std::vector<mpq_class>& coeffs) {
    TermMap acc;
    for (const auto& row : rows)
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            accumulate_power(acc, row.coeff * coeffs[k], row.alpha, row.beta, static_cast<int>(k));
    return acc;
}

}  // namespace festab::oracle
