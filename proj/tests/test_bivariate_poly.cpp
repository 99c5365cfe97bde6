#include <doctest.h>

#include "festab/bivariate_poly.hpp"

using festab::BivariatePoly;

TEST_CASE("zero polynomial stores no terms") {
    BivariatePoly z;
    CHECK(z.is_zero());
    CHECK(z.terms().empty());
    CHECK(z.str() == "0");

    const BivariatePoly x = BivariatePoly::monomial(1, 1, 0);
    CHECK((x - x).is_zero());
    CHECK((x - x).terms().empty());
}

TEST_CASE("linear substitution expands binomially") {
    // f(t) = t^2 at alpha=1, beta=1: (x+y)^2
    const std::vector<mpq_class> t2 = {0, 0, 1};
    const BivariatePoly p = BivariatePoly::substitute_linear(t2, 1, 1);
    const BivariatePoly want = BivariatePoly::monomial(1, 2, 0) +
                               BivariatePoly::monomial(2, 1, 1) +
                               BivariatePoly::monomial(1, 0, 2);
    CHECK(p == want);

    // f(t) = t^3 at (2, -1): (2x - y)^3 = 8x^3 - 12x^2 y + 6x y^2 - y^3
    const std::vector<mpq_class> t3 = {0, 0, 0, 1};
    const BivariatePoly q = BivariatePoly::substitute_linear(t3, 2, -1);
    CHECK(q.eval(mpq_class(1), mpq_class(1)) == mpq_class(1));
    CHECK(q.eval(mpq_class(1, 2), mpq_class(2)) == mpq_class(-1));
    CHECK(q.terms().at({3, 0}) == mpq_class(8));
    CHECK(q.terms().at({2, 1}) == mpq_class(-12));
}

TEST_CASE("arithmetic is exact") {
    const BivariatePoly a = BivariatePoly::monomial(mpq_class(1, 3), 1, 1);
    const BivariatePoly b = BivariatePoly::monomial(mpq_class(1, 6), 1, 1);
    CHECK((a + b) == BivariatePoly::monomial(mpq_class(1, 2), 1, 1));
    CHECK((a.scaled(3)) == BivariatePoly::monomial(1, 1, 1));
    const BivariatePoly sq = a.pow(2);
    CHECK(sq.terms().at({2, 2}) == mpq_class(1, 9));
}

TEST_CASE("string form is deterministic and readable") {
    const BivariatePoly p =
        BivariatePoly::monomial(72, 2, 0) + BivariatePoly::monomial(12, 0, 2);
    CHECK(p.str() == "72*x^2 + 12*y^2");
    const BivariatePoly q =
        BivariatePoly::monomial(132, 1, 0) + BivariatePoly::monomial(6, 0, 1);
    CHECK(q.str() == "132*x + 6*y");
    const BivariatePoly r = BivariatePoly::monomial(mpq_class(-1, 2), 0, 3) +
                            BivariatePoly::monomial(1, 1, 0);
    CHECK(r.str() == "-1/2*y^3 + x");
}
