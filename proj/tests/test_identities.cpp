#include <doctest.h>

#include <algorithm>
#include <map>

#include "festab/identities.hpp"

using festab::FunctionalIdentity;
using festab::FunctionModel;
using festab::IdentityCheckReport;
using festab::Parity;
using festab::SampleGrid;
using festab::Scalar;

namespace {

FunctionModel poly(std::vector<mpq_class> c) { return festab::make_polynomial(std::move(c)); }

using TermSet = std::map<std::pair<long, long>, mpq_class>;

TermSet term_set(std::span<const festab::LinearTerm> terms, const mpq_class& scale = 1) {
    TermSet s;
    for (const auto& t : terms) s[{t.alpha, t.beta}] = t.coeff * scale;
    return s;
}

}  // namespace

TEST_CASE("registry is the complete 40-step chain") {
    const auto& reg = festab::registry();
    REQUIRE(reg.size() == 40);
    for (std::size_t i = 0; i < reg.size(); ++i)
        CHECK(reg[i].label == "2." + std::to_string(i + 1));
    const auto evens = std::count_if(reg.begin(), reg.end(),
                                     [](const auto& id) { return id.parity == Parity::Even; });
    CHECK(evens == 11);
    CHECK(reg.size() - static_cast<std::size_t>(evens) == 29);
}

TEST_CASE("doubling laws are transcribed as printed") {
    const auto& first = festab::find_identity("2.1");
    CHECK(term_set(first.terms) == TermSet{{{0, 2}, 1}, {{0, 1}, -16}});
    const auto& odd_first = festab::find_identity("2.12");
    CHECK(term_set(odd_first.terms) == TermSet{{{0, 2}, 1}, {{0, 1}, -8}});
    const auto& mid = festab::find_identity("2.6");
    CHECK(term_set(mid.terms) == TermSet{{{2, 1}, 4},
                                         {{2, -1}, 4},
                                         {{1, 2}, 1},
                                         {{1, -2}, 1},
                                         {{1, 1}, -20},
                                         {{1, -1}, -20},
                                         {{1, 0}, -90}});
}

TEST_CASE("every identity holds on scaled monomial solutions") {
    std::uint64_t state = 2024;
    const auto rand_q = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        mpq_class q(static_cast<long>(state % 4001ull) - 2000, (state >> 32) % 97 + 1);
        q.canonicalize();
        return q;
    };
    for (int i = 0; i < 20; ++i) {
        const FunctionModel even = poly({0, 0, 0, 0, rand_q()});
        const FunctionModel odd = poly({0, 0, 0, rand_q()});
        for (const auto& id : festab::registry()) {
            const auto rep = festab::check_symbolic(id, id.parity == Parity::Even ? even : odd);
            REQUIRE(rep.passed());
        }
    }
}

TEST_CASE("symbolic checks pass on homogeneity alone") {
    CHECK(festab::check_symbolic(festab::find_identity("2.1"), poly({0, 0, 0, 0, 1})).passed());
    CHECK(festab::check_symbolic(festab::find_identity("2.12"), poly({0, 0, 0, 1})).passed());
}

TEST_CASE("non-solutions are detected with a nonzero residual") {
    const auto r = festab::check_symbolic(festab::find_identity("2.6"), poly({0, 0, 1}));
    CHECK(r.status == IdentityCheckReport::Status::ExactFail);
    REQUIRE(r.residual.has_value());
    CHECK_FALSE(r.residual->is_zero());

    const auto r2 = festab::check_symbolic(festab::find_identity("2.26"), poly({0, 1}));
    CHECK(r2.status == IdentityCheckReport::Status::ExactFail);
}

TEST_CASE("chain endpoints meet the classical operators") {
    // even conclusion == quartic equation, term for term
    CHECK(term_set(festab::even_chain_conclusion().terms) ==
          term_set(festab::quartic_operator_terms()));
    // odd conclusion is -4 times the cubic equation
    CHECK(term_set(festab::odd_chain_conclusion().terms, mpq_class(-1, 4)) ==
          term_set(festab::cubic_operator_terms()));
}

TEST_CASE("numeric check with exact tolerance zero on a solution") {
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 2);
    const auto rep = festab::check_numeric(festab::find_identity("2.40"), poly({0, 0, 0, 1}),
                                           grid, Scalar::exact(0L));
    CHECK(rep.status == IdentityCheckReport::Status::NumericPass);
    CHECK(rep.max_abs->is_zero());
}

TEST_CASE("numeric check of a tabulated parity part needs padding factor 4") {
    const FunctionModel f = poly({0, 0, 0, 1, 1});
    const SampleGrid padded = festab::dyadic_grid(mpq_class(-4), mpq_class(4), 3);
    const SampleGrid inner = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 3);
    const auto [even, odd] = festab::decompose_parity(f, padded);

    const auto rep = festab::check_numeric(festab::find_identity("2.2"), even, inner,
                                           Scalar::real(1e-9));
    CHECK(rep.status == IdentityCheckReport::Status::NumericPass);

    // without padding the composite argument 3x+y escapes the table
    const auto [even_small, odd_small] = festab::decompose_parity(f, inner);
    CHECK_THROWS_AS(festab::check_numeric(festab::find_identity("2.2"), even_small, inner,
                                          Scalar::real(1e-9)),
                    festab::OutOfDomain);
}

TEST_CASE("triangle-inequality tolerance covers seeded noise") {
    const double delta = 1e-3;
    const FunctionModel noisy = festab::make_perturbed(poly({0, 0, 0, 0, 1}), delta, 7);
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 3);
    const auto& id = festab::find_identity("2.2");
    const Scalar tol = festab::default_numeric_tol(id, noisy);
    CHECK(tol.dbl() ==
          doctest::Approx(festab::absolute_coefficient_sum(id.terms).get_d() * delta));
    const auto rep = festab::check_numeric(id, noisy, grid, tol);
    CHECK(rep.status == IdentityCheckReport::Status::NumericPass);
    CHECK(rep.samples == grid.size() * grid.size());
}

TEST_CASE("default tolerance is exact zero for exact models") {
    const auto& id = festab::find_identity("2.39");
    const Scalar tol = festab::default_numeric_tol(id, poly({0, 0, 0, 1}));
    CHECK(tol.is_exact());
    CHECK(tol.is_zero());
}

TEST_CASE("unknown labels are rejected") {
    CHECK_THROWS_AS(festab::find_identity("2.41"), festab::Error);
}
