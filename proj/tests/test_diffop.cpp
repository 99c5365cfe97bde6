#include <doctest.h>

#include <cmath>

#include "festab/diffop.hpp"
#include "oracle/expansion_oracle.hpp"

using festab::BivariatePoly;
using festab::DyadicTable;
using festab::FunctionModel;
using festab::SampleGrid;
using festab::Scalar;

namespace {

FunctionModel poly(std::vector<mpq_class> c) { return festab::make_polynomial(std::move(c)); }

mpq_class rand_rational(std::uint64_t& state) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const long num = static_cast<long>(state % 2001ull) - 1000;
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const long den = static_cast<long>(state % 1000ull) + 1;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("operator envelope is 287") {
    CHECK(festab::difference_operator_envelope() == mpq_class(287));
}

TEST_CASE("solutions annihilate the operator pointwise") {
    const FunctionModel f = poly({0, 0, 0, 1});   // x^3
    const FunctionModel g = poly({0, 0, 0, 0, 1});  // x^4
    std::uint64_t state = 7;
    for (int i = 0; i < 20; ++i) {
        const Scalar x = Scalar::exact(rand_rational(state));
        const Scalar y = Scalar::exact(rand_rational(state));
        CHECK(festab::residual_at(f, x, y).is_zero());
        CHECK(festab::residual_at(g, x, y).is_zero());
    }
    CHECK(festab::residual_at(g, Scalar::exact(1L), Scalar::exact(2L)).is_zero());
}

TEST_CASE("non-solution fingerprints at a point") {
    CHECK(festab::residual_at(poly({0, 0, 1}), Scalar::exact(1L), Scalar::exact(1L)) ==
          Scalar::exact(84L));
    CHECK(festab::residual_at(poly({1}), Scalar::exact(5L), Scalar::exact(-3L)) ==
          Scalar::exact(177L));
}

TEST_CASE("symbolic residual matches the frozen fingerprints") {
    CHECK(festab::symbolic_residual(poly({0, 0, 0, 1, 1})).is_zero());
    CHECK(festab::symbolic_residual(poly({0, 0, 1})).str() == "72*x^2 + 12*y^2");
    CHECK(festab::symbolic_residual(poly({0, 1})).str() == "132*x + 6*y");
}

TEST_CASE("symbolic residual agrees with the brute-force oracle") {
    std::uint64_t state = 99;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<mpq_class> coeffs;
        const int degree = static_cast<int>(state % 7);
        for (int k = 0; k <= degree; ++k) coeffs.push_back(rand_rational(state));
        if (coeffs.empty()) coeffs.push_back(1);

        const BivariatePoly engine = festab::symbolic_residual(poly(coeffs));
        const festab::oracle::TermMap expected =
            festab::oracle::expand(festab::difference_operator_terms(), coeffs);
        festab::oracle::TermMap got(engine.terms().begin(), engine.terms().end());
        CHECK(got == expected);
    }
}

TEST_CASE("quartic equation residual") {
    CHECK(festab::quartic_residual_at(poly({0, 0, 0, 0, 1}), Scalar::exact(1L), Scalar::exact(1L))
              .is_zero());
    // 26 - 50: the quartic equation rejects x^3 at (1,1)
    CHECK(festab::quartic_residual_at(poly({0, 0, 0, 1}), Scalar::exact(1L), Scalar::exact(1L)) ==
          Scalar::exact(-24L));
    CHECK(festab::quartic_residual_at(poly({0}), Scalar::exact(2L), Scalar::exact(3L)).is_zero());
}

TEST_CASE("cubic equation residual") {
    CHECK(festab::cubic_residual_at(poly({0, 0, 0, 1}), Scalar::exact(2L), Scalar::exact(1L))
              .is_zero());
    CHECK(festab::cubic_residual_at(poly({0, 0, 0, 0, 1}), Scalar::exact(1L), Scalar::exact(1L)) ==
          Scalar::exact(38L));
    CHECK(festab::cubic_residual_at(poly({0}), Scalar::exact(1L), Scalar::exact(4L)).is_zero());
}

TEST_CASE("operator is linear over polynomial models") {
    std::uint64_t state = 13;
    const std::vector<mpq_class> fc = {0, 1, 2, 3};
    const std::vector<mpq_class> gc = {0, 0, 5, 0, 7};
    for (int i = 0; i < 10; ++i) {
        const mpq_class alpha = rand_rational(state), beta = rand_rational(state);
        std::vector<mpq_class> mix(5, 0);
        for (std::size_t k = 0; k < fc.size(); ++k) mix[k] += alpha * fc[k];
        for (std::size_t k = 0; k < gc.size(); ++k) mix[k] += beta * gc[k];
        const Scalar x = Scalar::exact(rand_rational(state));
        const Scalar y = Scalar::exact(rand_rational(state));
        const Scalar lhs = festab::residual_at(poly(mix), x, y);
        const Scalar rhs = Scalar::exact(alpha) * festab::residual_at(poly(fc), x, y) +
                           Scalar::exact(beta) * festab::residual_at(poly(gc), x, y);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("kernel property over random quartic-cubic combinations") {
    std::uint64_t state = 31337;
    for (int i = 0; i < 20; ++i) {
        const mpq_class a = rand_rational(state), b = rand_rational(state);
        CHECK(festab::symbolic_residual(poly({0, 0, 0, b, a})).is_zero());
    }
}

TEST_CASE("operator at x = 0 reduces to the doubling laws") {
    std::uint64_t state = 5;
    const FunctionModel even = poly({0, 0, 0, 0, 1});        // x^4
    const FunctionModel even6 = poly({0, 0, 0, 0, 0, 0, 1});  // x^6, still even
    const FunctionModel odd = poly({0, 0, 0, 1});            // x^3
    const FunctionModel odd5 = poly({0, 0, 0, 0, 0, 1});     // x^5
    for (int i = 0; i < 10; ++i) {
        const Scalar y = Scalar::exact(rand_rational(state));
        const Scalar zero = Scalar::exact(0L);
        const Scalar two_y = Scalar::exact(2L) * y;
        for (const auto* f : {&even, &even6}) {
            // even origin-anchored f: D_f(0, y) = -f(2y) + 16 f(y)
            CHECK(festab::residual_at(*f, zero, y) ==
                  -f->eval(two_y) + Scalar::exact(16L) * f->eval(y));
        }
        for (const auto* f : {&odd, &odd5}) {
            // odd f: D_f(0, y) = 8 f(y) - f(2y), zero iff f(2y) = 8 f(y)
            CHECK(festab::residual_at(*f, zero, y) ==
                  Scalar::exact(8L) * f->eval(y) - f->eval(two_y));
        }
        CHECK(festab::residual_at(odd, zero, y).is_zero());
    }
}

TEST_CASE("bounded noise moves the residual by at most 287 sup|n|") {
    const double delta = 1e-3;
    const FunctionModel base = poly({0, 0, 0, 1, 1});
    const FunctionModel noisy = festab::make_perturbed(base, delta, 11);
    std::uint64_t state = 21;
    for (int i = 0; i < 200; ++i) {
        const double x = rand_rational(state).get_d();
        const double y = rand_rational(state).get_d();
        const double df = festab::residual_at(noisy, Scalar::real(x), Scalar::real(y)).dbl();
        const double d0 = festab::residual_at(base, Scalar::real(x), Scalar::real(y)).dbl();
        CHECK(std::abs(df - d0) <= 287.0 * delta + 1e-12);
    }
}

TEST_CASE("numeric and symbolic paths agree exactly") {
    const std::vector<mpq_class> coeffs = {0, mpq_class(1, 3), mpq_class(-2), 0, mpq_class(5, 7)};
    const FunctionModel f = poly(coeffs);
    const BivariatePoly sym = festab::symbolic_residual(f);
    std::uint64_t state = 77;
    for (int i = 0; i < 100; ++i) {
        const mpq_class x = rand_rational(state), y = rand_rational(state);
        CHECK(festab::residual_at(f, Scalar::exact(x), Scalar::exact(y)).rational() ==
              sym.eval(x, y));
    }
}

TEST_CASE("sup residual on solutions is exactly zero") {
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 3);
    const auto r = festab::sup_residual(poly({0, 0, 0, mpq_class(-3), mpq_class(2)}), grid);
    CHECK(r.sup.is_zero());
    CHECK_FALSE(r.subsampled);
    CHECK(r.samples == grid.size() * grid.size());
}

TEST_CASE("sup residual of x^2 peaks at the corners") {
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 2);
    const auto r = festab::sup_residual(poly({0, 0, 1}), grid);
    CHECK(r.sup == Scalar::exact(84L));
    // lexicographically smallest of the four tied corners
    CHECK(r.arg_x == mpq_class(-1));
    CHECK(r.arg_y == mpq_class(-1));
}

TEST_CASE("sup residual of perturbed x^4 stays inside the envelope") {
    const double delta = 1e-3;
    const FunctionModel noisy = festab::make_perturbed(poly({0, 0, 0, 0, 1}), delta, 3);
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 4);
    const auto r = festab::sup_residual(noisy, grid);
    CHECK(r.sup.dbl() <= 287.0 * delta);
    CHECK(r.sup.dbl() > 0.0);
}

TEST_CASE("sup residual reduction is deterministic across thread counts") {
    const FunctionModel noisy = festab::make_perturbed(poly({0, 0, 0, 1, 1}), 1e-3, 17);
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-2), mpq_class(2), 5);
    festab::SupOptions one;
    one.threads = 1;
    festab::SupOptions four;
    four.threads = 4;
    const auto a = festab::sup_residual(noisy, grid, one);
    const auto b = festab::sup_residual(noisy, grid, four);
    CHECK(a.sup.dbl() == b.sup.dbl());
    CHECK(a.arg_x == b.arg_x);
    CHECK(a.arg_y == b.arg_y);
}

TEST_CASE("subsampling is capped and seeded") {
    const FunctionModel noisy = festab::make_perturbed(poly({0, 0, 0, 1, 1}), 1e-3, 17);
    const SampleGrid grid = festab::dyadic_grid(mpq_class(-2), mpq_class(2), 6);
    festab::SupOptions opts;
    opts.max_pairs = 500;
    opts.seed = 9;
    const auto a = festab::sup_residual(noisy, grid, opts);
    const auto b = festab::sup_residual(noisy, grid, opts);
    CHECK(a.subsampled);
    CHECK(a.samples == 500);
    CHECK(a.sup.dbl() == b.sup.dbl());
    CHECK(a.arg_x == b.arg_x);
}

TEST_CASE("tabulated models need padded domains for the operator") {
    DyadicTable t;
    const SampleGrid small = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 2);
    for (const auto& p : small.points()) t.emplace(p, Scalar::exact(0L));
    const FunctionModel m = FunctionModel::tabulated(std::move(t));
    CHECK_THROWS_AS(festab::sup_residual(m, small), festab::OutOfDomain);
}
