#include <doctest.h>

#include <cmath>

#include "festab/bounds.hpp"

using festab::ControlFunction;
using festab::Direction;
using festab::Scalar;
using festab::SeriesEvaluation;

namespace {

const Direction up = Direction::contracting();  // s = +1
const Direction down = Direction::expanding();  // s = -1

bool rel_close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("phi evaluation of the built-in families") {
    CHECK(ControlFunction::constant(Scalar::exact(2L))
              .eval(Scalar::exact(9L), Scalar::exact(-4L)) == Scalar::exact(2L));
    CHECK(ControlFunction::power_sum(Scalar::exact(1L), 2)
              .eval(Scalar::exact(3L), Scalar::exact(4L)) == Scalar::exact(25L));
    CHECK(ControlFunction::product_sum(Scalar::exact(1L), 1, 1, 2)
              .eval(Scalar::exact(3L), Scalar::exact(4L)) == Scalar::exact(37L));
}

TEST_CASE("negative exponents exclude zero arguments") {
    const ControlFunction phi = ControlFunction::power_sum(Scalar::exact(1L), -1);
    CHECK_THROWS_AS(phi.eval(Scalar::exact(0L), Scalar::exact(1L)), festab::DomainError);
    CHECK(phi.eval(Scalar::exact(2L), Scalar::exact(4L)) == Scalar::exact(3, 4));
}

TEST_CASE("zero exponent means the constant function") {
    const ControlFunction phi = ControlFunction::power_sum(Scalar::exact(3L), 0);
    CHECK(phi.eval(Scalar::exact(0L), Scalar::exact(0L)) == Scalar::exact(6L));
}

TEST_CASE("direction selection follows the corollary split") {
    CHECK(festab::select_direction(ControlFunction::power_sum(Scalar::exact(1L), 5)).s == 1);
    CHECK(festab::select_direction(ControlFunction::constant(Scalar::exact(1L))).s == -1);
    CHECK(festab::select_direction(ControlFunction::power_sum(Scalar::exact(1L), -2)).s == -1);
    for (const double p : {3.0, 3.5, 4.0})
        CHECK_THROWS_AS(festab::select_direction(ControlFunction::power_sum(Scalar::exact(1L), p)),
                        festab::InadmissibleControl);
}

TEST_CASE("product-sum direction needs both exponents in one regime") {
    CHECK(festab::select_direction(ControlFunction::product_sum(Scalar::exact(1L), 3, 2, 5)).s == 1);
    CHECK(festab::select_direction(ControlFunction::product_sum(Scalar::exact(1L), 1, 1, 2)).s == -1);
    CHECK_THROWS_AS(
        festab::select_direction(ControlFunction::product_sum(Scalar::exact(1L), 2, 2, 5)),
        festab::InadmissibleControl);  // u+v = 4
    CHECK_THROWS_AS(
        festab::select_direction(ControlFunction::product_sum(Scalar::exact(1L), 1, 1, 5)),
        festab::InadmissibleControl);  // mixed regimes
    CHECK_THROWS_AS(
        festab::select_direction(ControlFunction::custom([](double, double) { return 1.0; })),
        festab::InadmissibleControl);
}

TEST_CASE("quartic series closed forms") {
    const ControlFunction p5 = ControlFunction::power_sum(Scalar::exact(1L), 5);
    const SeriesEvaluation a = festab::quartic_series_bound(p5, Scalar::exact(1L), up);
    CHECK(*a.exact_closed_form == Scalar::exact(1, 16));
    CHECK(a.value + a.tail_bound == Scalar::exact(1, 16));

    const ControlFunction p2 = ControlFunction::power_sum(Scalar::exact(1L), 2);
    const SeriesEvaluation b = festab::quartic_series_bound(p2, Scalar::exact(1L), down);
    CHECK(*b.exact_closed_form == Scalar::exact(1, 12));

    const ControlFunction eps = ControlFunction::constant(Scalar::exact(1L));
    const SeriesEvaluation c = festab::quartic_series_bound(eps, Scalar::exact(5L), down);
    CHECK(*c.exact_closed_form == Scalar::exact(1, 15));
}

TEST_CASE("cubic series closed forms") {
    CHECK(*festab::cubic_series_bound(ControlFunction::power_sum(Scalar::exact(1L), 5),
                                      Scalar::exact(1L), up)
               .exact_closed_form == Scalar::exact(1, 24));
    CHECK(*festab::cubic_series_bound(ControlFunction::power_sum(Scalar::exact(1L), 2),
                                      Scalar::exact(1L), down)
               .exact_closed_form == Scalar::exact(1, 4));
    CHECK(*festab::cubic_series_bound(ControlFunction::constant(Scalar::exact(1L)),
                                      Scalar::exact(-7L), down)
               .exact_closed_form == Scalar::exact(1, 7));
}

TEST_CASE("divergent requests are refused") {
    CHECK_THROWS_AS(festab::quartic_series_bound(ControlFunction::power_sum(Scalar::exact(1L), 2),
                                                 Scalar::exact(1L), up),
                    festab::DivergentSeries);
    CHECK_THROWS_AS(festab::quartic_series_bound(ControlFunction::constant(Scalar::exact(1L)),
                                                 Scalar::exact(1L), up),
                    festab::DivergentSeries);
}

TEST_CASE("combined bound reproduces the constant-control constant") {
    const SeriesEvaluation ev = festab::combined_bound(ControlFunction::constant(Scalar::exact(1L)),
                                                       Scalar::exact(1L), down);
    CHECK(*ev.exact_closed_form == Scalar::exact(22, 105));
    CHECK(ev.value + ev.tail_bound == Scalar::exact(22, 105));
    CHECK(ev.printed_form.has_value());
    CHECK_FALSE(ev.printed_form_discrepancy);
    CHECK(ev.tail_bound.dbl() <= 1e-12 * ev.value.dbl());
}

TEST_CASE("combined bound scales like |x|^p") {
    const ControlFunction p5 = ControlFunction::power_sum(Scalar::exact(1L), 5);
    const SeriesEvaluation at2 = festab::combined_bound(p5, Scalar::exact(2L), up);
    CHECK(*at2.exact_closed_form == Scalar::exact(32L) * Scalar::exact(5, 48));
}

TEST_CASE("power-sum with p = 0 equals the doubled constant control") {
    const SeriesEvaluation zero_p = festab::combined_bound(
        ControlFunction::power_sum(Scalar::exact(3L), 0), Scalar::exact(1L), down);
    CHECK(*zero_p.exact_closed_form == Scalar::exact(44, 105) * Scalar::exact(3L));
}

TEST_CASE("truncation soundness: closed form sits inside [value, value+tail]") {
    using SeriesFn = SeriesEvaluation (*)(const ControlFunction&, const Scalar&, Direction, double);
    const SeriesFn kinds[] = {&festab::quartic_series_bound, &festab::cubic_series_bound};
    for (const int p : {-1, 0, 1, 2, 5, 8}) {
        const ControlFunction phi = ControlFunction::power_sum(Scalar::exact(1L), p);
        const Direction dir = p > 4 ? up : down;
        for (const SeriesFn series : kinds) {
            const SeriesEvaluation ev = series(phi, Scalar::exact(3, 2), dir, 1e-12);
            REQUIRE(ev.exact_closed_form.has_value());
            CHECK(ev.value <= *ev.exact_closed_form);
            CHECK(*ev.exact_closed_form <= ev.value + ev.tail_bound);
        }
    }
}

TEST_CASE("corollary consistency across exponents and directions") {
    for (const double p : {-1.0, 0.0, 1.0, 2.0, 2.9, 4.1, 5.0, 8.0}) {
        const ControlFunction phi = ControlFunction::power_sum(Scalar::exact(1L), p);
        const Direction dir = festab::select_direction(phi);
        for (const double x : {0.5, 1.0, 2.0}) {
            const SeriesEvaluation ev = festab::combined_bound(phi, Scalar::real(x), dir);
            const Scalar printed = festab::closed_form_bound(phi, Scalar::real(x));
            REQUIRE(ev.exact_closed_form.has_value());
            if (p == 0.0) {
                // |t|^0 = 1 makes the p = 0 power-sum the constant 2*theta,
                // which the printed per-branch formula does not see; the
                // series doubles it and the discrepancy is flagged.
                CHECK(rel_close(ev.exact_closed_form->dbl(), 2.0 * printed.dbl()));
                CHECK(ev.printed_form_discrepancy);
                continue;
            }
            CHECK(rel_close(ev.exact_closed_form->dbl(), printed.dbl()));
            CHECK(rel_close(ev.total().dbl(), printed.dbl(), 2e-9));
            CHECK_FALSE(ev.printed_form_discrepancy);
        }
    }
}

TEST_CASE("printed closed forms at pinned points") {
    CHECK(festab::closed_form_bound(ControlFunction::constant(Scalar::exact(1L)),
                                    Scalar::exact(9L)) == Scalar::exact(22, 105));
    // theta = 2, p = 2 at |x| = 1: 2 * (1/12 + 1/4) = 2/3
    CHECK(festab::closed_form_bound(ControlFunction::power_sum(Scalar::exact(2L), 2),
                                    Scalar::exact(1L)) == Scalar::exact(2, 3));
    CHECK_THROWS_AS(festab::closed_form_bound(ControlFunction::power_sum(Scalar::exact(1L), 3.5),
                                              Scalar::exact(1L)),
                    festab::InadmissibleControl);
}

TEST_CASE("bounds are nonnegative and monotone where claimed") {
    const ControlFunction phi = ControlFunction::power_sum(Scalar::exact(1L), 2);
    double prev = -1.0;
    for (const double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double b = festab::combined_bound(phi, Scalar::real(x), down).total().dbl();
        CHECK(b >= 0.0);
        CHECK(b > prev);
        prev = b;
    }
    // monotone in theta
    const double small = festab::combined_bound(ControlFunction::power_sum(Scalar::exact(1L), 2),
                                                Scalar::real(1.0), down)
                             .total()
                             .dbl();
    const double large = festab::combined_bound(ControlFunction::power_sum(Scalar::exact(5L), 2),
                                                Scalar::real(1.0), down)
                             .total()
                             .dbl();
    CHECK(large > small);
}

TEST_CASE("convergence precheck ratios") {
    const ControlFunction p5 = ControlFunction::power_sum(Scalar::exact(1L), 5);
    CHECK(festab::convergence_precheck(p5, up));
    CHECK_FALSE(festab::convergence_precheck(p5, down));
    const ControlFunction eps = ControlFunction::constant(Scalar::exact(1L));
    CHECK_FALSE(festab::convergence_precheck(eps, up));
    CHECK(festab::convergence_precheck(eps, down));
}

TEST_CASE("product-sum series is computed honestly and flagged against the printed form") {
    // u > 0: the product term never reaches the series slot, no discrepancy
    const SeriesEvaluation agree = festab::combined_bound(
        ControlFunction::product_sum(Scalar::exact(1L), 1, 1, 2), Scalar::exact(1L), down);
    CHECK_FALSE(agree.printed_form_discrepancy);
    CHECK(*agree.exact_closed_form == Scalar::exact(1, 12) + Scalar::exact(1, 4));

    // u = 0: the product term degenerates to |y|^v and feeds the series,
    // while the printed form ignores it
    const SeriesEvaluation differ = festab::combined_bound(
        ControlFunction::product_sum(Scalar::exact(1L), 0, 2, 2), Scalar::exact(1L), down);
    CHECK(differ.printed_form.has_value());
    CHECK(differ.printed_form_discrepancy);
    CHECK(*differ.exact_closed_form ==
          (Scalar::exact(1, 12) + Scalar::exact(1, 4)) * Scalar::exact(2L));
}

TEST_CASE("custom controls run the empirical path") {
    const ControlFunction mirror =
        ControlFunction::custom([](double, double) { return 1.0; });
    const SeriesEvaluation ev = festab::combined_bound(mirror, Scalar::real(1.0), down, 1e-10);
    CHECK_FALSE(ev.rigorous);
    CHECK(rel_close(ev.total().dbl(), 22.0 / 105.0, 1e-6));
    CHECK_THROWS_AS(festab::quartic_series_bound(mirror, Scalar::real(1.0), up),
                    festab::DivergentSeries);
    CHECK(festab::convergence_precheck(mirror, down));
    CHECK_FALSE(festab::convergence_precheck(mirror, up));
}
