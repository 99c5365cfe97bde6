#include <doctest.h>

#include "festab/grid.hpp"

using festab::BadRange;
using festab::SampleGrid;

namespace {

std::vector<mpq_class> rationals(std::initializer_list<const char*> strs) {
    std::vector<mpq_class> out;
    for (const char* s : strs) {
        mpq_class q(s);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

}  // namespace

TEST_CASE("dyadic grid at depth 1") {
    const SampleGrid g = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 1);
    CHECK(g.points() == rationals({"-1", "-1/2", "0", "1/2", "1"}));
}

TEST_CASE("dyadic grid at depth 0") {
    const SampleGrid g = festab::dyadic_grid(mpq_class(-2), mpq_class(2), 0);
    CHECK(g.points() == rationals({"-2", "-1", "0", "1", "2"}));
}

TEST_CASE("dyadic grid point count is 2*hi*2^depth + 1") {
    const SampleGrid g = festab::dyadic_grid(mpq_class(-1), mpq_class(1), 12);
    CHECK(g.size() == 8193);
    CHECK(g.contains(mpq_class(0)));
    CHECK(g.symmetric());
}

TEST_CASE("bad ranges are rejected") {
    CHECK_THROWS_AS(festab::dyadic_grid(mpq_class(0), mpq_class(1), 1), BadRange);
    CHECK_THROWS_AS(festab::dyadic_grid(mpq_class(-1), mpq_class(2), 1), BadRange);
    CHECK_THROWS_AS(festab::dyadic_grid(mpq_class(1), mpq_class(-1), 1), BadRange);
    CHECK_THROWS_AS(festab::dyadic_grid(mpq_class(-1), mpq_class(1), -1), BadRange);
}

TEST_CASE("fractional endpoints clip to representable points") {
    const SampleGrid g = festab::dyadic_grid(mpq_class(-3, 2), mpq_class(3, 2), 1);
    CHECK(g.points() == rationals({"-3/2", "-1", "-1/2", "0", "1/2", "1", "3/2"}));
}

TEST_CASE("custom point sets can be asymmetric") {
    const SampleGrid g = SampleGrid::from_points(rationals({"0", "1", "2"}));
    CHECK_FALSE(g.symmetric());
    CHECK(g.contains(mpq_class(2)));
    CHECK_FALSE(g.contains(mpq_class(3)));
}
