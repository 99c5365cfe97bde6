#include "festab/grid.hpp"

#include <algorithm>

namespace festab {

SampleGrid SampleGrid::dyadic(const mpq_class& lo, const mpq_class& hi, int depth) {
    if (depth < 0) throw BadRange("grid depth must be nonnegative");
    if (!(sgn(lo) < 0 && sgn(hi) > 0)) throw BadRange("grid must satisfy lo < 0 < hi");
    if (cmp(lo, mpq_class(-hi)) != 0) throw BadRange("grid must be symmetric: lo = -hi");

    mpz_class unit = 1;
    mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), static_cast<mp_bitcnt_t>(depth));

    // kmax = floor(hi * 2^depth)
    mpq_class scaled = hi * mpq_class(unit);
    mpz_class kmax;
    mpz_fdiv_q(kmax.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (sgn(kmax) <= 0) throw BadRange("grid range too small for requested depth");

    SampleGrid g;
    g.lo_ = lo;
    g.hi_ = hi;
    g.depth_ = depth;
    g.points_.reserve(static_cast<std::size_t>(2 * kmax.get_ui() + 1));
    for (mpz_class k = -kmax; cmp(k, kmax) <= 0; ++k) {
        mpq_class p(k, unit);
        p.canonicalize();
        g.points_.push_back(std::move(p));
    }
    return g;
}

SampleGrid SampleGrid::from_points(std::vector<mpq_class> pts) {
    if (pts.empty()) throw BadRange("empty point set");
    std::sort(pts.begin(), pts.end(), MpqLess{});
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const mpq_class& a, const mpq_class& b) { return cmp(a, b) == 0; }),
              pts.end());
    SampleGrid g;
    g.lo_ = pts.front();
    g.hi_ = pts.back();
    g.depth_ = 0;
    g.points_ = std::move(pts);
    return g;
}

bool SampleGrid::contains(const mpq_class& x) const {
    return std::binary_search(points_.begin(), points_.end(), x, MpqLess{});
}

bool SampleGrid::symmetric() const {
    for (const auto& p : points_)
        if (!contains(mpq_class(-p))) return false;
    return true;
}

SampleGrid dyadic_grid(const mpq_class& lo, const mpq_class& hi, int depth) {
    return SampleGrid::dyadic(lo, hi, depth);
}

}  // namespace festab
