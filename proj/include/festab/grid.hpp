#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "festab/errors.hpp"

namespace festab {

struct MpqLess {
    bool operator()(const mpq_class& a, const mpq_class& b) const { return cmp(a, b) < 0; }
};

// A finite symmetric set of dyadic rationals k/2^depth in [lo, hi], used as
// the stand-in for "for all x".  Dyadic points are the natural sample set:
// the direct-method iteration only ever halves or doubles arguments.
class SampleGrid {
public:
    // All k/2^depth in [lo, hi]; requires lo = -hi < 0 and depth >= 0.
    static SampleGrid dyadic(const mpq_class& lo, const mpq_class& hi, int depth);

    // Arbitrary point set (sorted, deduplicated).  Symmetry is not enforced
    // here; operations that need it check and throw AsymmetricGrid.
    static SampleGrid from_points(std::vector<mpq_class> pts);

    const std::vector<mpq_class>& points() const { return points_; }
    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    int depth() const { return depth_; }
    std::size_t size() const { return points_.size(); }

    bool contains(const mpq_class& x) const;
    // True when the point set is closed under negation.
    bool symmetric() const;

private:
    SampleGrid() = default;

    mpq_class lo_, hi_;
    int depth_ = 0;
    std::vector<mpq_class> points_;  // ascending
};

SampleGrid dyadic_grid(const mpq_class& lo, const mpq_class& hi, int depth);

}  // namespace festab
