#include "festab/diffop.hpp"

#include <array>
#include <thread>

namespace festab {

namespace {

// coeff, alpha, beta rows of D_f.  The widest argument is 3x+y.
const std::array<LinearTerm, 10>& diff_terms() {
    static const std::array<LinearTerm, 10> t = {{
        {mpq_class(4), 3, 1},
        {mpq_class(4), 3, -1},
        {mpq_class(-12), 2, 1},
        {mpq_class(-12), 2, -1},
        {mpq_class(12), 1, 1},
        {mpq_class(12), 1, -1},
        {mpq_class(-1), 0, 2},
        {mpq_class(8), 0, 1},
        {mpq_class(-30), 2, 0},
        {mpq_class(192), 1, 0},
    }};
    return t;
}

const std::array<LinearTerm, 6>& quartic_terms() {
    static const std::array<LinearTerm, 6> t = {{
        {mpq_class(1), 1, 2},
        {mpq_class(1), 1, -2},
        {mpq_class(-4), 1, 1},
        {mpq_class(-4), 1, -1},
        {mpq_class(-24), 0, 1},
        {mpq_class(6), 1, 0},
    }};
    return t;
}

const std::array<LinearTerm, 5>& cubic_terms() {
    static const std::array<LinearTerm, 5> t = {{
        {mpq_class(1), 2, 1},
        {mpq_class(1), 2, -1},
        {mpq_class(-2), 1, 1},
        {mpq_class(-2), 1, -1},
        {mpq_class(-12), 1, 0},
    }};
    return t;
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::span<const LinearTerm> difference_operator_terms() { return diff_terms(); }
std::span<const LinearTerm> quartic_operator_terms() { return quartic_terms(); }
std::span<const LinearTerm> cubic_operator_terms() { return cubic_terms(); }

const mpq_class& difference_operator_envelope() {
    static const mpq_class env = absolute_coefficient_sum(difference_operator_terms());
    return env;
}

Scalar linear_combination_at(std::span<const LinearTerm> terms, const FunctionModel& f,
                             const Scalar& x, const Scalar& y) {
    if (x.is_exact() != y.is_exact())
        throw ModeMismatch("x and y must share one mode");
    const auto mode = x.mode();
    Scalar acc = Scalar::zero(mode);
    for (const auto& t : terms) {
        const Scalar arg = Scalar::integer(t.alpha, mode) * x + Scalar::integer(t.beta, mode) * y;
        Scalar coeff = mode == Scalar::Mode::Exact ? Scalar::exact(t.coeff)
                                                   : Scalar::real(t.coeff.get_d());
        acc = acc + coeff * f.eval(arg);
    }
    return acc;
}

mpq_class absolute_coefficient_sum(std::span<const LinearTerm> terms) {
    mpq_class s = 0;
    for (const auto& t : terms) s += abs(t.coeff);
    return s;
}

Scalar residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y) {
    return linear_combination_at(difference_operator_terms(), f, x, y);
}

Scalar quartic_residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y) {
    return linear_combination_at(quartic_operator_terms(), f, x, y);
}

Scalar cubic_residual_at(const FunctionModel& f, const Scalar& x, const Scalar& y) {
    return linear_combination_at(cubic_operator_terms(), f, x, y);
}

BivariatePoly symbolic_residual(const FunctionModel& f) {
    if (f.kind() != FunctionModel::Kind::Polynomial)
        throw Error("symbolic residual requires a polynomial model");
    const auto& coeffs = f.coefficients();
    BivariatePoly acc;
    for (const auto& t : difference_operator_terms())
        acc = acc + BivariatePoly::substitute_linear(coeffs, t.alpha, t.beta).scaled(t.coeff);
    return acc;
}

std::vector<std::size_t> sampled_pair_indices(std::size_t point_count, const SupOptions& opts,
                                              bool* subsampled) {
    const std::size_t total = point_count * point_count;
    std::vector<std::size_t> idx;
    if (opts.max_pairs == 0 || total <= opts.max_pairs) {
        if (subsampled) *subsampled = false;
        idx.resize(total);
        for (std::size_t i = 0; i < total; ++i) idx[i] = i;
        return idx;
    }
    if (subsampled) *subsampled = true;
    idx.reserve(opts.max_pairs);
    std::uint64_t state = splitmix64(opts.seed ^ 0x8e51'4a5c'9f23'7db1ull);
    for (std::size_t i = 0; i < opts.max_pairs; ++i) {
        state = splitmix64(state);
        idx.push_back(static_cast<std::size_t>(state % total));
    }
    return idx;
}

namespace {

struct PairMax {
    bool any = false;
    Scalar value;
    mpq_class x, y;

    void consider(const Scalar& v, const mpq_class& px, const mpq_class& py) {
        if (!any) {
            any = true;
            value = v;
            x = px;
            y = py;
            return;
        }
        const int c = v.compare(value);
        if (c > 0 || (c == 0 && (cmp(px, x) < 0 || (cmp(px, x) == 0 && cmp(py, y) < 0)))) {
            value = v;
            x = px;
            y = py;
        }
    }

    void merge(const PairMax& o) {
        if (o.any) consider(o.value, o.x, o.y);
    }
};

}  // namespace

ResidualReport sup_residual(const FunctionModel& f, const SampleGrid& grid,
                            const SupOptions& opts) {
    const auto& pts = grid.points();
    bool subsampled = false;
    const std::vector<std::size_t> idx = sampled_pair_indices(pts.size(), opts, &subsampled);

    const auto eval_range = [&](std::size_t begin, std::size_t end, PairMax& out) {
        for (std::size_t k = begin; k < end; ++k) {
            const mpq_class& px = pts[idx[k] / pts.size()];
            const mpq_class& py = pts[idx[k] % pts.size()];
            Scalar v;
            try {
                v = residual_at(f, natural_argument(f, px), natural_argument(f, py)).abs();
            } catch (const TabulatedMiss& e) {
                throw OutOfDomain(std::string("operator argument escaped the table: ") + e.what());
            }
            out.consider(v, px, py);
        }
    };

    PairMax best;
    const int threads = std::max(1, opts.threads);
    if (threads == 1 || idx.size() < 1024) {
        eval_range(0, idx.size(), best);
    } else {
        // Fixed chunking plus ordered merge keeps the result independent of
        // scheduling.
        const std::size_t nchunk = static_cast<std::size_t>(threads);
        std::vector<PairMax> partial(nchunk);
        std::vector<std::exception_ptr> errors(nchunk);
        std::vector<std::thread> pool;
        const std::size_t step = (idx.size() + nchunk - 1) / nchunk;
        for (std::size_t c = 0; c < nchunk; ++c) {
            pool.emplace_back([&, c] {
                const std::size_t b = c * step;
                const std::size_t e = std::min(idx.size(), b + step);
                try {
                    if (b < e) eval_range(b, e, partial[c]);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
        for (const auto& p : partial) best.merge(p);
    }

    ResidualReport r;
    r.sup = best.any ? best.value : Scalar::zero(Scalar::Mode::Exact);
    r.arg_x = best.x;
    r.arg_y = best.y;
    r.samples = idx.size();
    r.subsampled = subsampled;
    return r;
}

}  // namespace festab
