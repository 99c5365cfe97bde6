#include "festab/identities.hpp"

#include <algorithm>
#include <initializer_list>

namespace festab {

namespace {

struct RawTerm {
    long c, a, b;
};

FunctionalIdentity make_identity(std::string label, Parity parity,
                                 std::initializer_list<RawTerm> raw) {
    FunctionalIdentity id;
    id.label = std::move(label);
    id.parity = parity;
    for (const auto& t : raw) {
        // Canonical argument orientation: first nonzero of (alpha, beta)
        // positive.  Flipping uses the parity: f(-z) = f(z) even, -f(z) odd.
        long a = t.a, b = t.b;
        mpq_class c(t.c);
        if (a < 0 || (a == 0 && b < 0)) {
            a = -a;
            b = -b;
            if (parity == Parity::Odd) c = -c;
        }
        auto same = std::find_if(id.terms.begin(), id.terms.end(),
                                 [&](const LinearTerm& u) { return u.alpha == a && u.beta == b; });
        if (same != id.terms.end())
            same->coeff += c;
        else
            id.terms.push_back({c, a, b});
    }
    std::erase_if(id.terms, [](const LinearTerm& u) { return sgn(u.coeff) == 0; });
    if (id.terms.empty()) throw Error("identity " + id.label + " canonicalized to nothing");
    return id;
}

// Transcription of the derivation chain, each step moved to "sum = 0" form.
std::vector<FunctionalIdentity> build_registry() {
    std::vector<FunctionalIdentity> reg;
    reg.reserve(40);
    const Parity E = Parity::Even, O = Parity::Odd;

    // Even chain: from the doubling law f_e(2y) = 16 f_e(y) down to the
    // quartic equation.
    reg.push_back(make_identity("2.1", E, {{1, 0, 2}, {-16, 0, 1}}));
    reg.push_back(make_identity("2.2", E,
                                {{1, 3, 1}, {1, 3, -1}, {3, 1, 1}, {3, 1, -1},
                                 {-3, 2, 1}, {-3, 2, -1}, {-72, 1, 0}, {-2, 0, 1}}));
    reg.push_back(make_identity("2.3", E,
                                {{1, 3, 2}, {1, 3, -2}, {3, 1, 2}, {3, 1, -2},
                                 {-48, 1, 1}, {-48, 1, -1}, {-72, 1, 0}, {-32, 0, 1}}));
    reg.push_back(make_identity("2.4", E,
                                {{16, 2, 1}, {16, 1, -1}, {48, 1, 1}, {48, 0, 1},
                                 {-3, 3, 2}, {-3, 1, -2}, {-2, 1, 2}, {-72, 1, 0}}));
    reg.push_back(make_identity("2.5", E,
                                {{16, 2, -1}, {16, 1, 1}, {48, 1, -1}, {48, 0, 1},
                                 {-3, 3, -2}, {-3, 1, 2}, {-2, 1, -2}, {-72, 1, 0}}));
    reg.push_back(make_identity("2.6", E,
                                {{4, 2, 1}, {4, 2, -1}, {1, 1, 2}, {1, 1, -2},
                                 {-20, 1, 1}, {-20, 1, -1}, {-90, 1, 0}}));
    reg.push_back(make_identity("2.7", E,
                                {{1, 2, 3}, {1, 2, -3}, {3, 2, 1}, {3, 2, -1},
                                 {-48, 1, 1}, {-48, 1, -1}, {-32, 1, 0}, {-72, 0, 1}}));
    reg.push_back(make_identity("2.8", E,
                                {{1, 2, 3}, {1, 3, 2}, {1, 2, -3}, {1, 3, -2},
                                 {3, 2, 1}, {3, 1, 2}, {3, 2, -1}, {3, 1, -2},
                                 {-96, 1, 1}, {-96, 1, -1}, {-104, 1, 0}, {-104, 0, 1}}));
    reg.push_back(make_identity("2.9", E,
                                {{3, 2, 3}, {3, 2, -3}, {25, 2, 1}, {25, 2, -1},
                                 {4, 1, -2}, {4, 1, 2}, {-224, 1, 1}, {-224, 1, -1},
                                 {-456, 1, 0}, {-216, 0, 1}}));
    reg.push_back(make_identity("2.10", E,
                                {{3, 3, 2}, {3, 3, -2}, {25, 1, 2}, {25, 1, -2},
                                 {4, 2, -1}, {4, 2, 1}, {-224, 1, 1}, {-224, 1, -1},
                                 {-456, 0, 1}, {-216, 1, 0}}));
    reg.push_back(make_identity("2.11", E,
                                {{4, 2, -1}, {4, 2, 1}, {16, 1, 2}, {16, 1, -2},
                                 {-80, 1, 1}, {-80, 1, -1}, {-360, 0, 1}}));

    // Odd chain: from f_o(2y) = 8 f_o(y) down to the cubic equation.
    reg.push_back(make_identity("2.12", O, {{1, 0, 2}, {-8, 0, 1}}));
    reg.push_back(make_identity("2.13", O,
                                {{1, 3, 1}, {1, 3, -1}, {3, 1, 1}, {3, 1, -1},
                                 {-3, 2, 1}, {-3, 2, -1}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.14", O,
                                {{8, 2, 1}, {8, 1, 2}, {24, 1, 0}, {24, 0, 1},
                                 {-3, 3, 1}, {-3, 1, 3}, {-12, 1, 1}}));
    reg.push_back(make_identity("2.15", O,
                                {{1, 1, 3}, {-1, 1, -3}, {3, 1, 1}, {-3, 1, -1},
                                 {-3, 1, 2}, {3, 1, -2}, {-12, 0, 1}}));
    reg.push_back(make_identity("2.16", O,
                                {{1, 3, -1}, {1, 3, 1}, {3, 1, -1}, {3, 1, 1},
                                 {-3, 2, -1}, {-3, 2, 1}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.17", O,
                                {{8, 2, 1}, {8, 1, -1}, {24, 1, 1}, {-24, 0, 1},
                                 {-3, 3, 2}, {-3, 1, -2}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.18", O,
                                {{8, 2, -1}, {8, 1, 1}, {24, 1, -1}, {24, 0, 1},
                                 {-3, 3, -2}, {-3, 1, 2}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.19", O,
                                {{3, 3, -2}, {3, 3, 2}, {-8, 2, 1}, {-8, 2, -1},
                                 {3, 1, 2}, {3, 1, -2}, {-32, 1, -1}, {-32, 1, 1},
                                 {24, 1, 0}}));
    reg.push_back(make_identity("2.20", O,
                                {{3, 2, 3}, {-3, 2, -3}, {-8, 1, 2}, {8, 1, -2},
                                 {3, 2, 1}, {-3, 2, -1}, {-32, 1, 1}, {32, 1, -1},
                                 {24, 0, 1}}));
    reg.push_back(make_identity("2.21", O,
                                {{1, 4, 1}, {1, 2, -1}, {3, 2, 1}, {-3, 0, 1},
                                 {-3, 3, 1}, {-3, 1, -1}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.22", O,
                                {{1, 4, -1}, {1, 2, 1}, {3, 2, -1}, {3, 0, 1},
                                 {-3, 3, -1}, {-3, 1, 1}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.23", O,
                                {{1, 4, 1}, {1, 4, -1}, {-3, 3, 1}, {-3, 3, -1},
                                 {4, 2, -1}, {4, 2, 1}, {-3, 1, -1}, {-3, 1, 1},
                                 {-24, 1, 0}}));
    reg.push_back(make_identity("2.24", O,
                                {{1, 4, 1}, {1, 4, -1}, {-5, 2, 1}, {-5, 2, -1},
                                 {6, 1, 1}, {6, 1, -1}, {-60, 1, 0}}));
    reg.push_back(make_identity("2.25", O,
                                {{1, 3, 2}, {1, 3, -2}, {-24, 1, 1}, {-24, 1, -1},
                                 {3, 1, 2}, {3, 1, -2}, {-12, 1, 0}}));
    reg.push_back(make_identity("2.26", O,
                                {{3, 1, 2}, {3, 1, -2}, {-20, 1, 1}, {-20, 1, -1},
                                 {4, 2, 1}, {4, 2, -1}, {-30, 1, 0}}));
    reg.push_back(make_identity("2.27", O,
                                {{1, 2, 3}, {-1, 2, -3}, {-24, 1, 1}, {24, 1, -1},
                                 {3, 2, 1}, {-3, 2, -1}, {-12, 0, 1}}));
    reg.push_back(make_identity("2.28", O,
                                {{4, 1, 2}, {-4, 1, -2}, {-3, 2, -1}, {3, 2, 1},
                                 {-20, 1, 1}, {20, 1, -1}, {-30, 0, 1}}));
    reg.push_back(make_identity("2.29", O,
                                {{4, 1, 3}, {-4, 1, -3}, {-9, 2, -1}, {9, 2, 1},
                                 {-48, 1, 1}, {48, 1, -1}, {-138, 0, 1}}));
    reg.push_back(make_identity("2.30", O,
                                {{64, 1, 1}, {8, 1, 4}, {24, 1, 0}, {192, 0, 1},
                                 {-3, 3, 2}, {-3, 1, 6}, {-12, 1, 2}}));
    reg.push_back(make_identity("2.31", O,
                                {{64, 1, -1}, {8, 1, -4}, {24, 1, 0}, {-192, 0, 1},
                                 {-3, 3, -2}, {-3, 1, -6}, {-12, 1, -2}}));
    reg.push_back(make_identity("2.32", O,
                                {{8, 1, 4}, {-8, 1, -4}, {-3, 3, 2}, {3, 3, -2},
                                 {-3, 1, 6}, {3, 1, -6}, {-12, 1, 2}, {12, 1, -2},
                                 {-64, 1, -1}, {64, 1, 1}, {384, 0, 1}}));
    reg.push_back(make_identity("2.33", O,
                                {{1, 1, 4}, {-1, 1, -4}, {-5, 1, 2}, {5, 1, -2},
                                 {-6, 1, -1}, {6, 1, 1}, {-60, 0, 1}}));
    reg.push_back(make_identity("2.34", O,
                                {{3, 3, 2}, {-3, 3, -2}, {-28, 1, 2}, {28, 1, -2},
                                 {-3, 1, -6}, {3, 1, 6}, {-16, 1, 1}, {16, 1, -1},
                                 {-864, 0, 1}}));
    reg.push_back(make_identity("2.35", O,
                                {{3, 3, 2}, {-3, 3, -2}, {-3, 1, 2}, {3, 1, -2},
                                 {-8, 2, 1}, {8, 2, -1}, {-16, 1, 1}, {16, 1, -1},
                                 {48, 0, 1}}));
    reg.push_back(make_identity("2.36", O,
                                {{3, 1, 6}, {-3, 1, -6}, {-25, 1, 2}, {25, 1, -2},
                                 {-8, 2, -1}, {8, 2, 1}, {-912, 0, 1}}));
    reg.push_back(make_identity("2.37", O,
                                {{4, 1, 6}, {-4, 1, -6}, {-48, 1, 2}, {48, 1, -2},
                                 {-72, 1, -1}, {72, 1, 1}, {-1104, 0, 1}}));
    reg.push_back(make_identity("2.38", O,
                                {{44, 1, 2}, {-44, 1, -2}, {-32, 2, -1}, {32, 2, 1},
                                 {-216, 1, 1}, {216, 1, -1}, {-336, 0, 1}}));
    reg.push_back(make_identity("2.39", O,
                                {{1, 2, 1}, {-1, 2, -1}, {-4, 1, 1}, {4, 1, -1},
                                 {6, 0, 1}}));
    reg.push_back(make_identity("2.40", O,
                                {{1, 1, 2}, {1, 1, -2}, {-4, 1, 1}, {-4, 1, -1},
                                 {6, 1, 0}}));
    return reg;
}

BivariatePoly expand_identity(const FunctionalIdentity& id, std::span<const mpq_class> coeffs) {
    BivariatePoly acc;
    for (const auto& t : id.terms)
        acc = acc + BivariatePoly::substitute_linear(coeffs, t.alpha, t.beta).scaled(t.coeff);
    return acc;
}

void self_check(const std::vector<FunctionalIdentity>& reg) {
    const std::vector<mpq_class> quartic = {0, 0, 0, 0, 1};
    const std::vector<mpq_class> cubic = {0, 0, 0, 1};
    for (const auto& id : reg) {
        const auto& mono = id.parity == Parity::Even ? quartic : cubic;
        if (!expand_identity(id, mono).is_zero())
            throw Error("identity " + id.label + " fails on its monomial solution");
    }
}

}  // namespace

const std::vector<FunctionalIdentity>& registry() {
    static const std::vector<FunctionalIdentity> reg = [] {
        auto r = build_registry();
        self_check(r);
        return r;
    }();
    return reg;
}

const FunctionalIdentity& even_chain_conclusion() {
    static const FunctionalIdentity id = make_identity(
        "even-final", Parity::Even,
        {{1, 1, 2}, {1, 1, -2}, {6, 1, 0}, {-4, 1, 1}, {-4, 1, -1}, {-24, 0, 1}});
    return id;
}

const FunctionalIdentity& odd_chain_conclusion() {
    static const FunctionalIdentity id = make_identity(
        "odd-final", Parity::Odd,
        {{8, 1, 1}, {8, 1, -1}, {48, 1, 0}, {-4, 2, 1}, {-4, 2, -1}});
    return id;
}

const FunctionalIdentity& find_identity(const std::string& label) {
    for (const auto& id : registry())
        if (id.label == label) return id;
    if (label == even_chain_conclusion().label) return even_chain_conclusion();
    if (label == odd_chain_conclusion().label) return odd_chain_conclusion();
    throw Error("no identity labeled " + label);
}

IdentityCheckReport check_symbolic(const FunctionalIdentity& id, const FunctionModel& f) {
    if (f.kind() != FunctionModel::Kind::Polynomial)
        throw Error("symbolic identity check requires a polynomial model");
    IdentityCheckReport rep;
    rep.label = id.label;
    BivariatePoly res = expand_identity(id, f.coefficients());
    if (res.is_zero()) {
        rep.status = IdentityCheckReport::Status::ExactPass;
    } else {
        rep.status = IdentityCheckReport::Status::ExactFail;
        rep.residual = std::move(res);
    }
    return rep;
}

IdentityCheckReport check_numeric(const FunctionalIdentity& id, const FunctionModel& f,
                                  const SampleGrid& grid, const Scalar& tol,
                                  const SupOptions& opts) {
    IdentityCheckReport rep;
    rep.label = id.label;

    const auto& pts = grid.points();
    const std::vector<std::size_t> idx = sampled_pair_indices(pts.size(), opts);
    bool any = false;
    Scalar worst;
    mpq_class wx, wy;
    for (const std::size_t k : idx) {
        const mpq_class& px = pts[k / pts.size()];
        const mpq_class& py = pts[k % pts.size()];
        Scalar v;
        try {
            v = linear_combination_at(id.terms, f, natural_argument(f, px),
                                      natural_argument(f, py))
                    .abs();
        } catch (const TabulatedMiss& e) {
            throw OutOfDomain(std::string("identity argument escaped the table: ") + e.what());
        }
        const int c = any ? v.compare(worst) : 1;
        const bool smaller_pair = cmp(px, wx) < 0 || (cmp(px, wx) == 0 && cmp(py, wy) < 0);
        if (c > 0 || (c == 0 && smaller_pair)) {
            worst = v;
            wx = px;
            wy = py;
            any = true;
        }
    }
    rep.samples = idx.size();
    rep.max_abs = any ? worst : Scalar::zero(Scalar::Mode::Exact);
    if (any) rep.argmax = std::make_pair(wx, wy);

    const bool pass = (rep.max_abs->is_exact() && tol.is_exact())
                          ? *rep.max_abs <= tol
                          : rep.max_abs->dbl() <= tol.dbl();
    rep.status = pass ? IdentityCheckReport::Status::NumericPass
                      : IdentityCheckReport::Status::NumericFail;
    return rep;
}

Scalar default_numeric_tol(const FunctionalIdentity& id, const FunctionModel& f) {
    const double amp = f.noise_amplitude();
    if (amp == 0.0 && f.exact_capable()) return Scalar::zero(Scalar::Mode::Exact);
    return Scalar::real(absolute_coefficient_sum(id.terms).get_d() * amp);
}

}  // namespace festab
