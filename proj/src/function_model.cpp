#include "festab/function_model.hpp"

#include <cmath>

namespace festab {

FunctionModel FunctionModel::polynomial(std::vector<mpq_class> coeffs) {
    if (coeffs.empty()) throw Error("polynomial needs at least one coefficient");
    for (auto& c : coeffs) c.canonicalize();
    FunctionModel m;
    m.kind_ = Kind::Polynomial;
    m.coeffs_ = std::move(coeffs);
    return m;
}

FunctionModel FunctionModel::perturbed(FunctionModel base, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0)) throw Error("perturbation amplitude must be nonnegative");
    FunctionModel m;
    m.kind_ = Kind::Perturbed;
    m.base_ = std::make_shared<const FunctionModel>(std::move(base));
    m.delta_ = delta;
    m.seed_ = seed;
    return m;
}

FunctionModel FunctionModel::tabulated(DyadicTable entries) {
    if (entries.empty()) throw Error("tabulated model needs at least one entry");
    const bool first_exact = entries.begin()->second.is_exact();
    for (const auto& [k, v] : entries)
        if (v.is_exact() != first_exact)
            throw ModeMismatch("tabulated values must share one mode");
    FunctionModel m;
    m.kind_ = Kind::Tabulated;
    m.table_ = std::make_shared<const DyadicTable>(std::move(entries));
    return m;
}

Scalar FunctionModel::eval(const Scalar& x) const {
    switch (kind_) {
        case Kind::Polynomial: {
            if (x.is_exact()) {
                mpq_class acc = 0;
                for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
                    acc = acc * x.rational() + *it;
                return Scalar::exact(std::move(acc));
            }
            const double xv = x.dbl();
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
                acc = acc * xv + it->get_d();
            return Scalar::real(acc);
        }
        case Kind::Perturbed: {
            if (x.is_exact())
                throw ModeMismatch("perturbed model is inexact; evaluate with a float argument");
            const Scalar b = base_->eval(x);
            return Scalar::real(b.dbl() + perturbation_noise(x.exact_value(), seed_, delta_));
        }
        case Kind::Tabulated: {
            const auto it = table_->find(x.exact_value());
            if (it == table_->end())
                throw TabulatedMiss("tabulated model has no entry at " + x.str());
            return it->second;
        }
    }
    throw Error("unreachable model kind");
}

bool FunctionModel::exact_capable() const {
    switch (kind_) {
        case Kind::Polynomial: return true;
        case Kind::Perturbed: return false;
        case Kind::Tabulated: return table_->begin()->second.is_exact();
    }
    return false;
}

bool FunctionModel::origin_anchored() const {
    switch (kind_) {
        case Kind::Polynomial: return sgn(coeffs_.front()) == 0;
        case Kind::Perturbed: return base_->origin_anchored();  // n(0) = 0 by construction
        case Kind::Tabulated: {
            const auto it = table_->find(mpq_class(0));
            return it != table_->end() && it->second.is_zero();
        }
    }
    return false;
}

double FunctionModel::noise_amplitude() const {
    return kind_ == Kind::Perturbed ? delta_ + base_->noise_amplitude() : 0.0;
}

const std::vector<mpq_class>& FunctionModel::coefficients() const {
    if (kind_ != Kind::Polynomial) throw Error("coefficients() requires a polynomial model");
    return coeffs_;
}

const DyadicTable& FunctionModel::entries() const {
    if (kind_ != Kind::Tabulated) throw Error("entries() requires a tabulated model");
    return *table_;
}

const FunctionModel& FunctionModel::base() const {
    if (kind_ != Kind::Perturbed) throw Error("base() requires a perturbed model");
    return *base_;
}

double FunctionModel::delta() const {
    if (kind_ != Kind::Perturbed) throw Error("delta() requires a perturbed model");
    return delta_;
}

std::uint64_t FunctionModel::seed() const {
    if (kind_ != Kind::Perturbed) throw Error("seed() requires a perturbed model");
    return seed_;
}

FunctionModel make_polynomial(std::vector<mpq_class> coefficients) {
    return FunctionModel::polynomial(std::move(coefficients));
}

FunctionModel make_perturbed(FunctionModel base, double delta, std::uint64_t seed) {
    return FunctionModel::perturbed(std::move(base), delta, seed);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

double perturbation_noise(const mpq_class& point, std::uint64_t seed, double delta) {
    if (delta == 0.0 || sgn(point) == 0) return 0.0;
    // FNV-1a over the canonical decimal encoding, then a splitmix64 finish.
    const std::string key = point.get_str();
    std::uint64_t h = 0xcbf29ce484222325ull ^ splitmix64(seed);
    for (const char c : key) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    const double u = static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53;  // [0, 1)
    return delta * (2.0 * u - 1.0);
}

Scalar natural_argument(const FunctionModel& f, const mpq_class& x) {
    if (f.exact_capable()) return Scalar::exact(x);
    return Scalar::real(mpq_class(x).get_d());
}

Scalar eval_even_part(const FunctionModel& f, const Scalar& x) {
    const Scalar two = Scalar::integer(2, x.mode());
    return (f.eval(x) + f.eval(-x)) / two;
}

Scalar eval_odd_part(const FunctionModel& f, const Scalar& x) {
    const Scalar two = Scalar::integer(2, x.mode());
    return (f.eval(x) - f.eval(-x)) / two;
}

std::pair<FunctionModel, FunctionModel> decompose_parity(const FunctionModel& f,
                                                         const SampleGrid& grid) {
    if (!grid.symmetric()) throw AsymmetricGrid("parity split needs a grid with x -> -x closure");
    DyadicTable even, odd;
    for (const auto& p : grid.points()) {
        const Scalar x = natural_argument(f, p);
        even.emplace(p, eval_even_part(f, x));
        odd.emplace(p, eval_odd_part(f, x));
    }
    return {FunctionModel::tabulated(std::move(even)), FunctionModel::tabulated(std::move(odd))};
}

GridExtremum sup_norm_on_grid(const FunctionModel& f, const SampleGrid& grid) {
    bool first = true;
    GridExtremum best;
    for (const auto& p : grid.points()) {
        const Scalar v = f.eval(natural_argument(f, p)).abs();
        if (first || v > best.value) {
            best.value = v;
            best.at = p;
            first = false;
        }
    }
    return best;
}

}  // namespace festab
