#include "festab/bivariate_poly.hpp"

#include <algorithm>
#include <vector>

#include "festab/scalar.hpp"

namespace festab {

void BivariatePoly::add_term(const Key& k, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

BivariatePoly BivariatePoly::monomial(mpq_class coeff, int xdeg, int ydeg) {
    coeff.canonicalize();
    BivariatePoly p;
    p.add_term({xdeg, ydeg}, coeff);
    return p;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
    BivariatePoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, mpq_class(-c));
    return r;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    BivariatePoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

BivariatePoly BivariatePoly::scaled(const mpq_class& c) const {
    BivariatePoly r;
    if (sgn(c) == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

BivariatePoly BivariatePoly::pow(unsigned k) const {
    BivariatePoly r = monomial(1, 0, 0);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

BivariatePoly BivariatePoly::substitute_linear(std::span<const mpq_class> coeffs, long alpha,
                                               long beta) {
    BivariatePoly lin;
    lin.add_term({1, 0}, mpq_class(alpha));
    lin.add_term({0, 1}, mpq_class(beta));

    BivariatePoly result;
    BivariatePoly power = monomial(1, 0, 0);  // lin^0
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) power = power * lin;
        result = result + power.scaled(coeffs[k]);
    }
    return result;
}

mpq_class BivariatePoly::eval(const mpq_class& x, const mpq_class& y) const {
    mpq_class acc = 0;
    for (const auto& [k, c] : terms_)
        acc += c * mpq_pow_int(x, k.first) * mpq_pow_int(y, k.second);
    return acc;
}

std::string BivariatePoly::str() const {
    if (terms_.empty()) return "0";

    // Graded order, higher total degree first, then higher x-degree.
    std::vector<std::pair<Key, mpq_class>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        const int ta = a.first.first + a.first.second;
        const int tb = b.first.first + b.first.second;
        if (ta != tb) return ta > tb;
        return a.first.first > b.first.first;
    });

    std::string out;
    for (const auto& [k, c] : ordered) {
        mpq_class mag = abs(c);
        if (out.empty())
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";

        const bool has_vars = k.first > 0 || k.second > 0;
        std::string body;
        if (cmp(mag, mpq_class(1)) != 0 || !has_vars) body = mag.get_str();
        if (k.first > 0) {
            if (!body.empty()) body += "*";
            body += "x";
            if (k.first > 1) body += "^" + std::to_string(k.first);
        }
        if (k.second > 0) {
            if (!body.empty()) body += "*";
            body += "y";
            if (k.second > 1) body += "^" + std::to_string(k.second);
        }
        out += body;
    }
    return out;
}

}  // namespace festab
