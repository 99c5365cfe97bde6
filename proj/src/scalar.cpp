#include "festab/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace festab {

namespace {

const mpq_class& as_rational(const std::variant<mpq_class, double>& v) {
    return std::get<mpq_class>(v);
}

}  // namespace

Scalar Scalar::exact(mpq_class q) {
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::integer(long n, Mode m) {
    return m == Mode::Exact ? exact(n) : real(static_cast<double>(n));
}

Scalar Scalar::parse(const std::string& text) {
    if (text.empty()) throw Error("empty scalar literal");
    const bool fraction_form =
        text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos && text.find("inf") == std::string::npos &&
        text.find("nan") == std::string::npos;
    if (fraction_form) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw Error("unparsable rational literal: " + text);
        if (q.get_den() == 0) throw Error("rational with zero denominator: " + text);
        q.canonicalize();
        return Scalar(std::move(q));
    }
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(d))
        throw Error("unparsable scalar literal: " + text);
    return Scalar(d);
}

const mpq_class& Scalar::rational() const {
    if (!is_exact()) throw ModeMismatch("float scalar has no exact rational view");
    return as_rational(v_);
}

double Scalar::dbl() const {
    return is_exact() ? as_rational(v_).get_d() : std::get<double>(v_);
}

mpq_class Scalar::exact_value() const {
    if (is_exact()) return as_rational(v_);
    const double d = std::get<double>(v_);
    if (!std::isfinite(d)) throw Error("non-finite float has no rational value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

namespace {

[[noreturn]] void mismatch() {
    throw ModeMismatch("mixed exact/float arithmetic is rejected; demote explicitly");
}

}  // namespace

#define FESTAB_SCALAR_BINOP(op)                                                   \
    if (is_exact() != o.is_exact()) mismatch();                                    \
    if (is_exact()) return Scalar::exact(rational() op o.rational());              \
    return Scalar::real(dbl() op o.dbl())

Scalar Scalar::operator+(const Scalar& o) const { FESTAB_SCALAR_BINOP(+); }
Scalar Scalar::operator-(const Scalar& o) const { FESTAB_SCALAR_BINOP(-); }
Scalar Scalar::operator*(const Scalar& o) const { FESTAB_SCALAR_BINOP(*); }

#undef FESTAB_SCALAR_BINOP

Scalar Scalar::operator/(const Scalar& o) const {
    if (is_exact() != o.is_exact()) mismatch();
    if (o.is_zero()) throw Error("scalar division by zero");
    if (is_exact()) return Scalar::exact(rational() / o.rational());
    return Scalar::real(dbl() / o.dbl());
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar::exact(mpq_class(-rational()));
    return Scalar::real(-dbl());
}

Scalar Scalar::abs() const {
    return sign() < 0 ? -*this : *this;
}

Scalar Scalar::pow_int(long k) const {
    if (is_exact()) return Scalar::exact(mpq_pow_int(rational(), k));
    return Scalar::real(std::pow(dbl(), static_cast<double>(k)));
}

bool Scalar::is_zero() const {
    return is_exact() ? sgn(rational()) == 0 : dbl() == 0.0;
}

int Scalar::sign() const {
    if (is_exact()) return sgn(rational());
    const double d = dbl();
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

int Scalar::compare(const Scalar& o) const {
    if (is_exact() != o.is_exact()) mismatch();
    if (is_exact()) return cmp(rational(), o.rational());
    const double a = dbl(), b = o.dbl();
    return a < b ? -1 : (a > b ? 1 : 0);
}

std::string Scalar::str() const {
    if (is_exact()) return rational().get_str();
    return shortest_double(dbl());
}

Scalar pow2(long k, Scalar::Mode m) {
    if (m == Scalar::Mode::Float) return Scalar::real(std::ldexp(1.0, static_cast<int>(k)));
    mpz_class num = 1, den = 1;
    if (k >= 0)
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    else
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return Scalar::exact(mpq_class(num, den));
}

mpq_class mpq_pow_int(const mpq_class& q, long k) {
    if (k == 0) return mpq_class(1);
    const bool invert = k < 0;
    const unsigned long e = static_cast<unsigned long>(invert ? -k : k);
    if (invert && sgn(q) == 0) throw Error("zero raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    mpq_class r = invert ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return r;
}

std::string shortest_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace festab
