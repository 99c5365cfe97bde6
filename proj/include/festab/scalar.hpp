#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "festab/errors.hpp"

namespace festab {

// A scalar that is either an exact rational (GMP mpq) or a double.  The mode
// is fixed per value and must be uniform within one computation: arithmetic
// between an Exact and a Float operand throws ModeMismatch instead of
// promoting silently.  Demotion to Float is always explicit (to_float).
class Scalar {
public:
    enum class Mode { Exact, Float };

    Scalar() : v_(mpq_class(0)) {}

    static Scalar exact(mpq_class q);
    static Scalar exact(long n) { return exact(mpq_class(n)); }
    static Scalar exact(long num, long den);
    static Scalar real(double v) { return Scalar(v); }
    static Scalar zero(Mode m) { return integer(0, m); }
    static Scalar one(Mode m) { return integer(1, m); }
    static Scalar integer(long n, Mode m);

    // Accepts "p/q", "p", or a decimal like "-0.25" / "1e-3".  Fraction and
    // integer forms parse exact; decimal forms parse as Float.
    static Scalar parse(const std::string& text);

    Mode mode() const { return std::holds_alternative<mpq_class>(v_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const { return mode() == Mode::Exact; }

    const mpq_class& rational() const;
    double dbl() const;
    Scalar to_float() const { return Scalar(dbl()); }

    // The mathematical value as an exact rational.  Well defined in both
    // modes: every finite double is a dyadic rational.
    mpq_class exact_value() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws on exact division by zero
    Scalar operator-() const;
    Scalar abs() const;
    Scalar pow_int(long k) const;  // integer power; negative k inverts

    bool is_zero() const;
    int sign() const;

    // Comparisons require matching modes, like arithmetic.
    int compare(const Scalar& o) const;
    bool operator==(const Scalar& o) const { return compare(o) == 0; }
    bool operator!=(const Scalar& o) const { return compare(o) != 0; }
    bool operator<(const Scalar& o) const { return compare(o) < 0; }
    bool operator<=(const Scalar& o) const { return compare(o) <= 0; }
    bool operator>(const Scalar& o) const { return compare(o) > 0; }
    bool operator>=(const Scalar& o) const { return compare(o) >= 0; }

    // "p/q" for exact values, shortest round-trip decimal for floats.
    std::string str() const;

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(double d) : v_(d) {}

    std::variant<mpq_class, double> v_;
};

// 2^k in the requested mode (exact for Exact, ldexp for Float).
Scalar pow2(long k, Scalar::Mode m);

// q^k for exact rationals, k may be negative (throws Error on 0^negative).
mpq_class mpq_pow_int(const mpq_class& q, long k);

// Shortest decimal string that round-trips to the same double.
std::string shortest_double(double v);

}  // namespace festab
