#pragma once

#include "ctheta/rational.hpp"

#include <complex>
#include <string>
#include <variant>

namespace ctheta {

using Complex = std::complex<double>;

// A value that is either an exact rational (always real) or an
// approximate complex number. Arithmetic between an exact and an
// approximate operand yields an approximate result.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(canonical(std::move(q))) {}  // NOLINT(implicit)
    Scalar(long n) : value_(Rational(n)) {}        // NOLINT(implicit)
    Scalar(int n) : value_(Rational(n)) {}         // NOLINT(implicit)
    Scalar(Complex z) : value_(z) {}               // NOLINT(implicit)

    static Scalar approx(double re, double im = 0.0) { return Scalar(Complex(re, im)); }

    bool is_exact() const { return std::holds_alternative<Rational>(value_); }

    // Throws InvalidArgument when the scalar is approximate.
    const Rational& rational() const;
    Complex to_complex() const;
    double real() const { return to_complex().real(); }
    double imag() const { return to_complex().imag(); }

    Scalar conj() const;
    Scalar operator-() const;

    // Exact: exact zero. Approximate: |z| <= tol.
    bool is_zero(double tol = 0.0) const;
    // Exact: value >= 0. Approximate: |imag| <= tol and real >= -tol.
    bool is_nonnegative_real(double tol = 0.0) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    // Representation equality: exact values compare exactly, approximate
    // values compare bit-for-bit, mixed operands are never equal.
    friend bool operator==(const Scalar& a, const Scalar& b);

    // Exact values print as "p/q", approximate as "re" or "re+imi".
    std::string to_string() const;

private:
    static Rational canonical(Rational q) {
        q.canonicalize();
        return q;
    }

    std::variant<Rational, Complex> value_;
};

// |a - b| <= tol after promoting both to complex; exact pairs compare exactly.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

}  // namespace ctheta
