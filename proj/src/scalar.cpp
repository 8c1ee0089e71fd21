#include "ctheta/scalar.hpp"

#include "ctheta/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace ctheta {

std::string to_string(const Rational& value) {
    Rational canon(value);
    canon.canonicalize();
    return canon.get_str();
}

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char ch : s) {
            if (ch < '0' || ch > '9') return false;
        }
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    if (text.front() == '-') n = -n;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

double to_double(const Rational& value) { return value.get_d(); }

const Rational& Scalar::rational() const {
    if (const auto* q = std::get_if<Rational>(&value_)) return *q;
    throw InvalidArgument("scalar is not exact");
}

Complex Scalar::to_complex() const {
    if (const auto* q = std::get_if<Rational>(&value_)) return {q->get_d(), 0.0};
    return std::get<Complex>(value_);
}

Scalar Scalar::conj() const {
    if (is_exact()) return *this;
    return Scalar(std::conj(std::get<Complex>(value_)));
}

Scalar Scalar::operator-() const {
    if (const auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
    return Scalar(-std::get<Complex>(value_));
}

bool Scalar::is_zero(double tol) const {
    if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q) == 0;
    return std::abs(std::get<Complex>(value_)) <= tol;
}

bool Scalar::is_nonnegative_real(double tol) const {
    if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q) >= 0;
    const Complex z = std::get<Complex>(value_);
    return std::abs(z.imag()) <= tol && z.real() >= -tol;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() + b.rational()));
    return Scalar(a.to_complex() + b.to_complex());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() - b.rational()));
    return Scalar(a.to_complex() - b.to_complex());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(Rational(a.rational() * b.rational()));
    return Scalar(a.to_complex() * b.to_complex());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        if (sgn(b.rational()) == 0) throw InvalidArgument("division by exact zero");
        return Scalar(Rational(a.rational() / b.rational()));
    }
    return Scalar(a.to_complex() / b.to_complex());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) return a.rational() == b.rational();
    return a.to_complex() == b.to_complex();
}

std::string Scalar::to_string() const {
    if (is_exact()) return ctheta::to_string(rational());
    const Complex z = to_complex();
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
    return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

}  // namespace ctheta
