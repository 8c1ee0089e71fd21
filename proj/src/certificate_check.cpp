#include "ctheta/theta.hpp"

namespace ctheta {

namespace {

bool near(const Scalar& x, const Scalar& target, bool exact) {
    if (exact && x.is_exact() && target.is_exact()) return x == target;
    return approx_equal(x, target, kCertificateTolerance * (1.0 + std::abs(target.to_complex())));
}

}  // namespace

std::string validate_certificate(const CayleyGraphSpec& spec, const CharacterTable& table, const ThetaCertificate& cert) {
    const FiniteGroup& group = spec.group;
    const auto& classes = group.classes();
    const std::size_t irreps = table.irrep_count();
    const bool exact = cert.exact;
    if (cert.a.size() != irreps) return "coefficient vector has wrong length";
    if (cert.f.values.size() != classes.size()) return "class function has wrong length";

    for (std::size_t pi = 0; pi < irreps; ++pi) {
        const Scalar& a = cert.a[pi];
        const bool ok = exact ? a.is_exact() && sgn(a.rational()) >= 0 : a.is_nonnegative_real(kCertificateTolerance);
        if (!ok) return "a[" + table.irrep_labels()[pi] + "] = " + a.to_string() + " is negative";
    }

    Scalar weight(0);
    for (std::size_t pi = 0; pi < irreps; ++pi) {
        const auto d = static_cast<long>(table.degree(pi));
        weight += Scalar(Rational(d * d)) * cert.a[pi];
    }
    if (!near(weight, Scalar(Rational(static_cast<long>(group.order()))), exact)) {
        return "sum of d^2 a = " + weight.to_string() + " differs from |G|";
    }

    std::vector<bool> in_x(classes.size(), false);
    for (Element x : spec.connection.elements()) in_x[group.class_of(x)] = true;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!in_x[c]) continue;
        Scalar s(0);
        for (std::size_t pi = 0; pi < irreps; ++pi) {
            s += Scalar(Rational(static_cast<long>(table.degree(pi)))) * cert.a[pi] * table.entry(pi, c);
        }
        if (!near(s, Scalar(0), exact)) return "connection constraint violated at class " + classes[c].label;
        if (!near(cert.f.values[c], Scalar(0), exact)) return "f is nonzero on connection class " + classes[c].label;
    }

    const std::size_t identity_class = group.class_of(group.identity());
    if (!near(cert.f.values[identity_class], Scalar(1), exact)) return "f(e) = " + cert.f.values[identity_class].to_string();

    Scalar total(0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        total += Scalar(Rational(static_cast<long>(classes[c].size))) * cert.f.values[c];
    }
    if (!near(total, cert.objective, exact)) return "sum of f = " + total.to_string() + " differs from the objective";
    if (!near(cert.a[table.trivial_index()], cert.objective, exact)) return "objective differs from a_trivial";

    const auto positivity = is_positive_type(cert.f, table);
    if (!positivity.positive) {
        return "f is not of positive type at irrep " + table.irrep_labels()[*positivity.irrep] + " (" +
               positivity.witness.to_string() + ")";
    }
    return {};
}

}  // namespace ctheta
