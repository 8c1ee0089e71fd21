#include "ctheta/theta.hpp"

#include "ctheta/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>

namespace ctheta {

namespace {

constexpr double kRowDedupTolerance = 1e-12;

struct RowCandidate {
    std::vector<Scalar> coefficients;  // one per irrep; real-valued
    LpRowOrigin origin;
};

bool is_zero_row(const std::vector<Scalar>& row) {
    for (const auto& v : row)
        if (!v.is_zero(kRowDedupTolerance)) return false;
    return true;
}

// Row scaled so that its first nonzero entry is 1.
std::vector<Scalar> normalized(const std::vector<Scalar>& row) {
    std::vector<Scalar> out = row;
    for (const auto& v : row) {
        if (v.is_zero(kRowDedupTolerance)) continue;
        const Scalar lead = v;
        for (auto& x : out) x = x / lead;
        break;
    }
    return out;
}

bool same_row(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_exact() && b[i].is_exact()) {
            if (!(a[i] == b[i])) return false;
        } else if (!approx_equal(a[i], b[i], kRowDedupTolerance)) {
            return false;
        }
    }
    return true;
}

Scalar real_part(const Scalar& s) { return s.is_exact() ? s : Scalar::approx(s.real()); }
Scalar imag_part(const Scalar& s) { return s.is_exact() ? Scalar(0) : Scalar::approx(s.imag()); }

}  // namespace

CharacterLp build_lp_D(const CayleyGraphSpec& spec, const CharacterTable& table) {
    if (!spec.conjugation_closed) {
        throw WrongFormulation(
            "connection set is not a union of conjugacy classes; the character LP does not apply, export the "
            "matrix formulation (A) or the block formulation (C) instead");
    }
    if (!spec.group.same_group(table.group())) throw InvalidArgument("character table belongs to a different group");
    const FiniteGroup& group = spec.group;
    const std::size_t irreps = table.irrep_count();
    const auto& classes = group.classes();

    std::vector<RowCandidate> candidates;
    {
        RowCandidate norm;
        for (std::size_t pi = 0; pi < irreps; ++pi) {
            const auto d = static_cast<long>(table.degree(pi));
            norm.coefficients.push_back(Scalar(Rational(d * d)));
        }
        norm.origin = {LpRowOrigin::Kind::Normalization, 0};
        candidates.push_back(std::move(norm));
    }
    for (std::size_t c : *spec.connection.classes()) {
        const std::size_t inv = classes[c].inverse_class;
        if (inv < c) continue;
        RowCandidate re, im;
        for (std::size_t pi = 0; pi < irreps; ++pi) {
            const Scalar weighted = Scalar(Rational(static_cast<long>(table.degree(pi)))) * table.entry(pi, c);
            re.coefficients.push_back(real_part(weighted));
            im.coefficients.push_back(imag_part(weighted));
        }
        re.origin = {LpRowOrigin::Kind::RealPart, c};
        im.origin = {LpRowOrigin::Kind::ImaginaryPart, c};
        candidates.push_back(std::move(re));
        candidates.push_back(std::move(im));
    }

    std::vector<const RowCandidate*> kept;
    std::vector<std::vector<Scalar>> kept_normalized;
    for (const auto& row : candidates) {
        if (is_zero_row(row.coefficients)) continue;
        auto norm = normalized(row.coefficients);
        bool duplicate = false;
        for (const auto& other : kept_normalized) duplicate = duplicate || same_row(norm, other);
        if (duplicate) continue;
        kept.push_back(&row);
        kept_normalized.push_back(std::move(norm));
    }

    CharacterLp out;
    out.exact = table.exact();
    out.objective_column = table.trivial_index();
    const std::size_t m = kept.size();
    const auto order = static_cast<long>(group.order());
    for (const auto* row : kept) out.rows.push_back(row->origin);
    if (out.exact) {
        ExactLp lp{DenseMatrix<Rational>(m, irreps), std::vector<Rational>(m, Rational(0)), std::vector<Rational>(irreps, Rational(0))};
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t pi = 0; pi < irreps; ++pi) lp.a(i, pi) = kept[i]->coefficients[pi].rational();
            if (kept[i]->origin.kind == LpRowOrigin::Kind::Normalization) lp.b[i] = Rational(order);
        }
        lp.c[out.objective_column] = 1;
        out.lp = std::move(lp);
    } else {
        FloatLp lp{DenseMatrix<double>(m, irreps), std::vector<double>(m, 0.0), std::vector<double>(irreps, 0.0)};
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t pi = 0; pi < irreps; ++pi) lp.a(i, pi) = kept[i]->coefficients[pi].real();
            if (kept[i]->origin.kind == LpRowOrigin::Kind::Normalization) lp.b[i] = static_cast<double>(order);
        }
        lp.c[out.objective_column] = 1.0;
        out.lp = std::move(lp);
    }
    return out;
}

ThetaCertificate solve_theta(const CayleyGraphSpec& spec, const CharacterTable& table) {
    const CharacterLp lp = build_lp_D(spec, table);
    const FiniteGroup& group = spec.group;
    const std::size_t irreps = table.irrep_count();

    ThetaCertificate cert{Scalar(), {}, {}, ClassFunction{group, {}}, true, {}, 0, 0};
    cert.exact = lp.exact;
    cert.irrep_labels = table.irrep_labels();
    cert.lp_rows = lp.row_count();
    cert.lp_cols = irreps;
    if (lp.exact) {
        const auto sol = solve(lp.exact_lp());
        if (sol.status != LpStatus::Optimal) {
            throw InternalError("character LP reported " + to_string(sol.status) + " for a valid connection set");
        }
        cert.objective = Scalar(sol.objective);
        for (const auto& v : sol.x) cert.a.emplace_back(v);
        for (const auto& v : sol.dual) cert.dual.emplace_back(v);
    } else {
        const auto sol = solve(lp.float_lp());
        if (sol.status != LpStatus::Optimal) {
            throw InternalError("character LP reported " + to_string(sol.status) + " for a valid connection set");
        }
        cert.objective = Scalar::approx(sol.objective);
        for (double v : sol.x) cert.a.push_back(Scalar::approx(v));
        for (double v : sol.dual) cert.dual.push_back(Scalar::approx(v));
    }

    const auto& classes = group.classes();
    const Scalar inv_order = Scalar(Rational(1, static_cast<long>(group.order())));
    std::vector<Scalar> g(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        Scalar sum(0);
        for (std::size_t pi = 0; pi < irreps; ++pi) {
            sum += Scalar(Rational(static_cast<long>(table.degree(pi)))) * cert.a[pi] * table.entry(pi, c);
        }
        g[c] = sum * inv_order;
    }
    cert.f.group = group;
    cert.f.values.resize(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (cert.exact) {
            cert.f.values[c] = g[c];
        } else {
            // Real-valued by symmetrizing with the inverse class; residual
            // imaginary parts are rounding noise.
            const Scalar sym = (g[c] + g[classes[c].inverse_class]) * Scalar(Rational(1, 2));
            cert.f.values[c] = Scalar::approx(sym.real());
        }
    }

    const std::string failure = validate_certificate(spec, table, cert);
    if (!failure.empty()) {
        if (!cert.exact) throw NumericalFailure("float certificate failed validation: " + failure);
        throw InternalError("exact certificate failed validation: " + failure);
    }
    return cert;
}

void write_certificate_json(std::ostream& out, const CayleyGraphSpec& spec, const ThetaCertificate& cert) {
    using nlohmann::json;
    auto value = [&](const Scalar& s) -> json {
        if (s.is_exact()) return s.to_string();
        return s.real();
    };
    json doc;
    doc["theta"] = value(cert.objective);
    doc["exact"] = cert.exact;
    doc["group_order"] = spec.group.order();
    doc["connection_size"] = spec.connection.size();
    json a = json::object();
    for (std::size_t pi = 0; pi < cert.a.size(); ++pi) a[cert.irrep_labels[pi]] = value(cert.a[pi]);
    doc["a"] = a;
    json f = json::object();
    const auto& classes = spec.group.classes();
    for (std::size_t c = 0; c < classes.size(); ++c) f[classes[c].label] = value(cert.f.values[c]);
    doc["f"] = f;
    json dual = json::array();
    for (const auto& y : cert.dual) dual.push_back(value(y));
    doc["dual"] = dual;
    doc["lp_rows"] = cert.lp_rows;
    doc["lp_cols"] = cert.lp_cols;
    out << doc.dump(2) << '\n';
}

DenseMatrix<Scalar> extract_matrix_solution(const ThetaCertificate& cert, std::size_t max_order) {
    const FiniteGroup& group = cert.f.group;
    const std::size_t n = group.order();
    if (n > max_order) {
        throw SizeLimit("matrix solution for |G| = " + std::to_string(n) + " exceeds the limit of " + std::to_string(max_order));
    }
    const Scalar inv_order = cert.exact ? Scalar(Rational(1, static_cast<long>(n))) : Scalar::approx(1.0 / static_cast<double>(n));
    std::vector<Scalar> per_class(cert.f.values.size());
    for (std::size_t c = 0; c < per_class.size(); ++c) per_class[c] = cert.f.values[c] * inv_order;
    DenseMatrix<Scalar> a(n, n);
    for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) a(b, c) = per_class[group.class_of(group.multiply(b, group.invert(c)))];
    return a;
}

GroupFunction symmetrize_matrix(const DenseMatrix<Scalar>& a, const FiniteGroup& group, std::size_t max_order) {
    const std::size_t n = group.order();
    if (n > max_order) throw SizeLimit("symmetrization for |G| = " + std::to_string(n) + " exceeds the limit");
    if (a.rows() != n || a.cols() != n) throw InvalidArgument("matrix size differs from the group order");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Scalar& x = a(i, j);
            const Scalar y = a(j, i).conj();
            const bool equal = x.is_exact() && y.is_exact() ? x == y : approx_equal(x, y, 1e-9);
            if (!equal) {
                throw InvalidArgument("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    GroupFunction f{group, std::vector<Scalar>(n)};
    for (Element g = 0; g < n; ++g) {
        Scalar sum(0);
        for (Element b = 0; b < n; ++b) sum += a(group.multiply(g, b), b);
        f.values[g] = sum;
    }
    return f;
}

}  // namespace ctheta
