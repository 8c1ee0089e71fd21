#include "ctheta/characters.hpp"

#include "ctheta/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ctheta {

namespace {

constexpr double kIrrepTolerance = 1e-8;

Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

DenseMatrix<Complex> from_eigen(const Eigen::MatrixXcd& m) {
    DenseMatrix<Complex> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace

std::string check_irrep_matrices(const IrrepMatrices& reps) {
    const FiniteGroup& g = reps.group;
    const std::size_t n = g.order();
    std::uint64_t degree_sum = 0;
    std::vector<std::vector<Complex>> characters;
    for (std::size_t r = 0; r < reps.irreps.size(); ++r) {
        const Irrep& irrep = reps.irreps[r];
        const std::string who = "irrep " + std::to_string(r) + " (" + irrep.label + ")";
        const auto d = static_cast<Eigen::Index>(irrep.degree);
        if (irrep.matrices.size() != n) return who + ": needs one matrix per element";
        std::vector<Eigen::MatrixXcd> mats;
        mats.reserve(n);
        for (const auto& m : irrep.matrices) {
            if (static_cast<Eigen::Index>(m.rows()) != d || static_cast<Eigen::Index>(m.cols()) != d) {
                return who + ": matrix of wrong size";
            }
            mats.push_back(to_eigen(m));
        }
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
        if ((mats[g.identity()] - id).cwiseAbs().maxCoeff() > kIrrepTolerance) return who + ": pi(e) is not the identity";
        for (Element a = 0; a < n; ++a) {
            if ((mats[a] * mats[a].adjoint() - id).cwiseAbs().maxCoeff() > kIrrepTolerance) {
                return who + ": pi(" + g.element_label(a) + ") is not unitary";
            }
            for (Element b = 0; b < n; ++b) {
                if ((mats[g.multiply(a, b)] - mats[a] * mats[b]).cwiseAbs().maxCoeff() > kIrrepTolerance) {
                    return who + ": pi(ab) != pi(a)pi(b) for a=" + g.element_label(a) + ", b=" + g.element_label(b);
                }
            }
        }
        std::vector<Complex> chi(n);
        for (Element a = 0; a < n; ++a) chi[a] = mats[a].trace();
        characters.push_back(std::move(chi));
        degree_sum += static_cast<std::uint64_t>(irrep.degree) * static_cast<std::uint64_t>(irrep.degree);
    }
    // Irreducible and pairwise inequivalent iff the characters are orthonormal.
    for (std::size_t r = 0; r < characters.size(); ++r)
        for (std::size_t s = r; s < characters.size(); ++s) {
            Complex inner = 0;
            for (Element a = 0; a < n; ++a) inner += characters[r][a] * std::conj(characters[s][a]);
            inner /= static_cast<double>(n);
            const double expected = r == s ? 1.0 : 0.0;
            if (std::abs(inner - expected) > kIrrepTolerance) {
                return r == s ? "irrep " + std::to_string(r) + " is reducible"
                              : "irreps " + std::to_string(r) + " and " + std::to_string(s) + " are equivalent";
            }
        }
    if (degree_sum != n) return "sum of squared degrees " + std::to_string(degree_sum) + " != |G|";
    return {};
}

IrrepMatrices irreps_from_abelian_table(const CharacterTable& table) {
    const FiniteGroup& g = table.group();
    if (g.kind() != GroupKind::AbelianProduct) throw InvalidArgument("irreps_from_abelian_table needs an abelian group");
    IrrepMatrices reps{g, {}};
    for (std::size_t pi = 0; pi < table.irrep_count(); ++pi) {
        Irrep irrep{table.irrep_labels()[pi], 1, {}};
        for (Element x = 0; x < g.order(); ++x) {
            DenseMatrix<Complex> m(1, 1);
            m(0, 0) = table.entry(pi, g.class_of(x)).to_complex();
            irrep.matrices.push_back(m);
        }
        reps.irreps.push_back(std::move(irrep));
    }
    return reps;
}

IrrepMatrices symmetric_basic_irreps(const FiniteGroup& group) {
    if (group.kind() != GroupKind::Symmetric) throw InvalidArgument("symmetric_basic_irreps needs a symmetric group");
    const int n = group.degree();
    if (n > 3) throw InvalidArgument("trivial, sign and standard irreps are complete only for n <= 3");
    IrrepMatrices reps{group, {}};
    Irrep trivial{"(" + std::to_string(n) + ")", 1, {}};
    Irrep sign{n == 2 ? "(1,1)" : "(1,1,1)", 1, {}};
    Irrep standard{"(2,1)", n - 1, {}};

    // Orthonormal (Helmert) basis of the sum-zero subspace as columns of B;
    // the standard representation is B^T P_sigma B.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) basis(i, k - 1) = 1.0 / norm;
        basis(k, k - 1) = -static_cast<double>(k) / norm;
    }
    for (Element g = 0; g < group.order(); ++g) {
        const auto p = group.permutation(g);
        DenseMatrix<Complex> one(1, 1, Complex(1.0, 0.0));
        trivial.matrices.push_back(one);

        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j] ? 1 : 0;
        sign.matrices.push_back(DenseMatrix<Complex>(1, 1, Complex(inversions % 2 == 0 ? 1.0 : -1.0, 0.0)));

        Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) perm(p[i], i) = 1.0;
        const Eigen::MatrixXd std_rep = basis.transpose() * perm * basis;
        standard.matrices.push_back(from_eigen(std_rep.cast<Complex>()));
    }
    reps.irreps.push_back(std::move(trivial));
    if (n >= 2) reps.irreps.push_back(std::move(sign));
    if (n >= 3) reps.irreps.push_back(std::move(standard));
    return reps;
}

PositivityResult is_positive_type(const GroupFunction& f, const IrrepMatrices& reps) {
    if (!f.group.same_group(reps.group)) throw InvalidArgument("function and representations belong to different groups");
    for (std::size_t r = 0; r < reps.irreps.size(); ++r) {
        const Irrep& irrep = reps.irreps[r];
        const auto d = static_cast<Eigen::Index>(irrep.degree);
        Eigen::MatrixXcd transform = Eigen::MatrixXcd::Zero(d, d);
        for (Element g = 0; g < f.group.order(); ++g) {
            if (f.values[g].is_zero()) continue;
            transform += f.values[g].to_complex() * to_eigen(irrep.matrices[g]);
        }
        const double asymmetry = (transform - transform.adjoint()).cwiseAbs().maxCoeff();
        if (asymmetry > kPositivityTolerance) return {false, r, Scalar::approx(asymmetry)};
        const Eigen::MatrixXcd hermitian = (transform + transform.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
        const double smallest = solver.eigenvalues().minCoeff();
        if (smallest < -kPositivityTolerance) return {false, r, Scalar::approx(smallest)};
    }
    return {true, std::nullopt, Scalar()};
}

}  // namespace ctheta
