#include "ctheta/errors.hpp"
#include "ctheta/simplex.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace ctheta {
namespace {

ExactLp make_lp(std::vector<std::vector<long>> a, std::vector<long> b, std::vector<long> c) {
    ExactLp lp{DenseMatrix<Rational>(a.size(), c.size()), {}, {}};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) lp.a(i, j) = a[i][j];
    for (long v : b) lp.b.emplace_back(v);
    for (long v : c) lp.c.emplace_back(v);
    return lp;
}

FloatLp to_float(const ExactLp& lp) {
    FloatLp out{DenseMatrix<double>(lp.rows(), lp.cols()), {}, {}};
    for (std::size_t i = 0; i < lp.rows(); ++i)
        for (std::size_t j = 0; j < lp.cols(); ++j) out.a(i, j) = lp.a(i, j).get_d();
    for (const auto& v : lp.b) out.b.push_back(v.get_d());
    for (const auto& v : lp.c) out.c.push_back(v.get_d());
    return out;
}

oracle::LpOutcome outcome_of(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return oracle::LpOutcome::Optimal;
        case LpStatus::Infeasible: return oracle::LpOutcome::Infeasible;
        case LpStatus::Unbounded: return oracle::LpOutcome::Unbounded;
    }
    return oracle::LpOutcome::Infeasible;
}

TEST(SimplexTest, SingleRowMaximum) {
    const ExactLp lp = make_lp({{1, 1}}, {1}, {1, 0});
    const auto sol = solve(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, 1);
    EXPECT_EQ(sol.x, (std::vector<Rational>{1, 0}));
    EXPECT_TRUE(verify_certificate(lp, sol).ok);
}

TEST(SimplexTest, NegativeRightHandSideIsInfeasible) {
    EXPECT_EQ(solve(make_lp({{1, 1}}, {-1}, {1, 0})).status, LpStatus::Infeasible);
    EXPECT_EQ(solve(to_float(make_lp({{1, 1}}, {-1}, {1, 0}))).status, LpStatus::Infeasible);
}

TEST(SimplexTest, UnboundedRay) {
    EXPECT_EQ(solve(make_lp({{1, -1}}, {1}, {1, 0})).status, LpStatus::Unbounded);
}

TEST(SimplexTest, CharacterLpOfS3) {
    const ExactLp lp = make_lp({{1, 1, 4}, {1, 1, -2}}, {6, 0}, {1, 0, 0});
    const auto sol = solve(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, 2);
    EXPECT_EQ(sol.x, (std::vector<Rational>{2, 0, 1}));
    EXPECT_TRUE(verify_certificate(lp, sol).ok);
    const auto fsol = solve(to_float(lp));
    ASSERT_EQ(fsol.status, LpStatus::Optimal);
    EXPECT_NEAR(fsol.objective, 2.0, 1e-12);
    EXPECT_TRUE(verify_certificate(to_float(lp), fsol).ok);
}

TEST(SimplexTest, TamperedCertificatesAreRejected) {
    const ExactLp lp = make_lp({{1, 1, 4}, {1, 1, -2}}, {6, 0}, {1, 0, 0});
    const auto sol = solve(lp);
    auto negated = sol;
    for (auto& v : negated.x)
        if (v != 0) {
            v = -v;
            break;
        }
    EXPECT_EQ(verify_certificate(lp, negated).violation, "primal infeasible");
    auto gap = sol;
    gap.objective += 1;
    EXPECT_EQ(verify_certificate(lp, gap).violation, "duality gap");
    auto bad_dual = sol;
    bad_dual.dual[0] -= 10;
    EXPECT_FALSE(verify_certificate(lp, bad_dual).ok);
    auto not_opt = sol;
    not_opt.status = LpStatus::Infeasible;
    EXPECT_EQ(verify_certificate(lp, not_opt).violation, "not optimal");
}

TEST(SimplexTest, DegenerateZeroRowsTerminate) {
    // A classic cycling example under the textbook largest-coefficient rule,
    // in equality form with slacks; b = 0 on the first two rows.
    const ExactLp lp = make_lp({{1, -11, -5, 18, 1, 0, 0},  //
                                {1, -3, -1, 2, 0, 1, 0},
                                {1, 0, 0, 0, 0, 0, 1}},
                               {0, 0, 1}, {10, -57, -9, -24, 0, 0, 0});
    const auto sol = solve(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, 1);
    EXPECT_TRUE(verify_certificate(lp, sol).ok);
    const auto oracle_result = oracle::enumerate_lp(lp.a, lp.b, lp.c);
    EXPECT_EQ(oracle_result.optimum, sol.objective);
}

TEST(SimplexTest, RedundantAndZeroRows) {
    const ExactLp lp = make_lp({{1, 2, 3}, {2, 4, 6}, {0, 0, 0}}, {6, 12, 0}, {1, 1, 1});
    const auto sol = solve(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.objective, 6);
    EXPECT_TRUE(verify_certificate(lp, sol).ok);
    EXPECT_EQ(solve(make_lp({{1, 1}, {1, 1}}, {1, 2}, {1, 1})).status, LpStatus::Infeasible);
}

TEST(SimplexTest, DimensionMismatchThrows) {
    ExactLp lp = make_lp({{1, 1}}, {1}, {1, 0});
    lp.b.push_back(2);
    EXPECT_THROW(solve(lp), InvalidArgument);
    FloatLp f = to_float(make_lp({{1, 1}}, {1}, {1, 0}));
    f.c.pop_back();
    EXPECT_THROW(solve(f), InvalidArgument);
}

TEST(SimplexTest, RandomInstancesMatchEnumeration) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> value(-5, 5), rows(1, 4), cols(1, 6);
    int counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 300; ++trial) {
        const int m = rows(rng), n = cols(rng);
        ExactLp lp{DenseMatrix<Rational>(static_cast<std::size_t>(m), static_cast<std::size_t>(n)), {}, {}};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) lp.a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = value(rng);
        for (int i = 0; i < m; ++i) lp.b.emplace_back(value(rng));
        for (int j = 0; j < n; ++j) lp.c.emplace_back(value(rng));
        const auto sol = solve(lp);
        const auto want = oracle::enumerate_lp(lp.a, lp.b, lp.c);
        ASSERT_EQ(outcome_of(sol.status), want.outcome) << "trial " << trial;
        ++counts[static_cast<int>(want.outcome)];
        if (sol.status == LpStatus::Optimal) {
            EXPECT_EQ(sol.objective, want.optimum) << "trial " << trial;
            const auto check = verify_certificate(lp, sol);
            EXPECT_TRUE(check.ok) << check.violation;
            const auto fsol = solve(to_float(lp));
            ASSERT_EQ(fsol.status, LpStatus::Optimal);
            EXPECT_NEAR(fsol.objective, want.optimum.get_d(), 1e-7);
        }
    }
    EXPECT_GT(counts[0], 20);
    EXPECT_GT(counts[1], 20);
    EXPECT_GT(counts[2], 5);
}

TEST(SimplexTest, DeterministicAcrossRuns) {
    const ExactLp lp = make_lp({{2, 1, 1, 3}, {1, 3, 1, 2}}, {5, 3}, {6, 8, 5, 9});
    const auto a = solve(lp), b = solve(lp);
    EXPECT_EQ(a.basis, b.basis);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.dual, b.dual);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SimplexTest, DumpFormat) {
    std::ostringstream out;
    ExactLp lp = make_lp({{1, 1}}, {1}, {1, 0});
    lp.a(0, 1) = Rational(1, 2);
    write_lp_dump(out, lp);
    EXPECT_EQ(out.str(), "lp 1 2 exact\nmax 1 0\n1 1/2 = 1\n");
}

}  // namespace
}  // namespace ctheta
