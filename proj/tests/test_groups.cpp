#include "ctheta/errors.hpp"
#include "ctheta/groups.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ctheta {
namespace {

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
    std::vector<std::size_t> out;
    for (const auto& c : g.classes()) out.push_back(c.size);
    return out;
}

// Orbits under conjugation computed directly from multiply/invert.
std::set<std::set<Element>> conjugation_orbits(const FiniteGroup& g) {
    std::set<std::set<Element>> out;
    for (Element x = 0; x < g.order(); ++x) {
        std::set<Element> orbit;
        for (Element y = 0; y < g.order(); ++y) orbit.insert(g.multiply(g.multiply(y, x), g.invert(y)));
        out.insert(orbit);
    }
    return out;
}

void expect_consistent_classes(const FiniteGroup& g) {
    std::set<std::set<Element>> mine;
    std::size_t total = 0;
    for (std::size_t c = 0; c < g.classes().size(); ++c) {
        const auto& cls = g.classes()[c];
        total += cls.size;
        EXPECT_EQ(cls.members.size(), cls.size);
        EXPECT_TRUE(std::is_sorted(cls.members.begin(), cls.members.end()));
        EXPECT_EQ(cls.representative, cls.members.front());
        for (Element x : cls.members) EXPECT_EQ(g.class_of(x), c);
        EXPECT_EQ(g.classes()[cls.inverse_class].inverse_class, c);
        EXPECT_EQ(g.class_of(g.invert(cls.representative)), cls.inverse_class);
        mine.insert(std::set<Element>(cls.members.begin(), cls.members.end()));
    }
    EXPECT_EQ(total, g.order());
    EXPECT_EQ(mine, conjugation_orbits(g));
    EXPECT_EQ(g.classes().front().members, std::vector<Element>{0});
}

TEST(GroupsTest, AxiomsHoldForEveryBuiltInGroupUpTo200) {
    std::vector<FiniteGroup> groups;
    for (int n = 1; n <= 5; ++n) groups.push_back(make_symmetric(n));
    for (int m : {2, 3, 5, 12, 60, 199}) groups.push_back(make_abelian_product(std::vector<int>{m}));
    groups.push_back(make_abelian_product(std::vector<int>{2, 2}));
    groups.push_back(make_abelian_product(std::vector<int>{2, 3, 4}));
    groups.push_back(make_general_linear(2, 2));
    groups.push_back(make_general_linear(3, 2));
    groups.push_back(make_general_linear(4, 2));
    groups.push_back(make_general_linear(2, 3));
    for (const auto& g : groups) {
        ASSERT_LE(g.order(), 200u);
        EXPECT_EQ(check_group_axioms(g), "") << to_string(g.kind()) << " order " << g.order();
        expect_consistent_classes(g);
    }
}

TEST(GroupsTest, SymmetricClassCountsAndSizes) {
    const std::vector<std::size_t> partition_counts{1, 2, 3, 5, 7, 11, 15, 22};
    for (int n = 1; n <= 8; ++n) {
        const FiniteGroup g = make_symmetric(n);
        ASSERT_EQ(g.classes().size(), partition_counts[static_cast<std::size_t>(n - 1)]);
        std::uint64_t factorial = 1;
        for (int i = 2; i <= n; ++i) factorial *= static_cast<std::uint64_t>(i);
        for (std::size_t c = 0; c < g.classes().size(); ++c) {
            const auto& cls = g.classes()[c];
            ASSERT_TRUE(cls.cycle_type.has_value());
            EXPECT_EQ(cls.size, factorial / cls.cycle_type->centralizer_order());
            EXPECT_EQ(cls.inverse_class, c);
            EXPECT_EQ(cls.label, cls.cycle_type->label());
        }
    }
}

TEST(GroupsTest, S3ClassSizes) {
    EXPECT_EQ(class_sizes(make_symmetric(3)), (std::vector<std::size_t>{1, 3, 2}));
    EXPECT_EQ(make_symmetric(3).classes()[1].label, "(2,1)");
}

TEST(GroupsTest, CyclicFiveInversePairing) {
    const FiniteGroup g = make_abelian_product(std::vector<int>{5});
    ASSERT_EQ(g.classes().size(), 5u);
    EXPECT_EQ(g.classes()[1].inverse_class, 4u);
    EXPECT_EQ(g.classes()[2].inverse_class, 3u);
    EXPECT_EQ(g.classes()[3].inverse_class, 2u);
}

TEST(GroupsTest, GL22LooksLikeS3) {
    const FiniteGroup g = make_general_linear(2, 2);
    EXPECT_EQ(g.order(), 6u);
    auto sizes = class_sizes(g);
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(g.matrix(0), (std::vector<int>{1, 0, 0, 1}));
}

TEST(GroupsTest, GeneralLinearOrders) {
    EXPECT_EQ(make_general_linear(3, 2).order(), 48u);
    EXPECT_EQ(make_general_linear(2, 3).order(), 168u);
    EXPECT_EQ(make_general_linear(4, 2).order(), 180u);
    EXPECT_THROW(make_general_linear(6, 2), InvalidArgument);
    EXPECT_THROW(make_general_linear(2, 5), InvalidArgument);
}

TEST(GroupsTest, GeneralLinearMatrixCodecRoundTrips) {
    const FiniteGroup g = make_general_linear(3, 2);
    const GaloisField& f = g.field();
    for (Element a = 0; a < g.order(); ++a) {
        EXPECT_EQ(g.from_matrix(g.matrix(a)), a);
        for (Element b = 0; b < g.order(); b += 5) {
            const auto ma = g.matrix(a), mb = g.matrix(b), mab = g.matrix(g.multiply(a, b));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    int s = 0;
                    for (int k = 0; k < 2; ++k) s = f.add(s, f.mul(ma[static_cast<std::size_t>(i * 2 + k)], mb[static_cast<std::size_t>(k * 2 + j)]));
                    EXPECT_EQ(mab[static_cast<std::size_t>(i * 2 + j)], s);
                }
        }
    }
}

TEST(GroupsTest, PermutationCompositionIsRightToLeft) {
    const FiniteGroup g = make_symmetric(4);
    for (Element a = 0; a < g.order(); ++a) {
        EXPECT_EQ(g.from_permutation(g.permutation(a)), a);
        for (Element b = 0; b < g.order(); ++b) {
            const auto pa = g.permutation(a), pb = g.permutation(b), pab = g.permutation(g.multiply(a, b));
            for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(pab[i], pa[static_cast<std::size_t>(pb[i])]);
        }
    }
    const std::vector<int> last{3, 2, 1, 0};
    EXPECT_EQ(g.from_permutation(last), 23u);
    EXPECT_THROW(g.from_permutation(std::vector<int>{0, 0, 1, 2}), InvalidArgument);
}

TEST(GroupsTest, AbelianMixedRadixIndexing) {
    const FiniteGroup g = make_abelian_product(std::vector<int>{2, 3});
    EXPECT_EQ(g.coordinates(5), (std::vector<int>{1, 2}));
    EXPECT_EQ(g.multiply(5, 5), 1u);  // (1,2)+(1,2) = (0,1)
    EXPECT_EQ(g.invert(1), 2u);
    EXPECT_THROW(make_abelian_product(std::vector<int>{1}), InvalidArgument);
}

TEST(GroupsTest, FromTableRejectsNonAssociativeLoop) {
    const std::vector<std::vector<Element>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
        make_from_table(loop);
        FAIL() << "loop accepted as a group";
    } catch (const NotAGroup& e) {
        EXPECT_NE(std::string(e.what()).find("associativ"), std::string::npos) << e.what();
    }
    EXPECT_THROW(make_from_table({{0, 1}, {1, 1}}), NotAGroup);
    EXPECT_THROW(make_from_table({{1, 0}, {0, 1}}), NotAGroup);
}

TEST(GroupsTest, CayleyTableTextRoundTrip) {
    const FiniteGroup s4 = make_symmetric(4);
    std::stringstream buf;
    write_cayley_table(buf, s4);
    const FiniteGroup copy = read_cayley_table(buf);
    EXPECT_EQ(copy.kind(), GroupKind::Table);
    ASSERT_EQ(copy.order(), 24u);
    for (Element a = 0; a < 24; ++a)
        for (Element b = 0; b < 24; ++b) EXPECT_EQ(copy.multiply(a, b), s4.multiply(a, b));
    auto a = class_sizes(copy), b = class_sizes(s4);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    std::istringstream bad("3\n0 1 2\n1 2");
    EXPECT_THROW(read_cayley_table(bad), SchemaError);
}

TEST(GroupsTest, PartitionsAreOrderedAndCanonical) {
    const auto p4 = partitions_of(4);
    ASSERT_EQ(p4.size(), 5u);
    EXPECT_EQ(p4.front().label(), "(1,1,1,1)");
    EXPECT_EQ(p4.back().label(), "(4)");
    EXPECT_TRUE(std::is_sorted(p4.begin(), p4.end()));
    EXPECT_EQ(make_partition({1, 3, 2}).parts, (std::vector<int>{3, 2, 1}));
    EXPECT_THROW(make_partition({2, 0}), InvalidArgument);
    EXPECT_EQ(make_partition({2, 2, 1}).centralizer_order(), 8u);
    EXPECT_EQ(make_partition({}).label(), "()");
}

TEST(GroupsTest, ActionFromGeneratorsBuildsDihedralTen) {
    const GroupAction d10 = GroupAction::from_generators(5, {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}});
    EXPECT_EQ(d10.group().order(), 10u);
    EXPECT_EQ(check_group_axioms(d10.group()), "");
    for (Element g = 0; g < 10; ++g)
        for (Element h = 0; h < 10; ++h)
            for (std::uint32_t p = 0; p < 5; ++p)
                EXPECT_EQ(d10.act(g, d10.act(h, p)), d10.act(d10.group().multiply(g, h), p));
}

TEST(GroupsTest, ActionFileFormats) {
    std::istringstream gens("generators 3 1\n1 2 0\n");
    const GroupAction c3 = read_action(gens, std::nullopt);
    EXPECT_EQ(c3.group().order(), 3u);
    std::istringstream table("table 2 2\n0 1\n1 0\n");
    const GroupAction swap = read_action(table, make_abelian_product(std::vector<int>{2}));
    EXPECT_EQ(swap.act(1, 0), 1u);
    std::istringstream no_group("table 2 2\n0 1\n1 0\n");
    EXPECT_THROW(read_action(no_group, std::nullopt), SchemaError);
    EXPECT_THROW(GroupAction::from_table(make_abelian_product(std::vector<int>{2}), 2, {0, 1, 0, 0}), InvalidArgument);
}

}  // namespace
}  // namespace ctheta
