#include <gtest/gtest.h>

#include <random>

#include "apoa/pareto.hpp"
#include "helpers.hpp"

namespace apoa {
namespace {

const std::vector<Direction> kMinMin{Direction::Minimize, Direction::Minimize};
const std::vector<Direction> kMinMax{Direction::Minimize, Direction::Maximize};

bool dom(std::vector<double> a, std::vector<double> b, const std::vector<Direction>& d, double eps = 0.0) {
    return dominates(std::span<const double>(a), std::span<const double>(b), d, eps);
}

TEST(Dominance, Basics) {
    EXPECT_TRUE(dom({1, 1}, {2, 2}, kMinMin));
    EXPECT_TRUE(dom({1, 2}, {2, 2}, kMinMin));
    EXPECT_FALSE(dom({1, 3}, {2, 2}, kMinMin));
    EXPECT_FALSE(dom({2, 2}, {2, 2}, kMinMin));
    EXPECT_TRUE(dom({1, 5}, {1, 4}, kMinMax));
    EXPECT_FALSE(dom({1, 4}, {1, 5}, kMinMax));
}

TEST(Dominance, Epsilon) {
    EXPECT_FALSE(dom({1.0, 1.0}, {1.05, 1.0}, kMinMin, 0.1));
    EXPECT_TRUE(dom({1.0, 1.0}, {1.2, 1.05}, kMinMin, 0.1));
}

TEST(Dominance, CheckedShapes) {
    DirectedPoint a{{1, 2}, kMinMin};
    DirectedPoint b{{1}, {Direction::Minimize}};
    EXPECT_THROW(dominates(a, b), Error);
}

TEST(Dominance, IrreflexiveAsymmetricTransitive) {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> v(0, 3);
    const std::vector<Direction> dirs{Direction::Minimize, Direction::Maximize, Direction::Minimize};
    for (int k = 0; k < 2000; ++k) {
        std::vector<double> a{double(v(gen)), double(v(gen)), double(v(gen))};
        std::vector<double> b{double(v(gen)), double(v(gen)), double(v(gen))};
        std::vector<double> c{double(v(gen)), double(v(gen)), double(v(gen))};
        EXPECT_FALSE(dom(a, a, dirs));
        EXPECT_FALSE(dom(a, b, dirs) && dom(b, a, dirs));
        if (dom(a, b, dirs) && dom(b, c, dirs)) { EXPECT_TRUE(dom(a, c, dirs)); }
    }
}

TEST(Filter, KeepsNonDominatedAndDuplicates) {
    const std::vector<double> values{1, 5, 2, 2, 3, 3, 2, 2, 5, 1};
    const auto kept = nondominated_filter(values, 2, kMinMin);
    EXPECT_EQ(kept, (std::vector<std::size_t>{0, 1, 3, 4}));
}

TEST(Filter, Errors) {
    const std::vector<double> none;
    EXPECT_THROW(nondominated_filter(none, 2, kMinMin), Error);
    const std::vector<double> ragged{1, 2, 3};
    EXPECT_THROW(nondominated_filter(ragged, 2, kMinMin), Error);
}

TEST(Filter, PointOverloadMatchesFlat) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> flat;
    std::vector<DirectedPoint> points;
    for (int k = 0; k < 60; ++k) {
        std::vector<double> p{u(gen), u(gen)};
        flat.insert(flat.end(), p.begin(), p.end());
        points.push_back({p, kMinMax});
    }
    EXPECT_EQ(nondominated_filter(points), nondominated_filter(flat, 2, kMinMax));
}

TEST(Filter, ResultIsMutuallyNonDominatedAndCovering) {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> u(0, 6);
    std::vector<double> flat;
    for (int k = 0; k < 100; ++k) flat.push_back(u(gen));
    const auto kept = nondominated_filter(flat, 2, kMinMin);
    auto pt = [&](std::size_t i) { return std::vector<double>{flat[2 * i], flat[2 * i + 1]}; };
    for (std::size_t i : kept) {
        for (std::size_t j : kept) EXPECT_FALSE(dom(pt(i), pt(j), kMinMin));
    }
    for (std::size_t i = 0; i < 50; ++i) {
        if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
        bool covered = false;
        for (std::size_t j : kept) covered = covered || dom(pt(j), pt(i), kMinMin);
        EXPECT_TRUE(covered) << i;
    }
}

TEST(Reduce, PerCategoryFilter) {
    auto cat = validate_catalog({
        {"a1", "a", 4, 1.0, 10, 100, 0.5},
        {"a2", "a", 4, 2.0, 10, 100, 0.6},  // dominated on power+network
        {"a3", "a", 4, 0.5, 10, 100, 0.9},
        {"b1", "b", 4, 1.0, 10, 100, 0.5},
        {"b2", "b", 4, 1.0, 10, 100, 0.5},  // duplicate, kept
    });
    const auto reduced = reduce_search_space(cat, instance_from_id(8));
    EXPECT_EQ(reduced.category_sizes(), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(reduced.original_index[0], (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(reduced.to_original(SolutionVector{{1, 1}}), (SolutionVector{{2, 1}}));
    EXPECT_EQ(search_space_size(cat), 6);
    EXPECT_EQ(search_space_size(reduced), 4);
}

TEST(Reduce, RatingMaximized) {
    auto cat = validate_catalog({{"a1", "a", 5, 1, 1, 1, 1}, {"a2", "a", 3, 1, 1, 1, 1}});
    EXPECT_EQ(reduce_search_space(cat, instance_from_id(5)).category_sizes(), (std::vector<std::size_t>{1}));
    EXPECT_EQ(reduce_search_space(cat, instance_from_id(1)).category_sizes(), (std::vector<std::size_t>{2}));
}

TEST(SearchSpace, ExactProducts) {
    for (const auto& c : testdata::kSurvivorCases) EXPECT_EQ(search_space_size(c.survivors), c.space);
    const std::vector<std::size_t> big(30, 20);
    BigCount expected = 1;
    for (int i = 0; i < 30; ++i) expected *= 20;
    EXPECT_EQ(search_space_size(big), expected);
    EXPECT_EQ(search_space_size(big).str(), "1073741824000000000000000000000000000000");
}

}  // namespace
}  // namespace apoa
