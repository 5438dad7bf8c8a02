#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "apoa/decision.hpp"
#include "apoa/exhaustive.hpp"
#include "helpers.hpp"

namespace apoa {
namespace {

using testing::front_from_values;

ParetoFront cpu_mem_front() { return front_from_values(instance_from_id(10), {{10, 50}, {20, 40}, {5, 80}}); }

TEST(Tradeoff, HandComputedTable) {
    const auto rows = tradeoff_table(cpu_mem_front(), DisplayTransform::raw());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].entry_index, 2u);
    EXPECT_EQ(rows[1].entry_index, 0u);
    EXPECT_EQ(rows[2].entry_index, 1u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(rows[i].solution_index, i + 1);
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[0], 0.0);
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[1], 50.0);
    EXPECT_DOUBLE_EQ(rows[1].tradeoff_pct[0], 25.0);
    EXPECT_DOUBLE_EQ(rows[1].tradeoff_pct[1], 12.5);
    EXPECT_DOUBLE_EQ(rows[2].tradeoff_pct[0], 75.0);
    EXPECT_DOUBLE_EQ(rows[2].tradeoff_pct[1], 0.0);
}

TEST(Tradeoff, BatteryDisplayFlipsDirection) {
    // Power 1 W and 2 W under the default battery: 7.98 h and 3.99 h.
    const auto front = front_from_values(instance_from_id(8), {{1.0, 2.0}, {2.0, 1.0}});
    const auto rows = tradeoff_table(front, DisplayTransform::battery_life());
    EXPECT_EQ(rows[0].entry_index, 0u);
    EXPECT_NEAR(rows[0].display_values[0], 7.98, 1e-12);
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[0], 0.0);
    EXPECT_NEAR(rows[1].tradeoff_pct[0], 50.0, 1e-9);
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[1], 50.0);
}

TEST(Tradeoff, PropertiesOnRandomFronts) {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cat = testing::random_catalog(gen, {2, 4, 2, 4, trial % 2 == 0});
        const auto inst = instance_from_id(1 + int(gen() % kInstanceCount));
        const auto front = solve_exhaustive(cat, inst);
        const auto rows = tradeoff_table(front, DisplayTransform::raw());
        const auto dirs = inst.directions();
        for (std::size_t j = 0; j < inst.objective_count(); ++j) {
            bool has_zero = false;
            for (const auto& r : rows) {
                EXPECT_GE(r.tradeoff_pct[j], 0.0);
                EXPECT_LE(r.tradeoff_pct[j], 100.0 + 1e-9);
                has_zero = has_zero || r.tradeoff_pct[j] == 0.0;
            }
            EXPECT_TRUE(has_zero);
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double a = rows[i - 1].display_values[0], b = rows[i].display_values[0];
            EXPECT_TRUE(dirs[0] == Direction::Minimize ? a <= b : a >= b);
        }
        const auto bars = stacked_bars(rows, inst);
        ASSERT_EQ(bars.size(), rows.size());
        for (std::size_t i = 0; i < bars.size(); ++i) {
            ASSERT_EQ(bars[i].segments.size(), inst.objective_count());
            for (std::size_t j = 0; j < inst.objective_count(); ++j) {
                EXPECT_EQ(bars[i].segments[j].first, inst.metrics()[j]);
                EXPECT_EQ(bars[i].segments[j].second, rows[i].tradeoff_pct[j]);
            }
        }
    }
}

TEST(Tradeoff, EmptyFrontThrows) {
    ParetoFront empty;
    EXPECT_THROW(tradeoff_table(empty, {}), Error);
}

TEST(Filter, ValueAndTradeoffConstraints) {
    const auto front = cpu_mem_front();
    auto r = filter_front(front, {{Metric::Cpu, ConstraintTarget::Value, Comparison::LessEqual, 10}});
    EXPECT_EQ(r.front.size(), 2u);
    EXPECT_FALSE(r.empty_selection);

    r = filter_front(front, {{Metric::Memory, ConstraintTarget::Tradeoff, Comparison::LessEqual, 20}});
    ASSERT_EQ(r.front.size(), 2u);
    // The surviving rows keep their percentages against the full front.
    const auto rows = tradeoff_table(r.front, {});
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[0], 25.0);
    EXPECT_DOUBLE_EQ(rows[0].tradeoff_pct[1], 12.5);

    r = filter_front(front, {{Metric::Cpu, ConstraintTarget::Value, Comparison::GreaterEqual, 100}});
    EXPECT_TRUE(r.empty_selection);
    EXPECT_TRUE(r.front.empty());
}

TEST(Filter, DisplayConstraintUsesBatteryLife) {
    const auto front = front_from_values(instance_from_id(8), {{1.0, 2.0}, {2.0, 1.0}, {4.0, 0.5}});
    const auto r = filter_front(front, {{Metric::Power, ConstraintTarget::Display, Comparison::GreaterEqual, 3.0}},
                                DisplayTransform::battery_life());
    EXPECT_EQ(r.front.size(), 2u);
}

TEST(Filter, IdempotentAndMonotone) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cat = testing::random_catalog(gen, {3, 4, 2, 4, false});
        const auto front = solve_exhaustive(cat, instance_from_id(22));
        const double bound = std::uniform_real_distribution<double>(0, 100)(gen);
        const std::vector<Constraint> cs{{Metric::Network, ConstraintTarget::Tradeoff, Comparison::LessEqual, bound}};
        const auto once = filter_front(front, cs);
        const auto twice = filter_front(once.front, cs);
        EXPECT_EQ(once.front.entries, twice.front.entries);
        const auto looser = filter_front(
            front, {{Metric::Network, ConstraintTarget::Tradeoff, Comparison::LessEqual, bound + 10}});
        EXPECT_GE(looser.front.size(), once.front.size());
    }
}

TEST(Filter, UnknownObjective) {
    try {
        filter_front(cpu_mem_front(), {{Metric::Power, ConstraintTarget::Value, Comparison::LessEqual, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownObjective);
    }
}

TEST(Filter, Parsers) {
    EXPECT_EQ(parse_comparison("<="), Comparison::LessEqual);
    EXPECT_EQ(parse_comparison(">="), Comparison::GreaterEqual);
    EXPECT_FALSE(parse_comparison("<"));
    EXPECT_EQ(parse_constraint_target("tradeoff"), ConstraintTarget::Tradeoff);
    EXPECT_FALSE(parse_constraint_target("nope"));
    EXPECT_EQ(constraint_target_name(ConstraintTarget::Display), "display");
}

CategoryCatalog small_catalog() {
    return validate_catalog({
        {"a1", "a", 4.5, 2.0, 30, 100, 1.0},
        {"a2", "a", 4.5, 1.0, 20, 150, 0.5},
        {"a0", "a", 4.5, 3.0, 10, 200, 2.0},
        {"b1", "b", 3.0, 1.0, 10, 50, 0.0},
        {"b2", "b", 5.0, 4.0, 40, 90, 1.0},
    });
}

TEST(Baseline, UserSolutionPicksTopRatedSmallestId) {
    const auto cat = small_catalog();
    EXPECT_EQ(solution_app_ids(user_solution(cat), cat), (std::vector<std::string>{"a0", "b2"}));
}

TEST(Baseline, ImprovementSigns) {
    const ObjectiveVector base{27, {Metric::Power, Metric::Rating}, {2.0, 4.0}};
    const ObjectiveVector cand{27, {Metric::Power, Metric::Rating}, {1.5, 3.0}};
    const auto rep = improvement_report(base, cand);
    EXPECT_DOUBLE_EQ(*rep.improvement_pct[0], 25.0);
    EXPECT_DOUBLE_EQ(*rep.improvement_pct[1], -25.0);
    const ObjectiveVector zero{27, {Metric::Power, Metric::Rating}, {0.0, 4.0}};
    EXPECT_FALSE(improvement_report(zero, cand).improvement_pct[0]);
    const ObjectiveVector other{10, {Metric::Cpu, Metric::Memory}, {1, 1}};
    EXPECT_THROW(improvement_report(base, other), Error);
}

TEST(Baseline, BestPerObjectiveTieBreak) {
    const auto front = front_from_values(instance_from_id(10), {{5, 60}, {5, 50}, {9, 10}});
    EXPECT_EQ(best_per_objective(front), (std::vector<std::size_t>{1, 2}));
}

TEST(Baseline, CompareFront) {
    const auto cat = small_catalog();
    const auto inst = instance_from_id(8);
    const auto front = solve_exhaustive(cat, inst);
    const auto rep = compare_front(front, cat);
    EXPECT_EQ(rep.baseline_apps, (std::vector<std::string>{"a0", "b2"}));
    EXPECT_DOUBLE_EQ(rep.baseline.values[0], 3.5);
    ASSERT_EQ(rep.picks.size(), 2u);
    EXPECT_EQ(rep.picks[0].objective, Metric::Power);
    EXPECT_EQ(rep.picks[0].apps, (std::vector<std::string>{"a2", "b1"}));
    EXPECT_DOUBLE_EQ(*rep.picks[0].report.improvement_pct[0], (3.5 - 1.0) / 3.5 * 100);
    for (const auto& p : rep.picks) {
        for (const auto& v : p.report.improvement_pct) {
            if (v) { EXPECT_GE(*v, 0.0); }
        }
    }

    const auto custom = compare_front(front, cat, SolutionVector{{0, 0}});
    EXPECT_EQ(custom.baseline_apps, (std::vector<std::string>{"a1", "b1"}));
    EXPECT_THROW(compare_front(front, cat, SolutionVector{{0}}), Error);
}

TEST(Reference, StatOddEvenAndDirection) {
    const auto odd = reference_stat({3, 1, 2}, Direction::Minimize);
    EXPECT_EQ(odd.optimal, 1);
    EXPECT_EQ(odd.median, 2);
    EXPECT_EQ(odd.worst, 3);
    const auto even = reference_stat({4, 1, 2, 3}, Direction::Maximize);
    EXPECT_EQ(even.optimal, 4);
    EXPECT_DOUBLE_EQ(even.median, 2.5);
    EXPECT_EQ(even.worst, 1);
    EXPECT_THROW(reference_stat({}, Direction::Minimize), Error);
}

TEST(Reference, CatalogValues) {
    const auto ref = reference_values(small_catalog());
    ASSERT_EQ(ref.categories.size(), 2u);
    const auto& a = ref.categories[0];
    EXPECT_EQ(a.category_id, "a");
    EXPECT_EQ(a.app_count, 3u);
    ASSERT_EQ(a.metrics.size(), 5u);
    for (const auto& [m, s] : a.metrics) {
        if (m == Metric::Power) {
            EXPECT_EQ(s.optimal, 1.0);
            EXPECT_EQ(s.median, 2.0);
            EXPECT_EQ(s.worst, 3.0);
        }
    }
    EXPECT_NEAR(a.battery_life_hours.optimal, 7.98, 1e-12);
    EXPECT_NEAR(a.battery_life_hours.worst, 2.66, 1e-12);
    EXPECT_THROW(reference_values(small_catalog(), BatteryParams{-1, 3.8}), Error);
}

TEST(Histogram, BinsAndDegenerate) {
    const auto h = make_histogram({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 10, 5);
    EXPECT_EQ(h.lo, 0);
    EXPECT_EQ(h.hi, 10);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 2, 2, 2, 2}));
    EXPECT_EQ(h.new_app_bin, 4u);
    const auto flat = make_histogram({3, 3}, 3, 4);
    EXPECT_EQ(flat.counts[0], 2u);
    EXPECT_EQ(flat.new_app_bin, 0u);
    EXPECT_THROW(make_histogram({1}, 1, 0), Error);
}

TEST(Position, RanksAndTies) {
    const auto cat = small_catalog();
    const AppRecord app{"new", "a", 4.5, 1.0, 25, 100, 3.0};
    const auto rep = position_app(app, cat);
    EXPECT_EQ(rep.category_id, "a");
    EXPECT_NEAR(rep.battery_life_hours, 7.98, 1e-12);
    for (const auto& p : rep.metrics) {
        EXPECT_EQ(p.total, 4u);
        if (p.metric == Metric::Power) { EXPECT_EQ(p.rank, 1u); }       // tie with a2
        if (p.metric == Metric::Rating) { EXPECT_EQ(p.rank, 1u); }      // three-way tie
        if (p.metric == Metric::Cpu) { EXPECT_EQ(p.rank, 3u); }
        if (p.metric == Metric::Memory) { EXPECT_EQ(p.rank, 1u); }      // tie with a1
        if (p.metric == Metric::Network) { EXPECT_EQ(p.rank, 4u); }
        std::size_t counted = 0;
        for (auto c : p.histogram.counts) counted += c;
        EXPECT_EQ(counted, 3u);
    }
    // An update of an existing app is ranked against the others only.
    const auto update = position_app(AppRecord{"a1", "a", 1.0, 5.0, 50, 300, 2.0}, cat);
    EXPECT_EQ(update.metrics[0].total, 3u);
}

TEST(Position, Errors) {
    const auto cat = small_catalog();
    try {
        position_app(AppRecord{"x", "zzz", 3, 1, 1, 1, 1}, cat);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownCategory);
    }
    EXPECT_THROW(position_app(AppRecord{"x", "a", 9, 1, 1, 1, 1}, cat), Error);
}

}  // namespace
}  // namespace apoa
