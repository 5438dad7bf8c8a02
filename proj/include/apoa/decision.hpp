#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apoa/front.hpp"

namespace apoa {

// ---------------------------------------------------------------------------
// Trade-offs
// ---------------------------------------------------------------------------

struct TradeoffRow {
    std::size_t solution_index = 0;  // 1-based position in the table
    std::size_t entry_index = 0;     // index into ParetoFront::entries
    std::vector<double> display_values;
    std::vector<double> tradeoff_pct;
};

/// Per objective j over display values v: |v - best_j| / max_j * 100, with
/// best_j and max_j taken over the front (or its stored basis). Rows are
/// ordered best-first on the first objective, then on the following ones.
std::vector<TradeoffRow> tradeoff_table(const ParetoFront& front, const DisplayTransform& transform);

struct StackedBar {
    std::size_t solution_index = 0;
    std::vector<std::pair<Metric, double>> segments;
};

/// Plot-ready series: one bar per solution, one segment per objective.
std::vector<StackedBar> stacked_bars(const std::vector<TradeoffRow>& rows, const InstanceSpec& instance);

// ---------------------------------------------------------------------------
// Front navigation
// ---------------------------------------------------------------------------

enum class ConstraintTarget { Value, Display, Tradeoff };
enum class Comparison { LessEqual, GreaterEqual };

struct Constraint {
    Metric metric = Metric::Power;
    ConstraintTarget target = ConstraintTarget::Value;
    Comparison comparison = Comparison::LessEqual;
    double bound = 0.0;
};

std::optional<ConstraintTarget> parse_constraint_target(std::string_view name) noexcept;
std::optional<Comparison> parse_comparison(std::string_view op) noexcept;
std::string_view constraint_target_name(ConstraintTarget t) noexcept;

struct FilterResult {
    ParetoFront front;
    bool empty_selection = false;
};

/// Keeps the entries that satisfy every constraint. Trade-off constraints are
/// measured against the source front, whose basis the result inherits.
/// Throws UnknownObjective for metrics outside the instance.
FilterResult filter_front(const ParetoFront& front, const std::vector<Constraint>& constraints,
                          const DisplayTransform& transform = {});

// ---------------------------------------------------------------------------
// Baseline comparison
// ---------------------------------------------------------------------------

/// Highest-rated app per category; ties go to the smallest app id.
SolutionVector user_solution(const CategoryCatalog& catalog);

struct ImprovementReport {
    ObjectiveVector baseline;
    ObjectiveVector candidate;
    /// Positive = candidate better. Empty where the baseline value is zero.
    std::vector<std::optional<double>> improvement_pct;
};

ImprovementReport improvement_report(const ObjectiveVector& baseline, const ObjectiveVector& candidate);

/// For each objective, the front entry that is best on it (ties broken by the
/// remaining objectives in order, then by the front's own order).
std::vector<std::size_t> best_per_objective(const ParetoFront& front);

struct CompareReport {
    struct Pick {
        Metric objective = Metric::Power;
        std::size_t entry_index = 0;
        std::vector<std::string> apps;
        ImprovementReport report;
    };
    std::vector<std::string> baseline_apps;
    ObjectiveVector baseline;
    std::vector<Pick> picks;  // one per objective, from best_per_objective
};

/// Front picks against `baseline`, or against user_solution when absent.
CompareReport compare_front(const ParetoFront& front, const CategoryCatalog& catalog,
                            const std::optional<SolutionVector>& baseline = {});

// ---------------------------------------------------------------------------
// Developer assistance
// ---------------------------------------------------------------------------

struct ReferenceStat {
    double optimal = 0.0;
    double median = 0.0;
    double worst = 0.0;
};

/// Optimal / median / worst of `values` under `direction`. Even counts use the
/// mean of the two middle values.
ReferenceStat reference_stat(std::vector<double> values, Direction direction);

struct CategoryReference {
    std::string category_id;
    std::size_t app_count = 0;
    std::vector<std::pair<Metric, ReferenceStat>> metrics;  // all five, canonical order
    ReferenceStat battery_life_hours;                        // over per-app battery life
};

struct ReferenceValues {
    BatteryParams battery;
    std::vector<CategoryReference> categories;
};

ReferenceValues reference_values(const CategoryCatalog& catalog, const BatteryParams& battery = {});

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;  // incumbent apps per bin
    std::size_t new_app_bin = 0;
};

/// Equal-width bins over [min, max] of the incumbents and the new value.
Histogram make_histogram(const std::vector<double>& incumbents, double new_value, std::size_t bins = 10);

struct MetricPosition {
    Metric metric = Metric::Power;
    double value = 0.0;
    std::size_t rank = 0;   // 1 = best; ties share the better rank
    std::size_t total = 0;  // incumbents + the new app
    Histogram histogram;
};

struct PositionReport {
    std::string category_id;
    AppRecord app;
    double battery_life_hours = 0.0;
    std::vector<MetricPosition> metrics;  // all five, canonical order
};

/// Throws UnknownCategory when the app's category is not in the catalog.
PositionReport position_app(const AppRecord& new_app, const CategoryCatalog& catalog,
                            const BatteryParams& battery = {}, std::size_t bins = 10);

}  // namespace apoa
