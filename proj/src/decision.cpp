#include "apoa/decision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apoa {

namespace {

// Smaller-is-better view of a value.
double oriented(double v, Direction d) noexcept { return d == Direction::Minimize ? v : -v; }

double tradeoff_pct(double v, double best, double max) noexcept {
    if (v == best) return 0.0;
    if (!std::isfinite(best) || !std::isfinite(max)) return 100.0;
    if (max == 0.0) return 0.0;
    return std::abs(v - best) / max * 100.0;
}

}  // namespace

std::vector<TradeoffRow> tradeoff_table(const ParetoFront& front, const DisplayTransform& transform) {
    if (front.empty()) throw Error(ErrorCode::EmptyFront, "front is empty");
    const TradeoffBasis basis = front.tradeoff_basis ? *front.tradeoff_basis : compute_tradeoff_basis(front);
    const auto& metrics = front.instance.metrics();
    const std::size_t m = metrics.size();

    std::vector<double> best(m), max(m);
    std::vector<Direction> dirs(m);
    for (std::size_t j = 0; j < m; ++j) {
        dirs[j] = transform.direction(metrics[j]);
        const double a = transform.apply(metrics[j], basis.raw_min[j]);
        const double b = transform.apply(metrics[j], basis.raw_max[j]);
        max[j] = std::max(a, b);
        best[j] = dirs[j] == Direction::Maximize ? std::max(a, b) : std::min(a, b);
    }

    std::vector<TradeoffRow> rows;
    rows.reserve(front.size());
    for (std::size_t e = 0; e < front.size(); ++e) {
        TradeoffRow row;
        row.entry_index = e;
        row.display_values = display_values(front.entries[e].objectives, transform);
        row.tradeoff_pct.resize(m);
        for (std::size_t j = 0; j < m; ++j) row.tradeoff_pct[j] = tradeoff_pct(row.display_values[j], best[j], max[j]);
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [&](const TradeoffRow& a, const TradeoffRow& b) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x = oriented(a.display_values[j], dirs[j]);
            const double y = oriented(b.display_values[j], dirs[j]);
            if (x != y) return x < y;
        }
        return a.entry_index < b.entry_index;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].solution_index = i + 1;
    return rows;
}

std::vector<StackedBar> stacked_bars(const std::vector<TradeoffRow>& rows, const InstanceSpec& instance) {
    std::vector<StackedBar> bars;
    bars.reserve(rows.size());
    for (const auto& row : rows) {
        StackedBar bar{row.solution_index, {}};
        for (std::size_t j = 0; j < instance.objective_count(); ++j) {
            bar.segments.emplace_back(instance.metrics()[j], row.tradeoff_pct[j]);
        }
        bars.push_back(std::move(bar));
    }
    return bars;
}

// ---------------------------------------------------------------------------

std::optional<ConstraintTarget> parse_constraint_target(std::string_view name) noexcept {
    if (name == "value" || name == "raw") return ConstraintTarget::Value;
    if (name == "display") return ConstraintTarget::Display;
    if (name == "tradeoff" || name == "tradeoff_pct") return ConstraintTarget::Tradeoff;
    return std::nullopt;
}

std::optional<Comparison> parse_comparison(std::string_view op) noexcept {
    if (op == "<=" || op == "le") return Comparison::LessEqual;
    if (op == ">=" || op == "ge") return Comparison::GreaterEqual;
    return std::nullopt;
}

std::string_view constraint_target_name(ConstraintTarget t) noexcept {
    switch (t) {
        case ConstraintTarget::Value: return "value";
        case ConstraintTarget::Display: return "display";
        case ConstraintTarget::Tradeoff: return "tradeoff";
    }
    return "?";
}

FilterResult filter_front(const ParetoFront& front, const std::vector<Constraint>& constraints,
                          const DisplayTransform& transform) {
    std::vector<std::size_t> objective_of;
    for (const auto& c : constraints) {
        auto j = front.instance.objective_index(c.metric);
        if (!j) {
            throw Error(ErrorCode::UnknownObjective, "metric '" + std::string(metric_name(c.metric)) +
                                                         "' is not an objective of instance " +
                                                         std::to_string(front.instance.id()));
        }
        objective_of.push_back(*j);
    }

    FilterResult result{front, false};
    if (front.empty()) {
        result.empty_selection = true;
        return result;
    }
    result.front.tradeoff_basis = front.tradeoff_basis ? *front.tradeoff_basis : compute_tradeoff_basis(front);
    if (constraints.empty()) return result;

    std::vector<std::vector<double>> pct(front.size());
    for (auto& row : tradeoff_table(front, transform)) pct[row.entry_index] = std::move(row.tradeoff_pct);

    result.front.entries.clear();
    result.front.app_ids.clear();
    for (std::size_t e = 0; e < front.size(); ++e) {
        const auto& objs = front.entries[e].objectives;
        bool keep = true;
        for (std::size_t k = 0; k < constraints.size() && keep; ++k) {
            const auto& c = constraints[k];
            const std::size_t j = objective_of[k];
            double v = objs.values[j];
            if (c.target == ConstraintTarget::Display) v = transform.apply(c.metric, v);
            if (c.target == ConstraintTarget::Tradeoff) v = pct[e][j];
            keep = c.comparison == Comparison::LessEqual ? v <= c.bound : v >= c.bound;
        }
        if (keep) {
            result.front.entries.push_back(front.entries[e]);
            if (e < front.app_ids.size()) result.front.app_ids.push_back(front.app_ids[e]);
        }
    }
    result.empty_selection = result.front.entries.empty();
    return result;
}

// ---------------------------------------------------------------------------

SolutionVector user_solution(const CategoryCatalog& catalog) {
    SolutionVector s;
    for (const auto& c : catalog.categories()) {
        std::size_t pick = 0;
        for (std::size_t a = 1; a < c.apps.size(); ++a) {
            const auto& cand = c.apps[a];
            const auto& cur = c.apps[pick];
            if (cand.rating > cur.rating || (cand.rating == cur.rating && cand.app_id < cur.app_id)) pick = a;
        }
        s.choices.push_back(pick);
    }
    return s;
}

ImprovementReport improvement_report(const ObjectiveVector& baseline, const ObjectiveVector& candidate) {
    if (baseline.metrics != candidate.metrics) {
        throw Error(ErrorCode::InstanceMismatch, "baseline and candidate use different objectives");
    }
    ImprovementReport report{baseline, candidate, {}};
    for (std::size_t j = 0; j < baseline.size(); ++j) {
        const double b = baseline.values[j];
        const double c = candidate.values[j];
        if (b == 0.0) {
            report.improvement_pct.emplace_back(std::nullopt);
            continue;
        }
        const double pct = direction_of(baseline.metrics[j]) == Direction::Minimize ? (b - c) / b * 100.0
                                                                                    : (c - b) / b * 100.0;
        report.improvement_pct.emplace_back(pct);
    }
    return report;
}

std::vector<std::size_t> best_per_objective(const ParetoFront& front) {
    if (front.empty()) throw Error(ErrorCode::EmptyFront, "front is empty");
    const auto dirs = front.instance.directions();
    const std::size_t m = dirs.size();
    std::vector<std::size_t> picks;
    for (std::size_t j = 0; j < m; ++j) {
        auto key_less = [&](std::size_t a, std::size_t b) {
            const auto& va = front.entries[a].objectives.values;
            const auto& vb = front.entries[b].objectives.values;
            if (va[j] != vb[j]) return oriented(va[j], dirs[j]) < oriented(vb[j], dirs[j]);
            for (std::size_t k = 0; k < m; ++k) {
                if (k != j && va[k] != vb[k]) return oriented(va[k], dirs[k]) < oriented(vb[k], dirs[k]);
            }
            return a < b;
        };
        std::size_t best = 0;
        for (std::size_t e = 1; e < front.size(); ++e) {
            if (key_less(e, best)) best = e;
        }
        picks.push_back(best);
    }
    return picks;
}

CompareReport compare_front(const ParetoFront& front, const CategoryCatalog& catalog,
                            const std::optional<SolutionVector>& baseline) {
    const SolutionVector base = baseline ? *baseline : user_solution(catalog);
    check_solution(base, catalog);
    CompareReport out;
    out.baseline_apps = solution_app_ids(base, catalog);
    out.baseline = evaluate_solution(base, catalog, front.instance);
    const auto picks = best_per_objective(front);
    for (std::size_t j = 0; j < picks.size(); ++j) {
        const auto& entry = front.entries[picks[j]];
        out.picks.push_back(CompareReport::Pick{front.instance.metrics()[j], picks[j],
                                                solution_app_ids(entry.solution, catalog),
                                                improvement_report(out.baseline, entry.objectives)});
    }
    return out;
}

// ---------------------------------------------------------------------------

ReferenceStat reference_stat(std::vector<double> values, Direction direction) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values");
    std::sort(values.begin(), values.end(),
              [&](double a, double b) { return oriented(a, direction) < oriented(b, direction); });
    const std::size_t n = values.size();
    const double median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    return ReferenceStat{values.front(), median, values.back()};
}

ReferenceValues reference_values(const CategoryCatalog& catalog, const BatteryParams& battery) {
    battery.validate();
    const auto view = DisplayTransform::battery_life(battery);
    ReferenceValues out{battery, {}};
    for (const auto& c : catalog.categories()) {
        CategoryReference ref{c.id, c.apps.size(), {}, {}};
        for (Metric m : kAllMetrics) {
            std::vector<double> v;
            for (const auto& app : c.apps) v.push_back(app.metric(m));
            ref.metrics.emplace_back(m, reference_stat(std::move(v), direction_of(m)));
        }
        std::vector<double> life;
        for (const auto& app : c.apps) life.push_back(view.apply(Metric::Power, app.power_w));
        ref.battery_life_hours = reference_stat(std::move(life), Direction::Maximize);
        out.categories.push_back(std::move(ref));
    }
    return out;
}

Histogram make_histogram(const std::vector<double>& incumbents, double new_value, std::size_t bins) {
    if (bins == 0) throw Error(ErrorCode::InvalidParams, "histogram needs at least one bin");
    Histogram h;
    h.lo = new_value;
    h.hi = new_value;
    for (double v : incumbents) {
        h.lo = std::min(h.lo, v);
        h.hi = std::max(h.hi, v);
    }
    h.counts.assign(bins, 0);
    const double width = (h.hi - h.lo) / static_cast<double>(bins);
    auto bin_of = [&](double v) -> std::size_t {
        if (!(width > 0.0)) return 0;
        const auto b = static_cast<std::size_t>(std::floor((v - h.lo) / width));
        return std::min(b, bins - 1);
    };
    for (double v : incumbents) ++h.counts[bin_of(v)];
    h.new_app_bin = bin_of(new_value);
    return h;
}

PositionReport position_app(const AppRecord& new_app, const CategoryCatalog& catalog, const BatteryParams& battery,
                            std::size_t bins) {
    validate_record(new_app);
    auto ci = catalog.find_category(new_app.category_id);
    if (!ci) throw Error(ErrorCode::UnknownCategory, "unknown category '" + new_app.category_id + "'");
    const Category& category = catalog.category(*ci);

    std::vector<const AppRecord*> incumbents;
    for (const auto& app : category.apps) {
        if (app.app_id != new_app.app_id) incumbents.push_back(&app);
    }

    PositionReport report;
    report.category_id = category.id;
    report.app = new_app;
    report.battery_life_hours = DisplayTransform::battery_life(battery).apply(Metric::Power, new_app.power_w);
    for (Metric m : kAllMetrics) {
        const Direction d = direction_of(m);
        const double value = new_app.metric(m);
        std::vector<double> values;
        std::size_t better = 0;
        for (const auto* app : incumbents) {
            const double v = app->metric(m);
            values.push_back(v);
            if (oriented(v, d) < oriented(value, d)) ++better;
        }
        report.metrics.push_back(
            MetricPosition{m, value, better + 1, incumbents.size() + 1, make_histogram(values, value, bins)});
    }
    return report;
}

}  // namespace apoa
