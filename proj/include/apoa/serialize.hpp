#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apoa/decision.hpp"
#include "apoa/front.hpp"

namespace apoa {

using Json = nlohmann::ordered_json;

/// Flat, presentation-order view of a solved front: what the JSON envelope and
/// the front CSV both encode. Rows follow the trade-off table order.
struct FrontTable {
    struct Row {
        std::size_t solution = 0;
        std::vector<std::string> apps;
        std::vector<double> objectives;
        std::vector<double> display;
        std::vector<double> tradeoff_pct;

        friend bool operator==(const Row&, const Row&) = default;
    };

    int instance = 0;
    std::vector<Metric> metrics;
    std::string solver;
    std::optional<Nsga2Params> nsga2;
    std::string catalog_fingerprint;
    std::optional<BatteryParams> battery;
    std::vector<std::string> categories;
    std::vector<Row> rows;
    std::string space_before;
    std::string space_after;
    std::string evaluated;
    std::optional<bool> empty_selection;

    friend bool operator==(const FrontTable&, const FrontTable&) = default;
};

FrontTable make_front_table(const ParetoFront& front, const DisplayTransform& transform);

Json front_table_to_json(const FrontTable& table);
FrontTable front_table_from_json(const Json& j);
std::string encode_front_json(const FrontTable& table);
std::string encode_front_csv(const FrontTable& table);
FrontTable decode_front_json(std::string_view text);
FrontTable decode_front_csv(std::string_view text);

/// Human-readable table with values rounded to two decimals.
std::string format_front_text(const FrontTable& table);

// Reports ------------------------------------------------------------------

struct ReduceReport {
    InstanceSpec instance = instance_from_id(1);
    std::vector<std::string> categories;
    std::vector<std::size_t> before;
    std::vector<std::size_t> after;
    BigCount space_before = 0;
    BigCount space_after = 0;
};

ReduceReport make_reduce_report(const CategoryCatalog& catalog, const InstanceSpec& instance);

Json instance_to_json(const InstanceSpec& instance);
Json instances_to_json();
Json contexts_to_json();
Json reduce_report_to_json(const ReduceReport& report);
Json improvement_to_json(const ImprovementReport& report);
Json compare_report_to_json(const CompareReport& report);
Json reference_values_to_json(const ReferenceValues& values);
Json position_to_json(const PositionReport& report);
Json app_record_to_json(const AppRecord& record);
AppRecord app_record_from_json(const Json& j);

/// Parses [{metric, target?, op, bound}]. Throws ParseError / UnknownMetric.
std::vector<Constraint> constraints_from_json(const Json& j);
/// Parses "network:tradeoff<=10" style command-line constraints.
Constraint parse_constraint_spec(std::string_view text);

std::string format_reduce_text(const ReduceReport& report);
std::string format_compare_text(const CompareReport& report);
std::string format_reference_text(const ReferenceValues& values);
std::string format_position_text(const PositionReport& report);

}  // namespace apoa
