#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apoa/error.hpp"

namespace apoa {

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// The five app metrics, in canonical (column) order.
enum class Metric : std::uint8_t { Power = 0, Cpu = 1, Memory = 2, Network = 3, Rating = 4 };

inline constexpr std::size_t kMetricCount = 5;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::Power, Metric::Cpu, Metric::Memory, Metric::Network, Metric::Rating};

enum class Direction : std::uint8_t { Minimize, Maximize };

constexpr Direction direction_of(Metric m) noexcept {
    return m == Metric::Rating ? Direction::Maximize : Direction::Minimize;
}

constexpr std::size_t metric_index(Metric m) noexcept { return static_cast<std::size_t>(m); }

/// Lower-case identifier used on the command line and in JSON: power, cpu,
/// memory, network, rating.
std::string_view metric_name(Metric m) noexcept;
std::string_view metric_unit(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;
std::string_view direction_name(Direction d) noexcept;

/// Bit set over the five metrics. Iteration is always canonical order.
class MetricSet {
public:
    constexpr MetricSet() = default;
    constexpr MetricSet(std::initializer_list<Metric> metrics) {
        for (Metric m : metrics) insert(m);
    }
    static constexpr MetricSet from_bits(std::uint8_t bits) {
        MetricSet s;
        s.bits_ = static_cast<std::uint8_t>(bits & 0x1Fu);
        return s;
    }

    constexpr void insert(Metric m) { bits_ |= static_cast<std::uint8_t>(1u << metric_index(m)); }
    constexpr bool contains(Metric m) const { return (bits_ >> metric_index(m)) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const {
        std::size_t n = 0;
        for (std::uint8_t b = bits_; b != 0; b &= static_cast<std::uint8_t>(b - 1)) ++n;
        return n;
    }
    constexpr std::uint8_t bits() const { return bits_; }

    std::vector<Metric> ordered() const;

    friend constexpr bool operator==(MetricSet, MetricSet) = default;

private:
    std::uint8_t bits_ = 0;
};

/// Parses a comma-separated metric list such as "power,network".
MetricSet parse_metric_list(std::string_view list);
std::string format_metric_list(MetricSet set);

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct AppRecord {
    std::string app_id;
    std::string category_id;
    double rating = 0.0;
    double power_w = 0.0;
    double cpu_pct = 0.0;
    double mem_mb = 0.0;
    double net_mb = 0.0;

    double metric(Metric m) const noexcept;

    friend bool operator==(const AppRecord&, const AppRecord&) = default;
};

/// Checks the per-record invariants; throws MetricOutOfRange naming the field.
void validate_record(const AppRecord& record, std::optional<std::size_t> record_index = {});

struct Category {
    std::string id;
    std::vector<AppRecord> apps;

    friend bool operator==(const Category&, const Category&) = default;
};

/// Apps grouped by category in first-seen order. Immutable once built; only
/// validate_catalog constructs one from raw records.
class CategoryCatalog {
public:
    CategoryCatalog() = default;

    std::span<const Category> categories() const noexcept { return categories_; }
    const Category& category(std::size_t i) const { return categories_.at(i); }
    std::size_t size() const noexcept { return categories_.size(); }
    bool empty() const noexcept { return categories_.empty(); }
    std::size_t app_count() const noexcept;
    std::vector<std::size_t> category_sizes() const;

    std::optional<std::size_t> find_category(std::string_view id) const noexcept;
    /// (category index, app index) of an app id.
    std::optional<std::pair<std::size_t, std::size_t>> find_app(std::string_view app_id) const noexcept;

    /// Records flattened in catalog order.
    std::vector<AppRecord> records() const;

    friend bool operator==(const CategoryCatalog&, const CategoryCatalog&) = default;

private:
    friend CategoryCatalog validate_catalog(std::vector<AppRecord> records);
    explicit CategoryCatalog(std::vector<Category> categories) : categories_(std::move(categories)) {}

    std::vector<Category> categories_;
};

/// Groups and validates raw records. Errors: EmptyInput, DuplicateAppId,
/// MetricOutOfRange (location carries the record index and field name).
CategoryCatalog validate_catalog(std::vector<AppRecord> records);

// ---------------------------------------------------------------------------
// Instances and contexts of use
// ---------------------------------------------------------------------------

inline constexpr int kInstanceCount = 31;

class InstanceSpec {
public:
    int id() const noexcept { return id_; }
    MetricSet metric_set() const noexcept { return metrics_; }
    const std::vector<Metric>& metrics() const noexcept { return ordered_; }
    std::size_t objective_count() const noexcept { return ordered_.size(); }
    std::vector<Direction> directions() const;
    /// Position of `m` among this instance's objectives.
    std::optional<std::size_t> objective_index(Metric m) const noexcept;

    friend bool operator==(const InstanceSpec& a, const InstanceSpec& b) { return a.id_ == b.id_; }

private:
    friend InstanceSpec instance_from_metrics(MetricSet metrics);
    InstanceSpec(int id, MetricSet metrics) : id_(id), metrics_(metrics), ordered_(metrics.ordered()) {}

    int id_;
    MetricSet metrics_;
    std::vector<Metric> ordered_;
};

/// Canonical instance numbering: non-empty subsets ordered by cardinality,
/// then lexicographically over the canonical metric order, numbered from 1.
InstanceSpec instance_from_metrics(MetricSet metrics);
InstanceSpec instance_from_id(int id);
const std::vector<InstanceSpec>& all_instances();

enum class ContextOfUse { TravelAbroad, OldDevices, DrivingUnplugged, DrivingPlugged };

struct ContextPreset {
    ContextOfUse context;
    std::string_view name;
    std::string_view title;
    int instance_id;
};

std::span<const ContextPreset> context_presets() noexcept;
InstanceSpec context_preset(std::string_view name);

// ---------------------------------------------------------------------------
// Solutions and battery
// ---------------------------------------------------------------------------

/// One app index per category.
struct SolutionVector {
    std::vector<std::size_t> choices;

    friend bool operator==(const SolutionVector&, const SolutionVector&) = default;
    friend auto operator<=>(const SolutionVector&, const SolutionVector&) = default;
};

/// Throws IndexOutOfRange unless `solution` has one in-range index per category.
void check_solution(const SolutionVector& solution, const CategoryCatalog& catalog);
std::vector<std::string> solution_app_ids(const SolutionVector& solution, const CategoryCatalog& catalog);
/// Resolves one app id per category (any order). Throws UnknownApp / IndexOutOfRange.
SolutionVector solution_from_app_ids(std::span<const std::string> app_ids, const CategoryCatalog& catalog);

struct BatteryParams {
    double capacity_ah = 2.10;
    double voltage_v = 3.8;

    double energy_wh() const noexcept { return capacity_ah * voltage_v; }
    void validate() const;

    friend bool operator==(const BatteryParams&, const BatteryParams&) = default;
};

}  // namespace apoa
