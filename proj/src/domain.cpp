#include "apoa/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace apoa {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DuplicateAppId: return "DuplicateAppId";
        case ErrorCode::MetricOutOfRange: return "MetricOutOfRange";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::InvalidInstance: return "InvalidInstance";
        case ErrorCode::UnknownContext: return "UnknownContext";
        case ErrorCode::UnknownMetric: return "UnknownMetric";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NonPositiveLoad: return "NonPositiveLoad";
        case ErrorCode::InvalidBattery: return "InvalidBattery";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::InstanceMismatch: return "InstanceMismatch";
        case ErrorCode::CutOutOfRange: return "CutOutOfRange";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::EmptyFront: return "EmptyFront";
        case ErrorCode::UnknownObjective: return "UnknownObjective";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::UnknownApp: return "UnknownApp";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::Power: return "power";
        case Metric::Cpu: return "cpu";
        case Metric::Memory: return "memory";
        case Metric::Network: return "network";
        case Metric::Rating: return "rating";
    }
    return "?";
}

std::string_view metric_unit(Metric m) noexcept {
    switch (m) {
        case Metric::Power: return "W";
        case Metric::Cpu: return "%";
        case Metric::Memory: return "MB";
        case Metric::Network: return "MB";
        case Metric::Rating: return "points";
    }
    return "";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Metric m : kAllMetrics) {
        if (lower == metric_name(m)) return m;
    }
    if (lower == "mem") return Metric::Memory;
    if (lower == "net") return Metric::Network;
    return std::nullopt;
}

std::string_view direction_name(Direction d) noexcept {
    return d == Direction::Minimize ? "minimize" : "maximize";
}

std::vector<Metric> MetricSet::ordered() const {
    std::vector<Metric> out;
    for (Metric m : kAllMetrics) {
        if (contains(m)) out.push_back(m);
    }
    return out;
}

MetricSet parse_metric_list(std::string_view list) {
    MetricSet set;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t end = list.find(',', start);
        if (end == std::string_view::npos) end = list.size();
        std::string_view token = list.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (!token.empty()) {
            auto m = parse_metric(token);
            if (!m) throw Error(ErrorCode::UnknownMetric, "unknown metric '" + std::string(token) + "'");
            set.insert(*m);
        }
        start = end + 1;
    }
    if (set.empty()) throw Error(ErrorCode::EmptySubset, "metric list is empty");
    return set;
}

std::string format_metric_list(MetricSet set) {
    std::string out;
    for (Metric m : set.ordered()) {
        if (!out.empty()) out += ',';
        out += metric_name(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Records and catalog
// ---------------------------------------------------------------------------

double AppRecord::metric(Metric m) const noexcept {
    switch (m) {
        case Metric::Power: return power_w;
        case Metric::Cpu: return cpu_pct;
        case Metric::Memory: return mem_mb;
        case Metric::Network: return net_mb;
        case Metric::Rating: return rating;
    }
    return 0.0;
}

namespace {

[[noreturn]] void out_of_range(const AppRecord& r, std::string_view field, std::string_view rule,
                               std::optional<std::size_t> index) {
    ErrorLocation loc;
    loc.record_index = index;
    loc.field = std::string(field);
    throw Error(ErrorCode::MetricOutOfRange,
                "app '" + r.app_id + "': field " + std::string(field) + " " + std::string(rule), loc);
}

}  // namespace

void validate_record(const AppRecord& r, std::optional<std::size_t> index) {
    if (r.app_id.empty()) {
        throw Error(ErrorCode::ValidationError, "app_id must be non-empty",
                    ErrorLocation{index, {}, {}, "app_id"});
    }
    if (r.category_id.empty()) {
        throw Error(ErrorCode::ValidationError, "app '" + r.app_id + "': category must be non-empty",
                    ErrorLocation{index, {}, {}, "category"});
    }
    if (!std::isfinite(r.rating) || r.rating < 1.0 || r.rating > 5.0) {
        out_of_range(r, "rating", "must be within [1,5]", index);
    }
    const std::pair<std::string_view, double> perf[] = {
        {"power_w", r.power_w}, {"cpu_pct", r.cpu_pct}, {"mem_mb", r.mem_mb}, {"net_mb", r.net_mb}};
    for (const auto& [field, value] : perf) {
        if (!std::isfinite(value) || value < 0.0) out_of_range(r, field, "must be finite and >= 0", index);
    }
    if (r.cpu_pct > 100.0) out_of_range(r, "cpu_pct", "must be <= 100", index);
}

CategoryCatalog validate_catalog(std::vector<AppRecord> records) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "catalog has no records");

    std::unordered_set<std::string> seen_ids;
    std::unordered_map<std::string, std::size_t> category_slot;
    std::vector<Category> categories;
    for (std::size_t i = 0; i < records.size(); ++i) {
        AppRecord& r = records[i];
        validate_record(r, i);
        if (!seen_ids.insert(r.app_id).second) {
            throw Error(ErrorCode::DuplicateAppId, "duplicate app_id '" + r.app_id + "'",
                        ErrorLocation{i, {}, {}, "app_id"});
        }
        auto [it, inserted] = category_slot.try_emplace(r.category_id, categories.size());
        if (inserted) categories.push_back(Category{r.category_id, {}});
        categories[it->second].apps.push_back(std::move(r));
    }
    return CategoryCatalog(std::move(categories));
}

std::size_t CategoryCatalog::app_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : categories_) n += c.apps.size();
    return n;
}

std::vector<std::size_t> CategoryCatalog::category_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(categories_.size());
    for (const auto& c : categories_) sizes.push_back(c.apps.size());
    return sizes;
}

std::optional<std::size_t> CategoryCatalog::find_category(std::string_view id) const noexcept {
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (categories_[i].id == id) return i;
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> CategoryCatalog::find_app(std::string_view app_id) const noexcept {
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        const auto& apps = categories_[i].apps;
        for (std::size_t j = 0; j < apps.size(); ++j) {
            if (apps[j].app_id == app_id) return std::pair{i, j};
        }
    }
    return std::nullopt;
}

std::vector<AppRecord> CategoryCatalog::records() const {
    std::vector<AppRecord> out;
    out.reserve(app_count());
    for (const auto& c : categories_) out.insert(out.end(), c.apps.begin(), c.apps.end());
    return out;
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

namespace {

// bits -> instance id, built by walking k-combinations in lexicographic order.
std::array<int, 32> build_instance_numbering() {
    std::array<int, 32> ids{};
    int next = 1;
    for (std::size_t k = 1; k <= kMetricCount; ++k) {
        std::vector<std::size_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = i;
        while (true) {
            std::uint8_t bits = 0;
            for (std::size_t idx : combo) bits = static_cast<std::uint8_t>(bits | (1u << idx));
            ids[bits] = next++;
            // advance to the next k-combination of {0..4}
            std::size_t pos = k;
            while (pos > 0 && combo[pos - 1] == kMetricCount - k + (pos - 1)) --pos;
            if (pos == 0) break;
            ++combo[pos - 1];
            for (std::size_t i = pos; i < k; ++i) combo[i] = combo[i - 1] + 1;
        }
    }
    return ids;
}

const std::array<int, 32>& instance_numbering() {
    static const std::array<int, 32> ids = build_instance_numbering();
    return ids;
}

}  // namespace

std::vector<Direction> InstanceSpec::directions() const {
    std::vector<Direction> out;
    out.reserve(ordered_.size());
    for (Metric m : ordered_) out.push_back(direction_of(m));
    return out;
}

std::optional<std::size_t> InstanceSpec::objective_index(Metric m) const noexcept {
    for (std::size_t i = 0; i < ordered_.size(); ++i) {
        if (ordered_[i] == m) return i;
    }
    return std::nullopt;
}

InstanceSpec instance_from_metrics(MetricSet metrics) {
    if (metrics.empty()) throw Error(ErrorCode::EmptySubset, "an instance needs at least one metric");
    return InstanceSpec(instance_numbering()[metrics.bits()], metrics);
}

const std::vector<InstanceSpec>& all_instances() {
    static const std::vector<InstanceSpec> instances = [] {
        std::vector<InstanceSpec> out;
        const auto& ids = instance_numbering();
        for (int id = 1; id <= kInstanceCount; ++id) {
            for (std::uint8_t bits = 1; bits < 32; ++bits) {
                if (ids[bits] == id) out.push_back(instance_from_metrics(MetricSet::from_bits(bits)));
            }
        }
        return out;
    }();
    return instances;
}

InstanceSpec instance_from_id(int id) {
    if (id < 1 || id > kInstanceCount) {
        throw Error(ErrorCode::InvalidInstance, "instance id must be in [1,31], got " + std::to_string(id));
    }
    return all_instances()[static_cast<std::size_t>(id - 1)];
}

namespace {

constexpr std::array<ContextPreset, 4> kContextPresets = {{
    {ContextOfUse::TravelAbroad, "travel-abroad", "Travel abroad", 8},
    {ContextOfUse::OldDevices, "old-devices", "Old devices", 10},
    {ContextOfUse::DrivingUnplugged, "driving-unplugged", "Driving (phone not plugged in)", 1},
    {ContextOfUse::DrivingPlugged, "driving-plugged", "Driving (phone plugged in)", 22},
}};

}  // namespace

std::span<const ContextPreset> context_presets() noexcept { return kContextPresets; }

InstanceSpec context_preset(std::string_view name) {
    for (const auto& preset : kContextPresets) {
        if (preset.name == name) return instance_from_id(preset.instance_id);
    }
    throw Error(ErrorCode::UnknownContext, "unknown context of use '" + std::string(name) +
                                               "' (expected travel-abroad, old-devices, "
                                               "driving-unplugged or driving-plugged)");
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

void check_solution(const SolutionVector& solution, const CategoryCatalog& catalog) {
    if (solution.choices.size() != catalog.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "solution has " + std::to_string(solution.choices.size()) +
                                                    " choices for " + std::to_string(catalog.size()) +
                                                    " categories");
    }
    for (std::size_t i = 0; i < solution.choices.size(); ++i) {
        if (solution.choices[i] >= catalog.category(i).apps.size()) {
            throw Error(ErrorCode::IndexOutOfRange, "choice " + std::to_string(solution.choices[i]) +
                                                        " out of range for category '" +
                                                        catalog.category(i).id + "'");
        }
    }
}

std::vector<std::string> solution_app_ids(const SolutionVector& solution, const CategoryCatalog& catalog) {
    check_solution(solution, catalog);
    std::vector<std::string> ids;
    ids.reserve(solution.choices.size());
    for (std::size_t i = 0; i < solution.choices.size(); ++i) {
        ids.push_back(catalog.category(i).apps[solution.choices[i]].app_id);
    }
    return ids;
}

SolutionVector solution_from_app_ids(std::span<const std::string> app_ids, const CategoryCatalog& catalog) {
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    SolutionVector solution{std::vector<std::size_t>(catalog.size(), kUnset)};
    for (const auto& id : app_ids) {
        auto where = catalog.find_app(id);
        if (!where) throw Error(ErrorCode::UnknownApp, "unknown app '" + id + "'");
        if (solution.choices[where->first] != kUnset) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "two apps given for category '" + catalog.category(where->first).id + "'");
        }
        solution.choices[where->first] = where->second;
    }
    for (std::size_t i = 0; i < solution.choices.size(); ++i) {
        if (solution.choices[i] == kUnset) {
            throw Error(ErrorCode::IndexOutOfRange, "no app given for category '" + catalog.category(i).id + "'");
        }
    }
    return solution;
}

void BatteryParams::validate() const {
    if (!(std::isfinite(capacity_ah) && capacity_ah > 0.0) || !(std::isfinite(voltage_v) && voltage_v > 0.0)) {
        throw Error(ErrorCode::InvalidBattery, "battery capacity and voltage must be positive");
    }
}

}  // namespace apoa
