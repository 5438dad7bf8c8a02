#pragma once

#include <optional>
#include <span>
#include <vector>

#include "apoa/domain.hpp"

namespace apoa {

/// Objective values of one solution, in the instance's canonical metric order.
/// Values are raw means (power in W, minimized); see DisplayTransform for the
/// battery-life view.
struct ObjectiveVector {
    int instance_id = 0;
    std::vector<Metric> metrics;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    std::optional<double> value(Metric m) const noexcept;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Mean of each instance metric over the chosen apps.
ObjectiveVector evaluate_solution(const SolutionVector& solution, const CategoryCatalog& catalog,
                                  const InstanceSpec& instance);

/// Hours of battery for a constant load: capacity_ah * (voltage_v / load_w).
double battery_life_hours(double load_w, const BatteryParams& params = {});

double energy_joules(double power_w, double seconds);

/// Presentation-only transform. When `battery` is set, power is shown as
/// battery life in hours, and is then a maximized quantity.
struct DisplayTransform {
    std::optional<BatteryParams> battery;

    static DisplayTransform raw() { return {}; }
    static DisplayTransform battery_life(BatteryParams params = {}) { return DisplayTransform{params}; }

    double apply(Metric m, double raw_value) const;
    Direction direction(Metric m) const noexcept;
    bool transforms(Metric m) const noexcept { return m == Metric::Power && battery.has_value(); }
};

/// Display values of `objectives` under `transform`.
std::vector<double> display_values(const ObjectiveVector& objectives, const DisplayTransform& transform);

}  // namespace apoa
