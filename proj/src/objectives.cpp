#include "apoa/objectives.hpp"

#include <cmath>
#include <limits>

namespace apoa {

std::optional<double> ObjectiveVector::value(Metric m) const noexcept {
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (metrics[i] == m) return values[i];
    }
    return std::nullopt;
}

ObjectiveVector evaluate_solution(const SolutionVector& solution, const CategoryCatalog& catalog,
                                  const InstanceSpec& instance) {
    check_solution(solution, catalog);
    ObjectiveVector out{instance.id(), instance.metrics(), std::vector<double>(instance.objective_count(), 0.0)};
    const auto n = static_cast<double>(catalog.size());
    for (std::size_t j = 0; j < out.metrics.size(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            sum += catalog.category(i).apps[solution.choices[i]].metric(out.metrics[j]);
        }
        out.values[j] = sum / n;
    }
    return out;
}

double battery_life_hours(double load_w, const BatteryParams& params) {
    params.validate();
    if (!(load_w > 0.0) || !std::isfinite(load_w)) {
        throw Error(ErrorCode::NonPositiveLoad, "battery life needs a positive load, got " + std::to_string(load_w));
    }
    return params.capacity_ah * (params.voltage_v / load_w);
}

double energy_joules(double power_w, double seconds) { return power_w * seconds; }

double DisplayTransform::apply(Metric m, double raw_value) const {
    if (!transforms(m)) return raw_value;
    // A zero-power view has unbounded battery life.
    if (raw_value <= 0.0) return std::numeric_limits<double>::infinity();
    return battery_life_hours(raw_value, *battery);
}

Direction DisplayTransform::direction(Metric m) const noexcept {
    return transforms(m) ? Direction::Maximize : direction_of(m);
}

std::vector<double> display_values(const ObjectiveVector& objectives, const DisplayTransform& transform) {
    std::vector<double> out(objectives.values.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = transform.apply(objectives.metrics[j], objectives.values[j]);
    return out;
}

}  // namespace apoa
