#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "apoa/csv.hpp"
#include "apoa/front.hpp"
#include "published.hpp"

namespace apoa::testing {

struct CatalogShape {
    std::size_t min_categories = 1;
    std::size_t max_categories = 5;
    std::size_t min_apps = 1;
    std::size_t max_apps = 5;
    // Draw metrics from a coarse grid so ties and duplicates show up.
    bool grid = false;
};

inline AppRecord random_app(std::mt19937_64& gen, const std::string& id, const std::string& category, bool grid) {
    auto draw = [&](double lo, double hi, double step) {
        if (grid) {
            const auto steps = static_cast<int>(std::round((hi - lo) / step));
            return lo + step * std::uniform_int_distribution<int>(0, steps)(gen);
        }
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    };
    AppRecord r;
    r.app_id = id;
    r.category_id = category;
    r.rating = draw(1.0, 5.0, 1.0);
    r.power_w = draw(0.5, 4.0, 0.5);
    r.cpu_pct = draw(0.0, 60.0, 20.0);
    r.mem_mb = draw(20.0, 300.0, 70.0);
    r.net_mb = draw(0.0, 2.0, 0.5);
    return r;
}

inline CategoryCatalog random_catalog(std::mt19937_64& gen, const CatalogShape& shape) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(shape.min_categories, shape.max_categories)(gen);
    std::vector<AppRecord> records;
    for (std::size_t c = 0; c < n; ++c) {
        const std::string category = "cat" + std::to_string(c);
        const std::size_t apps = std::uniform_int_distribution<std::size_t>(shape.min_apps, shape.max_apps)(gen);
        for (std::size_t a = 0; a < apps; ++a) {
            records.push_back(random_app(gen, category + "-app" + std::to_string(a), category, shape.grid));
        }
    }
    return validate_catalog(std::move(records));
}

/// Objective vector of a choice, computed directly from the records.
inline std::vector<double> direct_objectives(const CategoryCatalog& catalog, const std::vector<std::size_t>& choice,
                                             const std::vector<Metric>& metrics) {
    std::vector<double> out;
    for (Metric m : metrics) {
        double sum = 0.0;
        for (std::size_t i = 0; i < catalog.size(); ++i) sum += catalog.category(i).apps[choice[i]].metric(m);
        out.push_back(sum / static_cast<double>(catalog.size()));
    }
    return out;
}

inline bool oracle_dominates(const std::vector<double>& a, const std::vector<double>& b,
                             const std::vector<Metric>& metrics) {
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const bool maximize = metrics[j] == Metric::Rating;
        const double x = maximize ? -a[j] : a[j];
        const double y = maximize ? -b[j] : b[j];
        if (x > y) return false;
        if (x < y) strictly = true;
    }
    return strictly;
}

/// Every combination of the unreduced catalog, kept if no other combination
/// dominates it. Sorted.
inline std::vector<std::vector<double>> brute_force_front(const CategoryCatalog& catalog,
                                                          const InstanceSpec& instance) {
    const auto& metrics = instance.metrics();
    std::vector<std::vector<double>> all;
    std::vector<std::size_t> choice(catalog.size(), 0);
    for (;;) {
        all.push_back(direct_objectives(catalog, choice, metrics));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == catalog.category(i).apps.size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    std::vector<std::vector<double>> front;
    for (std::size_t p = 0; p < all.size(); ++p) {
        bool dominated = false;
        for (std::size_t q = 0; q < all.size() && !dominated; ++q) dominated = oracle_dominates(all[q], all[p], metrics);
        if (!dominated) front.push_back(all[p]);
    }
    std::sort(front.begin(), front.end());
    return front;
}

/// Distinct vectors of a sorted list, merging neighbours closer than `tol`.
inline std::vector<std::vector<double>> distinct(std::vector<std::vector<double>> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<std::vector<double>> out;
    for (auto& x : v) {
        bool same = !out.empty();
        for (std::size_t j = 0; same && j < x.size(); ++j) same = std::abs(out.back()[j] - x[j]) <= tol;
        if (!same) out.push_back(std::move(x));
    }
    return out;
}

inline bool same_points(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                        double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t j = 0; j < a[k].size(); ++j) {
            if (!(std::abs(a[k][j] - b[k][j]) <= tol)) return false;
        }
    }
    return true;
}

inline std::vector<std::vector<double>> front_points(const ParetoFront& front) {
    std::vector<std::vector<double>> out;
    for (const auto& e : front.entries) out.push_back(e.objectives.values);
    std::sort(out.begin(), out.end());
    return out;
}

/// A front holding the given raw objective vectors, one synthetic app per entry.
inline ParetoFront front_from_values(const InstanceSpec& instance, const std::vector<std::vector<double>>& values) {
    ParetoFront f;
    f.instance = instance;
    f.category_ids = {"c"};
    for (std::size_t k = 0; k < values.size(); ++k) {
        f.entries.push_back(FrontEntry{SolutionVector{{k}}, ObjectiveVector{instance.id(), instance.metrics(), values[k]}});
        f.app_ids.push_back({"s" + std::to_string(k + 1)});
    }
    return f;
}

/// Printed travel-abroad rows as a raw (power W, network MB) front under the
/// default battery.
inline ParetoFront travel_abroad_front() {
    const double wh = BatteryParams{}.energy_wh();
    std::vector<std::vector<double>> values;
    for (const auto& r : testdata::kTravelAbroadFront) values.push_back({wh / r.first, r.second});
    return front_from_values(instance_from_id(8), values);
}

inline ParetoFront old_devices_front() {
    std::vector<std::vector<double>> values;
    for (const auto& r : testdata::kOldDevicesFront) values.push_back({r.first, r.second});
    return front_from_values(instance_from_id(10), values);
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("apoa-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

private:
    std::filesystem::path path_;
};

}  // namespace apoa::testing
