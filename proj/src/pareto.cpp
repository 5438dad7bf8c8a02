#include "apoa/pareto.hpp"

#include <string>

namespace apoa {

bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions,
               double epsilon) noexcept {
    bool strictly_better = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        // Orient so that smaller is better.
        const double x = directions[j] == Direction::Minimize ? a[j] : -a[j];
        const double y = directions[j] == Direction::Minimize ? b[j] : -b[j];
        if (x > y + epsilon) return false;
        if (x < y - epsilon) strictly_better = true;
    }
    return strictly_better;
}

bool dominates(const DirectedPoint& a, const DirectedPoint& b, double epsilon) {
    if (a.values.size() != b.values.size() || a.directions.size() != a.values.size() ||
        b.directions != a.directions) {
        throw Error(ErrorCode::ShapeMismatch, "points differ in dimension or directions");
    }
    return dominates(a.values, b.values, a.directions, epsilon);
}

std::vector<std::size_t> nondominated_filter(std::span<const double> values, std::size_t dimension,
                                             std::span<const Direction> directions, double epsilon) {
    if (dimension == 0 || values.empty()) throw Error(ErrorCode::EmptyInput, "no points to filter");
    if (values.size() % dimension != 0 || directions.size() != dimension) {
        throw Error(ErrorCode::ShapeMismatch, "values do not tile the point dimension");
    }
    const std::size_t n = values.size() / dimension;
    auto point = [&](std::size_t i) { return values.subspan(i * dimension, dimension); };
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        bool dominated = false;
        for (std::size_t k = 0; k < n && !dominated; ++k) {
            dominated = k != i && dominates(point(k), point(i), directions, epsilon);
        }
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

std::vector<std::size_t> nondominated_filter(std::span<const DirectedPoint> points, double epsilon) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points to filter");
    const std::size_t dim = points.front().values.size();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.values.size() != dim || p.directions != points.front().directions) {
            throw Error(ErrorCode::ShapeMismatch, "points differ in dimension or directions");
        }
        flat.insert(flat.end(), p.values.begin(), p.values.end());
    }
    return nondominated_filter(flat, dim, points.front().directions, epsilon);
}

SolutionVector ReducedCatalog::to_original(const SolutionVector& reduced) const {
    if (reduced.choices.size() != original_index.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "solution length does not match the reduced catalog");
    }
    SolutionVector out{std::vector<std::size_t>(reduced.choices.size())};
    for (std::size_t i = 0; i < reduced.choices.size(); ++i) {
        out.choices[i] = original_index[i].at(reduced.choices[i]);
    }
    return out;
}

ReducedCatalog reduce_search_space(const CategoryCatalog& catalog, const InstanceSpec& instance, double epsilon) {
    const auto& metrics = instance.metrics();
    const auto directions = instance.directions();
    ReducedCatalog reduced;
    std::vector<AppRecord> survivors;
    for (const Category& category : catalog.categories()) {
        std::vector<double> projected;
        projected.reserve(category.apps.size() * metrics.size());
        for (const AppRecord& app : category.apps) {
            for (Metric m : metrics) projected.push_back(app.metric(m));
        }
        auto keep = nondominated_filter(projected, metrics.size(), directions, epsilon);
        for (std::size_t idx : keep) survivors.push_back(category.apps[idx]);
        reduced.original_index.push_back(std::move(keep));
    }
    reduced.catalog = validate_catalog(std::move(survivors));
    return reduced;
}

BigCount search_space_size(std::span<const std::size_t> category_sizes) {
    BigCount product = 1;
    for (std::size_t s : category_sizes) product *= s;
    return product;
}

BigCount search_space_size(const CategoryCatalog& catalog) { return search_space_size(catalog.category_sizes()); }

BigCount search_space_size(const ReducedCatalog& reduced) { return search_space_size(reduced.category_sizes()); }

}  // namespace apoa
