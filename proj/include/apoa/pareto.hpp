#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apoa/domain.hpp"

namespace apoa {

using BigCount = boost::multiprecision::cpp_int;

struct DirectedPoint {
    std::vector<double> values;
    std::vector<Direction> directions;
};

/// True iff `a` is no worse than `b` everywhere and strictly better somewhere.
/// With epsilon > 0, "no worse" tolerates epsilon and "strictly better" needs
/// a margin above epsilon. Shapes are assumed to match.
bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions,
               double epsilon = 0.0) noexcept;

/// Checked form; throws ShapeMismatch.
bool dominates(const DirectedPoint& a, const DirectedPoint& b, double epsilon = 0.0);

/// Indices (ascending) of points not dominated by any other point. Equal
/// vectors never dominate each other and are all kept.
std::vector<std::size_t> nondominated_filter(std::span<const DirectedPoint> points, double epsilon = 0.0);

/// Same, over row-major values with a shared direction vector.
std::vector<std::size_t> nondominated_filter(std::span<const double> values, std::size_t dimension,
                                             std::span<const Direction> directions, double epsilon = 0.0);

/// Catalog restricted to the apps that are non-dominated within their own
/// category under an instance, plus the map back to original app indices.
struct ReducedCatalog {
    CategoryCatalog catalog;
    std::vector<std::vector<std::size_t>> original_index;

    std::size_t size() const noexcept { return catalog.size(); }
    std::vector<std::size_t> category_sizes() const { return catalog.category_sizes(); }
    /// Translates a solution over the reduced catalog to original indices.
    SolutionVector to_original(const SolutionVector& reduced) const;
};

ReducedCatalog reduce_search_space(const CategoryCatalog& catalog, const InstanceSpec& instance,
                                   double epsilon = 0.0);

BigCount search_space_size(std::span<const std::size_t> category_sizes);
BigCount search_space_size(const CategoryCatalog& catalog);
BigCount search_space_size(const ReducedCatalog& reduced);

}  // namespace apoa
