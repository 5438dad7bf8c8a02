#pragma once

#include <cstddef>

#include "apoa/front.hpp"

namespace apoa {

inline constexpr std::uint64_t kDefaultEnumerationCap = 50'000'000;

struct ExhaustiveOptions {
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    /// Workers split the first category's choices; 0 picks hardware concurrency.
    std::size_t workers = 1;
    double epsilon = 0.0;
};

/// Reduces the catalog, enumerates every combination of survivors in
/// mixed-radix order and keeps the exact non-dominated set. The running archive
/// bounds memory by the front size. Throws SearchSpaceTooLarge above the cap.
ParetoFront solve_exhaustive(const CategoryCatalog& catalog, const InstanceSpec& instance,
                             const ExhaustiveOptions& options = {});

}  // namespace apoa
