#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apoa/objectives.hpp"
#include "apoa/pareto.hpp"

namespace apoa {

/// NSGA-II settings. Defaults are the published parameter table.
struct Nsga2Params {
    std::size_t population_size = 200;
    std::size_t generations = 300;
    double crossover_prob = 0.9;
    double mutation_prob = 0.125;
    std::uint64_t seed = 0;

    /// Throws InvalidParams.
    void validate() const;
    /// Per-gene mutation rate 1/N for an N-category catalog.
    static double inverse_category_mutation(std::size_t category_count);

    friend bool operator==(const Nsga2Params&, const Nsga2Params&) = default;
};

enum class SolverKind { Exhaustive, Evolutionary };

std::string_view solver_name(SolverKind kind) noexcept;

struct FrontEntry {
    SolutionVector solution;  // indices into the original (unreduced) catalog
    ObjectiveVector objectives;

    friend bool operator==(const FrontEntry&, const FrontEntry&) = default;
};

struct SolveStats {
    BigCount space_before = 0;
    BigCount space_after = 0;
    BigCount evaluated = 0;
};

/// Raw per-objective extremes that anchor trade-off percentages. A filtered
/// view keeps the basis of the front it was cut from.
struct TradeoffBasis {
    std::vector<double> raw_min;
    std::vector<double> raw_max;
};

struct ParetoFront {
    InstanceSpec instance = instance_from_id(1);
    std::vector<FrontEntry> entries;
    SolverKind solver = SolverKind::Exhaustive;
    std::optional<Nsga2Params> nsga2;
    std::string catalog_fingerprint;
    std::vector<std::string> category_ids;
    /// App ids per entry, aligned with `entries`.
    std::vector<std::vector<std::string>> app_ids;
    SolveStats stats;
    std::optional<TradeoffBasis> tradeoff_basis;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
};

TradeoffBasis compute_tradeoff_basis(const ParetoFront& front);

/// Sorts entries lexicographically by objective values (canonical metric order,
/// ascending raw values), then by app-id tuple, and fills `app_ids`.
void finalize_front(ParetoFront& front, const CategoryCatalog& catalog);

/// True iff both objective-vector multisets pair up within `tol` per coordinate.
/// Throws InstanceMismatch when the fronts belong to different instances.
bool front_equal(const ParetoFront& a, const ParetoFront& b, double tol);

/// Fraction of `reference` entries matched (within tol) by some entry of `candidate`.
double front_coverage(const ParetoFront& reference, const ParetoFront& candidate, double tol);

}  // namespace apoa
