#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "apoa/front.hpp"
#include "apoa/random.hpp"

namespace apoa {

/// One gene per category: an index into that category's (reduced) app list.
using Genes = std::vector<std::size_t>;

struct Individual {
    Genes genes;
    std::vector<double> objectives;  // raw values in instance metric order
    std::size_t rank = 0;
    double crowding = 0.0;
};

/// Swaps the gene suffixes starting at `cut` when `apply` is set; otherwise
/// returns copies. Throws CutOutOfRange unless 1 <= cut <= N-1 when applied.
std::pair<Genes, Genes> single_point_crossover(const Genes& p1, const Genes& p2, std::size_t cut, bool apply);

/// Each gene is, with probability `mutation_prob`, redrawn uniformly from its
/// category's index range.
Genes flip_mutation(Genes genes, std::span<const std::size_t> category_sizes, double mutation_prob, Rng& rng);

/// Draws two members uniformly; lower rank wins, then larger crowding, and a
/// fair coin settles equivalent pairs. Returns the winner's index.
std::size_t binary_tournament(std::span<const Individual> population, Rng& rng);

/// Non-domination rank of every point (0 = non-dominated).
std::vector<std::size_t> fast_nondominated_sort(std::span<const std::vector<double>> objectives,
                                                std::span<const Direction> directions);

/// Crowding distance within one front. Boundary points of each objective get
/// +inf; objectives with zero range contribute nothing.
std::vector<double> crowding_distance(std::span<const std::vector<double>> front_objectives);

struct GenerationTrace {
    std::size_t generation = 0;
    std::size_t rank0_size = 0;
    std::vector<double> best;  // best raw value per objective in the population
    std::uint64_t population_hash = 0;
    std::vector<std::vector<double>> rank0_objectives;
};

using TraceSink = std::function<void(const GenerationTrace&)>;

/// NSGA-II over the reduced catalog. Generation 0 is the random initial
/// population; every later generation is one (mu+lambda) step. Returns the
/// final rank-0 set, deduplicated by objective vector.
ParetoFront nsga2_solve(const CategoryCatalog& catalog, const InstanceSpec& instance, const Nsga2Params& params,
                        const TraceSink& trace = {});

}  // namespace apoa
