#include "apoa/nsga2.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "apoa/csv.hpp"

namespace apoa {

std::pair<Genes, Genes> single_point_crossover(const Genes& p1, const Genes& p2, std::size_t cut, bool apply) {
    if (p1.size() != p2.size()) throw Error(ErrorCode::ShapeMismatch, "parents differ in length");
    if (!apply) return {p1, p2};
    if (cut < 1 || cut >= p1.size()) {
        throw Error(ErrorCode::CutOutOfRange,
                    "cut " + std::to_string(cut) + " outside [1," + std::to_string(p1.size()) + ")");
    }
    Genes c1(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(cut));
    Genes c2(p2.begin(), p2.begin() + static_cast<std::ptrdiff_t>(cut));
    c1.insert(c1.end(), p2.begin() + static_cast<std::ptrdiff_t>(cut), p2.end());
    c2.insert(c2.end(), p1.begin() + static_cast<std::ptrdiff_t>(cut), p1.end());
    return {std::move(c1), std::move(c2)};
}

Genes flip_mutation(Genes genes, std::span<const std::size_t> category_sizes, double mutation_prob, Rng& rng) {
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (rng.bernoulli(mutation_prob)) genes[i] = static_cast<std::size_t>(rng.uniform_index(category_sizes[i]));
    }
    return genes;
}

std::size_t binary_tournament(std::span<const Individual> population, Rng& rng) {
    const std::size_t a = static_cast<std::size_t>(rng.uniform_index(population.size()));
    const std::size_t b = static_cast<std::size_t>(rng.uniform_index(population.size()));
    const Individual& x = population[a];
    const Individual& y = population[b];
    if (x.rank != y.rank) return x.rank < y.rank ? a : b;
    if (x.crowding != y.crowding) return x.crowding > y.crowding ? a : b;
    return rng.bernoulli(0.5) ? a : b;
}

std::vector<std::size_t> fast_nondominated_sort(std::span<const std::vector<double>> objectives,
                                                std::span<const Direction> directions) {
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(objectives[p], objectives[q], directions)) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(objectives[q], objectives[p], directions)) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    std::vector<std::size_t> rank(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    std::size_t level = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            rank[p] = level;
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        current = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<double> crowding_distance(std::span<const std::vector<double>> front) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), kInf);
        return distance;
    }
    const std::size_t m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < m; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][j] < front[b][j]; });
        const double lo = front[order.front()][j];
        const double hi = front[order.back()][j];
        const double range = hi - lo;
        if (!(range > 0.0)) continue;
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]][j] - front[order[k - 1]][j]) / range;
        }
    }
    return distance;
}

namespace {

class Evaluator {
public:
    Evaluator(const CategoryCatalog& reduced, const InstanceSpec& instance) : n_(reduced.size()) {
        const auto& metrics = instance.metrics();
        dim_ = metrics.size();
        for (const auto& c : reduced.categories()) {
            std::vector<double> t;
            for (const auto& app : c.apps) {
                for (Metric met : metrics) t.push_back(app.metric(met));
            }
            table_.push_back(std::move(t));
        }
    }

    std::vector<double> operator()(const Genes& genes) const {
        std::vector<double> values(dim_);
        const auto n = static_cast<double>(n_);
        for (std::size_t j = 0; j < dim_; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n_; ++i) sum += table_[i][genes[i] * dim_ + j];
            values[j] = sum / n;
        }
        return values;
    }

private:
    std::size_t n_;
    std::size_t dim_ = 0;
    std::vector<std::vector<double>> table_;
};

std::uint64_t population_hash(std::span<const Individual> population) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& ind : population) {
        for (std::size_t g : ind.genes) {
            h ^= static_cast<std::uint64_t>(g) + 0x9e3779b97f4a7c15ULL;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Ranks `pool` and fills `rank`/`crowding` for every member.
void assign_rank_and_crowding(std::vector<Individual>& pool, std::span<const Direction> directions,
                              std::vector<std::vector<std::size_t>>& fronts) {
    std::vector<std::vector<double>> objs;
    objs.reserve(pool.size());
    for (const auto& ind : pool) objs.push_back(ind.objectives);
    auto ranks = fast_nondominated_sort(objs, directions);
    std::size_t levels = 0;
    for (std::size_t r : ranks) levels = std::max(levels, r + 1);
    fronts.assign(levels, {});
    for (std::size_t i = 0; i < pool.size(); ++i) {
        pool[i].rank = ranks[i];
        fronts[ranks[i]].push_back(i);
    }
    for (const auto& front : fronts) {
        std::vector<std::vector<double>> fo;
        fo.reserve(front.size());
        for (std::size_t i : front) fo.push_back(pool[i].objectives);
        auto cd = crowding_distance(fo);
        for (std::size_t k = 0; k < front.size(); ++k) pool[front[k]].crowding = cd[k];
    }
}

GenerationTrace make_trace(std::size_t generation, std::span<const Individual> pop,
                           std::span<const Direction> directions) {
    GenerationTrace t;
    t.generation = generation;
    t.population_hash = population_hash(pop);
    t.best = pop.front().objectives;
    for (const auto& ind : pop) {
        for (std::size_t j = 0; j < t.best.size(); ++j) {
            const double v = ind.objectives[j];
            t.best[j] = directions[j] == Direction::Minimize ? std::min(t.best[j], v) : std::max(t.best[j], v);
        }
        if (ind.rank == 0) t.rank0_objectives.push_back(ind.objectives);
    }
    t.rank0_size = t.rank0_objectives.size();
    return t;
}

}  // namespace

ParetoFront nsga2_solve(const CategoryCatalog& catalog, const InstanceSpec& instance, const Nsga2Params& params,
                        const TraceSink& trace) {
    params.validate();
    if (catalog.empty()) throw Error(ErrorCode::EmptyInput, "catalog has no categories");

    const ReducedCatalog reduced = reduce_search_space(catalog, instance);
    const auto sizes = reduced.category_sizes();
    const auto directions = instance.directions();
    const std::size_t genes_per_individual = sizes.size();
    const Evaluator evaluate(reduced.catalog, instance);
    Rng rng(params.seed);

    std::vector<Individual> population(params.population_size);
    for (auto& ind : population) {
        ind.genes.resize(genes_per_individual);
        for (std::size_t i = 0; i < genes_per_individual; ++i) {
            ind.genes[i] = static_cast<std::size_t>(rng.uniform_index(sizes[i]));
        }
        ind.objectives = evaluate(ind.genes);
    }
    std::vector<std::vector<std::size_t>> fronts;
    assign_rank_and_crowding(population, directions, fronts);
    if (trace) trace(make_trace(0, population, directions));

    for (std::size_t gen = 1; gen <= params.generations; ++gen) {
        std::vector<Individual> pool = population;
        pool.reserve(2 * params.population_size);
        while (pool.size() < 2 * params.population_size) {
            const Genes& p1 = population[binary_tournament(population, rng)].genes;
            const Genes& p2 = population[binary_tournament(population, rng)].genes;
            const bool apply = rng.bernoulli(params.crossover_prob) && genes_per_individual >= 2;
            const std::size_t cut = apply ? 1 + static_cast<std::size_t>(rng.uniform_index(genes_per_individual - 1)) : 0;
            auto [c1, c2] = single_point_crossover(p1, p2, cut, apply);
            for (Genes* child : {&c1, &c2}) {
                if (pool.size() == 2 * params.population_size) break;
                Individual ind;
                ind.genes = flip_mutation(std::move(*child), sizes, params.mutation_prob, rng);
                ind.objectives = evaluate(ind.genes);
                pool.push_back(std::move(ind));
            }
        }

        assign_rank_and_crowding(pool, directions, fronts);
        std::vector<Individual> next;
        next.reserve(params.population_size);
        for (auto& front : fronts) {
            if (next.size() + front.size() <= params.population_size) {
                for (std::size_t i : front) next.push_back(pool[i]);
                continue;
            }
            std::stable_sort(front.begin(), front.end(),
                             [&](std::size_t a, std::size_t b) { return pool[a].crowding > pool[b].crowding; });
            for (std::size_t k = 0; next.size() < params.population_size; ++k) next.push_back(pool[front[k]]);
            break;
        }
        population = std::move(next);
        if (trace) trace(make_trace(gen, population, directions));
    }

    // Rank-0 members of the final population, one per distinct objective vector.
    std::map<std::vector<double>, SolutionVector> unique;
    for (const auto& ind : population) {
        if (ind.rank != 0) continue;
        SolutionVector original = reduced.to_original(SolutionVector{ind.genes});
        auto [it, inserted] = unique.try_emplace(ind.objectives, original);
        if (!inserted && original < it->second) it->second = std::move(original);
    }

    ParetoFront front;
    front.instance = instance;
    front.solver = SolverKind::Evolutionary;
    front.nsga2 = params;
    front.catalog_fingerprint = catalog_fingerprint(catalog);
    front.stats.space_before = search_space_size(catalog);
    front.stats.space_after = search_space_size(reduced);
    front.stats.evaluated = BigCount(params.population_size) * (params.generations + 1);
    for (auto& [objs, solution] : unique) {
        front.entries.push_back(FrontEntry{solution, ObjectiveVector{instance.id(), instance.metrics(), objs}});
    }
    finalize_front(front, catalog);
    return front;
}

}  // namespace apoa
