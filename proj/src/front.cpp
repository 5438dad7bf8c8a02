#include "apoa/front.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apoa {

void Nsga2Params::validate() const {
    if (population_size < 4 || population_size % 2 != 0) {
        throw Error(ErrorCode::InvalidParams, "population size must be even and >= 4");
    }
    if (generations < 1) throw Error(ErrorCode::InvalidParams, "generations must be >= 1");
    auto is_prob = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
    if (!is_prob(crossover_prob)) throw Error(ErrorCode::InvalidParams, "crossover probability must be in [0,1]");
    if (!is_prob(mutation_prob)) throw Error(ErrorCode::InvalidParams, "mutation probability must be in [0,1]");
}

double Nsga2Params::inverse_category_mutation(std::size_t category_count) {
    if (category_count == 0) throw Error(ErrorCode::InvalidParams, "catalog has no categories");
    return 1.0 / static_cast<double>(category_count);
}

std::string_view solver_name(SolverKind kind) noexcept {
    return kind == SolverKind::Exhaustive ? "exhaustive" : "nsga2";
}

TradeoffBasis compute_tradeoff_basis(const ParetoFront& front) {
    if (front.empty()) throw Error(ErrorCode::EmptyFront, "front is empty");
    const std::size_t m = front.instance.objective_count();
    TradeoffBasis basis{front.entries.front().objectives.values, front.entries.front().objectives.values};
    for (const auto& e : front.entries) {
        for (std::size_t j = 0; j < m; ++j) {
            basis.raw_min[j] = std::min(basis.raw_min[j], e.objectives.values[j]);
            basis.raw_max[j] = std::max(basis.raw_max[j], e.objectives.values[j]);
        }
    }
    return basis;
}

void finalize_front(ParetoFront& front, const CategoryCatalog& catalog) {
    front.category_ids.clear();
    for (const auto& c : catalog.categories()) front.category_ids.push_back(c.id);

    std::vector<std::vector<std::string>> ids;
    ids.reserve(front.entries.size());
    for (const auto& e : front.entries) ids.push_back(solution_app_ids(e.solution, catalog));

    std::vector<std::size_t> order(front.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& va = front.entries[a].objectives.values;
        const auto& vb = front.entries[b].objectives.values;
        if (va != vb) return va < vb;
        return ids[a] < ids[b];
    });

    std::vector<FrontEntry> sorted;
    std::vector<std::vector<std::string>> sorted_ids;
    sorted.reserve(order.size());
    sorted_ids.reserve(order.size());
    for (std::size_t i : order) {
        sorted.push_back(std::move(front.entries[i]));
        sorted_ids.push_back(std::move(ids[i]));
    }
    front.entries = std::move(sorted);
    front.app_ids = std::move(sorted_ids);
}

namespace {

bool within(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!(std::abs(a[j] - b[j]) <= tol)) return false;
    }
    return true;
}

// Greedy pairing of b's entries onto a's, over lexicographically sorted copies.
std::size_t matched_count(const ParetoFront& a, const ParetoFront& b, double tol) {
    std::vector<const std::vector<double>*> left, right;
    for (const auto& e : a.entries) left.push_back(&e.objectives.values);
    for (const auto& e : b.entries) right.push_back(&e.objectives.values);
    auto by_value = [](const std::vector<double>* x, const std::vector<double>* y) { return *x < *y; };
    std::sort(left.begin(), left.end(), by_value);
    std::sort(right.begin(), right.end(), by_value);
    std::vector<bool> used(right.size(), false);
    std::size_t matched = 0;
    for (const auto* v : left) {
        for (std::size_t k = 0; k < right.size(); ++k) {
            if (!used[k] && within(*v, *right[k], tol)) {
                used[k] = true;
                ++matched;
                break;
            }
        }
    }
    return matched;
}

}  // namespace

bool front_equal(const ParetoFront& a, const ParetoFront& b, double tol) {
    if (a.instance.id() != b.instance.id()) {
        throw Error(ErrorCode::InstanceMismatch, "fronts belong to different instances");
    }
    if (a.size() != b.size()) return false;
    return matched_count(a, b, tol) == a.size();
}

double front_coverage(const ParetoFront& reference, const ParetoFront& candidate, double tol) {
    if (reference.instance.id() != candidate.instance.id()) {
        throw Error(ErrorCode::InstanceMismatch, "fronts belong to different instances");
    }
    if (reference.empty()) return 1.0;
    return static_cast<double>(matched_count(reference, candidate, tol)) / static_cast<double>(reference.size());
}

}  // namespace apoa
