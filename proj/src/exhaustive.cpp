#include "apoa/exhaustive.hpp"

#include <algorithm>
#include <thread>

#include "apoa/csv.hpp"

namespace apoa {

namespace {

/// Running non-dominated archive over flat objective rows.
class Archive {
public:
    Archive(std::size_t dimension, std::vector<Direction> directions, double epsilon)
        : dim_(dimension), directions_(std::move(directions)), epsilon_(epsilon) {}

    void offer(std::span<const double> values, std::span<const std::size_t> choices) {
        for (std::size_t k = 0; k < count(); ++k) {
            if (dominates(row(k), values, directions_, epsilon_)) return;
        }
        std::size_t k = 0;
        while (k < count()) {
            if (dominates(values, row(k), directions_, epsilon_)) {
                remove(k);
            } else {
                ++k;
            }
        }
        values_.insert(values_.end(), values.begin(), values.end());
        choices_.emplace_back(choices.begin(), choices.end());
    }

    void absorb(const Archive& other) {
        for (std::size_t k = 0; k < other.count(); ++k) offer(other.row(k), other.choices_[k]);
    }

    std::size_t count() const noexcept { return choices_.size(); }
    std::span<const double> row(std::size_t k) const { return std::span(values_).subspan(k * dim_, dim_); }
    const std::vector<std::size_t>& choices(std::size_t k) const { return choices_[k]; }

private:
    void remove(std::size_t k) {
        const std::size_t last = count() - 1;
        if (k != last) {
            std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(last * dim_), dim_,
                        values_.begin() + static_cast<std::ptrdiff_t>(k * dim_));
            choices_[k] = std::move(choices_[last]);
        }
        values_.resize(last * dim_);
        choices_.pop_back();
    }

    std::size_t dim_;
    std::vector<Direction> directions_;
    double epsilon_;
    std::vector<double> values_;
    std::vector<std::vector<std::size_t>> choices_;
};

struct Enumerator {
    std::size_t categories;
    std::size_t dim;
    std::vector<std::size_t> radix;
    // table[i][app * dim + j]: metric j of app `app` in category i
    std::vector<std::vector<double>> table;

    // Enumerates every combination whose first choice is in `firsts`.
    std::uint64_t run(std::span<const std::size_t> firsts, Archive& archive) const {
        std::uint64_t evaluated = 0;
        std::vector<std::size_t> choice(categories, 0);
        std::vector<double> values(dim);
        const auto n = static_cast<double>(categories);
        for (std::size_t first : firsts) {
            std::fill(choice.begin(), choice.end(), 0);
            choice[0] = first;
            while (true) {
                for (std::size_t j = 0; j < dim; ++j) {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < categories; ++i) sum += table[i][choice[i] * dim + j];
                    values[j] = sum / n;
                }
                archive.offer(values, choice);
                ++evaluated;
                // mixed-radix increment over categories 1..N-1, last fastest
                bool wrapped = true;
                for (std::size_t pos = categories; pos > 1 && wrapped;) {
                    --pos;
                    if (++choice[pos] < radix[pos]) {
                        wrapped = false;
                    } else {
                        choice[pos] = 0;
                    }
                }
                if (wrapped) break;
            }
        }
        return evaluated;
    }
};

}  // namespace

ParetoFront solve_exhaustive(const CategoryCatalog& catalog, const InstanceSpec& instance,
                             const ExhaustiveOptions& options) {
    if (catalog.empty()) throw Error(ErrorCode::EmptyInput, "catalog has no categories");
    ReducedCatalog reduced = reduce_search_space(catalog, instance, options.epsilon);

    ParetoFront front;
    front.instance = instance;
    front.solver = SolverKind::Exhaustive;
    front.catalog_fingerprint = catalog_fingerprint(catalog);
    front.stats.space_before = search_space_size(catalog);
    front.stats.space_after = search_space_size(reduced);
    if (front.stats.space_after > BigCount(options.enumeration_cap)) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    "reduced search space has " + front.stats.space_after.str() +
                        " combinations, above the enumeration cap of " + std::to_string(options.enumeration_cap) +
                        "; use the nsga2 solver instead");
    }

    const auto& metrics = instance.metrics();
    Enumerator en{reduced.size(), metrics.size(), reduced.category_sizes(), {}};
    for (const Category& c : reduced.catalog.categories()) {
        std::vector<double> t;
        t.reserve(c.apps.size() * metrics.size());
        for (const auto& app : c.apps) {
            for (Metric m : metrics) t.push_back(app.metric(m));
        }
        en.table.push_back(std::move(t));
    }

    std::size_t workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = std::min(workers, en.radix[0]);

    std::vector<std::vector<std::size_t>> shards(workers);
    for (std::size_t a = 0; a < en.radix[0]; ++a) shards[a % workers].push_back(a);

    std::vector<Archive> archives(workers, Archive(metrics.size(), instance.directions(), options.epsilon));
    std::vector<std::uint64_t> evaluated(workers, 0);
    if (workers == 1) {
        evaluated[0] = en.run(shards[0], archives[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { evaluated[w] = en.run(shards[w], archives[w]); });
        }
    }
    for (std::size_t w = 1; w < workers; ++w) archives[0].absorb(archives[w]);

    front.stats.evaluated = 0;
    for (auto e : evaluated) front.stats.evaluated += e;

    const Archive& merged = archives[0];
    front.entries.reserve(merged.count());
    for (std::size_t k = 0; k < merged.count(); ++k) {
        auto row = merged.row(k);
        front.entries.push_back(FrontEntry{reduced.to_original(SolutionVector{merged.choices(k)}),
                                           ObjectiveVector{instance.id(), metrics, {row.begin(), row.end()}}});
    }
    finalize_front(front, catalog);
    return front;
}

}  // namespace apoa
