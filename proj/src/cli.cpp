#include "apoa/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "apoa/csv.hpp"
#include "apoa/decision.hpp"
#include "apoa/exhaustive.hpp"
#include "apoa/nsga2.hpp"
#include "apoa/serialize.hpp"
#include "apoa/service.hpp"

namespace apoa {

namespace {

struct Selector {
    std::optional<int> instance;
    std::string metrics;
    std::string context;

    void add(CLI::App* cmd) {
        auto* i = cmd->add_option("--instance", instance, "Instance number 1..31");
        auto* m = cmd->add_option("--metrics", metrics, "Comma-separated metrics, e.g. power,network");
        auto* c = cmd->add_option("--context", context, "Context preset name");
        i->excludes(m)->excludes(c);
        m->excludes(c);
    }

    InstanceSpec resolve() const {
        if (instance) return instance_from_id(*instance);
        if (!metrics.empty()) return instance_from_metrics(parse_metric_list(metrics));
        if (!context.empty()) return context_preset(context);
        throw Error(ErrorCode::InvalidInstance, "one of --instance, --metrics or --context is required");
    }
};

struct BatteryOptions {
    double capacity_ah = BatteryParams{}.capacity_ah;
    double voltage_v = BatteryParams{}.voltage_v;
    bool raw = false;

    void add(CLI::App* cmd, bool allow_raw) {
        cmd->add_option("--battery-ah", capacity_ah, "Battery capacity in Ah")->capture_default_str();
        cmd->add_option("--battery-v", voltage_v, "Battery voltage in V")->capture_default_str();
        if (allow_raw) cmd->add_flag("--raw-power", raw, "Show power in W instead of battery life");
    }

    BatteryParams params() const {
        BatteryParams b{capacity_ah, voltage_v};
        b.validate();
        return b;
    }

    DisplayTransform transform() const {
        const BatteryParams b = params();
        return raw ? DisplayTransform::raw() : DisplayTransform::battery_life(b);
    }
};

std::uint64_t enumeration_cap_from_env() {
    const char* env = std::getenv("ASP_ENUM_CAP");
    if (!env || !*env) return kDefaultEnumerationCap;
    std::uint64_t cap = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec != std::errc{} || ptr != s.data() + s.size() || cap == 0) {
        throw Error(ErrorCode::InvalidParams, "ASP_ENUM_CAP must be a positive integer");
    }
    return cap;
}

double parse_mutation(const std::string& text, std::size_t categories) {
    if (text == "1/N" || text == "1/n") return Nsga2Params::inverse_category_mutation(categories);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidParams, "--pm must be a probability or 1/N");
    }
    return v;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SearchSpaceTooLarge: return kExitCapacity;
        case ErrorCode::InvalidInstance:
        case ErrorCode::UnknownContext:
        case ErrorCode::UnknownMetric:
        case ErrorCode::UnknownObjective:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidBattery: return kExitUsage;
        default: return kExitData;
    }
}

std::string format_location(const ErrorLocation& where) {
    std::string s;
    if (where.row) s += " row " + std::to_string(*where.row);
    if (where.column) s += " column " + std::to_string(*where.column);
    if (!where.field.empty()) s += " field '" + where.field + "'";
    return s;
}

Json trace_json(const GenerationTrace& t) {
    return {{"generation", t.generation},
            {"rank0_size", t.rank0_size},
            {"best", t.best},
            {"population_hash", t.population_hash}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"App selection optimizer: Pareto fronts over per-category app choices"};
    app.name("apoa");
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Compute the Pareto front and trade-off table");
    std::string catalog_path;
    Selector selector;
    std::string solver = "exhaustive";
    Nsga2Params nsga2;
    std::string pm;
    BatteryOptions battery;
    std::string out_path;
    std::string format = "csv";
    std::size_t workers = 1;
    std::string trace_path;
    std::vector<std::string> filters;
    solve->add_option("--catalog", catalog_path, "Catalog CSV")->required();
    selector.add(solve);
    solve->add_option("--solver", solver, "exhaustive or nsga2")
        ->check(CLI::IsMember({"exhaustive", "nsga2"}))
        ->capture_default_str();
    solve->add_option("--seed", nsga2.seed, "NSGA-II seed")->capture_default_str();
    solve->add_option("--pop", nsga2.population_size, "Population size")->capture_default_str();
    solve->add_option("--gens", nsga2.generations, "Generations")->capture_default_str();
    solve->add_option("--pc", nsga2.crossover_prob, "Crossover probability")->capture_default_str();
    solve->add_option("--pm", pm, "Per-gene mutation probability, or 1/N (default 0.125)");
    battery.add(solve, true);
    solve->add_option("--out", out_path, "Output file (default stdout)");
    solve->add_option("--format", format, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    solve->add_option("--workers", workers, "Exhaustive worker threads (0 = all cores)")->capture_default_str();
    solve->add_option("--trace", trace_path, "NSGA-II per-generation trace (JSON lines)");
    solve->add_option("--filter", filters, "Constraint such as network:tradeoff<=10 (repeatable)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Per-category survivors and search-space sizes");
    std::string reduce_format = "text";
    reduce->add_option("--catalog", catalog_path, "Catalog CSV")->required();
    Selector reduce_selector;
    reduce_selector.add(reduce);
    reduce->add_option("--format", reduce_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // contexts
    auto* contexts = app.add_subcommand("contexts", "List the context-of-use presets");
    std::string contexts_format = "text";
    contexts->add_option("--format", contexts_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // compare
    auto* compare = app.add_subcommand("compare", "Front picks against the max-rating user solution");
    Selector compare_selector;
    std::string solution;
    std::string compare_format = "text";
    compare->add_option("--catalog", catalog_path, "Catalog CSV")->required();
    compare_selector.add(compare);
    compare->add_option("--solution", solution, "Comma-separated baseline app ids, one per category");
    compare->add_option("--format", compare_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // reference
    auto* reference = app.add_subcommand("reference", "Reference values per category and new-app positioning");
    std::string new_app;
    std::string reference_format = "text";
    BatteryOptions reference_battery;
    reference->add_option("--catalog", catalog_path, "Catalog CSV")->required();
    reference->add_option("--new-app", new_app, "Catalog-schema CSV row for the app to position");
    reference_battery.add(reference, false);
    reference->add_option("--format", reference_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP advisor service");
    ServiceOptions service;
    std::string snapshot_dir;
    serve->add_option("--catalog", catalog_path, "Catalog CSV to preload");
    serve->add_option("--port", service.port, "TCP port")->capture_default_str();
    serve->add_option("--host", service.host, "Bind address")->capture_default_str();
    serve->add_option("--snapshot-dir", snapshot_dir, "Write catalogs and fronts here as well");
    serve->add_option("--workers", service.exhaustive_workers, "Exhaustive worker threads")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            const InstanceSpec instance = selector.resolve();
            const DisplayTransform transform = battery.transform();
            std::vector<Constraint> constraints;
            for (const auto& f : filters) {
                try {
                    constraints.push_back(parse_constraint_spec(f));
                } catch (const Error& e) {
                    // A malformed --filter is an argument problem, not a data problem.
                    if (e.code() != ErrorCode::ParseError) throw;
                    throw Error(ErrorCode::InvalidParams, std::string("--filter: ") + e.what());
                }
            }
            const CategoryCatalog catalog = load_catalog(catalog_path);

            ParetoFront front;
            if (solver == "exhaustive") {
                ExhaustiveOptions opts;
                opts.enumeration_cap = enumeration_cap_from_env();
                opts.workers = workers;
                front = solve_exhaustive(catalog, instance, opts);
            } else {
                if (!pm.empty()) nsga2.mutation_prob = parse_mutation(pm, catalog.size());
                std::ofstream trace_file;
                TraceSink sink;
                if (!trace_path.empty()) {
                    trace_file.open(trace_path, std::ios::binary);
                    if (!trace_file) throw Error(ErrorCode::IoError, "cannot write " + trace_path);
                    sink = [&](const GenerationTrace& t) { trace_file << trace_json(t).dump() << '\n'; };
                }
                front = nsga2_solve(catalog, instance, nsga2, sink);
            }

            FrontTable table;
            if (constraints.empty()) {
                table = make_front_table(front, transform);
            } else {
                auto filtered = filter_front(front, constraints, transform);
                table = make_front_table(filtered.front, transform);
                table.empty_selection = filtered.empty_selection;
            }
            std::string text;
            if (format == "json") text = encode_front_json(table);
            else if (format == "csv") text = encode_front_csv(table);
            else text = format_front_text(table);
            emit(text, out_path, out);
            return kExitOk;
        }

        if (reduce->parsed()) {
            const InstanceSpec instance = reduce_selector.resolve();
            const auto report = make_reduce_report(load_catalog(catalog_path), instance);
            out << (reduce_format == "json" ? reduce_report_to_json(report).dump(2) + "\n" : format_reduce_text(report));
            return kExitOk;
        }

        if (contexts->parsed()) {
            if (contexts_format == "json") {
                out << contexts_to_json().dump(2) << '\n';
            } else {
                for (const auto& p : context_presets()) {
                    out << p.name << "  instance " << p.instance_id << "  ("
                        << format_metric_list(instance_from_id(p.instance_id).metric_set()) << ")  " << p.title << '\n';
                }
            }
            return kExitOk;
        }

        if (compare->parsed()) {
            const InstanceSpec instance = compare_selector.resolve();
            const CategoryCatalog catalog = load_catalog(catalog_path);
            ExhaustiveOptions opts;
            opts.enumeration_cap = enumeration_cap_from_env();
            const ParetoFront front = solve_exhaustive(catalog, instance, opts);
            std::optional<SolutionVector> baseline;
            if (!solution.empty()) {
                std::vector<std::string> ids;
                std::stringstream ss(solution);
                for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
                baseline = solution_from_app_ids(ids, catalog);
            }
            const auto report = compare_front(front, catalog, baseline);
            out << (compare_format == "json" ? compare_report_to_json(report).dump(2) + "\n" : format_compare_text(report));
            return kExitOk;
        }

        if (reference->parsed()) {
            const BatteryParams b = reference_battery.params();
            const CategoryCatalog catalog = load_catalog(catalog_path);
            const auto values = reference_values(catalog, b);
            std::optional<PositionReport> position;
            if (!new_app.empty()) position = position_app(parse_app_row(new_app, 1), catalog, b);
            if (reference_format == "json") {
                Json j = {{"reference", reference_values_to_json(values)}};
                if (position) j["position"] = position_to_json(*position);
                out << j.dump(2) << '\n';
            } else {
                out << format_reference_text(values);
                if (position) out << '\n' << format_position_text(*position);
            }
            return kExitOk;
        }

        if (serve->parsed()) {
            service.enumeration_cap = enumeration_cap_from_env();
            if (!snapshot_dir.empty()) service.snapshot_dir = snapshot_dir;
            AdvisorService advisor(service);
            if (!catalog_path.empty()) {
                out << "catalog_id " << advisor.add_catalog(load_catalog(catalog_path)) << '\n';
            }
            out << "listening on http://" << service.host << ':' << service.port << std::endl;
            if (!advisor.listen()) {
                err << "apoa: cannot bind " << service.host << ':' << service.port << '\n';
                return kExitData;
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "apoa: " << error_code_name(e.code()) << ": " << e.what() << format_location(e.location()) << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "apoa: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace apoa
