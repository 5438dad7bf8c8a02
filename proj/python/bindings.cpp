#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apoa/csv.hpp"
#include "apoa/exhaustive.hpp"
#include "apoa/nsga2.hpp"
#include "apoa/serialize.hpp"

namespace py = pybind11;
using namespace apoa;

namespace {

InstanceSpec resolve_instance(std::optional<int> id, std::optional<std::string> metrics,
                              std::optional<std::string> context) {
    const int given = int(id.has_value()) + int(metrics.has_value()) + int(context.has_value());
    if (given != 1) throw Error(ErrorCode::InvalidParams, "give exactly one of instance, metrics or context");
    if (id) return instance_from_id(*id);
    if (metrics) return instance_from_metrics(parse_metric_list(*metrics));
    return context_preset(*context);
}

DisplayTransform view(bool raw_power, double capacity_ah, double voltage_v) {
    if (raw_power) return DisplayTransform::raw();
    BatteryParams b{capacity_ah, voltage_v};
    b.validate();
    return DisplayTransform::battery_life(b);
}

std::optional<SolutionVector> baseline_from(const std::optional<std::vector<std::string>>& apps,
                                            const CategoryCatalog& catalog) {
    if (!apps) return std::nullopt;
    return solution_from_app_ids(*apps, catalog);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "App portfolio optimization core";

    static py::exception<Error> error_type(m, "ApoaError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), e.what());
            PyErr_SetObject(error_type.ptr(), args.ptr());
        }
    });

    py::class_<CategoryCatalog>(m, "Catalog")
        .def_static("from_csv", [](const std::string& text) { return parse_catalog_csv(text); }, py::arg("text"))
        .def_static("load", [](const std::string& path) { return load_catalog(path); }, py::arg("path"))
        .def("to_csv", &serialize_catalog_csv)
        .def("fingerprint", &catalog_fingerprint)
        .def("categories",
             [](const CategoryCatalog& c) {
                 std::vector<std::pair<std::string, std::size_t>> out;
                 for (const auto& cat : c.categories()) out.emplace_back(cat.id, cat.apps.size());
                 return out;
             })
        .def("app_ids",
             [](const CategoryCatalog& c, const std::string& category) {
                 auto i = c.find_category(category);
                 if (!i) throw Error(ErrorCode::UnknownCategory, "unknown category '" + category + "'");
                 std::vector<std::string> ids;
                 for (const auto& a : c.category(*i).apps) ids.push_back(a.app_id);
                 return ids;
             })
        .def("search_space_size", [](const CategoryCatalog& c) { return search_space_size(c).str(); })
        .def("__len__", &CategoryCatalog::size);

    py::class_<ParetoFront>(m, "Front")
        .def_property_readonly("instance", [](const ParetoFront& f) { return f.instance.id(); })
        .def_property_readonly("solver", [](const ParetoFront& f) { return std::string(solver_name(f.solver)); })
        .def("__len__", &ParetoFront::size)
        .def("apps", [](const ParetoFront& f) { return f.app_ids; })
        .def("objectives",
             [](const ParetoFront& f) {
                 std::vector<std::vector<double>> out;
                 for (const auto& e : f.entries) out.push_back(e.objectives.values);
                 return out;
             })
        .def(
            "to_json",
            [](const ParetoFront& f, bool raw_power, double ah, double v) {
                return encode_front_json(make_front_table(f, view(raw_power, ah, v)));
            },
            py::arg("raw_power") = false, py::arg("capacity_ah") = BatteryParams{}.capacity_ah,
            py::arg("voltage_v") = BatteryParams{}.voltage_v)
        .def(
            "to_csv",
            [](const ParetoFront& f, bool raw_power, double ah, double v) {
                return encode_front_csv(make_front_table(f, view(raw_power, ah, v)));
            },
            py::arg("raw_power") = false, py::arg("capacity_ah") = BatteryParams{}.capacity_ah,
            py::arg("voltage_v") = BatteryParams{}.voltage_v);

    m.def(
        "instance_id",
        [](std::optional<int> id, std::optional<std::string> metrics, std::optional<std::string> context) {
            return resolve_instance(id, metrics, context).id();
        },
        py::arg("instance") = py::none(), py::arg("metrics") = py::none(), py::arg("context") = py::none());
    m.def("instance_metrics", [](int id) {
        const InstanceSpec instance = instance_from_id(id);
        std::vector<std::string> names;
        for (Metric x : instance.metrics()) names.emplace_back(metric_name(x));
        return names;
    });
    m.def("instances_json", [] { return instances_to_json().dump(); });
    m.def("contexts_json", [] { return contexts_to_json().dump(); });
    m.def(
        "battery_life_hours",
        [](double load_w, double ah, double v) { return battery_life_hours(load_w, BatteryParams{ah, v}); },
        py::arg("load_w"), py::arg("capacity_ah") = BatteryParams{}.capacity_ah,
        py::arg("voltage_v") = BatteryParams{}.voltage_v);

    m.def(
        "solve_exhaustive",
        [](const CategoryCatalog& c, int instance, std::size_t workers, std::uint64_t cap) {
            py::gil_scoped_release release;
            ExhaustiveOptions opts;
            opts.workers = workers;
            opts.enumeration_cap = cap;
            return solve_exhaustive(c, instance_from_id(instance), opts);
        },
        py::arg("catalog"), py::arg("instance"), py::arg("workers") = 1,
        py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def(
        "solve_nsga2",
        [](const CategoryCatalog& c, int instance, std::size_t population_size, std::size_t generations,
           double crossover_prob, std::optional<double> mutation_prob, std::uint64_t seed,
           std::optional<std::function<void(std::size_t, std::size_t, std::uint64_t)>> trace) {
            Nsga2Params p;
            p.population_size = population_size;
            p.generations = generations;
            p.crossover_prob = crossover_prob;
            p.mutation_prob = mutation_prob ? *mutation_prob : Nsga2Params::inverse_category_mutation(c.size());
            p.seed = seed;
            TraceSink sink;
            if (trace) {
                sink = [&](const GenerationTrace& t) { (*trace)(t.generation, t.rank0_size, t.population_hash); };
            }
            return nsga2_solve(c, instance_from_id(instance), p, sink);
        },
        py::arg("catalog"), py::arg("instance"), py::arg("population_size") = 200, py::arg("generations") = 300,
        py::arg("crossover_prob") = 0.9, py::arg("mutation_prob") = py::none(), py::arg("seed") = 0,
        py::arg("trace") = py::none());

    m.def(
        "filter_front",
        [](const ParetoFront& f, const std::vector<std::string>& constraints, bool raw_power, double ah, double v) {
            std::vector<Constraint> cs;
            for (const auto& s : constraints) cs.push_back(parse_constraint_spec(s));
            return filter_front(f, cs, view(raw_power, ah, v)).front;
        },
        py::arg("front"), py::arg("constraints"), py::arg("raw_power") = false,
        py::arg("capacity_ah") = BatteryParams{}.capacity_ah, py::arg("voltage_v") = BatteryParams{}.voltage_v);

    m.def(
        "compare_json",
        [](const ParetoFront& f, const CategoryCatalog& c, const std::optional<std::vector<std::string>>& solution) {
            return compare_report_to_json(compare_front(f, c, baseline_from(solution, c))).dump();
        },
        py::arg("front"), py::arg("catalog"), py::arg("solution") = py::none());

    m.def(
        "reference_json",
        [](const CategoryCatalog& c, double ah, double v) {
            return reference_values_to_json(reference_values(c, BatteryParams{ah, v})).dump();
        },
        py::arg("catalog"), py::arg("capacity_ah") = BatteryParams{}.capacity_ah,
        py::arg("voltage_v") = BatteryParams{}.voltage_v);

    m.def(
        "position_json",
        [](const CategoryCatalog& c, const std::string& row, double ah, double v) {
            return position_to_json(position_app(parse_app_row(row, 1), c, BatteryParams{ah, v})).dump();
        },
        py::arg("catalog"), py::arg("app_row"), py::arg("capacity_ah") = BatteryParams{}.capacity_ah,
        py::arg("voltage_v") = BatteryParams{}.voltage_v);
}
