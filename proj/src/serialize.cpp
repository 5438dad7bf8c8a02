#include "apoa/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "apoa/csv.hpp"

namespace apoa {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

Json metric_names(const std::vector<Metric>& metrics) {
    Json out = Json::array();
    for (Metric m : metrics) out.push_back(std::string(metric_name(m)));
    return out;
}

std::vector<Metric> metrics_from(const Json& j) {
    std::vector<Metric> out;
    for (const auto& name : j) {
        auto m = parse_metric(name.get<std::string>());
        if (!m) throw Error(ErrorCode::UnknownMetric, "unknown metric " + name.dump());
        out.push_back(*m);
    }
    return out;
}

Json double_array(const std::vector<double>& values) {
    Json out = Json::array();
    for (double v : values) out.push_back(number_or_null(v));
    return out;
}

std::vector<double> doubles_from(const Json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number_from(v));
    return out;
}

std::string fixed2(double v) {
    if (!std::isfinite(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

std::string display_label(Metric m, const std::optional<BatteryParams>& battery) {
    if (m == Metric::Power && battery) return "battery_h";
    return std::string(metric_name(m));
}

[[noreturn]] void bad_csv(const std::string& what) { throw Error(ErrorCode::ParseError, "front csv: " + what); }

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) bad_csv("'" + std::string(s) + "' is not a number");
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Front tables
// ---------------------------------------------------------------------------

FrontTable make_front_table(const ParetoFront& front, const DisplayTransform& transform) {
    FrontTable t;
    t.instance = front.instance.id();
    t.metrics = front.instance.metrics();
    t.solver = std::string(solver_name(front.solver));
    t.nsga2 = front.nsga2;
    t.catalog_fingerprint = front.catalog_fingerprint;
    // Battery parameters only describe the view when power is shown.
    if (front.instance.objective_index(Metric::Power)) t.battery = transform.battery;
    t.categories = front.category_ids;
    t.space_before = front.stats.space_before.str();
    t.space_after = front.stats.space_after.str();
    t.evaluated = front.stats.evaluated.str();
    if (front.empty()) return t;
    for (const auto& row : tradeoff_table(front, transform)) {
        FrontTable::Row r;
        r.solution = row.solution_index;
        if (row.entry_index < front.app_ids.size()) r.apps = front.app_ids[row.entry_index];
        r.objectives = front.entries[row.entry_index].objectives.values;
        r.display = row.display_values;
        r.tradeoff_pct = row.tradeoff_pct;
        t.rows.push_back(std::move(r));
    }
    return t;
}

Json front_table_to_json(const FrontTable& t) {
    Json j;
    j["instance"] = t.instance;
    j["metrics"] = metric_names(t.metrics);
    j["solver"] = t.solver;
    if (t.nsga2) {
        j["seed"] = t.nsga2->seed;
        j["nsga2"] = {{"population_size", t.nsga2->population_size},
                      {"generations", t.nsga2->generations},
                      {"crossover_prob", t.nsga2->crossover_prob},
                      {"mutation_prob", t.nsga2->mutation_prob}};
    }
    j["catalog_fingerprint"] = t.catalog_fingerprint;
    if (t.battery) {
        j["battery"] = {{"capacity_ah", t.battery->capacity_ah}, {"voltage_v", t.battery->voltage_v}};
    } else {
        j["battery"] = nullptr;
    }
    j["categories"] = t.categories;
    Json front = Json::array();
    Json bars = Json::array();
    for (const auto& r : t.rows) {
        front.push_back({{"solution", r.solution},
                         {"apps", r.apps},
                         {"objectives", double_array(r.objectives)},
                         {"display", double_array(r.display)},
                         {"tradeoff_pct", double_array(r.tradeoff_pct)}});
        Json segments = Json::array();
        for (std::size_t k = 0; k < t.metrics.size() && k < r.tradeoff_pct.size(); ++k) {
            segments.push_back({{"metric", metric_name(t.metrics[k])}, {"tradeoff_pct", number_or_null(r.tradeoff_pct[k])}});
        }
        bars.push_back({{"solution", r.solution}, {"segments", std::move(segments)}});
    }
    j["front"] = std::move(front);
    j["stacked_bars"] = std::move(bars);
    j["stats"] = {{"space_before", t.space_before}, {"space_after", t.space_after}, {"evaluated", t.evaluated}};
    if (t.empty_selection) j["empty_selection"] = *t.empty_selection;
    return j;
}

FrontTable front_table_from_json(const Json& j) {
    try {
        FrontTable t;
        t.instance = j.at("instance").get<int>();
        t.metrics = metrics_from(j.at("metrics"));
        t.solver = j.at("solver").get<std::string>();
        if (j.contains("nsga2")) {
            Nsga2Params p;
            const auto& n = j.at("nsga2");
            p.population_size = n.at("population_size").get<std::size_t>();
            p.generations = n.at("generations").get<std::size_t>();
            p.crossover_prob = n.at("crossover_prob").get<double>();
            p.mutation_prob = n.at("mutation_prob").get<double>();
            p.seed = j.at("seed").get<std::uint64_t>();
            t.nsga2 = p;
        }
        t.catalog_fingerprint = j.at("catalog_fingerprint").get<std::string>();
        if (j.contains("battery") && !j.at("battery").is_null()) {
            t.battery = BatteryParams{j["battery"].at("capacity_ah").get<double>(),
                                      j["battery"].at("voltage_v").get<double>()};
        }
        t.categories = j.at("categories").get<std::vector<std::string>>();
        for (const auto& r : j.at("front")) {
            FrontTable::Row row;
            row.solution = r.at("solution").get<std::size_t>();
            row.apps = r.at("apps").get<std::vector<std::string>>();
            row.objectives = doubles_from(r.at("objectives"));
            row.display = doubles_from(r.at("display"));
            row.tradeoff_pct = doubles_from(r.at("tradeoff_pct"));
            t.rows.push_back(std::move(row));
        }
        t.space_before = j.at("stats").at("space_before").get<std::string>();
        t.space_after = j.at("stats").at("space_after").get<std::string>();
        t.evaluated = j.at("stats").at("evaluated").get<std::string>();
        if (j.contains("empty_selection")) t.empty_selection = j["empty_selection"].get<bool>();
        return t;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("front json: ") + e.what());
    }
}

std::string encode_front_json(const FrontTable& table) { return front_table_to_json(table).dump(2) + "\n"; }

FrontTable decode_front_json(std::string_view text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "front json: malformed document");
    return front_table_from_json(j);
}

std::string encode_front_csv(const FrontTable& t) {
    std::ostringstream out;
    out << "# instance=" << t.instance << '\n';
    out << "# metrics=";
    for (std::size_t k = 0; k < t.metrics.size(); ++k) out << (k ? "," : "") << metric_name(t.metrics[k]);
    out << '\n';
    out << "# solver=" << t.solver << '\n';
    if (t.nsga2) {
        out << "# seed=" << t.nsga2->seed << '\n';
        out << "# population_size=" << t.nsga2->population_size << '\n';
        out << "# generations=" << t.nsga2->generations << '\n';
        out << "# crossover_prob=" << format_double(t.nsga2->crossover_prob) << '\n';
        out << "# mutation_prob=" << format_double(t.nsga2->mutation_prob) << '\n';
    }
    out << "# catalog_fingerprint=" << t.catalog_fingerprint << '\n';
    if (t.battery) {
        out << "# battery_ah=" << format_double(t.battery->capacity_ah) << '\n';
        out << "# battery_v=" << format_double(t.battery->voltage_v) << '\n';
    }
    out << "# space_before=" << t.space_before << '\n';
    out << "# space_after=" << t.space_after << '\n';
    out << "# evaluated=" << t.evaluated << '\n';
    if (t.empty_selection) out << "# empty_selection=" << (*t.empty_selection ? "true" : "false") << '\n';

    out << "solution";
    for (const auto& c : t.categories) out << ',' << quote_csv_field("app:" + c);
    for (Metric m : t.metrics) out << ',' << metric_name(m);
    for (Metric m : t.metrics) out << ",display_" << metric_name(m);
    for (Metric m : t.metrics) out << ",tradeoff_" << metric_name(m);
    out << '\n';
    for (const auto& r : t.rows) {
        out << r.solution;
        for (const auto& a : r.apps) out << ',' << quote_csv_field(a);
        for (double v : r.objectives) out << ',' << format_double(v);
        for (double v : r.display) out << ',' << format_double(v);
        for (double v : r.tradeoff_pct) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

FrontTable decode_front_csv(std::string_view text) try {
    FrontTable t;
    std::optional<BatteryParams> battery;
    Nsga2Params nsga2;
    bool has_nsga2 = false;
    bool header_seen = false;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.starts_with("# ")) {
            line.remove_prefix(2);
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) bad_csv("metadata line without '='");
            const std::string key(line.substr(0, eq));
            const std::string value(line.substr(eq + 1));
            if (key == "instance") t.instance = std::stoi(value);
            else if (key == "metrics") t.metrics = parse_metric_list(value).ordered();
            else if (key == "solver") t.solver = value;
            else if (key == "seed") { nsga2.seed = std::stoull(value); has_nsga2 = true; }
            else if (key == "population_size") nsga2.population_size = std::stoull(value);
            else if (key == "generations") nsga2.generations = std::stoull(value);
            else if (key == "crossover_prob") nsga2.crossover_prob = parse_double(value);
            else if (key == "mutation_prob") nsga2.mutation_prob = parse_double(value);
            else if (key == "catalog_fingerprint") t.catalog_fingerprint = value;
            else if (key == "battery_ah") { battery = battery.value_or(BatteryParams{}); battery->capacity_ah = parse_double(value); }
            else if (key == "battery_v") { battery = battery.value_or(BatteryParams{}); battery->voltage_v = parse_double(value); }
            else if (key == "space_before") t.space_before = value;
            else if (key == "space_after") t.space_after = value;
            else if (key == "evaluated") t.evaluated = value;
            else if (key == "empty_selection") t.empty_selection = value == "true";
            continue;
        }
        auto fields = split_csv_line(line);
        const std::size_t m = t.metrics.size();
        if (!header_seen) {
            header_seen = true;
            if (m == 0) bad_csv("metrics metadata must precede the header");
            if (fields.empty() || fields[0] != "solution" || fields.size() < 1 + 3 * m) bad_csv("bad header");
            const std::size_t n_categories = fields.size() - 1 - 3 * m;
            for (std::size_t k = 0; k < m; ++k) {
                const std::string name(metric_name(t.metrics[k]));
                const std::size_t at = 1 + n_categories + k;
                if (fields[at] != name || fields[at + m] != "display_" + name || fields[at + 2 * m] != "tradeoff_" + name) {
                    bad_csv("header columns do not match the metrics");
                }
            }
            for (std::size_t c = 0; c < n_categories; ++c) {
                const auto& f = fields[1 + c];
                if (!f.starts_with("app:")) bad_csv("bad category column '" + f + "'");
                t.categories.push_back(f.substr(4));
            }
            continue;
        }
        const std::size_t n = t.categories.size();
        if (fields.size() != 1 + n + 3 * m) bad_csv("row has " + std::to_string(fields.size()) + " fields");
        FrontTable::Row r;
        r.solution = std::stoull(fields[0]);
        for (std::size_t c = 0; c < n; ++c) r.apps.push_back(fields[1 + c]);
        for (std::size_t k = 0; k < m; ++k) r.objectives.push_back(parse_double(fields[1 + n + k]));
        for (std::size_t k = 0; k < m; ++k) r.display.push_back(parse_double(fields[1 + n + m + k]));
        for (std::size_t k = 0; k < m; ++k) r.tradeoff_pct.push_back(parse_double(fields[1 + n + 2 * m + k]));
        t.rows.push_back(std::move(r));
    }
    if (!header_seen) bad_csv("missing header");
    if (t.instance == 0) bad_csv("missing instance metadata");
    t.battery = battery;
    if (has_nsga2) t.nsga2 = nsga2;
    return t;
} catch (const std::logic_error& e) {
    // std::stoi and friends report bad integers this way.
    throw Error(ErrorCode::ParseError, std::string("front csv: bad number (") + e.what() + ")");
}

std::string format_front_text(const FrontTable& t) {
    std::ostringstream out;
    out << "Instance " << t.instance << " (";
    for (std::size_t k = 0; k < t.metrics.size(); ++k) out << (k ? ", " : "") << metric_name(t.metrics[k]);
    out << "), solver " << t.solver;
    if (t.nsga2) out << " seed " << t.nsga2->seed;
    out << "\nSearch space " << t.space_before << " -> " << t.space_after << " after reduction; "
        << t.rows.size() << " Pareto optimal solutions\n\n";
    out << pad("solution", 8);
    for (Metric m : t.metrics) out << pad(display_label(m, t.battery), 12);
    for (Metric m : t.metrics) out << pad("to_" + std::string(metric_name(m)) + "%", 14);
    out << "  apps\n";
    for (const auto& r : t.rows) {
        out << pad(std::to_string(r.solution), 8);
        for (double v : r.display) out << pad(fixed2(v), 12);
        for (double v : r.tradeoff_pct) out << pad(fixed2(v), 14);
        out << "  ";
        for (std::size_t a = 0; a < r.apps.size(); ++a) out << (a ? " " : "") << r.apps[a];
        out << '\n';
    }
    if (t.empty_selection && *t.empty_selection) out << "(no solutions satisfy the constraints)\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

ReduceReport make_reduce_report(const CategoryCatalog& catalog, const InstanceSpec& instance) {
    const ReducedCatalog reduced = reduce_search_space(catalog, instance);
    ReduceReport r{instance, {}, catalog.category_sizes(), reduced.category_sizes(), search_space_size(catalog),
                   search_space_size(reduced)};
    for (const auto& c : catalog.categories()) r.categories.push_back(c.id);
    return r;
}

Json instance_to_json(const InstanceSpec& instance) {
    return {{"id", instance.id()},
            {"metrics", metric_names(instance.metrics())},
            {"objectives", instance.objective_count()}};
}

Json instances_to_json() {
    Json out = Json::array();
    for (const auto& inst : all_instances()) out.push_back(instance_to_json(inst));
    return out;
}

Json contexts_to_json() {
    Json out = Json::array();
    for (const auto& p : context_presets()) {
        out.push_back({{"name", p.name},
                       {"title", p.title},
                       {"instance", p.instance_id},
                       {"metrics", metric_names(instance_from_id(p.instance_id).metrics())}});
    }
    return out;
}

Json reduce_report_to_json(const ReduceReport& r) {
    Json cats = Json::array();
    for (std::size_t i = 0; i < r.categories.size(); ++i) {
        cats.push_back({{"id", r.categories[i]}, {"apps", r.before[i]}, {"survivors", r.after[i]}});
    }
    return {{"instance", r.instance.id()},
            {"metrics", metric_names(r.instance.metrics())},
            {"categories", std::move(cats)},
            {"space_before", r.space_before.str()},
            {"space_after", r.space_after.str()}};
}

Json improvement_to_json(const ImprovementReport& r) {
    Json pct = Json::array();
    for (const auto& p : r.improvement_pct) pct.push_back(p ? Json(*p) : Json(nullptr));
    return {{"instance", r.baseline.instance_id},
            {"metrics", metric_names(r.baseline.metrics)},
            {"baseline", double_array(r.baseline.values)},
            {"candidate", double_array(r.candidate.values)},
            {"improvement_pct", std::move(pct)}};
}

Json compare_report_to_json(const CompareReport& r) {
    Json picks = Json::array();
    for (const auto& p : r.picks) {
        Json pct = Json::array();
        for (const auto& v : p.report.improvement_pct) pct.push_back(v ? Json(*v) : Json(nullptr));
        picks.push_back({{"objective", metric_name(p.objective)},
                         {"apps", p.apps},
                         {"objectives", double_array(p.report.candidate.values)},
                         {"improvement_pct", std::move(pct)}});
    }
    return {{"instance", r.baseline.instance_id},
            {"metrics", metric_names(r.baseline.metrics)},
            {"baseline", {{"apps", r.baseline_apps}, {"objectives", double_array(r.baseline.values)}}},
            {"picks", std::move(picks)}};
}

Json reference_values_to_json(const ReferenceValues& v) {
    auto stat = [](const ReferenceStat& s) {
        return Json{{"optimal", number_or_null(s.optimal)}, {"median", number_or_null(s.median)},
                    {"worst", number_or_null(s.worst)}};
    };
    Json cats = Json::array();
    for (const auto& c : v.categories) {
        Json metrics = Json::object();
        for (const auto& [m, s] : c.metrics) metrics[std::string(metric_name(m))] = stat(s);
        cats.push_back({{"id", c.category_id},
                        {"apps", c.app_count},
                        {"metrics", std::move(metrics)},
                        {"battery_life_hours", stat(c.battery_life_hours)}});
    }
    return {{"battery", {{"capacity_ah", v.battery.capacity_ah}, {"voltage_v", v.battery.voltage_v}}},
            {"categories", std::move(cats)}};
}

Json app_record_to_json(const AppRecord& r) {
    return {{"app_id", r.app_id}, {"category", r.category_id}, {"rating", r.rating}, {"power_w", r.power_w},
            {"cpu_pct", r.cpu_pct}, {"mem_mb", r.mem_mb},     {"net_mb", r.net_mb}};
}

AppRecord app_record_from_json(const Json& j) {
    if (j.is_string()) return parse_app_row(j.get<std::string>(), 1);
    try {
        AppRecord r;
        r.app_id = j.at("app_id").get<std::string>();
        r.category_id = j.at("category").get<std::string>();
        r.rating = j.at("rating").get<double>();
        r.power_w = j.at("power_w").get<double>();
        r.cpu_pct = j.at("cpu_pct").get<double>();
        r.mem_mb = j.at("mem_mb").get<double>();
        r.net_mb = j.at("net_mb").get<double>();
        return r;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("app record: ") + e.what());
    }
}

Json position_to_json(const PositionReport& r) {
    Json metrics = Json::array();
    for (const auto& p : r.metrics) {
        metrics.push_back({{"metric", metric_name(p.metric)},
                           {"value", p.value},
                           {"rank", p.rank},
                           {"total", p.total},
                           {"histogram",
                            {{"lo", p.histogram.lo},
                             {"hi", p.histogram.hi},
                             {"counts", p.histogram.counts},
                             {"new_app_bin", p.histogram.new_app_bin}}}});
    }
    return {{"category", r.category_id},
            {"app", app_record_to_json(r.app)},
            {"battery_life_hours", number_or_null(r.battery_life_hours)},
            {"metrics", std::move(metrics)}};
}

std::vector<Constraint> constraints_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "constraints must be an array");
    std::vector<Constraint> out;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("metric") || !item.contains("bound") || !item.contains("op") ||
            !item["metric"].is_string() || !item["op"].is_string() || !item["bound"].is_number()) {
            throw Error(ErrorCode::ParseError, "constraint needs string metric, string op and numeric bound");
        }
        Constraint c;
        auto m = parse_metric(item["metric"].get<std::string>());
        if (!m) throw Error(ErrorCode::UnknownMetric, "unknown metric " + item["metric"].dump());
        c.metric = *m;
        auto op = parse_comparison(item["op"].get<std::string>());
        if (!op) throw Error(ErrorCode::ParseError, "constraint op must be <= or >=");
        c.comparison = *op;
        c.bound = item["bound"].get<double>();
        if (item.contains("target")) {
            if (!item["target"].is_string()) throw Error(ErrorCode::ParseError, "constraint target must be a string");
            auto target = parse_constraint_target(item["target"].get<std::string>());
            if (!target) throw Error(ErrorCode::ParseError, "constraint target must be value, display or tradeoff");
            c.target = *target;
        }
        out.push_back(c);
    }
    return out;
}

Constraint parse_constraint_spec(std::string_view text) {
    // metric[:target](<=|>=)bound
    std::size_t op_pos = text.find("<=");
    Comparison cmp = Comparison::LessEqual;
    if (op_pos == std::string_view::npos) {
        op_pos = text.find(">=");
        cmp = Comparison::GreaterEqual;
    }
    if (op_pos == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "constraint '" + std::string(text) + "' needs <= or >=");
    }
    std::string_view lhs = text.substr(0, op_pos);
    std::string_view rhs = text.substr(op_pos + 2);
    Constraint c;
    c.comparison = cmp;
    if (auto colon = lhs.find(':'); colon != std::string_view::npos) {
        auto target = parse_constraint_target(lhs.substr(colon + 1));
        if (!target) throw Error(ErrorCode::ParseError, "unknown constraint target in '" + std::string(text) + "'");
        c.target = *target;
        lhs = lhs.substr(0, colon);
    }
    auto m = parse_metric(lhs);
    if (!m) throw Error(ErrorCode::UnknownMetric, "unknown metric in '" + std::string(text) + "'");
    c.metric = *m;
    auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), c.bound);
    if (rhs.empty() || ec != std::errc{} || ptr != rhs.data() + rhs.size()) {
        throw Error(ErrorCode::ParseError, "bad bound in '" + std::string(text) + "'");
    }
    return c;
}

std::string format_reduce_text(const ReduceReport& r) {
    std::ostringstream out;
    out << "Instance " << r.instance.id() << " (";
    for (std::size_t k = 0; k < r.instance.metrics().size(); ++k) {
        out << (k ? ", " : "") << metric_name(r.instance.metrics()[k]);
    }
    out << ")\n";
    for (std::size_t i = 0; i < r.categories.size(); ++i) {
        out << "  " << r.categories[i] << ": " << r.after[i] << " of " << r.before[i] << " apps kept\n";
    }
    out << "Search space: " << r.space_before.str() << " -> " << r.space_after.str() << '\n';
    return out.str();
}

std::string format_compare_text(const CompareReport& r) {
    std::ostringstream out;
    const auto& metrics = r.baseline.metrics;
    out << pad("solution", 14);
    for (Metric m : metrics) out << pad(std::string(metric_name(m)), 10);
    out << "  apps\n";
    out << pad("baseline", 14);
    for (double v : r.baseline.values) out << pad(fixed2(v), 10);
    out << "  ";
    for (std::size_t a = 0; a < r.baseline_apps.size(); ++a) out << (a ? " " : "") << r.baseline_apps[a];
    out << '\n';
    for (const auto& p : r.picks) {
        out << pad("best " + std::string(metric_name(p.objective)), 14);
        for (double v : p.report.candidate.values) out << pad(fixed2(v), 10);
        out << "  ";
        for (std::size_t a = 0; a < p.apps.size(); ++a) out << (a ? " " : "") << p.apps[a];
        out << '\n';
        out << pad("improve %", 14);
        for (const auto& pct : p.report.improvement_pct) out << pad(pct ? fixed2(*pct) : "n/a", 10);
        out << '\n';
    }
    return out.str();
}

std::string format_reference_text(const ReferenceValues& v) {
    std::ostringstream out;
    out << pad("category", 16) << pad("battery_h opt/med/worst", 26);
    for (Metric m : {Metric::Cpu, Metric::Memory, Metric::Network, Metric::Rating}) {
        out << pad(std::string(metric_name(m)) + " opt/med/worst", 26);
    }
    out << '\n';
    auto triple = [](const ReferenceStat& s) { return fixed2(s.optimal) + "/" + fixed2(s.median) + "/" + fixed2(s.worst); };
    for (const auto& c : v.categories) {
        out << pad(c.category_id, 16) << pad(triple(c.battery_life_hours), 26);
        for (const auto& [m, s] : c.metrics) {
            if (m != Metric::Power) out << pad(triple(s), 26);
        }
        out << '\n';
    }
    return out.str();
}

std::string format_position_text(const PositionReport& r) {
    std::ostringstream out;
    out << "App '" << r.app.app_id << "' in category '" << r.category_id << "' (battery life "
        << fixed2(r.battery_life_hours) << " h)\n";
    for (const auto& p : r.metrics) {
        out << "  " << pad(std::string(metric_name(p.metric)), 8) << pad(fixed2(p.value), 10) << "  rank " << p.rank
            << " of " << p.total << "  bins [";
        for (std::size_t b = 0; b < p.histogram.counts.size(); ++b) {
            out << (b ? " " : "") << p.histogram.counts[b];
            if (b == p.histogram.new_app_bin) out << '*';
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace apoa
