#include "apoa/service.hpp"

#include <charconv>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>

#include "apoa/csv.hpp"
#include "apoa/decision.hpp"
#include "apoa/nsga2.hpp"
#include "apoa/serialize.hpp"

namespace apoa {

namespace {

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

HttpResponse json_response(int status, const Json& body) { return {status, body.dump() + "\n", "application/json"}; }

HttpResponse error_response(int status, std::string_view code, std::string_view message,
                            const ErrorLocation* where = nullptr) {
    Json err = {{"code", code}, {"message", message}};
    if (where) {
        if (where->row) err["row"] = *where->row;
        if (where->column) err["column"] = *where->column;
        if (where->record_index) err["record_index"] = *where->record_index;
        if (!where->field.empty()) err["field"] = where->field;
    }
    return json_response(status, Json{{"error", std::move(err)}});
}

HttpResponse error_response(int status, const Error& e) {
    return error_response(status, error_code_name(e.code()), e.what(), &e.location());
}

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SearchSpaceTooLarge: return 409;
        case ErrorCode::UnknownCategory:
        case ErrorCode::UnknownApp: return 404;
        default: return 400;
    }
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        while (i < path.size() && path[i] == '/') ++i;
        std::size_t j = i;
        while (j < path.size() && path[j] != '/') ++j;
        if (j > i) parts.emplace_back(path.substr(i, j - i));
        i = j;
    }
    return parts;
}

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
    }
    return v;
}

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "request body is not valid JSON");
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "request body must be a JSON object");
    return j;
}

// instance / metrics / context, exactly one.
InstanceSpec instance_from_request(const Json& j) {
    const int selectors = int(j.contains("instance")) + int(j.contains("metrics")) + int(j.contains("context"));
    if (selectors != 1) {
        throw Error(ErrorCode::InvalidInstance, "give exactly one of instance, metrics or context");
    }
    if (j.contains("instance")) {
        if (!j["instance"].is_number_integer()) throw Error(ErrorCode::InvalidInstance, "instance must be an integer");
        return instance_from_id(j["instance"].get<int>());
    }
    if (j.contains("context")) {
        if (!j["context"].is_string()) throw Error(ErrorCode::UnknownContext, "context must be a string");
        return context_preset(j["context"].get<std::string>());
    }
    const Json& m = j["metrics"];
    if (m.is_string()) return instance_from_metrics(parse_metric_list(m.get<std::string>()));
    if (!m.is_array()) throw Error(ErrorCode::UnknownMetric, "metrics must be a list");
    MetricSet set;
    for (const auto& name : m) {
        auto metric = name.is_string() ? parse_metric(name.get<std::string>()) : std::nullopt;
        if (!metric) throw Error(ErrorCode::UnknownMetric, "unknown metric " + name.dump());
        set.insert(*metric);
    }
    return instance_from_metrics(set);
}

Nsga2Params nsga2_from_request(const Json& params) {
    Nsga2Params p;
    if (params.is_null()) return p;
    if (!params.is_object()) throw Error(ErrorCode::InvalidParams, "params must be an object");
    try {
        p.population_size = params.value("population_size", p.population_size);
        p.generations = params.value("generations", p.generations);
        p.crossover_prob = params.value("crossover_prob", p.crossover_prob);
        p.mutation_prob = params.value("mutation_prob", p.mutation_prob);
        p.seed = params.value("seed", p.seed);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("params: ") + e.what());
    }
    p.validate();
    return p;
}

BatteryParams battery_from_json(const Json& j) {
    BatteryParams b;
    if (!j.is_object()) throw Error(ErrorCode::InvalidBattery, "battery must be an object");
    try {
        b.capacity_ah = j.value("capacity_ah", b.capacity_ah);
        b.voltage_v = j.value("voltage_v", b.voltage_v);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidBattery, std::string("battery: ") + e.what());
    }
    b.validate();
    return b;
}

// Battery view is on unless display=raw; battery_ah / battery_v override defaults.
DisplayTransform transform_from_query(const std::map<std::string, std::string>& query) {
    if (auto it = query.find("display"); it != query.end() && it->second == "raw") return DisplayTransform::raw();
    BatteryParams b;
    if (auto it = query.find("battery_ah"); it != query.end()) b.capacity_ah = parse_number(it->second, "battery_ah");
    if (auto it = query.find("battery_v"); it != query.end()) b.voltage_v = parse_number(it->second, "battery_v");
    b.validate();
    return DisplayTransform::battery_life(b);
}

Json categories_summary(const CategoryCatalog& catalog) {
    Json cats = Json::array();
    for (const auto& c : catalog.categories()) cats.push_back({{"id", c.id}, {"count", c.apps.size()}});
    return cats;
}

std::string random_token() {
    std::random_device rd;
    const std::uint64_t v = (std::uint64_t(rd()) << 32) ^ rd();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%08llx", static_cast<unsigned long long>(v & 0xffffffffULL));
    return buf;
}

}  // namespace

struct AdvisorService::State {
    enum class Status { Pending, Running, Done, Failed };

    struct Job {
        std::string id;
        std::string catalog_id;
        std::shared_ptr<const CategoryCatalog> catalog;
        InstanceSpec instance = instance_from_id(1);
        SolverKind solver = SolverKind::Exhaustive;
        Nsga2Params nsga2;
        Status status = Status::Pending;
        std::string front_id;
        Json error;
        std::int64_t created_ms = 0;
        std::int64_t started_ms = 0;
        std::int64_t finished_ms = 0;
    };

    struct StoredFront {
        std::string catalog_id;
        std::shared_ptr<const ParetoFront> front;
    };

    ServiceOptions options;
    std::string token = random_token();

    std::mutex mutex;
    std::condition_variable work_ready;
    std::condition_variable idle;
    std::deque<std::string> queue;
    bool stopping = false;
    std::size_t in_flight = 0;
    std::uint64_t next_id = 1;

    std::map<std::string, std::shared_ptr<const CategoryCatalog>> catalogs;
    std::map<std::string, Job> jobs;
    std::map<std::string, StoredFront> fronts;

    httplib::Server server;
    std::thread server_thread;
    std::thread worker;

    std::string make_id(char prefix) { return std::string(1, prefix) + "-" + token + "-" + std::to_string(next_id++); }

    static std::string_view status_name(Status s) {
        switch (s) {
            case Status::Pending: return "pending";
            case Status::Running: return "running";
            case Status::Done: return "done";
            case Status::Failed: return "failed";
        }
        return "?";
    }

    Json job_json(const Job& job) const {
        Json j = {{"job_id", job.id},
                  {"catalog_id", job.catalog_id},
                  {"instance", job.instance.id()},
                  {"solver", solver_name(job.solver)},
                  {"status", status_name(job.status)},
                  {"created_ms", job.created_ms}};
        if (job.solver == SolverKind::Evolutionary) j["seed"] = job.nsga2.seed;
        if (job.started_ms) j["started_ms"] = job.started_ms;
        if (job.finished_ms) j["finished_ms"] = job.finished_ms;
        if (job.status == Status::Done) j["front_id"] = job.front_id;
        if (job.status == Status::Failed) j["error"] = job.error;
        return j;
    }

    void snapshot(const std::filesystem::path& relative, std::string_view text) {
        if (!options.snapshot_dir) return;
        const auto path = *options.snapshot_dir / relative;
        std::filesystem::create_directories(path.parent_path());
        write_text_file(path, text);
    }

    void run_worker() {
        for (;;) {
            std::string id;
            Job job;
            {
                std::unique_lock lock(mutex);
                work_ready.wait(lock, [&] { return stopping || !queue.empty(); });
                if (stopping) return;
                id = queue.front();
                queue.pop_front();
                auto& stored = jobs.at(id);
                stored.status = Status::Running;
                stored.started_ms = now_ms();
                job = stored;
            }

            std::shared_ptr<const ParetoFront> front;
            Json error;
            try {
                if (job.solver == SolverKind::Exhaustive) {
                    ExhaustiveOptions opts;
                    opts.enumeration_cap = options.enumeration_cap;
                    opts.workers = options.exhaustive_workers;
                    front = std::make_shared<const ParetoFront>(solve_exhaustive(*job.catalog, job.instance, opts));
                } else {
                    front = std::make_shared<const ParetoFront>(nsga2_solve(*job.catalog, job.instance, job.nsga2));
                }
            } catch (const Error& e) {
                error = {{"code", error_code_name(e.code())}, {"message", e.what()}};
            } catch (const std::exception& e) {
                error = {{"code", "InternalError"}, {"message", e.what()}};
            }

            std::string front_id;
            {
                std::lock_guard lock(mutex);
                auto& stored = jobs.at(id);
                stored.finished_ms = now_ms();
                if (front) {
                    front_id = make_id('f');
                    fronts.emplace(front_id, StoredFront{job.catalog_id, front});
                    stored.front_id = front_id;
                    stored.status = Status::Done;
                } else {
                    stored.error = error;
                    stored.status = Status::Failed;
                }
            }
            if (front) {
                try {
                    auto table = make_front_table(*front, DisplayTransform::battery_life());
                    snapshot(std::filesystem::path("fronts") / (front_id + ".json"), encode_front_json(table));
                } catch (const std::exception&) {
                }
            }
            {
                std::lock_guard lock(mutex);
                --in_flight;
            }
            idle.notify_all();
        }
    }

    std::shared_ptr<const CategoryCatalog> find_catalog(const std::string& id) {
        std::lock_guard lock(mutex);
        auto it = catalogs.find(id);
        return it == catalogs.end() ? nullptr : it->second;
    }

    std::optional<StoredFront> find_front(const std::string& id) {
        std::lock_guard lock(mutex);
        auto it = fronts.find(id);
        if (it == fronts.end()) return std::nullopt;
        return it->second;
    }

    std::string store_catalog(CategoryCatalog catalog) {
        auto shared = std::make_shared<const CategoryCatalog>(std::move(catalog));
        std::string id;
        {
            std::lock_guard lock(mutex);
            id = make_id('c');
            catalogs.emplace(id, shared);
        }
        snapshot(std::filesystem::path("catalogs") / (id + ".csv"), serialize_catalog_csv(*shared));
        return id;
    }

    // -- routes ---------------------------------------------------------------

    HttpResponse post_catalog(const HttpRequest& req) {
        CategoryCatalog catalog = parse_catalog_csv(req.body);
        const std::string fingerprint = catalog_fingerprint(catalog);
        Json cats = categories_summary(catalog);
        const std::string id = store_catalog(std::move(catalog));
        return json_response(201, {{"catalog_id", id}, {"categories", std::move(cats)}, {"fingerprint", fingerprint}});
    }

    HttpResponse post_solve(const HttpRequest& req) {
        const Json body = parse_body(req.body);
        if (!body.contains("catalog_id") || !body["catalog_id"].is_string()) {
            throw Error(ErrorCode::ParseError, "catalog_id is required");
        }
        const std::string catalog_id = body["catalog_id"].get<std::string>();
        auto catalog = find_catalog(catalog_id);
        if (!catalog) return error_response(404, "NotFound", "unknown catalog '" + catalog_id + "'");

        Job job;
        job.catalog_id = catalog_id;
        job.catalog = catalog;
        job.instance = instance_from_request(body);
        const std::string solver = body.value("solver", std::string("exhaustive"));
        if (solver == "exhaustive") {
            job.solver = SolverKind::Exhaustive;
            const BigCount space = search_space_size(reduce_search_space(*catalog, job.instance));
            if (space > options.enumeration_cap) {
                Json err = {{"code", error_code_name(ErrorCode::SearchSpaceTooLarge)},
                            {"message", "reduced search space exceeds the enumeration cap; use solver nsga2"},
                            {"space_size", space.str()},
                            {"cap", options.enumeration_cap}};
                return json_response(409, Json{{"error", std::move(err)}});
            }
        } else if (solver == "nsga2") {
            job.solver = SolverKind::Evolutionary;
            job.nsga2 = nsga2_from_request(body.value("params", Json()));
        } else {
            throw Error(ErrorCode::InvalidParams, "unknown solver '" + solver + "'");
        }

        Json out;
        {
            std::lock_guard lock(mutex);
            job.id = make_id('j');
            job.created_ms = now_ms();
            out = job_json(job);
            queue.push_back(job.id);
            ++in_flight;
            jobs.emplace(job.id, std::move(job));
        }
        work_ready.notify_one();
        return json_response(202, out);
    }

    HttpResponse get_job(const std::string& id) {
        std::lock_guard lock(mutex);
        auto it = jobs.find(id);
        if (it == jobs.end()) return error_response(404, "NotFound", "unknown job '" + id + "'");
        return json_response(200, job_json(it->second));
    }

    static Json front_body(const std::string& front_id, const std::string& catalog_id, const ParetoFront& front,
                           const DisplayTransform& transform, bool empty_selection) {
        FrontTable table = make_front_table(front, transform);
        table.empty_selection = empty_selection;
        Json j = front_table_to_json(table);
        j["front_id"] = front_id;
        j["catalog_id"] = catalog_id;
        return j;
    }

    HttpResponse get_front(const HttpRequest& req, const std::string& id) {
        auto stored = find_front(id);
        if (!stored) return error_response(404, "NotFound", "unknown front '" + id + "'");
        const auto transform = transform_from_query(req.query);
        return json_response(200, front_body(id, stored->catalog_id, *stored->front, transform, stored->front->empty()));
    }

    HttpResponse post_filter(const HttpRequest& req, const std::string& id) {
        auto stored = find_front(id);
        if (!stored) return error_response(404, "NotFound", "unknown front '" + id + "'");
        DisplayTransform transform = transform_from_query(req.query);
        std::vector<Constraint> constraints;
        try {
            const Json body = parse_body(req.body);
            if (body.contains("battery")) {
                transform = body["battery"].is_null() ? DisplayTransform::raw()
                                                      : DisplayTransform::battery_life(battery_from_json(body["battery"]));
            }
            constraints = constraints_from_json(body.value("constraints", Json::array()));
            auto result = filter_front(*stored->front, constraints, transform);
            return json_response(200, front_body(id, stored->catalog_id, result.front, transform, result.empty_selection));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidBattery) throw;
            return error_response(422, e);
        }
    }

    HttpResponse post_compare(const HttpRequest& req, const std::string& id) {
        auto catalog = find_catalog(id);
        if (!catalog) return error_response(404, "NotFound", "unknown catalog '" + id + "'");
        const Json body = parse_body(req.body);

        std::shared_ptr<const ParetoFront> front;
        if (body.contains("front_id")) {
            auto stored = body["front_id"].is_string() ? find_front(body["front_id"].get<std::string>()) : std::nullopt;
            if (!stored || stored->catalog_id != id) {
                return error_response(404, "NotFound", "unknown front for this catalog");
            }
            front = stored->front;
        } else {
            ExhaustiveOptions opts;
            opts.enumeration_cap = options.enumeration_cap;
            opts.workers = options.exhaustive_workers;
            front = std::make_shared<const ParetoFront>(solve_exhaustive(*catalog, instance_from_request(body), opts));
        }

        std::optional<SolutionVector> baseline;
        if (body.contains("solution") && !body["solution"].is_null()) {
            std::vector<std::string> apps;
            try {
                apps = body["solution"].get<std::vector<std::string>>();
            } catch (const Json::exception&) {
                throw Error(ErrorCode::ParseError, "solution must be a list of app ids");
            }
            baseline = solution_from_app_ids(apps, *catalog);
        }
        return json_response(200, compare_report_to_json(compare_front(*front, *catalog, baseline)));
    }

    HttpResponse post_position(const HttpRequest& req, const std::string& id) {
        auto catalog = find_catalog(id);
        if (!catalog) return error_response(404, "NotFound", "unknown catalog '" + id + "'");
        const Json body = parse_body(req.body);
        if (!body.contains("new_app")) throw Error(ErrorCode::ParseError, "new_app is required");
        const AppRecord app = app_record_from_json(body["new_app"]);
        const BatteryParams battery = body.contains("battery") ? battery_from_json(body["battery"]) : BatteryParams{};
        return json_response(200, position_to_json(position_app(app, *catalog, battery)));
    }

    HttpResponse get_reference(const HttpRequest& req, const std::string& id) {
        auto catalog = find_catalog(id);
        if (!catalog) return error_response(404, "NotFound", "unknown catalog '" + id + "'");
        const auto transform = transform_from_query(req.query);
        return json_response(200, reference_values_to_json(reference_values(*catalog, transform.battery.value_or(BatteryParams{}))));
    }

    HttpResponse route(const HttpRequest& req) {
        const auto parts = split_path(req.path);
        const std::string& m = req.method;
        const std::size_t n = parts.size();
        auto is = [&](std::size_t i, std::string_view s) { return i < n && parts[i] == s; };

        if (m == "OPTIONS") return {204, "", "text/plain"};
        if (m == "GET" && n == 1 && is(0, "contexts")) return json_response(200, contexts_to_json());
        if (m == "GET" && n == 1 && is(0, "instances")) return json_response(200, instances_to_json());
        if (m == "POST" && n == 1 && (is(0, "catalog") || is(0, "catalogs"))) return post_catalog(req);
        if (m == "POST" && n == 1 && is(0, "solve")) return post_solve(req);
        if (m == "GET" && n == 2 && is(0, "jobs")) return get_job(parts[1]);
        if (m == "GET" && n == 2 && is(0, "fronts")) return get_front(req, parts[1]);
        if (m == "POST" && n == 3 && is(0, "fronts") && is(2, "filter")) return post_filter(req, parts[1]);
        if (m == "POST" && n == 3 && is(0, "catalogs") && is(2, "compare")) return post_compare(req, parts[1]);
        if (m == "POST" && n == 3 && is(0, "catalogs") && is(2, "position")) return post_position(req, parts[1]);
        if (m == "GET" && n == 3 && is(0, "catalogs") && is(2, "reference")) return get_reference(req, parts[1]);
        return error_response(404, "NotFound", "no route for " + m + " " + req.path);
    }
};

AdvisorService::AdvisorService(ServiceOptions options) : state_(std::make_unique<State>()) {
    state_->options = std::move(options);
    state_->worker = std::thread([s = state_.get()] { s->run_worker(); });

    auto adapt = [s = state_.get()](const httplib::Request& in, httplib::Response& out) {
        HttpRequest req{in.method, in.path, {}, in.body};
        for (const auto& [k, v] : in.params) req.query.emplace(k, v);
        const HttpResponse res = AdvisorService::handle_with(*s, req);
        out.status = res.status;
        out.set_content(res.body, res.content_type.c_str());
    };
    auto& srv = state_->server;
    srv.Get(".*", adapt);
    srv.Post(".*", adapt);
    srv.Options(".*", adapt);
    srv.set_post_routing_handler([s = state_.get()](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", s->options.cors_origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
}

AdvisorService::~AdvisorService() {
    stop();
    {
        std::lock_guard lock(state_->mutex);
        state_->stopping = true;
    }
    state_->work_ready.notify_all();
    if (state_->worker.joinable()) state_->worker.join();
}

HttpResponse AdvisorService::handle(const HttpRequest& request) { return handle_with(*state_, request); }

HttpResponse AdvisorService::handle_with(State& state, const HttpRequest& request) {
    try {
        return state.route(request);
    } catch (const Error& e) {
        return error_response(status_for(e.code()), e);
    } catch (const std::exception& e) {
        return error_response(500, "InternalError", e.what());
    }
}

std::string AdvisorService::add_catalog(CategoryCatalog catalog) { return state_->store_catalog(std::move(catalog)); }

void AdvisorService::wait_idle() {
    std::unique_lock lock(state_->mutex);
    state_->idle.wait(lock, [&] { return state_->in_flight == 0; });
}

bool AdvisorService::listen() { return state_->server.listen(state_->options.host, state_->options.port); }

int AdvisorService::listen_in_background() {
    const int port = state_->server.bind_to_any_port(state_->options.host);
    if (port <= 0) return -1;
    state_->server_thread = std::thread([s = state_.get()] { s->server.listen_after_bind(); });
    state_->server.wait_until_ready();
    return port;
}

void AdvisorService::stop() {
    state_->server.stop();
    if (state_->server_thread.joinable()) state_->server_thread.join();
}

}  // namespace apoa
