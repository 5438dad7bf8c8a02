#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "apoa/domain.hpp"
#include "apoa/exhaustive.hpp"

namespace apoa {

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::size_t exhaustive_workers = 1;
    std::string cors_origin = "*";
    /// When set, catalogs and finished fronts are also written here.
    std::optional<std::filesystem::path> snapshot_dir;
};

struct HttpRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// In-memory catalogs, jobs and fronts behind a JSON API. Solves run on a
/// single background worker; ids are only valid for the life of the process.
class AdvisorService {
public:
    explicit AdvisorService(ServiceOptions options = {});
    ~AdvisorService();
    AdvisorService(const AdvisorService&) = delete;
    AdvisorService& operator=(const AdvisorService&) = delete;

    HttpResponse handle(const HttpRequest& request);

    /// Registers a catalog without going through HTTP. Returns its id.
    std::string add_catalog(CategoryCatalog catalog);

    /// Blocks until every queued job reached a terminal state.
    void wait_idle();

    /// Binds and serves until stop(). Returns false if the port cannot be bound.
    bool listen();
    /// Binds to an ephemeral port on a background thread and returns the port.
    int listen_in_background();
    void stop();

private:
    struct State;
    static HttpResponse handle_with(State& state, const HttpRequest& request);
    std::unique_ptr<State> state_;
};

}  // namespace apoa
