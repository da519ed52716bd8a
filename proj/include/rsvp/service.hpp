#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsvp/dashboard.hpp"
#include "rsvp/visrec.hpp"

namespace rsvp {

struct ServiceConfig {
  std::size_t max_runs = 1000;
  std::chrono::seconds idle_timeout{3600};
  std::uint64_t id_seed = 0;
};

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// One loaded table and everything the UI built on top of it.
struct Session {
  std::string id;
  RunTable table;
  EncodingState enc;
  std::vector<Task> tasks;
  DashboardDoc doc;
  std::chrono::steady_clock::time_point last_access;
};

/// Transport-independent request router. Requests for the same session are
/// serialized; different sessions proceed concurrently.
class Service {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit Service(ServiceConfig config = {}, Clock clock = std::chrono::steady_clock::now);

  HttpResponse handle(const HttpRequest& request);

  std::size_t session_count() const;

  /// Overview payload for a session state (exposed for the CLI and tests).
  static nlohmann::json overview(const Session& s);

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> lookup(const std::string& id);
  std::string next_id();
  void expire_idle();

  nlohmann::json create_session(const nlohmann::json& body);
  nlohmann::json route_session(Slot& slot, const std::string& method, const std::vector<std::string>& parts,
                               const nlohmann::json& body, int& status);

  ServiceConfig config_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t counter_ = 0;
};

/// Blocks serving the API on host:port until the process is stopped.
int run_server(Service& service, const std::string& host, int port);

}  // namespace rsvp
