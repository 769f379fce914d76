#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "proofbench/ceres/resolution.hpp"
#include "proofbench/ops/ops.hpp"
#include "proofbench/transform/transform.hpp"
#include "proofbench/view/view.hpp"

namespace httplib {
class Server;
}

namespace proofbench::service {

using nlohmann::json;

// Carries the HTTP status and the body of an error response.
struct ApiError : std::runtime_error {
  ApiError(int status, std::string code, const std::string& message, json extra = json::object())
      : std::runtime_error(message), status(status), code(std::move(code)), extra(std::move(extra)) {}
  int status;
  std::string code;
  json extra;
};

// Maps any exception escaping the core to an ApiError.
ApiError translate(const std::exception& e);
json error_body(const ApiError& e);

// Published JSON schema of every response body.
const char* response_schema();

struct Download {
  std::string body;
  std::string media_type;
  std::string filename;
};

// Single-database session. Readers share a lock; loads and the insertion of
// derived objects take it exclusively. Stored values are immutable.
class Session {
public:
  explicit Session(ceres::Limits limits = {});

  json load_path(const std::string& path);
  // {"path": ...} or {"text": ..., "format": "auto"|"lks"|"xml", "name": ...}
  json load(const json& body);
  json db() const;
  std::uint64_t revision() const;

  json proof(const std::string& name, std::optional<std::uint64_t> n) const;
  // {"op", "n"?, "revision"?, "requestId"?}
  json transform(const std::string& name, const json& body);
  json cancel(const std::string& request_id);

  json view(const std::string& name, std::optional<std::uint64_t> n, const view::ViewOptions& opts) const;
  json search(const std::string& name, std::optional<std::uint64_t> n, const view::ViewOptions& opts,
              const std::string& query) const;
  Download export_object(const std::string& name, std::optional<std::uint64_t> n, const std::string& format) const;

private:
  struct Object {
    std::shared_ptr<const ops::Value> value; // absent for sequent lists and definitions
    std::string kind;
    std::string origin;
    std::string op;
  };
  struct State {
    std::shared_ptr<const calculus::ProofDatabase> db;
    std::string source;
    std::uint64_t revision = 0;
    std::map<std::string, Object> derived;
  };

  json install(calculus::ProofDatabase db, std::string source);
  // Proof, schema instance, derived object, sequent list or "$definitions".
  std::pair<std::string, Object> resolve(const State& s, const std::string& name, std::optional<std::uint64_t> n) const;
  view::ViewDocument document(const State& s, const std::string& name, std::optional<std::uint64_t> n,
                              const view::ViewOptions& opts) const;

  ceres::Limits limits_;
  mutable std::shared_mutex mu_;
  State state_;
  std::mutex pending_mu_;
  std::map<std::string, std::shared_ptr<transform::CancelToken>> pending_;
};

struct ServerOptions {
  ceres::Limits limits;
  std::string static_dir; // viewer assets; a placeholder page when empty
  bool cors = false;
};

class Server {
public:
  explicit Server(ServerOptions opts = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  Session& session() { return session_; }

  // Returns the bound port (a free one for port 0), or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool run();
  void stop();

private:
  void routes();
  ServerOptions opts_;
  Session session_;
  std::unique_ptr<httplib::Server> http_;
};

// Parses hideStructural/hideContext/markCutAncestors/focus/hidden query values.
view::ViewOptions view_options(const std::multimap<std::string, std::string>& params);

} // namespace proofbench::service
