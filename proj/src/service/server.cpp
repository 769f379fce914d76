#include <charconv>

#include <httplib.h>

#include "proofbench/service/service.hpp"

namespace proofbench::service {

namespace {

constexpr const char* kPlaceholder =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>proofbench</title></head>\n"
    "<body><h1>proofbench</h1><p>The viewer is not installed. The API lives under <code>/api</code>; "
    "the response schema is at <a href=\"/api/schema\">/api/schema</a>.</p></body></html>\n";

bool flag(const std::string& key, const std::string& v) {
  if (v.empty() || v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw ops::BadRequest(key + " must be true or false");
}

int integer(const std::string& key, const std::string& v) {
  int x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || x < 0) throw ops::BadRequest(key + " must be a node id");
  return x;
}

std::optional<std::uint64_t> param_n(const httplib::Request& req) {
  if (!req.has_param("n")) return std::nullopt;
  std::string v = req.get_param_value("n");
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) throw ops::BadRequest("n must be a non-negative integer");
  return x;
}

void send(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class F>
auto guard(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const std::exception& e) {
      ApiError err = translate(e);
      send(res, error_body(err), err.status);
    }
  };
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw ops::BadRequest("request body is not valid JSON");
  return j;
}

} // namespace

view::ViewOptions view_options(const std::multimap<std::string, std::string>& params) {
  view::ViewOptions o;
  for (const auto& [k, v] : params) {
    if (k == "hideStructural") o.hide_structural = flag(k, v);
    else if (k == "hideContext") o.hide_context = flag(k, v);
    else if (k == "markCutAncestors") o.mark_cut_ancestors = flag(k, v);
    else if (k == "focus") {
      if (!v.empty()) o.focus_subproof = integer(k, v);
    } else if (k == "hidden") {
      for (std::size_t a = 0; a < v.size();) {
        std::size_t b = v.find(',', a);
        if (b == std::string::npos) b = v.size();
        o.hidden_subtrees.insert(integer(k, v.substr(a, b - a)));
        a = b + 1;
      }
    }
  }
  return o;
}

Server::Server(ServerOptions opts) : opts_(std::move(opts)), session_(opts_.limits), http_(std::make_unique<httplib::Server>()) {
  routes();
}

Server::~Server() { stop(); }

void Server::routes() {
  auto& s = *http_;
  Session& session = session_;

  s.Get("/api/schema", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(response_schema(), "application/schema+json");
  });
  s.Get("/api/db", guard([&](const httplib::Request&, httplib::Response& res) { send(res, session.db()); }));
  s.Post("/api/db/load", guard([&](const httplib::Request& req, httplib::Response& res) { send(res, session.load(body_of(req))); }));
  s.Get(R"(/api/proof/([^/]+))", guard([&](const httplib::Request& req, httplib::Response& res) {
          send(res, session.proof(req.matches[1], param_n(req)));
        }));
  s.Post(R"(/api/proof/([^/]+)/transform)", guard([&](const httplib::Request& req, httplib::Response& res) {
           send(res, session.transform(req.matches[1], body_of(req)));
         }));
  s.Delete(R"(/api/transform/([^/]+))", guard([&](const httplib::Request& req, httplib::Response& res) {
             send(res, session.cancel(req.matches[1]));
           }));
  s.Get(R"(/api/object/([^/]+)/view)", guard([&](const httplib::Request& req, httplib::Response& res) {
          send(res, session.view(req.matches[1], param_n(req), view_options(req.params)));
        }));
  s.Get(R"(/api/object/([^/]+)/search)", guard([&](const httplib::Request& req, httplib::Response& res) {
          send(res, session.search(req.matches[1], param_n(req), view_options(req.params), req.get_param_value("q")));
        }));
  s.Get(R"(/api/object/([^/]+)/export)", guard([&](const httplib::Request& req, httplib::Response& res) {
          auto d = session.export_object(req.matches[1], param_n(req), req.get_param_value("format"));
          res.set_header("Content-Disposition", "attachment; filename=\"" + d.filename + "\"");
          res.set_content(d.body, d.media_type);
        }));
  s.Get(R"(/api/.*)", [](const httplib::Request& req, httplib::Response& res) {
    send(res, error_body(ApiError(404, "not_found", "no endpoint " + req.path)), 404);
  });

  if (opts_.static_dir.empty() || !s.set_mount_point("/", opts_.static_dir)) {
    s.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(kPlaceholder, "text/html"); });
  }

  if (opts_.cors) {
    s.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }
}

int Server::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

bool Server::run() { return http_->listen_after_bind(); }

void Server::stop() {
  if (http_ && http_->is_running()) http_->stop();
}

} // namespace proofbench::service
