#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

#include <httplib.h>

#include "proofbench/exporter/export.hpp"
#include "proofbench/service/service.hpp"
#include "tptp_cnf.hpp"

namespace fs = std::filesystem;
using namespace proofbench;
using service::json;

namespace {

std::string data(const std::string& name) { return std::string(PB_TEST_DATA) + "/" + name; }

fs::path asset_dir() {
  fs::path dir = fs::temp_directory_path() / "pb_service_assets";
  fs::create_directories(dir / "js");
  std::ofstream(dir / "index.html") << "<!doctype html><title>viewer</title>\n";
  std::ofstream(dir / "js" / "app.js") << "console.log('viewer');\n";
  return dir;
}

// Server on a free loopback port, serving on a background thread.
struct Fixture {
  explicit Fixture(service::ServerOptions opts = {}) : server(std::move(opts)) {
    port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    thread = std::thread([this] { server.run(); });
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    client->set_read_timeout(120, 0);
    for (int i = 0; i < 200 && !client->Get("/api/db"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ~Fixture() {
    server.stop();
    thread.join();
  }

  json get(const std::string& path, int status = 200) {
    auto r = client->Get(path);
    REQUIRE(r);
    CHECK(r->status == status);
    return json::parse(r->body);
  }
  json post(const std::string& path, const json& body, int status = 200) {
    auto r = client->Post(path, body.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == status);
    return json::parse(r->body);
  }
  json load(const std::string& file) { return post("/api/db/load", {{"path", data(file)}}); }

  service::Server server;
  int port = 0;
  std::thread thread;
  std::unique_ptr<httplib::Client> client;
};

} // namespace

TEST_CASE("loading fig3 lists psi as a schema") {
  Fixture f;
  auto db = f.load("fig3.lks");
  REQUIRE(db["proofs"].size() == 1);
  CHECK(db["proofs"][0]["name"] == "psi");
  CHECK(db["proofs"][0]["kind"] == "schema");
  CHECK(f.get("/api/db") == db);
}

TEST_CASE("proof documents") {
  Fixture f;
  f.load("fig3.lks");
  auto p = f.get("/api/proof/psi?n=2");
  CHECK(p["name"] == "psi@2");
  CHECK(p["kind"] == "proof");
  auto q = exporter::proof_from_json(p);
  CHECK(q->conclusion.formulas().ant.size() == 2);
  CHECK(f.get("/api/proof/psi@2") == p);

  CHECK(f.get("/api/proof/nope", 404)["error"]["code"] == "not_found");
  CHECK(f.get("/api/proof/psi", 400)["error"]["code"] == "bad_request");
  CHECK(f.get("/api/proof/psi?n=x", 400)["error"]["code"] == "bad_request");
  CHECK(f.get("/api/nothing/here", 404)["error"]["code"] == "not_found");
}

TEST_CASE("transforms store derived objects") {
  Fixture f;
  f.load("e1.lks");
  auto t = f.post("/api/proof/E1/transform", {{"op", "gentzen"}});
  CHECK(t["name"] == "E1.gentzen");
  CHECK(t["kind"] == "proof");
  CHECK(t["computed"] == true);

  auto again = f.post("/api/proof/E1/transform", {{"op", "gentzen"}});
  CHECK(again["computed"] == false);
  CHECK(again["name"] == "E1.gentzen");

  auto v = f.get("/api/object/E1.gentzen/view");
  CHECK(v["kind"] == "proof");
  REQUIRE(v["nodes"].size() == 1);
  CHECK(v["nodes"][0]["label"] == "ax");
  CHECK(f.get("/api/proof/E1.gentzen")["root"]["rule"] == "ax");

  auto cs = f.post("/api/proof/E1/transform", {{"op", "clauseset"}});
  CHECK(cs["kind"] == "clauseset");
  CHECK(f.get("/api/object/E1.clauseset/view")["nodes"].size() == 2);
  CHECK(f.get("/api/proof/E1.clauseset", 400)["error"]["code"] == "bad_request");
  CHECK(f.post("/api/proof/E1.clauseset/transform", {{"op", "gentzen"}}, 400)["error"]["code"] == "bad_request");

  auto db = f.get("/api/db");
  REQUIRE(db["objects"].size() == 2);
  CHECK(db["objects"][0]["origin"] == "E1");

  CHECK(f.post("/api/proof/E1/transform", {{"op", "frobnicate"}}, 400)["error"]["code"] == "bad_request");
  CHECK(f.post("/api/proof/nope/transform", {{"op", "gentzen"}}, 404)["error"]["code"] == "not_found");
}

TEST_CASE("schema instances transform by n") {
  Fixture f;
  f.load("fig3.lks");
  auto t = f.post("/api/proof/psi/transform", {{"op", "struct"}, {"n", 1}});
  CHECK(t["name"] == "psi@1.struct");
  auto v = f.get("/api/object/psi@1.struct/view");
  CHECK(v["kind"] == "tree");
}

TEST_CASE("revisions and stale transforms") {
  Fixture f;
  auto r1 = f.load("e1.lks")["revision"].get<int>();
  auto r2 = f.load("e1.lks")["revision"].get<int>();
  CHECK(r2 > r1);
  auto err = f.post("/api/proof/E1/transform", {{"op", "gentzen"}, {"revision", r1}}, 409);
  CHECK(err["error"]["code"] == "stale_revision");
  CHECK(f.post("/api/proof/E1/transform", {{"op", "gentzen"}, {"revision", r2}})["computed"] == true);

  f.load("e1.lks");
  CHECK(f.get("/api/db")["objects"].empty());
  CHECK(f.get("/api/object/E1.gentzen/view", 404)["error"]["code"] == "not_found");
}

TEST_CASE("precondition failures carry a reason") {
  Fixture f;
  f.load("quantcut.lks");
  auto err = f.post("/api/proof/lemma/transform", {{"op", "herbrand"}}, 422);
  CHECK(err["error"]["code"] == "precondition");
  CHECK(err["error"]["reason"] == "non-atomic-cuts");

  f.load("tableau.xml");
  auto g = f.post("/api/proof/tab/transform", {{"op", "gentzen"}}, 422);
  CHECK(g["error"]["reason"] == "generic-node");
}

TEST_CASE("refutation limits") {
  service::ServerOptions opts;
  opts.limits.max_clauses = 1;
  Fixture f(opts);
  f.load("quantcut.lks");
  auto err = f.post("/api/proof/lemma/transform", {{"op", "ceres"}}, 422);
  CHECK(err["error"]["code"] == "refutation_failed");
  CHECK(err["error"].contains("reason"));
}

TEST_CASE("load errors") {
  Fixture f;
  auto e = f.post("/api/db/load", {{"text", "proof E proves P |- P {\n  root: ax(P |- \n}\n"}}, 400);
  CHECK(e["error"]["code"] == "parse_error");
  CHECK(e["error"]["span"]["line"] == 3);
  CHECK(f.post("/api/db/load", {{"path", "/no/such/file.lks"}}, 400)["error"]["code"] == "bad_request");
  CHECK(f.post("/api/db/load", json::array(), 400)["error"]["code"] == "bad_request");
  auto r = f.client->Post("/api/db/load", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(f.get("/api/db")["revision"] == 0);

  auto ok = f.post("/api/db/load", {{"text", "proof E proves P |- P {\n  root: ax(P |- P)\n}\n"}, {"name", "mem.lks"}});
  CHECK(ok["source"] == "mem.lks");
  CHECK(ok["proofs"][0]["name"] == "E");
}

TEST_CASE("views honour options") {
  Fixture f;
  f.load("propcut.lks");
  auto full = f.get("/api/object/chain/view");
  auto hidden = f.get("/api/object/chain/view?hideStructural=true");
  CHECK(hidden["nodes"].size() < full["nodes"].size());
  auto focus = f.get("/api/object/chain/view?focus=1");
  CHECK(focus["nodes"].size() < full["nodes"].size());
  auto collapsed = f.get("/api/object/chain/view?hidden=1");
  CHECK(collapsed["nodes"].size() < full["nodes"].size());
  CHECK(f.get("/api/object/chain/view?hideContext=maybe", 400)["error"]["code"] == "bad_request");
  CHECK(f.get("/api/object/chain/view?focus=999", 400)["error"]["code"] == "bad_request");
}

TEST_CASE("search") {
  Fixture f;
  f.load("fig3.lks");
  auto s = f.get("/api/object/psi/search?n=2&q=cut");
  CHECK(s["object"] == "psi@2");
  REQUIRE(!s["hits"].empty());
  bool label = false;
  for (const auto& h : s["hits"]) label = label || h["field"] == "label";
  CHECK(label);
  CHECK(f.get("/api/object/psi/search?n=2&q=", 400)["error"]["code"] == "bad_request");
  CHECK(f.get("/api/object/psi/search?n=2&q=zzz")["hits"].empty());
}

TEST_CASE("export downloads") {
  Fixture f;
  f.load("e1.lks");
  auto tex = f.client->Get("/api/object/E1/export?format=tex");
  REQUIRE(tex);
  CHECK(tex->status == 200);
  CHECK(tex->get_header_value("Content-Type") == "text/x-latex");
  CHECK(tex->get_header_value("Content-Disposition").find("E1.tex") != std::string::npos);

  auto tptp = f.client->Get("/api/object/E1/export?format=tptp");
  REQUIRE(tptp);
  CHECK(testing::read_tptp_cnf(tptp->body).size() == 2);

  auto js = f.client->Get("/api/object/E1/export?format=json");
  REQUIRE(js);
  CHECK(exporter::import_proof(js->body)->conclusion.formulas().suc.size() == 1);

  CHECK(f.get("/api/object/E1/export?format=pdf", 400)["error"]["code"] == "bad_request");
}

TEST_CASE("sequent lists and definitions are objects") {
  Fixture f;
  f.load("propcut.lks");
  auto db = f.get("/api/db");
  REQUIRE(db["definitions"].size() == 1);
  auto defs = f.get("/api/object/$definitions/view");
  CHECK(defs["kind"] == "list");
  CHECK(defs["nodes"].size() == 1);
}

TEST_CASE("cancellation") {
  Fixture f;
  f.load("fig3.lks");
  auto pending = std::async(std::launch::async, [&] {
    httplib::Client c("127.0.0.1", f.port);
    c.set_read_timeout(300, 0);
    return c.Post("/api/proof/psi/transform", json{{"op", "gentzen"}, {"n", 200}, {"requestId", "job-1"}}.dump(),
                  "application/json");
  });
  bool cancelled = false;
  for (int i = 0; i < 1000 && !cancelled; ++i) {
    auto r = f.client->Delete("/api/transform/job-1");
    REQUIRE(r);
    if (r->status == 200) {
      cancelled = json::parse(r->body)["cancelled"] == true;
    } else {
      CHECK(r->status == 404);
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  REQUIRE(cancelled);
  auto start = std::chrono::steady_clock::now();
  auto r = pending.get();
  REQUIRE(r);
  CHECK(r->status == 409);
  CHECK(json::parse(r->body)["error"]["code"] == "cancelled");
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
  CHECK(f.get("/api/db")["objects"].empty());
  CHECK(f.client->Delete("/api/transform/job-1")->status == 404);
}

TEST_CASE("static assets and schema") {
  Fixture f(service::ServerOptions{{}, asset_dir().string(), false});
  auto index = f.client->Get("/");
  REQUIRE(index);
  CHECK(index->status == 200);
  CHECK(index->body.find("viewer") != std::string::npos);
  auto js = f.client->Get("/js/app.js");
  REQUIRE(js);
  CHECK(js->status == 200);
  CHECK(js->get_header_value("Content-Type").find("javascript") != std::string::npos);
  CHECK(f.client->Get("/missing.css")->status == 404);

  auto schema = f.get("/api/schema");
  CHECK(schema["$defs"].contains("viewDocument"));
  CHECK(schema["$defs"].contains("error"));
}

TEST_CASE("placeholder page and CORS") {
  Fixture plain;
  auto page = plain.client->Get("/");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body.find("/api/schema") != std::string::npos);
  CHECK(!page->has_header("Access-Control-Allow-Origin"));

  Fixture cors(service::ServerOptions{{}, "", true});
  auto r = cors.client->Get("/api/db");
  REQUIRE(r);
  CHECK(r->get_header_value("Access-Control-Allow-Origin") == "*");
  auto pre = cors.client->Options("/api/db/load");
  REQUIRE(pre);
  CHECK(pre->status == 204);
}

TEST_CASE("concurrent readers") {
  Fixture f;
  f.load("fig3.lks");
  std::vector<std::future<int>> jobs;
  for (int i = 0; i < 8; ++i)
    jobs.push_back(std::async(std::launch::async, [&f, i] {
      httplib::Client c("127.0.0.1", f.port);
      auto r = c.Get("/api/object/psi/view?n=" + std::to_string(i % 4));
      return r ? r->status : -1;
    }));
  for (auto& j : jobs) CHECK(j.get() == 200);
}
