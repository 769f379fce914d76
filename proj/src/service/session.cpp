#include <cctype>
#include <charconv>

#include "proofbench/calculus/schema.hpp"
#include "proofbench/exporter/export.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/parsers/errors.hpp"
#include "proofbench/parsers/io.hpp"
#include "proofbench/service/service.hpp"
#include "schema_data.hpp"

namespace proofbench::service {

using calculus::LKProof;

const char* response_schema() { return detail::kSchemaJson; }

json error_body(const ApiError& e) {
  json err{{"status", e.status}, {"code", e.code}, {"message", e.what()}};
  for (const auto& [k, v] : e.extra.items()) err[k] = v;
  return {{"error", err}};
}

ApiError translate(const std::exception& e) {
  if (const auto* x = dynamic_cast<const ApiError*>(&e)) return *x;
  if (dynamic_cast<const ops::NotFound*>(&e)) return {404, "not_found", e.what()};
  if (const auto* x = dynamic_cast<const parsers::SourceError*>(&e)) {
    const auto& s = x->span;
    json span{{"file", s.file}, {"line", s.line}, {"column", s.column}, {"offset", s.offset}, {"length", s.length}};
    return {400, "parse_error", e.what(), {{"span", span}}};
  }
  if (dynamic_cast<const parsers::StructureError*>(&e)) return {400, "parse_error", e.what()};
  if (dynamic_cast<const ops::BadRequest*>(&e) || dynamic_cast<const view::ViewError*>(&e) ||
      dynamic_cast<const parsers::IoError*>(&e) || dynamic_cast<const exporter::ImportError*>(&e) ||
      dynamic_cast<const kernel::UnboundParam*>(&e) || dynamic_cast<const kernel::EmptyRange*>(&e) ||
      dynamic_cast<const kernel::TypeError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e))
    return {400, "bad_request", e.what()};
  if (dynamic_cast<const transform::Cancelled*>(&e)) return {409, "cancelled", e.what()};
  if (const auto* x = dynamic_cast<const transform::PreconditionError*>(&e))
    return {422, "precondition", e.what(), {{"reason", x->reason}}};
  if (const auto* x = dynamic_cast<const ceres::RefutationFailed*>(&e))
    return {422, "refutation_failed", e.what(), {{"reason", ceres::refute_status_name(x->status)}}};
  if (dynamic_cast<const exporter::ExportError*>(&e)) return {422, "precondition", e.what(), {{"reason", "not-exportable"}}};
  if (dynamic_cast<const calculus::LinkError*>(&e)) return {422, "precondition", e.what(), {{"reason", "link"}}};
  if (dynamic_cast<const calculus::InferenceError*>(&e)) return {422, "precondition", e.what(), {{"reason", "inference"}}};
  return {500, "internal", e.what()};
}

namespace {

const char* kind_of(const ops::Value& v) {
  switch (v.index()) {
    case 0: return "proof";
    case 1: return "herbrand";
    case 2: return "struct";
    case 3: return "clauseset";
    case 4: return "projections";
    default: return "cutformulas";
  }
}

std::optional<std::uint64_t> number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number_unsigned()) throw ops::BadRequest(std::string(key) + " must be a non-negative integer");
  return j.at(key).get<std::uint64_t>();
}

std::string text_field(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_string()) throw ops::BadRequest(std::string(key) + " must be a string");
  return j.at(key).get<std::string>();
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '@' ? c : '_';
  return out;
}

class Pending {
public:
  Pending(std::mutex& mu, std::map<std::string, std::shared_ptr<transform::CancelToken>>& table, std::string id)
      : mu_(mu), table_(table), id_(std::move(id)) {
    if (id_.empty()) return;
    std::lock_guard lock(mu_);
    if (table_.count(id_)) throw ApiError(400, "bad_request", "request " + id_ + " is already running");
    token_ = std::make_shared<transform::CancelToken>();
    table_[id_] = token_;
  }
  ~Pending() {
    if (id_.empty()) return;
    std::lock_guard lock(mu_);
    table_.erase(id_);
  }
  const transform::CancelToken* token() const { return token_.get(); }

private:
  std::mutex& mu_;
  std::map<std::string, std::shared_ptr<transform::CancelToken>>& table_;
  std::string id_;
  std::shared_ptr<transform::CancelToken> token_;
};

} // namespace

Session::Session(ceres::Limits limits) : limits_(limits), state_{std::make_shared<calculus::ProofDatabase>(), "", 0, {}} {}

json Session::load_path(const std::string& path) { return install(parsers::load_database(path), path); }

json Session::load(const json& body) {
  if (!body.is_object()) throw ops::BadRequest("load: expected a JSON object");
  if (body.contains("path")) return load_path(text_field(body, "path"));
  if (!body.contains("text")) throw ops::BadRequest("load: give \"path\" or \"text\"");
  std::string text = text_field(body, "text");
  std::string format = body.contains("format") ? text_field(body, "format") : "auto";
  std::string name = body.contains("name") ? text_field(body, "name") : "inline";
  if (format != "auto" && format != "lks" && format != "xml") throw ops::BadRequest("load: format must be auto, lks or xml");
  if (format != "auto") {
    auto first = text.find_first_not_of(" \t\r\n");
    bool xml = first != std::string::npos && text[first] == '<';
    if (xml != (format == "xml")) throw ops::BadRequest("load: content is not " + format);
  }
  return install(parsers::parse_database(text, name), name);
}

json Session::install(calculus::ProofDatabase db, std::string source) {
  auto fresh = std::make_shared<const calculus::ProofDatabase>(std::move(db));
  {
    std::unique_lock lock(mu_);
    state_ = State{fresh, std::move(source), state_.revision + 1, {}};
  }
  return this->db();
}

std::uint64_t Session::revision() const {
  std::shared_lock lock(mu_);
  return state_.revision;
}

json Session::db() const {
  std::shared_lock lock(mu_);
  json proofs = json::array(), lists = json::array(), defs = json::array(), objects = json::array();
  for (const auto& e : state_.db->entries) {
    calculus::FSequent end = e.is_schema() ? e.schema->end : e.proof->conclusion.formulas();
    proofs.push_back({{"name", e.name},
                      {"kind", e.is_schema() ? "schema" : "proof"},
                      {"plain", calculus::plain(end)},
                      {"latex", calculus::latex(end)}});
  }
  for (const auto& l : state_.db->sequent_lists) lists.push_back(l.name);
  for (const auto& d : state_.db->definitions.items())
    defs.push_back({{"name", d.abbreviation.name()},
                    {"plain", kernel::plain(d.abbreviation) + " := " + kernel::plain(d.expansion)},
                    {"latex", kernel::latex(d.abbreviation) + " := " + kernel::latex(d.expansion)}});
  for (const auto& [name, o] : state_.derived)
    objects.push_back({{"name", name}, {"kind", o.kind}, {"origin", o.origin}, {"op", o.op}});
  return {{"revision", state_.revision},
          {"source", state_.source},
          {"proofs", proofs},
          {"sequentLists", lists},
          {"definitions", defs},
          {"objects", objects}};
}

std::pair<std::string, Session::Object> Session::resolve(const State& s, const std::string& name,
                                                          std::optional<std::uint64_t> n) const {
  if (auto it = s.derived.find(name); it != s.derived.end()) {
    if (n) throw ops::BadRequest(name + " is not a schema; n does not apply");
    return {name, it->second};
  }
  std::string base = name;
  if (auto at = name.rfind('@'); at != std::string::npos && !n) {
    std::uint64_t k = 0;
    auto digits = std::string_view(name).substr(at + 1);
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    const auto* e = s.db->find(name.substr(0, at));
    if (ec == std::errc() && p == digits.data() + digits.size() && !digits.empty() && e && e->is_schema()) {
      base = name.substr(0, at);
      n = k;
    }
  }
  if (const auto* e = s.db->find(base)) {
    std::string canonical = e->is_schema() && n ? base + "@" + std::to_string(*n) : base;
    auto value = std::make_shared<const ops::Value>(ops::resolve_proof(*s.db, base, n));
    return {canonical, Object{value, "proof", base, ""}};
  }
  if (n) throw ops::NotFound("no schema named " + base);
  for (const auto& l : s.db->sequent_lists)
    if (l.name == name) return {name, Object{nullptr, "sequentlist", name, ""}};
  if (name == "$definitions") return {name, Object{nullptr, "definitions", name, ""}};
  throw ops::NotFound("no object named " + name);
}

json Session::proof(const std::string& name, std::optional<std::uint64_t> n) const {
  std::shared_lock lock(mu_);
  auto [canonical, o] = resolve(state_, name, n);
  if (!o.value || !std::holds_alternative<LKProof>(*o.value)) throw ops::BadRequest(canonical + " is not a proof");
  json j = exporter::proof_to_json(std::get<LKProof>(*o.value));
  j["name"] = canonical;
  j["revision"] = state_.revision;
  return j;
}

json Session::transform(const std::string& name, const json& body) {
  if (!body.is_object()) throw ops::BadRequest("transform: expected a JSON object");
  std::string op_text = text_field(body, "op");
  auto op = ops::op_from_name(op_text);
  if (!op) throw ops::BadRequest("transform: unknown op \"" + op_text + "\"");
  auto n = number(body, "n");
  auto expected = number(body, "revision");

  std::string canonical, derived;
  Object source;
  std::uint64_t revision = 0;
  {
    std::shared_lock lock(mu_);
    revision = state_.revision;
    if (expected && *expected != revision)
      throw ApiError(409, "stale_revision",
                     "revision " + std::to_string(*expected) + " is stale; current is " + std::to_string(revision));
    std::tie(canonical, source) = resolve(state_, name, n);
    derived = canonical + "." + ops::op_name(*op);
    if (auto it = state_.derived.find(derived); it != state_.derived.end())
      return {{"name", derived}, {"kind", it->second.kind}, {"computed", false}, {"revision", revision}};
  }
  if (!source.value || !std::holds_alternative<LKProof>(*source.value))
    throw ops::BadRequest("transform: " + canonical + " is not a proof");

  Pending pending(pending_mu_, pending_, text_field(body, "requestId"));
  auto value = std::make_shared<const ops::Value>(ops::apply(*op, std::get<LKProof>(*source.value), limits_, pending.token()));

  std::unique_lock lock(mu_);
  if (state_.revision != revision)
    throw ApiError(409, "stale_revision", "the database changed while " + derived + " was computed");
  auto [it, inserted] = state_.derived.try_emplace(derived, Object{value, kind_of(*value), canonical, ops::op_name(*op)});
  return {{"name", derived}, {"kind", it->second.kind}, {"computed", inserted}, {"revision", revision}};
}

json Session::cancel(const std::string& request_id) {
  std::lock_guard lock(pending_mu_);
  auto it = pending_.find(request_id);
  if (it == pending_.end()) throw ops::NotFound("no pending transform " + request_id);
  it->second->cancel();
  return {{"requestId", request_id}, {"cancelled", true}};
}

view::ViewDocument Session::document(const State& s, const std::string& name, std::optional<std::uint64_t> n,
                                     const view::ViewOptions& opts) const {
  auto [canonical, o] = resolve(s, name, n);
  if (o.value) return ops::to_view(canonical, *o.value, opts);
  if (o.kind == "definitions") return view::list_view(canonical, s.db->definitions);
  for (const auto& l : s.db->sequent_lists)
    if (l.name == canonical) return view::list_view(canonical, l.sequents);
  throw ops::NotFound("no object named " + name);
}

json Session::view(const std::string& name, std::optional<std::uint64_t> n, const view::ViewOptions& opts) const {
  std::shared_lock lock(mu_);
  json j = exporter::view_to_json(document(state_, name, n, opts));
  j["revision"] = state_.revision;
  return j;
}

json Session::search(const std::string& name, std::optional<std::uint64_t> n, const view::ViewOptions& opts,
                     const std::string& query) const {
  std::shared_lock lock(mu_);
  auto doc = document(state_, name, n, opts);
  return {{"object", doc.title}, {"query", query}, {"hits", exporter::hits_to_json(view::search(doc, query))}};
}

Download Session::export_object(const std::string& name, std::optional<std::uint64_t> n, const std::string& format) const {
  using exporter::ExportFormat;
  std::shared_lock lock(mu_);
  auto [canonical, o] = resolve(state_, name, n);
  auto done = [&](std::string body, ExportFormat f) {
    return Download{std::move(body), exporter::media_type(f), file_stem(canonical) + exporter::file_extension(f)};
  };
  if (format != "tex" && format != "tptp" && format != "json")
    throw ops::BadRequest("export: format must be tex, tptp or json");
  if (o.value && std::holds_alternative<LKProof>(*o.value)) {
    const auto& p = std::get<LKProof>(*o.value);
    if (format == "tex") return done(exporter::export_proof(p, ExportFormat::LatexProof), ExportFormat::LatexProof);
    if (format == "json") return done(exporter::export_proof(p, ExportFormat::Json), ExportFormat::Json);
    auto cs = ceres::char_clause_set(ceres::extract_struct(p));
    return done(exporter::export_clause_set(cs, ExportFormat::TptpCnf), ExportFormat::TptpCnf);
  }
  if (o.value && std::holds_alternative<ceres::ClauseSet>(*o.value)) {
    const auto& cs = std::get<ceres::ClauseSet>(*o.value);
    if (format == "tex") return done(exporter::export_clause_set(cs, ExportFormat::LatexClauses), ExportFormat::LatexClauses);
    if (format == "tptp") return done(exporter::export_clause_set(cs, ExportFormat::TptpCnf), ExportFormat::TptpCnf);
  }
  throw ops::BadRequest("export: " + canonical + " (" + o.kind + ") cannot be exported as " + format);
}

} // namespace proofbench::service
