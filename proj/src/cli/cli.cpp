#include "proofbench/cli/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "proofbench/calculus/check.hpp"
#include "proofbench/exporter/export.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/ops/ops.hpp"
#include "proofbench/parsers/io.hpp"
#include "proofbench/service/service.hpp"

namespace proofbench::cli {

namespace {

using calculus::LKProof;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string plural(std::size_t n, const char* one, const char* many) { return std::to_string(n) + " " + (n == 1 ? one : many); }

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

ceres::Limits limits_from_env() {
  const char* v = std::getenv("PROOFBENCH_LIMITS");
  if (!v) return {};
  try {
    return ops::parse_limits(v);
  } catch (const ops::BadRequest& e) {
    throw UsageError(std::string("PROOFBENCH_LIMITS: ") + e.what());
  }
}

std::optional<std::uint64_t> optional_n(const CLI::Option* opt, std::uint64_t n) {
  return opt->count() ? std::optional<std::uint64_t>(n) : std::nullopt;
}

std::vector<ops::Op> parse_ops(const std::vector<std::string>& names) {
  std::vector<ops::Op> out;
  for (const auto& n : names) {
    auto op = ops::op_from_name(n);
    if (!op) throw UsageError("unknown op " + n);
    out.push_back(*op);
  }
  return out;
}

ops::Value pipeline(const LKProof& p, const std::vector<ops::Op>& steps, const ceres::Limits& limits) {
  ops::Value v = p;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!std::holds_alternative<LKProof>(v))
      throw std::runtime_error(std::string("op ") + ops::op_name(steps[i]) + " needs a proof; " + ops::op_name(steps[i - 1]) +
                               " does not produce one");
    v = ops::apply(steps[i], std::get<LKProof>(v), limits);
  }
  return v;
}

int parse_cmd(const std::string& file, std::ostream& out) {
  auto db = parsers::load_database(file);
  std::size_t schemata = 0;
  for (const auto& e : db.entries) schemata += e.is_schema();
  out << file << ": " << plural(db.entries.size() - schemata, "proof", "proofs") << ", "
      << plural(schemata, "schema", "schemata") << ", " << plural(db.sequent_lists.size(), "sequent list", "sequent lists")
      << ", " << plural(db.definitions.items().size(), "definition", "definitions") << "\n";
  for (const auto& e : db.entries) {
    if (e.is_schema())
      out << "schema " << e.name << "(" << e.schema->param.name() << "): " << calculus::plain(e.schema->end) << "\n";
    else
      out << "proof " << e.name << ": " << calculus::plain(e.proof->conclusion) << "\n";
  }
  for (const auto& l : db.sequent_lists) out << "list " << l.name << ": " << plural(l.sequents.size(), "sequent", "sequents") << "\n";
  for (const auto& d : db.definitions.items())
    out << "definition " << kernel::plain(d.abbreviation) << " := " << kernel::plain(d.expansion) << "\n";
  return 0;
}

int check_cmd(const std::string& file, const std::string& only, std::ostream& out, std::ostream& err) {
  auto db = parsers::load_database(file);
  if (!only.empty() && !db.find(only)) throw ops::NotFound("no proof named " + only);
  std::vector<std::string> proofs, schemata;
  bool ok = true;
  auto report = [&](const std::string& what, const LKProof& p) {
    auto r = calculus::check_proof(p, &db);
    if (r.ok()) return;
    ok = false;
    err << what << ": " << r.str() << "\n";
  };
  for (const auto& e : db.entries) {
    if (!only.empty() && e.name != only) continue;
    if (e.is_schema()) {
      report(e.name + " (base)", e.schema->base);
      report(e.name + " (step)", e.schema->step);
      schemata.push_back(e.name);
    } else {
      report(e.name, e.proof);
      proofs.push_back(e.name);
    }
  }
  if (!ok) return 1;
  std::vector<std::string> parts;
  if (!proofs.empty()) parts.push_back(plural(proofs.size(), "proof", "proofs") + " (" + joined(proofs) + ")");
  if (!schemata.empty()) parts.push_back(plural(schemata.size(), "schema", "schemata") + " (" + joined(schemata) + ")");
  out << "ok: " << (parts.empty() ? "nothing to check" : joined(parts)) << "\n";
  return 0;
}

void print_value(const ops::Value& v, const std::string& title, bool as_json, std::ostream& out) {
  if (!as_json) {
    out << ops::text(v);
    return;
  }
  if (std::holds_alternative<LKProof>(v))
    out << exporter::export_proof(std::get<LKProof>(v), exporter::ExportFormat::Json);
  else
    out << exporter::view_to_json(ops::to_view(title, v)).dump(2) << "\n";
}

int export_cmd(const LKProof& p, const std::vector<ops::Op>& steps, const std::string& format, const std::string& path,
               std::ostream& out) {
  using exporter::ExportFormat;
  ops::Value v = pipeline(p, steps, limits_from_env());
  std::string body;
  ExportFormat fmt;
  if (std::holds_alternative<LKProof>(v)) {
    const auto& q = std::get<LKProof>(v);
    if (format == "tex") body = exporter::export_proof(q, fmt = ExportFormat::LatexProof);
    else if (format == "json") body = exporter::export_proof(q, fmt = ExportFormat::Json);
    else body = exporter::export_clause_set(ceres::char_clause_set(ceres::extract_struct(q)), fmt = ExportFormat::TptpCnf);
  } else if (std::holds_alternative<ceres::ClauseSet>(v) && format != "json") {
    const auto& cs = std::get<ceres::ClauseSet>(v);
    fmt = format == "tex" ? ExportFormat::LatexClauses : ExportFormat::TptpCnf;
    body = exporter::export_clause_set(cs, fmt);
  } else {
    throw std::runtime_error("export: this result cannot be exported as " + format);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": cannot write");
  f << body;
  if (!f.flush()) throw std::runtime_error(path + ": write failed");
  out << "wrote " << path << " (" << exporter::media_type(fmt) << ")\n";
  return 0;
}

int serve_cmd(const std::string& host, int port, const std::string& db, const std::string& assets, bool cors,
              std::ostream& out) {
  service::ServerOptions opts{limits_from_env(), assets, cors};
  service::Server server(opts);
  if (!db.empty()) server.session().load_path(db);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  int bound = server.bind(host, port);
  if (bound < 0) throw std::runtime_error("serve: cannot bind " + host + ":" + std::to_string(port));
  out << "listening on http://" << host << ":" << bound << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  bool ok = server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof analysis toolkit: parse, check, transform and export LK proofs and proof schemata", "proofbench"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string file, proof, format, path, host = "127.0.0.1", assets, db;
  std::uint64_t n = 0;
  int port = 8080;
  bool as_json = false, cors = false;
  std::vector<std::string> op_names;

  auto* parse = app.add_subcommand("parse", "Print a summary of a proof database");
  parse->add_option("file", file, "Input file (.lks or .xml, optionally gzipped)")->required();

  auto* check = app.add_subcommand("check", "Check every proof and schema of a database");
  check->add_option("file", file, "Input file")->required();
  check->add_option("--proof", proof, "Check only this proof or schema");

  auto* inst = app.add_subcommand("instantiate", "Instantiate a proof schema at a parameter value");
  inst->add_option("file", file, "Input file")->required();
  inst->add_option("--proof", proof, "Schema name")->required();
  inst->add_option("--n", n, "Parameter value")->required();
  inst->add_flag("--json", as_json, "Print JSON instead of text");

  auto* trans = app.add_subcommand("transform", "Apply one or more operations to a proof");
  trans->add_option("file", file, "Input file")->required();
  trans->add_option("--proof", proof, "Proof or schema name")->required();
  trans->add_option("--op", op_names, "Operation, applied in the given order")
      ->required()
      ->check(CLI::IsMember(ops::op_names()));
  auto* trans_n = trans->add_option("--n", n, "Parameter value for schemata");
  trans->add_flag("--json", as_json, "Print JSON instead of text");

  auto* exp = app.add_subcommand("export", "Write a proof or its clause set to a file");
  exp->add_option("file", file, "Input file")->required();
  exp->add_option("--proof", proof, "Proof or schema name")->required();
  exp->add_option("--format", format, "tex, tptp or json")->required()->check(CLI::IsMember({"tex", "tptp", "json"}));
  exp->add_option("--out", path, "Output path")->required();
  auto* exp_n = exp->add_option("--n", n, "Parameter value for schemata");
  exp->add_option("--op", op_names, "Operations applied before export")->check(CLI::IsMember(ops::op_names()));

  auto* serve = app.add_subcommand("serve", "Run the HTTP service for the viewer");
  serve->add_option("--port", port, "Port; 0 picks a free one")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--db", db, "Database loaded at startup");
  serve->add_option("--static", assets, "Directory with the viewer's static assets")->check(CLI::ExistingDirectory);
  serve->add_flag("--cors", cors, "Allow cross-origin requests (development)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse) return parse_cmd(file, out);
    if (*check) return check_cmd(file, proof, out, err);
    if (*inst) {
      auto database = parsers::load_database(file);
      const auto* e = database.find(proof);
      if (!e) throw ops::NotFound("no proof named " + proof);
      if (!e->is_schema()) throw ops::BadRequest(proof + " is not a schema");
      LKProof p = calculus::instantiate_schema(database, proof, n);
      print_value(p, proof, as_json, out);
      return 0;
    }
    if (*trans) {
      auto steps = parse_ops(op_names);
      auto database = parsers::load_database(file);
      LKProof p = ops::resolve_proof(database, proof, optional_n(trans_n, n));
      print_value(pipeline(p, steps, limits_from_env()), proof, as_json, out);
      return 0;
    }
    if (*exp) {
      auto steps = parse_ops(op_names);
      auto database = parsers::load_database(file);
      return export_cmd(ops::resolve_proof(database, proof, optional_n(exp_n, n)), steps, format, path, out);
    }
    if (*serve) return serve_cmd(host, port, db, assets, cors, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace proofbench::cli
