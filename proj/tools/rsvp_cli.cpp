// rsvp: command-line front end for the parameter-space analysis engine.
//
// Payloads go to stdout, diagnostics to stderr. Exit codes: 0 ok,
// 2 validation error (bad input, bad flags), 3 internal error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsvp/error.hpp"
#include "rsvp/fixtures.hpp"
#include "rsvp/json_io.hpp"
#include "rsvp/service.hpp"

namespace {

constexpr int kValidation = 2;
constexpr int kInternal = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw InputError(std::string(name) + " is not a number: " + v);
  }
}

rsvp::RunTable load_table(const std::string& csv, const std::string& meta) {
  rsvp::IngestOptions opts;
  opts.max_runs = env_size("RSVP_MAX_RUNS", opts.max_runs);
  auto table = rsvp::load_csv(read_file(csv), opts);
  if (!meta.empty()) table = rsvp::apply_sidecar(table, read_file(meta));
  return table;
}

// "SPLOM+wDCP+Hist", "(PC)", "Reg (PSc+Hist)" style label of one field's
// recommended spatial encodings.
std::string expressivity_label(const std::vector<rsvp::ExpressivityEntry>& entries) {
  std::string solid, marginal;
  for (const auto& e : entries) {
    auto& out = e.marginal ? marginal : solid;
    if (!out.empty()) out += '+';
    out += rsvp::to_string(e.option);
  }
  if (marginal.empty()) return solid;
  if (solid.empty()) return "(" + marginal + ")";
  return solid + " (" + marginal + ")";
}

std::string field_label(const std::vector<std::string>& dims, const rsvp::RunTable& table) {
  if (dims.empty()) return "-";
  const auto kind = rsvp::expressivity_kind(dims, table);
  return expressivity_label(rsvp::spatial_expressivity(static_cast<int>(dims.size()), kind));
}

std::string recommendation_text(const rsvp::RecommendationSet& recs, const rsvp::EncodingState& enc,
                                const rsvp::RunTable& table) {
  std::ostringstream out;
  out << "spatial: " << field_label(enc.s1, table) << " | " << field_label(enc.s2, table) << "\n";
  for (const auto& g : recs.guidance) {
    const auto& info = rsvp::task_info(g.task);
    out << "\n[" << info.name << "] " << info.strategy_label << "\n";
    out << "  " << info.description << "\n";
    out << "  options:";
    for (auto o : g.recommended_options) out << ' ' << rsvp::to_string(o);
    out << "\n";
    for (const auto& f : recs.frames_for(g.task)) {
      if (f.kind != rsvp::FrameKind::VisOption || rsvp::is_mdmv(f.option)) continue;
      out << "  object: " << rsvp::complex_frame_label(f) << "\n";
    }
    out << "  " << g.explanation << "\n";
    for (const auto& h : g.interaction_hints) out << "  - " << h << "\n";
  }
  return out.str();
}

struct EncodingFlags {
  std::vector<std::string> s1, s2, color, opacity, object;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--s1", s1, "Spatial field 1 dimensions")->delimiter(',');
    cmd->add_option("--s2", s2, "Spatial field 2 dimensions")->delimiter(',');
    cmd->add_option("--color", color, "Color field dimensions")->delimiter(',');
    cmd->add_option("--opacity", opacity, "Opacity field dimensions")->delimiter(',');
    cmd->add_option("--object", object, "Object field dimensions")->delimiter(',');
  }
  rsvp::EncodingState state() const { return {s1, s2, color, opacity, object}; }
};

// Without a table every named dimension is taken as a stochastic quantitative
// column, which is enough for layouts.
rsvp::RunTable placeholder_table(const rsvp::EncodingState& enc) {
  std::vector<std::string> names;
  for (auto f : {rsvp::Field::S1, rsvp::Field::S2, rsvp::Field::Color, rsvp::Field::Opacity, rsvp::Field::Object})
    for (const auto& d : enc.field(f))
      if (std::find(names.begin(), names.end(), d) == names.end()) names.push_back(d);
  std::string csv;
  for (std::size_t i = 0; i < names.size(); ++i) csv += (i ? "," : "") + names[i];
  csv += "\n";
  for (std::size_t i = 0; i < names.size(); ++i) csv += i ? ",0" : "0";
  return rsvp::load_csv(csv + "\n");
}

int run(int argc, char** argv) {
  CLI::App app{"Visual parameter space analysis engine"};
  app.require_subcommand(1);

  std::string csv, meta, format = "json";
  EncodingFlags enc_flags;

  auto* ingest = app.add_subcommand("ingest", "Validate a run table and report inferred types");
  ingest->add_option("csv", csv, "Run table CSV")->required();
  ingest->add_option("--meta", meta, "Metadata sidecar JSON");

  std::vector<std::string> task_names;
  auto* rec = app.add_subcommand("recommend", "Recommend visualizations for tasks and an encoding");
  rec->add_option("--tasks", task_names, "Comma separated tasks")->delimiter(',');
  rec->add_option("--csv", csv, "Run table CSV")->required();
  rec->add_option("--meta", meta, "Metadata sidecar JSON");
  rec->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  enc_flags.add_to(rec);

  std::string option_name;
  auto* lay = app.add_subcommand("layout", "Print the small-multiple layout of an option");
  lay->add_option("--option", option_name, "Visualization option")->required();
  lay->add_option("--csv", csv, "Run table CSV (dimension names are trusted without one)");
  lay->add_option("--meta", meta, "Metadata sidecar JSON");
  enc_flags.add_to(lay);

  std::string doc_path;
  auto* exp = app.add_subcommand("export-dashboard", "Validate a dashboard document and print it normalized");
  exp->add_option("doc", doc_path, "Dashboard document JSON")->required();
  exp->add_option("--csv", csv, "Run table; adds the emitted view specs");
  exp->add_option("--meta", meta, "Metadata sidecar JSON");

  int port = static_cast<int>(env_size("RSVP_PORT", 8080));
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--port", port, "Port (default RSVP_PORT or 8080)");
  serve->add_option("--host", host, "Bind address");

  std::string kind, out_prefix;
  rsvp::FixtureOptions fopts;
  auto* fix = app.add_subcommand("fixture", "Write a reproducible run table and sidecar");
  fix->add_option("--kind", kind, "edge, powder-like or synthetic")->required();
  fix->add_option("--runs", fopts.runs, "Run count");
  fix->add_option("--seed", fopts.seed, "Seed");
  fix->add_option("--dims", fopts.dims, "Column count (synthetic)");
  fix->add_option("--out", out_prefix, "Write <out>.csv and <out>.meta.json instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (*ingest) {
    std::cout << rsvp::dump(rsvp::table_summary(load_table(csv, meta)));
  } else if (*rec) {
    const auto table = load_table(csv, meta);
    const auto enc = enc_flags.state();
    rsvp::validate(enc, table);
    std::vector<rsvp::Task> tasks;
    for (const auto& t : task_names) tasks.push_back(rsvp::parse_task(t));
    const auto recs = rsvp::recommend(rsvp::normalize_tasks(tasks), enc, table);
    if (format == "text") std::cout << recommendation_text(recs, enc, table);
    else std::cout << rsvp::dump(recs);
  } else if (*lay) {
    const auto enc = enc_flags.state();
    const auto table = csv.empty() ? placeholder_table(enc) : load_table(csv, meta);
    rsvp::validate(enc, table);
    std::cout << rsvp::dump(rsvp::layout_smd(rsvp::parse_option(option_name), enc, table));
  } else if (*exp) {
    rsvp::DashboardDoc doc;
    try {
      doc = rsvp::json::parse(read_file(doc_path)).get<rsvp::DashboardDoc>();
    } catch (const rsvp::json::exception& e) {
      throw InputError(doc_path + ": " + e.what());
    }
    if (csv.empty()) {
      std::cout << rsvp::dump(doc);
    } else {
      const auto table = load_table(csv, meta);
      for (const auto& v : doc.views)
        if (!v.external_spec) rsvp::check_renderable(v.cell, table);
      rsvp::validate(doc.filter_state, table);
      std::cout << rsvp::dump({{"dashboard", doc}, {"views", rsvp::emit_specs(doc, table, doc.filter_state)}});
    }
  } else if (*serve) {
    rsvp::ServiceConfig config;
    config.max_runs = env_size("RSVP_MAX_RUNS", config.max_runs);
    rsvp::Service service(config);
    std::cerr << "listening on " << host << ':' << port << "\n";
    return rsvp::run_server(service, host, port);
  } else if (*fix) {
    fopts.kind = rsvp::parse_fixture_kind(kind);
    const auto f = rsvp::make_fixture(fopts);
    if (out_prefix.empty()) {
      std::cout << f.csv;
    } else {
      write_file(out_prefix + ".csv", f.csv);
      write_file(out_prefix + ".meta.json", f.sidecar);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rsvp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
