// Copyright 2026 The geoscout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// geoscout command-line front-end: catalog management, template validation,
// headless runs and the HTTP service.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage/validation failure.

#include <CLI11.hpp>

#include <pthread.h>
#include <signal.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "geoscout/catalog.hpp"
#include "geoscout/error.hpp"
#include "geoscout/io.hpp"
#include "geoscout/json_codec.hpp"
#include "geoscout/service.hpp"
#include "geoscout/template.hpp"
#include "geoscout/workflow.hpp"

namespace fs = std::filesystem;
using namespace geoscout;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error:
    case ErrorCode::validation:
    case ErrorCode::precondition: return kExitValidation;
    default: return kExitRuntime;
  }
}

std::string describe(const Error& e) {
  std::string message = e.what();
  if (e.offset() && message.find("offset") == std::string::npos) {
    message += " at offset " + std::to_string(*e.offset());
  }
  if (e.field().empty() || message.rfind(e.field(), 0) == 0) return message;
  return e.field() + ": " + message;
}

int report_error(const Error& e) {
  std::cerr << "error: " << describe(e) << "\n";
  return exit_code_for(e);
}

BandKind kind_arg(const std::string& text) {
  try {
    return parse_band_kind(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::validation, "--kind: " + std::string(e.what()), "kind");
  }
}

Date date_arg(const std::string& text, const std::string& what) {
  const auto date = Date::parse(text);
  if (!date) throw Error(ErrorCode::validation, what + ": unparseable date '" + text + "'");
  return *date;
}

// ---------------------------------------------------------------------------

struct CatalogInitArgs {
  std::string catalog;
  std::string crs;
};

int cmd_catalog_init(const CatalogInitArgs& a) {
  Catalog::create(a.catalog, a.crs);
  std::cout << "created catalog at " << a.catalog << " (" << a.crs << ")\n";
  return kExitOk;
}

struct IngestArgs {
  std::string catalog;
  std::string product, band, date, kind, file;
  std::string manifest;
  bool keep_going = false;
};

int ingest_manifest(Catalog& catalog, const IngestArgs& a) {
  std::ifstream in(a.manifest);
  if (!in) throw Error(ErrorCode::io, "cannot read manifest '" + a.manifest + "'");
  const fs::path base = fs::path(a.manifest).parent_path();
  std::string line;
  std::size_t line_no = 0, rows = 0, ok = 0;
  int status = kExitOk;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    try {
      std::vector<std::string> cols;
      std::stringstream ss(line);
      for (std::string col; std::getline(ss, col, '\t');) cols.push_back(col);
      if (cols.size() != 5) {
        throw Error(ErrorCode::validation, "expected 5 tab-separated columns (product band date kind path), found " +
                                               std::to_string(cols.size()));
      }
      fs::path file = cols[4];
      if (file.is_relative()) file = base / file;
      catalog.ingest(cols[0], cols[1], date_arg(cols[2], "date"), kind_arg(cols[3]), file);
      ++ok;
    } catch (const Error& e) {
      std::cerr << "error: " << a.manifest << ":" << line_no << ": " << describe(e) << "\n";
      status = std::max(status, kExitRuntime);
      if (!a.keep_going) break;
    }
  }
  std::cout << "ingested " << ok << " of " << rows << " manifest rows\n";
  return status;
}

int cmd_catalog_ingest(const IngestArgs& a) {
  auto catalog = Catalog::open(a.catalog);
  if (!a.manifest.empty()) return ingest_manifest(*catalog, a);
  if (a.product.empty() || a.band.empty() || a.date.empty() || a.file.empty()) {
    throw Error(ErrorCode::validation, "either --manifest or all of --product --band --date --file are required");
  }
  const CatalogEntry e = catalog->ingest(a.product, a.band, date_arg(a.date, "--date"),
                                         kind_arg(a.kind.empty() ? "continuous" : a.kind), a.file);
  std::cout << "ingested " << e.product_id << ":" << e.band << ":" << e.timestamp.iso() << " -> "
            << e.path.generic_string() << "\n";
  return kExitOk;
}

int cmd_catalog_list(const std::string& root, bool json) {
  auto catalog = Catalog::open(root);
  const auto products = catalog->list_products();
  if (json) {
    std::cout << to_json(products).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "catalog " << root << " (" << catalog->crs_id() << ")\n";
  for (const auto& p : products) {
    std::cout << p.product_id << "  [" << p.first.iso() << " .. " << p.last.iso() << "]\n";
    for (const auto& b : p.bands) {
      std::cout << "  " << b.band << "  " << to_string(b.kind) << "  " << b.count << " image(s)  ["
                << b.first.iso() << " .. " << b.last.iso() << "]\n";
    }
  }
  return kExitOk;
}

int cmd_validate(const std::string& file, bool draft) {
  const Template t = read_template(file, draft ? TemplateMode::draft : TemplateMode::runnable);
  std::cout << "ok: " << t.name << " (" << t.aliases.size() << " aliases, " << t.features.size()
            << " features)\n";
  return kExitOk;
}

struct RunArgs {
  std::string template_file;
  std::string catalog;
  std::string out;
  std::string report;
  std::string evaluate;
};

int cmd_run(const RunArgs& a) {
  const Template t = read_template(a.template_file, TemplateMode::runnable);
  const bool cluster = std::holds_alternative<ClusterConfig>(*t.operation);
  if (!a.evaluate.empty() && !cluster) {
    throw Error(ErrorCode::validation, "--evaluate requires a cluster template");
  }
  const std::string out = !a.out.empty() ? a.out : t.output.raster.value_or("");
  if (out.empty()) throw Error(ErrorCode::validation, "--out is required (template has no output.raster)");

  auto catalog = Catalog::open(a.catalog);
  const auto started = std::chrono::steady_clock::now();
  const AnalysisResult result = run_template(t, *catalog);
  write_raster(result.band, out);

  std::string report_path;
  if (!a.evaluate.empty()) {
    const Band response = read_raster(a.evaluate);
    const ZoneEvalReport report = evaluate_template_zones(result, response);
    report_path = !a.report.empty() ? a.report
                  : t.output.report ? *t.output.report
                                    : fs::path(out).replace_extension(".report.json").string();
    write_file_atomic(report_path, to_json(report).dump(2) + "\n");
  } else if (!a.report.empty()) {
    write_file_atomic(a.report, result_metadata(result).dump(2) + "\n");
    report_path = a.report;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3fs", seconds);
  std::cout << (cluster ? "cluster k=" + std::to_string(std::get<ClusterConfig>(*t.operation).k)
                        : "similarity metric=" +
                              std::string(to_string(std::get<SimilarityConfig>(*t.operation).metric)))
            << " valid_pixels=" << result.valid_pixels << " time=" << timing << " out=" << out;
  if (!report_path.empty()) std::cout << " report=" << report_path;
  std::cout << "\n";
  return kExitOk;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string catalog;
  std::size_t workers = 0;
  double session_ttl_minutes = 60.0;
  double drain_timeout_seconds = 30.0;
};

int cmd_serve(const ServeArgs& a) {
  // Block termination signals in every thread; a dedicated thread waits for
  // them and performs the drain.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGINT);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::shared_ptr<const Catalog> catalog = Catalog::open(a.catalog);
  ServiceConfig config;
  config.workers = a.workers;
  config.session_ttl = std::chrono::milliseconds(static_cast<std::int64_t>(a.session_ttl_minutes * 60'000.0));
  Service service(catalog, config);

  int port = a.port;
  if (port == 0) {
    port = service.bind_to_any_port(a.host);
    if (port < 0) throw Error(ErrorCode::io, "cannot bind " + a.host);
  } else if (!service.bind(a.host, port)) {
    throw Error(ErrorCode::io, "cannot bind " + a.host + ":" + std::to_string(port) +
                                   " (address already in use or not permitted)");
  }

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "received " << (sig == SIGTERM ? "SIGTERM" : "SIGINT") << ", draining jobs\n";
    const auto timeout = std::chrono::milliseconds(static_cast<std::int64_t>(a.drain_timeout_seconds * 1000.0));
    if (service.drain(timeout)) {
      std::cerr << "drained\n";
    } else {
      std::cerr << "drain timed out; remaining jobs cancelled\n";
    }
    service.stop();
  });

  std::cout << "listening on http://" << a.host << ":" << port << std::endl;
  service.listen();
  waiter.join();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoscout - local raster feature exploration: catalog, templates, clustering and similarity"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "Manage a local raster catalog");
  catalog_cmd->require_subcommand(1);

  CatalogInitArgs init_args;
  auto* init = catalog_cmd->add_subcommand("init", "Create an empty catalog");
  init->add_option("--catalog", init_args.catalog, "Catalog directory")->required();
  init->add_option("--crs", init_args.crs, "CRS identifier shared by all rasters, e.g. EPSG:32735")->required();

  IngestArgs ingest_args;
  auto* ingest = catalog_cmd->add_subcommand("ingest", "Add GeoTIFF rasters to a catalog");
  ingest->add_option("--catalog", ingest_args.catalog, "Catalog directory")->required();
  ingest->add_option("--product", ingest_args.product, "Product id");
  ingest->add_option("--band", ingest_args.band, "Band name");
  ingest->add_option("--date", ingest_args.date, "Acquisition date (DD/MM/YYYY or YYYY-MM-DD)");
  ingest->add_option("--kind", ingest_args.kind, "continuous (default) or categorical");
  ingest->add_option("--file", ingest_args.file, "GeoTIFF to ingest");
  ingest->add_option("--manifest", ingest_args.manifest,
                     "Tab-separated rows: product band date kind path (paths relative to the manifest)");
  ingest->add_flag("--keep-going", ingest_args.keep_going, "Continue after failed manifest rows");

  std::string list_root;
  bool list_json = false;
  auto* list = catalog_cmd->add_subcommand("list", "List products and bands");
  list->add_option("--catalog", list_root, "Catalog directory")->required();
  list->add_flag("--json", list_json, "Print JSON");

  std::string validate_file;
  bool validate_draft = false;
  auto* validate = app.add_subcommand("validate", "Validate a template file");
  validate->add_option("--template", validate_file, "Template JSON")->required();
  validate->add_flag("--draft", validate_draft, "Accept incomplete (not yet runnable) templates");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a template's operation headlessly");
  run->add_option("--template", run_args.template_file, "Template JSON")->required();
  run->add_option("--catalog", run_args.catalog, "Catalog directory")->required();
  run->add_option("--out", run_args.out, "Result GeoTIFF (defaults to the template's output.raster)");
  run->add_option("--report", run_args.report, "Report JSON path");
  run->add_option("--evaluate", run_args.evaluate, "Response raster for zone evaluation (cluster templates)");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--host", serve_args.host, "Listen address")->envname("GEOSCOUT_HOST")->capture_default_str();
  serve->add_option("--port", serve_args.port, "Listen port (0 = any free port)")
      ->envname("GEOSCOUT_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve->add_option("--catalog", serve_args.catalog, "Catalog directory")->envname("GEOSCOUT_CATALOG")->required();
  serve->add_option("--workers", serve_args.workers, "Job worker threads (0 = hardware concurrency)")
      ->envname("GEOSCOUT_WORKERS")
      ->capture_default_str();
  serve->add_option("--session-ttl", serve_args.session_ttl_minutes, "Idle session lifetime in minutes")
      ->envname("GEOSCOUT_SESSION_TTL")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve->add_option("--drain-timeout", serve_args.drain_timeout_seconds,
                    "Seconds to wait for running jobs on SIGTERM")
      ->envname("GEOSCOUT_DRAIN_TIMEOUT")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (init->parsed()) return cmd_catalog_init(init_args);
    if (ingest->parsed()) return cmd_catalog_ingest(ingest_args);
    if (list->parsed()) return cmd_catalog_list(list_root, list_json);
    if (validate->parsed()) return cmd_validate(validate_file, validate_draft);
    if (run->parsed()) return cmd_run(run_args);
    if (serve->parsed()) return cmd_serve(serve_args);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
