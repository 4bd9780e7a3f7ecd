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

#include "geoscout/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "geoscout/error.hpp"
#include "geoscout/io.hpp"
#include "geoscout/json_codec.hpp"
#include "geoscout/raster_ops.hpp"
#include "geoscout/template.hpp"
#include "geoscout/workflow.hpp"

namespace geoscout {
namespace {

using Clock = std::chrono::steady_clock;

constexpr const char* kJson = "application/json";
constexpr std::size_t kMaxRenderSide = 4096;

struct Session {
  std::string id;
  std::mutex mutex;  // serializes mutations of `tmpl`
  Template tmpl;
  LayerCache cache;
  Clock::time_point last_used;
};

enum class JobStatus { queued, running, done, failed };

const char* to_string(JobStatus s) {
  switch (s) {
    case JobStatus::queued: return "queued";
    case JobStatus::running: return "running";
    case JobStatus::done: return "done";
    case JobStatus::failed: return "failed";
  }
  return "failed";
}

struct Job {
  std::string id;
  std::string kind;  // cluster | similarity | evaluate
  std::shared_ptr<Session> session;
  Template snapshot;
  std::string response;  // evaluate jobs: response layer name

  std::atomic<bool> cancel{false};
  mutable std::mutex mutex;
  JobStatus status = JobStatus::queued;
  double progress = 0.0;
  std::optional<Error> error;
  std::shared_ptr<const AnalysisResult> result;
  std::optional<Json> report;
};

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::conflict:
    case ErrorCode::precondition:
    case ErrorCode::cancelled: return 409;
    case ErrorCode::invalid_argument:
    case ErrorCode::parse_error:
    case ErrorCode::validation:
    case ErrorCode::empty_domain: return 422;
    case ErrorCode::io:
    case ErrorCode::unsupported: return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const Error& e) { send_json(res, status, error_body(e)); }

// Unparseable request bodies are a 400, unlike DSL/template errors (422).
struct MalformedBody : Error {
  using Error::Error;
};

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw MalformedBody(ErrorCode::parse_error, std::string("malformed JSON body: ") + e.what(), {}, e.byte);
  }
}

std::string body_string(const Json& body, const std::string& key) {
  if (!body.is_object()) throw Error(ErrorCode::validation, "request body must be an object", "$");
  for (const auto& [k, v] : body.items()) {
    if (k != key) throw Error(ErrorCode::validation, k + ": unknown field", k);
  }
  if (!body.contains(key) || !body[key].is_string()) {
    throw Error(ErrorCode::validation, key + ": string expected", key);
  }
  return body[key].get<std::string>();
}

std::optional<double> query_number(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const std::string text = req.get_param_value(key);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::validation, std::string(key) + ": number expected", key);
  }
  return v;
}

std::optional<std::size_t> query_size(const httplib::Request& req, const char* key) {
  const auto v = query_number(req, key);
  if (!v) return std::nullopt;
  if (*v < 1 || *v > static_cast<double>(kMaxRenderSide) || std::floor(*v) != *v) {
    throw Error(ErrorCode::validation,
                std::string(key) + ": integer between 1 and " + std::to_string(kMaxRenderSide) + " expected", key);
  }
  return static_cast<std::size_t>(*v);
}

// Window grid for a render request; defaults to the full band extent.
Grid render_window(const httplib::Request& req, const Grid& full) {
  Grid window = full;
  double min_x = full.min_x(), min_y = full.min_y(), max_x = full.max_x(), max_y = full.max_y();
  if (req.has_param("bbox")) {
    const std::string text = req.get_param_value("bbox");
    double v[4];
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 4; ++i) {
      const auto [ptr, ec] = std::from_chars(p, end, v[i]);
      const bool sep_ok = i == 3 ? ptr == end : (ptr != end && *ptr == ',');
      if (ec != std::errc() || !sep_ok || !std::isfinite(v[i])) {
        throw Error(ErrorCode::validation, "bbox: expected minx,miny,maxx,maxy", "bbox");
      }
      p = ptr + 1;
    }
    if (!(v[0] < v[2] && v[1] < v[3])) throw Error(ErrorCode::validation, "bbox: empty box", "bbox");
    min_x = v[0], min_y = v[1], max_x = v[2], max_y = v[3];
  }
  window.width = query_size(req, "width").value_or(req.has_param("bbox") ? std::min(full.width, kMaxRenderSide)
                                                                          : full.width);
  window.height = query_size(req, "height").value_or(
      req.has_param("bbox") ? std::min(full.height, kMaxRenderSide) : full.height);
  window.origin_x = min_x;
  window.origin_y = max_y;
  window.pixel_size_x = (max_x - min_x) / static_cast<double>(window.width);
  window.pixel_size_y = (max_y - min_y) / static_cast<double>(window.height);
  if (window.width == full.width && window.height == full.height && !req.has_param("bbox")) return full;
  return window;
}

Json job_json(const Job& job) {
  std::lock_guard lock(job.mutex);
  Json out{{"id", job.id},
           {"session_id", job.session->id},
           {"kind", job.kind},
           {"status", to_string(job.status)},
           {"progress", job.progress}};
  if (job.error) out["error"] = error_body(*job.error);
  if (job.result) out["result"] = result_metadata(*job.result);
  return out;
}

}  // namespace

struct Service::Impl {
  Impl(std::shared_ptr<const Catalog> c, ServiceConfig cfg) : catalog(std::move(c)), config(cfg) {
    if (config.workers == 0) config.workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t i = 0; i < config.workers; ++i) workers.emplace_back([this] { worker_loop(); });
    const std::size_t threads = std::max<std::size_t>(config.http_threads, 2);
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    // The library default sets SO_REUSEPORT, which lets a second server bind
    // an occupied port; only allow quick rebinds after a restart.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    routes();
  }

  ~Impl() {
    server.stop();
    {
      std::lock_guard lock(queue_mutex);
      shutting_down = true;
      for (auto& [id, job] : jobs) job->cancel = true;
    }
    queue_cv.notify_all();
    for (auto& t : workers) t.join();
  }

  // -- ids, sessions, jobs ----------------------------------------------------

  std::string new_id() {
    std::lock_guard lock(id_mutex);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < 2; ++i) {
      std::uint64_t v = rng();
      for (int j = 0; j < 16; ++j, v >>= 4) out += kHex[v & 0xf];
    }
    return out;
  }

  std::size_t sweep_locked(Clock::time_point now) {
    std::size_t n = 0;
    for (auto it = sessions.begin(); it != sessions.end();) {
      if (now - it->second->last_used > config.session_ttl) {
        it = sessions.erase(it);
        ++n;
      } else {
        ++it;
      }
    }
    return n;
  }

  std::shared_ptr<Session> session(const std::string& id) {
    std::lock_guard lock(sessions_mutex);
    const auto now = Clock::now();
    sweep_locked(now);
    const auto it = sessions.find(id);
    if (it == sessions.end()) throw Error(ErrorCode::not_found, "unknown session '" + id + "'");
    it->second->last_used = now;
    return it->second;
  }

  std::shared_ptr<Job> job(const std::string& id) {
    std::lock_guard lock(queue_mutex);
    const auto it = jobs.find(id);
    if (it == jobs.end()) throw Error(ErrorCode::not_found, "unknown job '" + id + "'");
    return it->second;
  }

  Template snapshot(Session& s) {
    std::lock_guard lock(s.mutex);
    return s.tmpl;
  }

  // -- worker pool ------------------------------------------------------------

  void worker_loop() {
    for (;;) {
      std::shared_ptr<Job> j;
      {
        std::unique_lock lock(queue_mutex);
        queue_cv.wait(lock, [this] { return shutting_down || !queue.empty(); });
        if (shutting_down) return;
        j = std::move(queue.front());
        queue.pop_front();
        ++running;
      }
      execute(*j);
      {
        std::lock_guard lock(queue_mutex);
        --running;
      }
      idle_cv.notify_all();
    }
  }

  void execute(Job& j) {
    {
      std::lock_guard lock(j.mutex);
      if (j.status != JobStatus::queued) return;  // cancelled while queued
      j.status = JobStatus::running;
    }
    const auto progress = [&j](double f) {
      if (j.cancel) throw Error(ErrorCode::cancelled, "cancelled");
      std::lock_guard lock(j.mutex);
      j.progress = std::max(j.progress, std::min(f, 1.0));
    };
    try {
      RunOptions options{progress, &j.session->cache};
      auto result = std::make_shared<const AnalysisResult>(run_template(j.snapshot, *catalog, options));
      std::optional<Json> report;
      if (j.kind == "evaluate") {
        const auto response = evaluate_layer(j.snapshot, *catalog, j.response, {{}, &j.session->cache});
        report = to_json(evaluate_template_zones(*result, *response));
      }
      std::lock_guard lock(j.mutex);
      if (j.status != JobStatus::running) return;
      j.result = std::move(result);
      j.report = std::move(report);
      j.progress = 1.0;
      j.status = JobStatus::done;
    } catch (const Error& e) {
      fail(j, e);
    } catch (const std::exception& e) {
      fail(j, Error(ErrorCode::io, e.what()));
    }
  }

  static void fail(Job& j, const Error& e) {
    std::lock_guard lock(j.mutex);
    if (j.status != JobStatus::running) return;
    j.status = JobStatus::failed;
    j.error = e;
  }

  static bool cancel_job(Job& j) {
    j.cancel = true;
    std::lock_guard lock(j.mutex);
    if (j.status == JobStatus::done || j.status == JobStatus::failed) return false;
    j.status = JobStatus::failed;
    j.error = Error(ErrorCode::cancelled, "cancelled");
    return true;
  }

  bool drain(std::chrono::milliseconds timeout) {
    std::unique_lock lock(queue_mutex);
    accepting = false;
    const bool finished =
        idle_cv.wait_for(lock, timeout, [this] { return queue.empty() && running == 0; });
    if (!finished) {
      for (auto& [id, j] : jobs) cancel_job(*j);
      queue.clear();
      idle_cv.wait_for(lock, std::chrono::seconds(5), [this] { return running == 0; });
    }
    return finished;
  }

  // -- layers -----------------------------------------------------------------

  std::shared_ptr<const Band> layer(Session& s, const std::string& name) {
    {
      std::lock_guard lock(queue_mutex);
      const auto it = jobs.find(name);
      if (it != jobs.end() && it->second->session.get() == &s) {
        std::lock_guard job_lock(it->second->mutex);
        if (!it->second->result) throw Error(ErrorCode::precondition, "job '" + name + "' has no result yet");
        return std::shared_ptr<const Band>(it->second->result, &it->second->result->band);
      }
    }
    return evaluate_layer(snapshot(s), *catalog, name, {{}, &s.cache});
  }

  // -- routes -----------------------------------------------------------------

  template <typename Fn>
  httplib::Server::Handler guard(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const MalformedBody& e) {
        send_error(res, 400, e);
      } catch (const Error& e) {
        send_error(res, http_status(e.code()), e);
      } catch (const Json::exception& e) {
        send_error(res, 400, Error(ErrorCode::parse_error, e.what()));
      } catch (const std::exception& e) {
        send_error(res, 500, Error(ErrorCode::io, e.what()));
      }
    };
  }

  void mutate_template(Session& s, const std::function<void(Template&)>& change) {
    std::lock_guard lock(s.mutex);
    Template next = s.tmpl;
    change(next);
    validate_template(next, TemplateMode::draft);
    s.tmpl = std::move(next);
  }

  void routes() {
    server.Post("/api/sessions", guard([this](const httplib::Request&, httplib::Response& res) {
                  auto s = std::make_shared<Session>();
                  s->id = new_id();
                  s->tmpl.name = "session-" + s->id.substr(0, 8);
                  s->tmpl.crs_id = catalog->crs_id();
                  s->last_used = Clock::now();
                  {
                    std::lock_guard lock(sessions_mutex);
                    sweep_locked(s->last_used);
                    sessions.emplace(s->id, s);
                  }
                  send_json(res, 201, Json{{"id", s->id}});
                }));

    server.Get(R"(/api/sessions/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req.matches[1]);
                 const Template t = snapshot(*s);
                 send_json(res, 200,
                           Json{{"id", s->id},
                                {"state_hash", template_state_hash(t)},
                                {"aliases", t.aliases},
                                {"features", t.features}});
               }));

    server.Delete(R"(/api/sessions/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
                    std::lock_guard lock(sessions_mutex);
                    if (!sessions.erase(req.matches[1])) {
                      throw Error(ErrorCode::not_found, "unknown session '" + std::string(req.matches[1]) + "'");
                    }
                    res.status = 204;
                  }));

    server.Get("/api/catalog/products", guard([this](const httplib::Request&, httplib::Response& res) {
                 send_json(res, 200, to_json(catalog->list_products()));
               }));

    server.Get(R"(/api/sessions/([^/]+)/template)",
               guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req.matches[1]);
                 res.set_content(serialize_template(snapshot(*s)), kJson);
               }));

    server.Put(R"(/api/sessions/([^/]+)/template)",
               guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req.matches[1]);
                 Template t = parse_template(req.body, TemplateMode::draft);
                 if (t.crs_id != catalog->crs_id()) {
                   throw Error(ErrorCode::validation,
                               "crs_id: template CRS '" + t.crs_id + "' differs from catalog CRS '" +
                                   catalog->crs_id() + "'",
                               "crs_id");
                 }
                 const std::string hash = template_state_hash(t);
                 {
                   std::lock_guard lock(s->mutex);
                   s->tmpl = std::move(t);
                 }
                 send_json(res, 200, Json{{"state_hash", hash}});
               }));

    server.Post(R"(/api/sessions/([^/]+)/aliases)",
                guard([this](const httplib::Request& req, httplib::Response& res) {
                  auto s = session(req.matches[1]);
                  const std::string text = body_string(parse_body(req), "text");
                  AliasSpec spec;
                  try {
                    spec = parse_alias(text);
                  } catch (const Error& e) {
                    throw e.with_field_prefix("text");
                  }
                  mutate_template(*s, [&](Template& t) {
                    const TemplateDsl dsl = parse_template_dsl(t);
                    for (const auto& a : dsl.aliases) {
                      if (a.name == spec.name) throw Error(ErrorCode::conflict, "alias '" + spec.name + "' already exists", "text");
                    }
                    for (const auto& f : dsl.features) {
                      if (f.name == spec.name) {
                        throw Error(ErrorCode::conflict, "alias name '" + spec.name + "' collides with a feature", "text");
                      }
                    }
                    t.aliases.push_back(to_string(spec));
                  });
                  send_json(res, 201, Json{{"alias", to_json(spec)}, {"stats", nullptr}});
                }));

    server.Post(R"(/api/sessions/([^/]+)/features)",
                guard([this](const httplib::Request& req, httplib::Response& res) {
                  auto s = session(req.matches[1]);
                  const std::string text = body_string(parse_body(req), "text");
                  FeatureSpec spec;
                  mutate_template(*s, [&](Template& t) {
                    const TemplateDsl dsl = parse_template_dsl(t);
                    std::set<std::string> known;
                    for (const auto& a : dsl.aliases) known.insert(a.name);
                    try {
                      spec = parse_feature(text, known);
                    } catch (const Error& e) {
                      throw e.with_field_prefix("text");
                    }
                    for (const auto& f : dsl.features) {
                      if (f.name == spec.name) {
                        throw Error(ErrorCode::conflict, "feature '" + spec.name + "' already exists", "text");
                      }
                    }
                    t.features.push_back(to_string(spec));
                  });
                  send_json(res, 201, Json{{"feature", to_json(spec)}});
                }));

    server.Delete(R"(/api/sessions/([^/]+)/aliases/([^/]+))",
                  guard([this](const httplib::Request& req, httplib::Response& res) {
                    auto s = session(req.matches[1]);
                    const std::string name = req.matches[2];
                    mutate_template(*s, [&](Template& t) {
                      const TemplateDsl dsl = parse_template_dsl(t);
                      for (const auto& f : dsl.features) {
                        if (referenced_aliases(*f.expr).count(name)) {
                          throw Error(ErrorCode::conflict,
                                      "alias '" + name + "' is referenced by feature '" + f.name + "'");
                        }
                      }
                      for (std::size_t i = 0; i < dsl.aliases.size(); ++i) {
                        if (dsl.aliases[i].name == name) {
                          t.aliases.erase(t.aliases.begin() + static_cast<std::ptrdiff_t>(i));
                          return;
                        }
                      }
                      throw Error(ErrorCode::not_found, "unknown alias '" + name + "'");
                    });
                    res.status = 204;
                  }));

    server.Delete(R"(/api/sessions/([^/]+)/features/([^/]+))",
                  guard([this](const httplib::Request& req, httplib::Response& res) {
                    auto s = session(req.matches[1]);
                    const std::string name = req.matches[2];
                    mutate_template(*s, [&](Template& t) {
                      const TemplateDsl dsl = parse_template_dsl(t);
                      for (std::size_t i = 0; i < dsl.features.size(); ++i) {
                        if (dsl.features[i].name == name) {
                          t.features.erase(t.features.begin() + static_cast<std::ptrdiff_t>(i));
                          return;
                        }
                      }
                      throw Error(ErrorCode::not_found, "unknown feature '" + name + "'");
                    });
                    res.status = 204;
                  }));

    server.Post(R"(/api/sessions/([^/]+)/run)", guard([this](const httplib::Request& req, httplib::Response& res) {
                  auto s = session(req.matches[1]);
                  submit(s, req, res);
                }));

    server.Get(R"(/api/jobs/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, 200, job_json(*job(req.matches[1])));
               }));

    server.Post(R"(/api/jobs/([^/]+)/cancel)", guard([this](const httplib::Request& req, httplib::Response& res) {
                  auto j = job(req.matches[1]);
                  if (!cancel_job(*j)) throw Error(ErrorCode::conflict, "job '" + j->id + "' already finished");
                  idle_cv.notify_all();
                  send_json(res, 200, job_json(*j));
                }));

    server.Get(R"(/api/jobs/([^/]+)/result\.tif)",
               guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto j = job(req.matches[1]);
                 std::shared_ptr<const AnalysisResult> result;
                 {
                   std::lock_guard lock(j->mutex);
                   result = j->result;
                 }
                 if (!result) throw Error(ErrorCode::precondition, "job '" + j->id + "' is not done");
                 const auto bytes = encode_geotiff(result->band);
                 res.set_header("Content-Disposition", "attachment; filename=\"result.tif\"");
                 res.set_content(std::string(bytes.begin(), bytes.end()), "image/tiff");
               }));

    server.Get(R"(/api/jobs/([^/]+)/report)", guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto j = job(req.matches[1]);
                 if (j->kind != "evaluate") throw Error(ErrorCode::precondition, "only evaluate jobs produce a report");
                 std::lock_guard lock(j->mutex);
                 if (!j->report) throw Error(ErrorCode::precondition, "job '" + j->id + "' is not done");
                 send_json(res, 200, *j->report);
               }));

    server.Get(R"(/api/sessions/([^/]+)/render/([^/]+))",
               guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req.matches[1]);
                 const auto band = layer(*s, req.matches[2]);
                 const Palette palette =
                     band->kind() == BandKind::categorical ? Palette::categorical : Palette::continuous;
                 std::optional<double> lo = query_number(req, "min");
                 std::optional<double> hi = query_number(req, "max");
                 if (palette == Palette::continuous && (!lo || !hi)) {
                   // Defaults come from the full layer so windows share one colour scale.
                   if (const auto range = default_render_range(*band); range && range->first < range->second) {
                     if (!lo) lo = range->first;
                     if (!hi) hi = range->second;
                   }
                 }
                 const Band view = resample(*band, render_window(req, band->grid()));
                 const auto png = render_png(view, palette, lo, hi);
                 res.set_content(std::string(png.begin(), png.end()), "image/png");
               }));

    server.Get(R"(/api/sessions/([^/]+)/layers/([^/]+)/stats)",
               guard([this](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req.matches[1]);
                 const auto band = layer(*s, req.matches[2]);
                 send_json(res, 200, to_json(band_statistics(*band)));
               }));

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
      send_error(res, 500, Error(ErrorCode::io, "internal error"));
    });
  }

  void submit(const std::shared_ptr<Session>& s, const httplib::Request& req, httplib::Response& res) {
    Json body = req.body.empty() ? Json::object() : parse_body(req);
    if (!body.is_object()) throw Error(ErrorCode::validation, "request body must be an object", "$");
    for (const auto& [k, v] : body.items()) {
      if (k != "kind" && k != "operation" && k != "response") throw Error(ErrorCode::validation, k + ": unknown field", k);
    }
    Template t = snapshot(*s);
    if (body.contains("operation")) {
      // Reuse the template parser for the override so both paths validate identically.
      Json probe{{"version", kTemplateVersion}, {"name", "x"}, {"crs_id", "x"}, {"operation", body["operation"]}};
      t.operation = parse_template(probe.dump(), TemplateMode::draft).operation;
    }
    std::string kind;
    if (body.contains("kind")) {
      if (!body["kind"].is_string()) throw Error(ErrorCode::validation, "kind: string expected", "kind");
      kind = body["kind"].get<std::string>();
      if (kind != "cluster" && kind != "similarity" && kind != "evaluate") {
        throw Error(ErrorCode::validation, "kind: must be cluster, similarity or evaluate", "kind");
      }
    }
    const std::string op_kind =
        !t.operation ? "" : std::holds_alternative<ClusterConfig>(*t.operation) ? "cluster" : "similarity";
    if (kind.empty()) kind = op_kind;
    if (!op_kind.empty() && kind != "evaluate" && kind != op_kind) {
      throw Error(ErrorCode::precondition, "kind: session operation is " + op_kind, "kind");
    }
    if (kind == "evaluate" && op_kind != "cluster") {
      throw Error(ErrorCode::precondition, "operation: zone evaluation requires a cluster operation", "operation");
    }
    std::string response;
    if (kind == "evaluate") {
      if (!body.contains("response") || !body["response"].is_string()) {
        throw Error(ErrorCode::validation, "response: layer name expected", "response");
      }
      response = body["response"].get<std::string>();
    } else if (body.contains("response")) {
      throw Error(ErrorCode::validation, "response: only valid for evaluate jobs", "response");
    }

    TemplateDsl dsl;
    try {
      dsl = validate_template(t, TemplateMode::runnable);
    } catch (const Error& e) {
      throw Error(ErrorCode::precondition, e.what(), e.field(), e.offset());
    }
    if (t.crs_id != catalog->crs_id()) {
      throw Error(ErrorCode::precondition, "crs_id: session CRS differs from catalog CRS", "crs_id");
    }
    if (kind == "evaluate") {
      const bool known = std::any_of(dsl.aliases.begin(), dsl.aliases.end(), [&](const auto& a) { return a.name == response; }) ||
                         std::any_of(dsl.features.begin(), dsl.features.end(), [&](const auto& f) { return f.name == response; });
      if (!known) throw Error(ErrorCode::validation, "response: unknown layer '" + response + "'", "response");
    }

    auto j = std::make_shared<Job>();
    j->id = new_id();
    j->kind = kind;
    j->session = s;
    j->snapshot = std::move(t);
    j->response = std::move(response);
    {
      std::lock_guard lock(queue_mutex);
      if (!accepting) throw Error(ErrorCode::conflict, "service is shutting down");
      jobs.emplace(j->id, j);
      queue.push_back(j);
    }
    queue_cv.notify_one();
    send_json(res, 202, Json{{"job_id", j->id}, {"status", "queued"}});
  }

  std::shared_ptr<const Catalog> catalog;
  ServiceConfig config;
  httplib::Server server;

  std::mutex id_mutex;
  std::mt19937_64 rng{std::random_device{}()};

  mutable std::mutex sessions_mutex;
  std::map<std::string, std::shared_ptr<Session>> sessions;

  std::mutex queue_mutex;
  std::condition_variable queue_cv;
  std::condition_variable idle_cv;
  std::deque<std::shared_ptr<Job>> queue;
  std::map<std::string, std::shared_ptr<Job>> jobs;
  std::size_t running = 0;
  bool accepting = true;
  bool shutting_down = false;
  std::vector<std::thread> workers;
};

Service::Service(std::shared_ptr<const Catalog> catalog, ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(catalog), config)) {}

Service::~Service() = default;

bool Service::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

int Service::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

bool Service::is_running() const { return impl_->server.is_running(); }

bool Service::drain(std::chrono::milliseconds timeout) { return impl_->drain(timeout); }

std::size_t Service::evict_idle() {
  std::lock_guard lock(impl_->sessions_mutex);
  return impl_->sweep_locked(Clock::now());
}

std::size_t Service::session_count() const {
  std::lock_guard lock(impl_->sessions_mutex);
  return impl_->sessions.size();
}

}  // namespace geoscout
