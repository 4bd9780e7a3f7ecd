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

#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

#include "geoscout/catalog.hpp"

namespace geoscout {

struct ServiceConfig {
  std::size_t workers = 0;  // 0 → hardware concurrency
  std::chrono::milliseconds session_ttl = std::chrono::minutes(60);
  std::size_t http_threads = 8;
};

/// HTTP/JSON front-end over a catalog: in-memory sessions holding a draft
/// template, a background job pool, layer rendering and result downloads.
class Service {
 public:
  Service(std::shared_ptr<const Catalog> catalog, ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Returns false if the address cannot be bound (e.g. port in use).
  bool bind(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1.
  int bind_to_any_port(const std::string& host);
  /// Serves until stop(); requires a prior successful bind.
  void listen();
  void stop();
  bool is_running() const;

  /// Refuses new jobs and waits for queued/running ones up to `timeout`.
  /// Jobs still unfinished afterwards are cancelled. Returns true when all
  /// jobs finished on their own.
  bool drain(std::chrono::milliseconds timeout);

  /// Drops sessions idle for longer than the TTL; returns how many.
  std::size_t evict_idle();
  std::size_t session_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace geoscout
