//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include "tracespl/configurator.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace tracespl {

using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

struct Session
{
  Session(std::string model_name, Configuration config) : model_name(std::move(model_name)), config(std::move(config))
  {
  }

  /// Held for every read or write of `config`.
  std::mutex    mutex;
  std::string   model_name;
  Configuration config;
};

struct SessionStoreOptions
{
  std::chrono::seconds ttl{1800};
  std::size_t          capacity = 1024;
  /// Defaults to std::chrono::steady_clock::now.
  SteadyClock          clock;
};

enum class SessionLookup : std::uint8_t
{
  Found,
  Unknown,
  Expired
};

/**
 * In-memory sessions with idle expiry. Creating a session beyond capacity
 * evicts the session idle for longest. Ids of expired or evicted sessions
 * are remembered (bounded) so that lookups can tell "expired" from "never
 * existed".
 */
class SessionStore
{
public:
  explicit SessionStore(SessionStoreOptions options = {});

  std::string create(std::string model_name, Configuration config);

  /// Refreshes the idle timer on success.
  std::pair<SessionLookup, std::shared_ptr<Session>> acquire(std::string const &id);

  bool        erase(std::string const &id);
  std::size_t size() const;
  /// Drops every expired session; returns how many were dropped.
  std::size_t sweep();

private:
  struct Entry
  {
    std::shared_ptr<Session>              session;
    std::chrono::steady_clock::time_point created;
    std::chrono::steady_clock::time_point last_access;
  };

  std::chrono::steady_clock::time_point now() const;
  void bury(std::string const &id);
  std::size_t sweep_locked(std::chrono::steady_clock::time_point t);

  SessionStoreOptions                    options_;
  mutable std::mutex                     mutex_;
  std::unordered_map<std::string, Entry> live_;
  std::unordered_set<std::string>        tombstones_;
  std::deque<std::string>                tombstone_order_;
};

}  // namespace tracespl
