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

#include "tracespl/session_store.hpp"

#include "tracespl/digest.hpp"

#include <algorithm>

namespace tracespl {

namespace {

constexpr std::size_t kSessionIdBytes = 18;

}  // namespace

SessionStore::SessionStore(SessionStoreOptions options) : options_(std::move(options))
{
  if (options_.capacity == 0)
  {
    options_.capacity = 1;
  }
}

std::chrono::steady_clock::time_point SessionStore::now() const
{
  return options_.clock ? options_.clock() : std::chrono::steady_clock::now();
}

void SessionStore::bury(std::string const &id)
{
  if (tombstones_.insert(id).second)
  {
    tombstone_order_.push_back(id);
  }
  std::size_t const limit = 4 * options_.capacity;
  while (tombstone_order_.size() > limit)
  {
    tombstones_.erase(tombstone_order_.front());
    tombstone_order_.pop_front();
  }
}

std::size_t SessionStore::sweep_locked(std::chrono::steady_clock::time_point t)
{
  std::size_t dropped = 0;
  for (auto it = live_.begin(); it != live_.end();)
  {
    if (t - it->second.last_access >= options_.ttl)
    {
      bury(it->first);
      it = live_.erase(it);
      ++dropped;
    }
    else
    {
      ++it;
    }
  }
  return dropped;
}

std::string SessionStore::create(std::string model_name, Configuration config)
{
  auto session = std::make_shared<Session>(std::move(model_name), std::move(config));
  std::lock_guard lock(mutex_);
  auto const      t = now();
  sweep_locked(t);
  while (live_.size() >= options_.capacity)
  {
    auto oldest = std::min_element(live_.begin(), live_.end(), [](auto const &a, auto const &b) {
      return a.second.last_access < b.second.last_access;
    });
    bury(oldest->first);
    live_.erase(oldest);
  }
  std::string id;
  do
  {
    id = random_token(kSessionIdBytes);
  } while (live_.contains(id) || tombstones_.contains(id));
  live_.emplace(id, Entry{std::move(session), t, t});
  return id;
}

std::pair<SessionLookup, std::shared_ptr<Session>> SessionStore::acquire(std::string const &id)
{
  std::lock_guard lock(mutex_);
  auto const      t  = now();
  auto            it = live_.find(id);
  if (it == live_.end())
  {
    return {tombstones_.contains(id) ? SessionLookup::Expired : SessionLookup::Unknown, nullptr};
  }
  if (t - it->second.last_access >= options_.ttl)
  {
    bury(id);
    live_.erase(it);
    return {SessionLookup::Expired, nullptr};
  }
  it->second.last_access = t;
  return {SessionLookup::Found, it->second.session};
}

bool SessionStore::erase(std::string const &id)
{
  std::lock_guard lock(mutex_);
  if (live_.erase(id) == 0)
  {
    return false;
  }
  bury(id);
  return true;
}

std::size_t SessionStore::size() const
{
  std::lock_guard lock(mutex_);
  return live_.size();
}

std::size_t SessionStore::sweep()
{
  std::lock_guard lock(mutex_);
  return sweep_locked(now());
}

}  // namespace tracespl
