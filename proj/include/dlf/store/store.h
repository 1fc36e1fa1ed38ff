/*
 * Copyright 2026 The Dataset Lifecycle Framework Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dlf/store/object.h"

namespace dlf {

enum class StoreErrc { kAlreadyExists, kNotFound, kConflict, kInvalidObject, kSequenceExpired };

class StoreError : public std::runtime_error {
 public:
  StoreError(StoreErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  StoreErrc code() const { return code_; }

 private:
  StoreErrc code_;
};

enum class EventType { kAdded, kModified, kDeleted };
std::string_view to_string(EventType t);

struct WatchEvent {
  std::int64_t sequence = 0;
  EventType type = EventType::kAdded;
  StoredObject object;
};

enum class DeletionOutcome { kRemoved, kTerminatingPending };

struct StoreOptions {
  std::size_t history_limit = 10000;
};

struct ListResult {
  std::vector<StoredObject> items;
  std::int64_t sequence = 0;  // store sequence the listing is consistent with
};

class Store;

// Pull-based ordered event stream over one kind (and optionally one
// namespace). Each Watch owns its cursor; any number may read concurrently.
class Watch {
 public:
  // Next matching event, or nullopt on timeout / store shutdown.
  // Throws StoreError(kSequenceExpired) if history needed by the cursor was
  // trimmed.
  std::optional<WatchEvent> next(std::chrono::milliseconds timeout);

  std::int64_t cursor() const { return cursor_; }

 private:
  friend class Store;
  Watch(const Store* store, Kind kind, std::string ns, std::int64_t from)
      : store_(store), kind_(kind), ns_(std::move(ns)), cursor_(from) {}

  const Store* store_;
  Kind kind_;
  std::string ns_;
  std::int64_t cursor_;
};

// In-memory cluster API. All operations are atomic with respect to each other
// and are totally ordered by a store-wide sequence number.
class Store {
 public:
  explicit Store(StoreOptions options = {});
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;
  ~Store();

  // Assigns uid and resourceVersion=1. Errors: kAlreadyExists, kInvalidObject.
  StoredObject create(StoredObject obj);

  // Applies iff expected_version equals the live resourceVersion. uid and
  // deletion_requested cannot be changed by the caller. An update that leaves
  // a deletion-requested object without finalizers removes it (Deleted event).
  // Errors: kNotFound, kConflict, kInvalidObject.
  StoredObject update(StoredObject obj, std::int64_t expected_version);

  // Errors: kNotFound.
  DeletionOutcome remove(Kind kind, const std::string& ns, const std::string& name);

  std::optional<StoredObject> get(Kind kind, const std::string& ns, const std::string& name) const;

  // Empty ns lists across all namespaces.
  std::vector<StoredObject> list(Kind kind, const std::string& ns, const Labels& selector = {}) const;
  ListResult list_at(Kind kind, const std::string& ns, const Labels& selector = {}) const;

  // Replays events with sequence > from_sequence, then follows live events.
  // Errors: kSequenceExpired (history trimmed), kInvalidObject (from > now).
  Watch watch(Kind kind, const std::string& ns, std::int64_t from_sequence) const;

  std::int64_t sequence() const;
  std::uint64_t mutation_count(Kind kind) const;
  std::vector<WatchEvent> history() const;

  // Every live object, ordered by (kind, namespace, name).
  std::vector<StoredObject> snapshot() const;
  // Loads objects verbatim (uids and versions preserved). Store must be empty.
  void restore(const std::vector<StoredObject>& objects);

  // Wakes blocked watchers; subsequent next() calls return nullopt.
  void close();

 private:
  friend class Watch;
  using Key = std::tuple<Kind, std::string, std::string>;

  void emit_locked(EventType type, const StoredObject& obj);
  std::string next_uid_locked();

  StoreOptions options_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::map<Key, StoredObject> objects_;
  std::deque<WatchEvent> history_;
  std::int64_t sequence_ = 0;
  std::uint64_t uid_counter_ = 0;
  std::map<Kind, std::uint64_t> mutations_;
  bool closed_ = false;
};

}  // namespace dlf
