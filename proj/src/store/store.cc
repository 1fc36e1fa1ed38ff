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

#include "dlf/store/store.h"

#include <algorithm>
#include <cstdio>

namespace dlf {

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::kAdded: return "Added";
    case EventType::kModified: return "Modified";
    case EventType::kDeleted: return "Deleted";
  }
  return "?";
}

namespace {

std::string describe(Kind kind, const std::string& ns, const std::string& name) {
  std::string out(to_string(kind));
  out += ' ';
  if (!ns.empty()) out += ns + "/";
  return out + name;
}

void check_meta(const StoredObject& obj) {
  if (obj.payload.index() != static_cast<std::size_t>(obj.kind)) {
    throw StoreError(StoreErrc::kInvalidObject, "payload does not match kind " +
                                                    std::string(to_string(obj.kind)));
  }
  if (!is_dns_label(obj.meta.name)) {
    throw StoreError(StoreErrc::kInvalidObject, "invalid name '" + obj.meta.name + "'");
  }
  if (is_namespaced(obj.kind)) {
    if (!is_dns_label(obj.meta.ns)) {
      throw StoreError(StoreErrc::kInvalidObject, "invalid namespace '" + obj.meta.ns + "'");
    }
  } else if (!obj.meta.ns.empty()) {
    throw StoreError(StoreErrc::kInvalidObject,
                     std::string(to_string(obj.kind)) + " is cluster-scoped");
  }
}

}  // namespace

std::optional<WatchEvent> Watch::next(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::unique_lock lock(store_->mu_);
  for (;;) {
    if (store_->closed_) return std::nullopt;
    const auto& history = store_->history_;
    if (cursor_ < store_->sequence_) {
      if (history.empty() || history.front().sequence > cursor_ + 1) {
        throw StoreError(StoreErrc::kSequenceExpired,
                         "watch history expired at sequence " + std::to_string(cursor_));
      }
      auto start = static_cast<std::size_t>(cursor_ + 1 - history.front().sequence);
      for (std::size_t i = start; i < history.size(); ++i) {
        const WatchEvent& ev = history[i];
        cursor_ = ev.sequence;
        if (ev.object.kind == kind_ && (ns_.empty() || ev.object.meta.ns == ns_)) return ev;
      }
    }
    if (store_->cv_.wait_until(lock, deadline) == std::cv_status::timeout &&
        cursor_ >= store_->sequence_) {
      return std::nullopt;
    }
  }
}

Store::Store(StoreOptions options) : options_(options) {}

Store::~Store() { close(); }

std::string Store::next_uid_locked() {
  char buf[32];
  std::snprintf(buf, sizeof buf, "uid-%08llu", static_cast<unsigned long long>(++uid_counter_));
  return buf;
}

void Store::emit_locked(EventType type, const StoredObject& obj) {
  history_.push_back(WatchEvent{++sequence_, type, obj});
  while (history_.size() > options_.history_limit) history_.pop_front();
  ++mutations_[obj.kind];
  cv_.notify_all();
}

StoredObject Store::create(StoredObject obj) {
  check_meta(obj);
  std::lock_guard lock(mu_);
  Key key{obj.kind, obj.meta.ns, obj.meta.name};
  if (objects_.contains(key)) {
    throw StoreError(StoreErrc::kAlreadyExists,
                     describe(obj.kind, obj.meta.ns, obj.meta.name) + " already exists");
  }
  obj.meta.uid = next_uid_locked();
  obj.meta.resource_version = 1;
  obj.meta.deletion_requested = false;
  objects_.emplace(key, obj);
  emit_locked(EventType::kAdded, obj);
  return obj;
}

StoredObject Store::update(StoredObject obj, std::int64_t expected_version) {
  check_meta(obj);
  std::lock_guard lock(mu_);
  Key key{obj.kind, obj.meta.ns, obj.meta.name};
  auto it = objects_.find(key);
  if (it == objects_.end()) {
    throw StoreError(StoreErrc::kNotFound, describe(obj.kind, obj.meta.ns, obj.meta.name) + " not found");
  }
  StoredObject& live = it->second;
  if (live.meta.resource_version != expected_version ||
      (!obj.meta.uid.empty() && obj.meta.uid != live.meta.uid)) {
    throw StoreError(StoreErrc::kConflict,
                     describe(obj.kind, obj.meta.ns, obj.meta.name) + ": expected version " +
                         std::to_string(expected_version) + ", live version " +
                         std::to_string(live.meta.resource_version));
  }
  obj.meta.uid = live.meta.uid;
  obj.meta.deletion_requested = live.meta.deletion_requested;
  obj.meta.resource_version = live.meta.resource_version + 1;
  if (obj.meta.deletion_requested && obj.meta.finalizers.empty()) {
    objects_.erase(it);
    emit_locked(EventType::kDeleted, obj);
    return obj;
  }
  live = obj;
  emit_locked(EventType::kModified, obj);
  return obj;
}

DeletionOutcome Store::remove(Kind kind, const std::string& ns, const std::string& name) {
  std::lock_guard lock(mu_);
  auto it = objects_.find(Key{kind, ns, name});
  if (it == objects_.end()) {
    throw StoreError(StoreErrc::kNotFound, describe(kind, ns, name) + " not found");
  }
  StoredObject& live = it->second;
  if (live.meta.finalizers.empty()) {
    StoredObject gone = std::move(live);
    objects_.erase(it);
    emit_locked(EventType::kDeleted, gone);
    return DeletionOutcome::kRemoved;
  }
  if (live.meta.deletion_requested) return DeletionOutcome::kTerminatingPending;
  live.meta.deletion_requested = true;
  ++live.meta.resource_version;
  emit_locked(EventType::kModified, live);
  return DeletionOutcome::kTerminatingPending;
}

std::optional<StoredObject> Store::get(Kind kind, const std::string& ns, const std::string& name) const {
  std::lock_guard lock(mu_);
  auto it = objects_.find(Key{kind, ns, name});
  if (it == objects_.end()) return std::nullopt;
  return it->second;
}

std::vector<StoredObject> Store::list(Kind kind, const std::string& ns, const Labels& selector) const {
  return list_at(kind, ns, selector).items;
}

ListResult Store::list_at(Kind kind, const std::string& ns, const Labels& selector) const {
  std::lock_guard lock(mu_);
  ListResult out;
  out.sequence = sequence_;
  for (const auto& [key, obj] : objects_) {
    if (obj.kind != kind) continue;
    if (!ns.empty() && obj.meta.ns != ns) continue;
    if (matches_selector(obj.meta.labels, selector)) out.items.push_back(obj);
  }
  return out;
}

Watch Store::watch(Kind kind, const std::string& ns, std::int64_t from_sequence) const {
  std::lock_guard lock(mu_);
  if (from_sequence > sequence_ || from_sequence < 0) {
    throw StoreError(StoreErrc::kInvalidObject,
                     "watch from " + std::to_string(from_sequence) + " is beyond sequence " +
                         std::to_string(sequence_));
  }
  if (from_sequence < sequence_ &&
      (history_.empty() || history_.front().sequence > from_sequence + 1)) {
    throw StoreError(StoreErrc::kSequenceExpired,
                     "history before sequence " +
                         std::to_string(history_.empty() ? sequence_ : history_.front().sequence) +
                         " was compacted");
  }
  return Watch(this, kind, ns, from_sequence);
}

std::int64_t Store::sequence() const {
  std::lock_guard lock(mu_);
  return sequence_;
}

std::uint64_t Store::mutation_count(Kind kind) const {
  std::lock_guard lock(mu_);
  auto it = mutations_.find(kind);
  return it == mutations_.end() ? 0 : it->second;
}

std::vector<WatchEvent> Store::history() const {
  std::lock_guard lock(mu_);
  return {history_.begin(), history_.end()};
}

std::vector<StoredObject> Store::snapshot() const {
  std::lock_guard lock(mu_);
  std::vector<StoredObject> out;
  out.reserve(objects_.size());
  for (const auto& [key, obj] : objects_) out.push_back(obj);
  return out;
}

void Store::restore(const std::vector<StoredObject>& objects) {
  std::lock_guard lock(mu_);
  if (!objects_.empty()) {
    throw StoreError(StoreErrc::kInvalidObject, "restore requires an empty store");
  }
  for (const auto& obj : objects) {
    check_meta(obj);
    Key key{obj.kind, obj.meta.ns, obj.meta.name};
    if (!objects_.emplace(key, obj).second) {
      throw StoreError(StoreErrc::kAlreadyExists,
                       describe(obj.kind, obj.meta.ns, obj.meta.name) + " duplicated in snapshot");
    }
    unsigned long long n = 0;
    if (std::sscanf(obj.meta.uid.c_str(), "uid-%llu", &n) == 1) {
      uid_counter_ = std::max<std::uint64_t>(uid_counter_, n);
    }
  }
}

void Store::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

}  // namespace dlf
