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

#include "dlf/ctl/session.h"

#include <thread>

#include "dlf/model/fingerprint.h"
#include "dlf/model/manifest.h"
#include "dlf/store/snapshot.h"

namespace dlf::ctl {

Cluster::Cluster(ClusterOptions options) : options_(std::move(options)) {
  if (options_.probe == ProbeMode::kNone) {
    prober_ = std::make_unique<s3::TrustingProber>();
  } else {
    prober_ = std::make_unique<s3::EndpointProber>();
  }
  ControllerOptions copts;
  copts.workers = options_.workers;
  copts.reconciler.probe_timeout = options_.probe_timeout;
  controller_ = std::make_unique<Controller>(store_, *prober_, copts);
}

Cluster::~Cluster() { stop(); }

void Cluster::start() { controller_->start(); }

void Cluster::stop() { controller_->stop(); }

bool Cluster::settle(std::chrono::milliseconds timeout) { return controller_->wait_idle(timeout, true); }

std::optional<Dataset> Cluster::wait_phase(const std::string& ns, const std::string& name, Phase phase,
                                           std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    if (auto obj = store_.get(Kind::kDataset, ns, name)) {
      Dataset ds = to_dataset(*obj);
      if (ds.status.phase == phase) return ds;
    }
    if (std::chrono::steady_clock::now() >= deadline) return std::nullopt;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

void Cluster::label_namespace(const std::string& ns, const std::string& key, const std::string& value) {
  for (;;) {
    auto obj = store_.get(Kind::kNamespace, "", ns);
    try {
      if (!obj) {
        store_.create(make_namespace(ns, {{key, value}}));
      } else {
        obj->meta.labels[key] = value;
        store_.update(*obj, obj->meta.resource_version);
      }
      return;
    } catch (const StoreError& e) {
      if (e.code() != StoreErrc::kConflict && e.code() != StoreErrc::kAlreadyExists) throw;
    }
  }
}

admission::AdmissionDecision Cluster::create_pod(const Pod& pod, std::optional<Pod>* created) {
  const std::string ns = pod.meta.ns.empty() ? std::string(kDefaultNamespace) : pod.meta.ns;
  auto decision = admission::admit(pod, ns, store_, options_.admission);
  if (!decision.allowed) return decision;
  Pod admitted = admission::apply_patch(pod, decision.patch);
  admitted.meta.ns = ns;
  auto stored = store_.create(make_object(admitted));
  if (created) *created = to_pod(stored);
  return decision;
}

std::string_view to_string(ApplyResult r) {
  switch (r) {
    case ApplyResult::kCreated: return "created";
    case ApplyResult::kConfigured: return "configured";
    case ApplyResult::kUnchanged: return "unchanged";
  }
  return "?";
}

ApplyResult apply_dataset(Store& store, Dataset ds) {
  if (ds.meta.ns.empty()) ds.meta.ns = std::string(kDefaultNamespace);
  const ValidationResult valid = validate_dataset(ds.spec);
  if (!valid.ok()) {
    std::string msg;
    for (const auto& e : valid.errors) msg += (msg.empty() ? "" : "\n") + e.to_string();
    throw StoreError(StoreErrc::kInvalidObject, msg);
  }
  for (;;) {
    auto live = store.get(Kind::kDataset, ds.meta.ns, ds.meta.name);
    if (!live) {
      try {
        store.create(make_object(ds));
        return ApplyResult::kCreated;
      } catch (const StoreError& e) {
        if (e.code() != StoreErrc::kAlreadyExists) throw;
        continue;
      }
    }
    Dataset current = to_dataset(*live);

    // Resolve an indirect secret the same way the reconciler does.
    DatasetSpec resolved = ds.spec;
    if (auto* cos = resolved.cos(); cos && cos->secret_ref && cos->secret_access_key.empty()) {
      if (auto sec = store.get(Kind::kSecret, ds.meta.ns, *cos->secret_ref)) {
        const auto& data = sec->as<SecretPayload>().data;
        if (auto it = data.find("secretAccessKey"); it != data.end()) {
          cos->secret_access_key = it->second;
          cos->secret_ref.reset();
        }
      }
    }
    auto recorded = current.meta.annotations.find(std::string(kFingerprintAnnotation));
    const bool same = recorded != current.meta.annotations.end()
                          ? recorded->second == fingerprint_hex(spec_fingerprint(resolved))
                          : current.spec == ds.spec;
    // A lost credentials Secret can only be restored from the manifest.
    bool restores_secret = false;
    if (const auto* live_cos = current.spec.cos();
        live_cos && live_cos->secret_ref && live_cos->secret_access_key.empty() && ds.spec.cos() &&
        !ds.spec.cos()->secret_access_key.empty()) {
      restores_secret = !store.get(Kind::kSecret, ds.meta.ns, *live_cos->secret_ref);
    }
    if (same && !restores_secret && current.meta.labels == ds.meta.labels) return ApplyResult::kUnchanged;

    current.spec = ds.spec;
    current.meta.labels = ds.meta.labels;
    for (const auto& [k, v] : ds.meta.annotations) current.meta.annotations[k] = v;
    try {
      store.update(make_object(current), current.meta.resource_version);
      return ApplyResult::kConfigured;
    } catch (const StoreError& e) {
      if (e.code() != StoreErrc::kConflict) throw;
    }
  }
}

Session::Session(std::string path, ClusterOptions options)
    : path_(std::move(path)), cluster_(std::move(options)) {
  load_store(cluster_.store(), path_);
  cluster_.start();
  cluster_.settle();
}

Session::~Session() {
  if (!committed_) cluster_.stop();
}

void Session::commit() {
  cluster_.settle();
  cluster_.stop();
  save_store(cluster_.store(), path_);
  committed_ = true;
}

}  // namespace dlf::ctl
