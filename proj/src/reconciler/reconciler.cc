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

#include "dlf/reconciler/reconciler.h"

#include <algorithm>

#include "dlf/model/fingerprint.h"

namespace dlf {

std::string_view storage_class_for(DatasetType type) {
  switch (type) {
    case DatasetType::kCos: return "csi-s3";
    case DatasetType::kNfs: return "csi-nfs";
    case DatasetType::kArchive: return "csi-h3";
  }
  return "";
}

std::string_view to_string(ReconcileOutcome::Action a) {
  using A = ReconcileOutcome::Action;
  switch (a) {
    case A::kNoChange: return "NoChange";
    case A::kCreated: return "Created";
    case A::kUpdated: return "Updated";
    case A::kDeleted: return "Deleted";
    case A::kRequeueAfter: return "RequeueAfter";
    case A::kFailed: return "Failed";
  }
  return "?";
}

namespace {

using Action = ReconcileOutcome::Action;
using Touched = std::vector<std::pair<Kind, std::string>>;

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string join_errors(const ValidationResult& r) {
  std::string out;
  for (const auto& e : r.errors) {
    if (!out.empty()) out += "; ";
    out += e.to_string();
  }
  return out;
}

StoredObject dependent(Kind kind, const Dataset& ds, Payload payload) {
  StoredObject obj{kind, {}, std::move(payload)};
  obj.meta.name = ds.meta.name;
  obj.meta.ns = ds.meta.ns;
  obj.meta.labels[std::string(kDatasetLabel)] = ds.meta.name;
  obj.meta.owner_refs.push_back({"Dataset", ds.meta.name, ds.meta.uid});
  return obj;
}

VolumeClaimPayload desired_claim(const Dataset& ds, const DatasetSpec& resolved) {
  VolumeClaimPayload claim;
  claim.storage_class = std::string(storage_class_for(resolved.type()));
  claim.attributes["type"] = std::string(to_string(resolved.type()));
  if (const auto* cos = resolved.cos()) {
    claim.attributes["endpoint"] = cos->endpoint;
    claim.attributes["bucket"] = cos->bucket;
    if (cos->region) claim.attributes["region"] = *cos->region;
    claim.secret_name = ds.meta.name;
  } else if (const auto* nfs = resolved.nfs()) {
    claim.attributes["server"] = nfs->server;
    claim.attributes["share"] = nfs->share;
  } else if (const auto* archive = resolved.archive()) {
    claim.attributes["url"] = archive->url;
    claim.attributes["format"] = std::string(to_string(archive->format));
  }
  return claim;
}

bool owned_exclusively(const StoredObject& obj, const std::string& uid) {
  return obj.meta.owner_refs.size() == 1 && obj.meta.owner_refs.front().uid == uid;
}

// Writes `ds` with status moved to `target`, stepping through Provisioning
// where the phase machine has no direct edge. Returns the stored dataset.
Dataset write_phase(Store& store, Dataset ds, Phase target) {
  const Phase from = ds.status.phase;
  if (from != target && !can_transition(from, target)) {
    Dataset step = ds;
    step.status.phase = Phase::kProvisioning;
    auto stored = store.update(make_object(step), ds.meta.resource_version);
    ds.meta.resource_version = stored.meta.resource_version;
  }
  ds.status.phase = target;
  auto stored = store.update(make_object(ds), ds.meta.resource_version);
  return to_dataset(stored);
}

}  // namespace

Reconciler::Reconciler(Store& store, s3::Prober& prober, ReconcilerOptions options)
    : store_(store), prober_(prober), options_(options), backoff_(options.backoff) {}

ReconcileOutcome Reconciler::requeue(const ObjectKey& key, std::string reason, Touched touched) {
  ReconcileOutcome out;
  out.action = Action::kRequeueAfter;
  out.requeue_after = backoff_.next(key);
  out.reason = std::move(reason);
  out.objects_touched = std::move(touched);
  return out;
}

ReconcileOutcome Reconciler::reconcile(const ObjectKey& key) {
  auto obj = store_.get(Kind::kDataset, key.ns, key.name);
  if (!obj) {
    backoff_.forget(key);
    return {};
  }
  try {
    if (obj->meta.deletion_requested) {
      auto out = garbage_collect(to_dataset(*obj));
      if (!out.requeue()) backoff_.forget(key);
      return out;
    }
    return reconcile_live(key, std::move(*obj));
  } catch (const StoreError& e) {
    if (e.code() == StoreErrc::kConflict || e.code() == StoreErrc::kNotFound) {
      return requeue(key, e.what());
    }
    throw;
  }
}

ReconcileOutcome Reconciler::reconcile_live(const ObjectKey& key, StoredObject obj) {
  Dataset ds = to_dataset(obj);
  const std::string& name = ds.meta.name;
  const std::string& ns = ds.meta.ns;
  const bool is_cos = ds.spec.type() == DatasetType::kCos;

  // Resolve the credential indirection left behind by scrubbing.
  DatasetSpec resolved = ds.spec;
  if (auto* cos = resolved.cos(); cos && cos->secret_ref && cos->secret_access_key.empty()) {
    auto ref = store_.get(Kind::kSecret, ns, *cos->secret_ref);
    const SecretPayload* data = ref ? &ref->as<SecretPayload>() : nullptr;
    if (!data || !data->data.contains("secretAccessKey")) {
      const std::string msg = "credentials secret " + *cos->secret_ref + " not found";
      if (ds.status.phase != Phase::kFailed || ds.status.message != msg) {
        ds.status.message = msg;
        write_phase(store_, ds, Phase::kFailed);
      }
      return requeue(key, msg);
    }
    cos->secret_access_key = data->data.at("secretAccessKey");
    cos->secret_ref.reset();
  }

  const ValidationResult valid = validate_dataset(resolved);
  if (!valid.ok()) {
    const std::string msg = "invalid spec: " + join_errors(valid);
    if (ds.status.phase != Phase::kFailed || ds.status.message != msg) {
      ds.status.message = msg;
      write_phase(store_, ds, Phase::kFailed);
    }
    ReconcileOutcome out;
    out.action = Action::kFailed;
    out.reason = msg;
    return out;
  }

  const std::string fingerprint = fingerprint_hex(spec_fingerprint(resolved));
  const auto recorded = ds.meta.annotations.find(std::string(kFingerprintAnnotation));
  const bool spec_changed =
      recorded != ds.meta.annotations.end() && recorded->second != fingerprint;

  std::optional<SecretPayload> secret_payload;
  if (const auto* cos = resolved.cos()) {
    secret_payload = SecretPayload{{{"accessKeyID", cos->access_key_id},
                                    {"secretAccessKey", cos->secret_access_key}}};
  }
  const VolumeClaimPayload claim_payload = desired_claim(ds, resolved);

  auto claim = store_.get(Kind::kVolumeClaim, ns, name);
  auto secret = store_.get(Kind::kSecret, ns, name);
  const bool claim_ok = claim && owned_exclusively(*claim, ds.meta.uid) &&
                        claim->as<VolumeClaimPayload>() == claim_payload;
  const bool secret_ok = !secret_payload || (secret && owned_exclusively(*secret, ds.meta.uid) &&
                                             secret->as<SecretPayload>() == *secret_payload);
  const bool scrubbed = !is_cos || (ds.spec.cos()->secret_access_key.empty() &&
                                    ds.spec.cos()->secret_ref == name);
  const std::optional<std::string> want_bound_secret =
      is_cos ? std::optional<std::string>(name) : std::nullopt;

  const bool settled = !spec_changed && recorded != ds.meta.annotations.end() && claim_ok &&
                       secret_ok && scrubbed && ds.meta.has_finalizer(kCleanupFinalizer) &&
                       ds.status.bound_claim == name && ds.status.bound_secret == want_bound_secret;
  if (settled && ds.status.phase == Phase::kReady) {
    backoff_.forget(key);
    return {};
  }

  // Retrying a failed probe with everything else in place: only the probe
  // result can change, and rewriting an identical Failed status would wake
  // our own watch and defeat the backoff.
  if (settled && ds.status.phase == Phase::kFailed) {
    const s3::ProbeResult probe = prober_.probe(resolved, options_.probe_timeout);
    const std::string msg = probe.ok() ? "ready" : "probe failed: " + probe.detail;
    if (!probe.ok() && ds.status.message == msg) return requeue(key, msg);
    ds.status.last_probe = probe.summary(now_ms());
    ds.status.message = msg;
    write_phase(store_, ds, probe.ok() ? Phase::kReady : Phase::kFailed);
    if (!probe.ok()) return requeue(key, msg);
    backoff_.forget(key);
    ReconcileOutcome out;
    out.action = Action::kUpdated;
    return out;
  }

  // Claim the finalizer and enter Provisioning before any dependent exists.
  if (!ds.meta.has_finalizer(kCleanupFinalizer) || ds.status.phase != Phase::kProvisioning) {
    if (!ds.meta.has_finalizer(kCleanupFinalizer)) {
      ds.meta.finalizers.emplace_back(kCleanupFinalizer);
    }
    ds.status.message = spec_changed ? "spec changed, re-provisioning" : "provisioning";
    ds = ds.status.phase == Phase::kProvisioning
             ? to_dataset(store_.update(make_object(ds), ds.meta.resource_version))
             : write_phase(store_, ds, Phase::kProvisioning);
  }

  Touched touched;
  bool created_any = false;
  auto drop = [&](Kind kind) {
    try {
      store_.remove(kind, ns, name);
      touched.emplace_back(kind, name);
    } catch (const StoreError& e) {
      if (e.code() != StoreErrc::kNotFound) throw;
    }
  };
  auto ensure = [&](Kind kind, std::optional<StoredObject>& existing, Payload payload, bool ok) {
    if (ok) return;
    if (existing && owned_exclusively(*existing, ds.meta.uid)) {
      StoredObject next = *existing;
      next.payload = std::move(payload);
      store_.update(next, existing->meta.resource_version);
      touched.emplace_back(kind, name);
      return;
    }
    if (existing) drop(kind);  // left over from another owner
    store_.create(dependent(kind, ds, std::move(payload)));
    touched.emplace_back(kind, name);
    created_any = true;
  };

  bool secret_done = secret_ok;
  bool claim_done = claim_ok;
  if (spec_changed) {
    drop(Kind::kVolumeClaim);
    drop(Kind::kSecret);
    claim.reset();
    secret.reset();
    secret_done = claim_done = false;
  }
  if (secret_payload) ensure(Kind::kSecret, secret, *secret_payload, secret_done);
  ensure(Kind::kVolumeClaim, claim, claim_payload, claim_done);

  const s3::ProbeResult probe = prober_.probe(resolved, options_.probe_timeout);

  ds.meta.annotations[std::string(kFingerprintAnnotation)] = fingerprint;
  if (auto* cos = ds.spec.cos()) {
    cos->secret_access_key.clear();
    cos->secret_ref = name;
  }
  ds.status.bound_claim = name;
  ds.status.bound_secret = want_bound_secret;
  ds.status.last_probe = probe.summary(now_ms());
  ds.status.message = probe.ok() ? "ready" : "probe failed: " + probe.detail;
  write_phase(store_, ds, probe.ok() ? Phase::kReady : Phase::kFailed);

  if (!probe.ok()) return requeue(key, ds.status.message, std::move(touched));
  backoff_.forget(key);
  ReconcileOutcome out;
  out.action = created_any ? Action::kCreated : Action::kUpdated;
  out.objects_touched = std::move(touched);
  return out;
}

ReconcileOutcome Reconciler::garbage_collect(const Dataset& dataset) {
  ReconcileOutcome out;
  const ObjectKey key{dataset.meta.ns, dataset.meta.name};
  bool released = false;
  try {
    for (Kind kind : {Kind::kSecret, Kind::kVolumeClaim}) {
      for (const auto& obj : store_.list(kind, dataset.meta.ns)) {
        if (!obj.meta.owned_by(dataset.meta.uid)) continue;
        try {
          store_.remove(kind, obj.meta.ns, obj.meta.name);
          out.objects_touched.emplace_back(kind, obj.meta.name);
        } catch (const StoreError& e) {
          if (e.code() != StoreErrc::kNotFound) throw;
        }
      }
    }
    if (dataset.meta.has_finalizer(kCleanupFinalizer)) {
      Dataset next = dataset;
      std::erase(next.meta.finalizers, std::string(kCleanupFinalizer));
      next.status.phase = Phase::kTerminating;
      next.status.message = "deleted";
      store_.update(make_object(next), dataset.meta.resource_version);
      released = true;
    }
  } catch (const StoreError& e) {
    if (e.code() == StoreErrc::kConflict || e.code() == StoreErrc::kNotFound) {
      return requeue(key, e.what(), std::move(out.objects_touched));
    }
    throw;
  }
  out.action = released || !out.objects_touched.empty() ? Action::kDeleted : Action::kNoChange;
  return out;
}

}  // namespace dlf
