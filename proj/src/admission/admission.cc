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

#include "dlf/admission/admission.h"

#include <algorithm>

namespace dlf::admission {

using nlohmann::json;

namespace {

json env_json(const EnvVar& e) {
  if (e.secret_key_ref) {
    return {{"name", e.name},
            {"valueFrom",
             {{"secretKeyRef", {{"name", e.secret_key_ref->name}, {"key", e.secret_key_ref->key}}}}}};
  }
  return {{"name", e.name}, {"value", e.value}};
}

std::vector<EnvVar> credential_env(const std::string& id, const Dataset& ds) {
  const CosSource* cos = ds.spec.cos();
  if (!cos) {
    throw AdmissionError(AdmissionErrc::kUnsupportedAccess,
                         "dataset " + id + " of type " + std::string(to_string(ds.spec.type())) +
                             " cannot be used as configmap");
  }
  const std::string prefix = env_prefix(id);
  const std::string secret = ds.status.bound_secret.value_or(id);
  return {
      {prefix + "_ENDPOINT", cos->endpoint, std::nullopt},
      {prefix + "_BUCKET", cos->bucket, std::nullopt},
      {prefix + "_ACCESS_KEY_ID", "", SecretKeyRef{secret, "accessKeyID"}},
      {prefix + "_SECRET_ACCESS_KEY", "", SecretKeyRef{secret, "secretAccessKey"}},
  };
}

}  // namespace

bool should_mutate(const Pod& pod, const Labels& namespace_labels) {
  auto it = namespace_labels.find(std::string(kMonitorLabel));
  if (it == namespace_labels.end() || it->second != kMonitorValue) return false;
  return has_dataset_pair(pod.meta.labels);
}

AdmissionPatch build_patch(const Pod& pod, const std::vector<DatasetRef>& refs, const Store& store,
                           const std::string& ns, const AdmissionOptions& options) {
  AdmissionPatch patch;
  PodSpec work = pod.spec;  // tracks list lengths as operations accumulate

  for (const auto& ref : refs) {
    auto obj = store.get(Kind::kDataset, ns, ref.id);
    if (!obj || obj->meta.deletion_requested) {
      throw AdmissionError(AdmissionErrc::kDatasetNotFound, "dataset not found: " + ref.id);
    }
    const Dataset ds = to_dataset(*obj);
    if (ds.status.phase != Phase::kReady && !options.allow_pending) {
      throw AdmissionError(AdmissionErrc::kDatasetNotReady,
                           "dataset not ready: " + ref.id + " (" +
                               std::string(to_string(ds.status.phase)) + ")");
    }

    if (ref.useas == UseAs::kMount) {
      const bool present = std::any_of(work.volumes.begin(), work.volumes.end(),
                                       [&](const Volume& v) { return v.name == ref.id; });
      if (present) continue;
      const std::string path = ref.mount_path_override.value_or(default_mount_path(ref.id));
      for (const auto& c : work.containers) {
        for (const auto& m : c.volume_mounts) {
          if (m.mount_path == path) {
            throw AdmissionError(AdmissionErrc::kMountPathCollision,
                                 "mount path collision: " + path + " in container " + c.name);
          }
        }
      }
      const Volume vol{ref.id, ref.id};
      const json vol_json = {{"name", vol.name}, {"persistentVolumeClaim", {{"claimName", vol.claim_name}}}};
      if (work.volumes.empty()) {
        patch.ops.push_back({PatchOp::Op::kAdd, "/spec/volumes", json::array({vol_json})});
      } else {
        patch.ops.push_back({PatchOp::Op::kAdd, "/spec/volumes/-", vol_json});
      }
      work.volumes.push_back(vol);
      for (std::size_t i = 0; i < work.containers.size(); ++i) {
        auto& mounts = work.containers[i].volume_mounts;
        const json m = {{"name", ref.id}, {"mountPath", path}};
        const std::string base = "/spec/containers/" + std::to_string(i) + "/volumeMounts";
        if (mounts.empty()) {
          patch.ops.push_back({PatchOp::Op::kAdd, base, json::array({m})});
        } else {
          patch.ops.push_back({PatchOp::Op::kAdd, base + "/-", m});
        }
        mounts.push_back({ref.id, path});
      }
      continue;
    }

    const std::vector<EnvVar> vars = credential_env(ref.id, ds);
    for (std::size_t i = 0; i < work.containers.size(); ++i) {
      auto& env = work.containers[i].env;
      const std::string base = "/spec/containers/" + std::to_string(i) + "/env";
      for (const auto& var : vars) {
        auto it = std::find_if(env.begin(), env.end(), [&](const EnvVar& e) { return e.name == var.name; });
        if (it != env.end()) {
          if (*it == var) continue;
          patch.ops.push_back({PatchOp::Op::kReplace, base + "/" + std::to_string(it - env.begin()),
                               env_json(var)});
          *it = var;
        } else if (env.empty()) {
          patch.ops.push_back({PatchOp::Op::kAdd, base, json::array({env_json(var)})});
          env.push_back(var);
        } else {
          patch.ops.push_back({PatchOp::Op::kAdd, base + "/-", env_json(var)});
          env.push_back(var);
        }
      }
    }
  }
  return patch;
}

AdmissionDecision admit(const Pod& pod, const std::string& ns, const Store& store,
                        const AdmissionOptions& options) {
  AdmissionDecision decision;
  Labels ns_labels;
  if (auto ns_obj = store.get(Kind::kNamespace, "", ns)) ns_labels = ns_obj->meta.labels;
  if (!should_mutate(pod, ns_labels)) return decision;
  try {
    const auto refs = extract_dataset_refs(pod.meta.labels);
    decision.patch = build_patch(pod, refs, store, ns, options);
  } catch (const AdmissionError& e) {
    decision.allowed = false;
    decision.reason = e.what();
    decision.error = e.code();
    decision.patch = {};
  }
  return decision;
}

}  // namespace dlf::admission
