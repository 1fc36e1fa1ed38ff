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

#include "dlf/model/pod.h"

#include <regex>
#include <set>
#include <stdexcept>

namespace dlf {

using nlohmann::json;

ValidationResult validate_pod(const Pod& pod) {
  ValidationResult r;
  static const std::regex env_re("^[A-Za-z_][A-Za-z0-9_]*$");
  if (!is_dns_label(pod.meta.name)) r.errors.push_back({"metadata.name", "must be a DNS label"});
  if (pod.spec.containers.empty()) {
    r.errors.push_back({"spec.containers", "at least one container required"});
  }
  std::set<std::string> volumes;
  for (size_t i = 0; i < pod.spec.volumes.size(); ++i) {
    const auto& v = pod.spec.volumes[i];
    std::string path = "spec.volumes[" + std::to_string(i) + "]";
    if (!is_dns_label(v.name)) r.errors.push_back({path + ".name", "must be a DNS label"});
    if (!volumes.insert(v.name).second) r.errors.push_back({path + ".name", "duplicate volume"});
    if (v.claim_name.empty()) r.errors.push_back({path + ".persistentVolumeClaim", "required"});
  }
  std::set<std::string> containers;
  for (size_t i = 0; i < pod.spec.containers.size(); ++i) {
    const auto& c = pod.spec.containers[i];
    std::string path = "spec.containers[" + std::to_string(i) + "]";
    if (!is_dns_label(c.name)) r.errors.push_back({path + ".name", "must be a DNS label"});
    if (!containers.insert(c.name).second) r.errors.push_back({path + ".name", "duplicate container"});
    std::set<std::string> paths;
    for (const auto& m : c.volume_mounts) {
      if (!volumes.contains(m.name)) {
        r.errors.push_back({path + ".volumeMounts", "unknown volume " + m.name});
      }
      if (m.mount_path.empty() || m.mount_path.front() != '/') {
        r.errors.push_back({path + ".volumeMounts", "mount path must be absolute: " + m.mount_path});
      }
      if (!paths.insert(m.mount_path).second) {
        r.errors.push_back({path + ".volumeMounts", "duplicate mount path " + m.mount_path});
      }
    }
    std::set<std::string> env;
    for (const auto& e : c.env) {
      if (!std::regex_match(e.name, env_re)) {
        r.errors.push_back({path + ".env", "invalid variable name " + e.name});
      }
      if (!env.insert(e.name).second) {
        r.errors.push_back({path + ".env", "duplicate variable " + e.name});
      }
    }
  }
  return r;
}

namespace {

json labels_to_json(const Labels& l) {
  json out = json::object();
  for (const auto& [k, v] : l) out[k] = v;
  return out;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument(where + ": unknown field " + k);
  }
}

std::string str(const json& obj, const char* key, const std::string& where,
                bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw std::invalid_argument(where + "." + key + ": required");
    return {};
  }
  if (!it->is_string()) throw std::invalid_argument(where + "." + key + ": expected string");
  return it->get<std::string>();
}

Labels labels_from_json(const json& obj, const std::string& where) {
  Labels out;
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected object");
  for (const auto& [k, v] : obj.items()) {
    if (!v.is_string()) throw std::invalid_argument(where + "." + k + ": expected string");
    out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace

json pod_to_json(const Pod& pod) {
  json meta = {{"name", pod.meta.name}};
  if (!pod.meta.ns.empty()) meta["namespace"] = pod.meta.ns;
  if (!pod.meta.labels.empty()) meta["labels"] = labels_to_json(pod.meta.labels);
  if (!pod.meta.annotations.empty()) meta["annotations"] = labels_to_json(pod.meta.annotations);

  json containers = json::array();
  for (const auto& c : pod.spec.containers) {
    json jc = {{"name", c.name}};
    if (!c.image.empty()) jc["image"] = c.image;
    if (!c.env.empty()) {
      json env = json::array();
      for (const auto& e : c.env) {
        if (e.secret_key_ref) {
          env.push_back({{"name", e.name},
                         {"valueFrom",
                          {{"secretKeyRef",
                            {{"name", e.secret_key_ref->name}, {"key", e.secret_key_ref->key}}}}}});
        } else {
          env.push_back({{"name", e.name}, {"value", e.value}});
        }
      }
      jc["env"] = std::move(env);
    }
    if (!c.volume_mounts.empty()) {
      json mounts = json::array();
      for (const auto& m : c.volume_mounts) {
        mounts.push_back({{"name", m.name}, {"mountPath", m.mount_path}});
      }
      jc["volumeMounts"] = std::move(mounts);
    }
    containers.push_back(std::move(jc));
  }
  json spec = {{"containers", std::move(containers)}};
  if (!pod.spec.volumes.empty()) {
    json volumes = json::array();
    for (const auto& v : pod.spec.volumes) {
      volumes.push_back({{"name", v.name}, {"persistentVolumeClaim", {{"claimName", v.claim_name}}}});
    }
    spec["volumes"] = std::move(volumes);
  }
  return {{"metadata", std::move(meta)}, {"spec", std::move(spec)}};
}

Pod pod_from_json(const json& doc) {
  Pod pod;
  check_keys(doc, {"metadata", "spec"}, "pod");
  const json& meta = doc.at("metadata");
  check_keys(meta, {"name", "namespace", "labels", "annotations"}, "metadata");
  pod.meta.name = str(meta, "name", "metadata");
  pod.meta.ns = str(meta, "namespace", "metadata", false);
  if (meta.contains("labels")) pod.meta.labels = labels_from_json(meta["labels"], "metadata.labels");
  if (meta.contains("annotations")) {
    pod.meta.annotations = labels_from_json(meta["annotations"], "metadata.annotations");
  }

  const json& spec = doc.at("spec");
  check_keys(spec, {"containers", "volumes"}, "spec");
  const json& containers = spec.at("containers");
  if (!containers.is_array()) throw std::invalid_argument("spec.containers: expected list");
  for (const auto& jc : containers) {
    check_keys(jc, {"name", "image", "env", "volumeMounts"}, "spec.containers[]");
    Container c;
    c.name = str(jc, "name", "container");
    c.image = str(jc, "image", "container", false);
    if (jc.contains("env")) {
      if (!jc["env"].is_array()) throw std::invalid_argument("env: expected list");
      for (const auto& je : jc["env"]) {
        check_keys(je, {"name", "value", "valueFrom"}, "env[]");
        EnvVar e;
        e.name = str(je, "name", "env[]");
        if (je.contains("valueFrom")) {
          const json& from = je["valueFrom"];
          check_keys(from, {"secretKeyRef"}, "env[].valueFrom");
          const json& ref = from.at("secretKeyRef");
          check_keys(ref, {"name", "key"}, "env[].valueFrom.secretKeyRef");
          e.secret_key_ref = SecretKeyRef{str(ref, "name", "secretKeyRef"), str(ref, "key", "secretKeyRef")};
        } else {
          e.value = str(je, "value", "env[]");
        }
        c.env.push_back(std::move(e));
      }
    }
    if (jc.contains("volumeMounts")) {
      if (!jc["volumeMounts"].is_array()) throw std::invalid_argument("volumeMounts: expected list");
      for (const auto& jm : jc["volumeMounts"]) {
        check_keys(jm, {"name", "mountPath"}, "volumeMounts[]");
        c.volume_mounts.push_back({str(jm, "name", "volumeMounts[]"), str(jm, "mountPath", "volumeMounts[]")});
      }
    }
    pod.spec.containers.push_back(std::move(c));
  }
  if (spec.contains("volumes")) {
    if (!spec["volumes"].is_array()) throw std::invalid_argument("spec.volumes: expected list");
    for (const auto& jv : spec["volumes"]) {
      check_keys(jv, {"name", "persistentVolumeClaim"}, "spec.volumes[]");
      const json& pvc = jv.at("persistentVolumeClaim");
      check_keys(pvc, {"claimName"}, "persistentVolumeClaim");
      pod.spec.volumes.push_back({str(jv, "name", "volumes[]"), str(pvc, "claimName", "persistentVolumeClaim")});
    }
  }
  return pod;
}

}  // namespace dlf
