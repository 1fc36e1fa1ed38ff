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

#include "dlf/store/snapshot.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dlf/model/manifest.h"
#include "dlf/model/yaml_strict.h"

namespace dlf {

namespace {

constexpr std::string_view kSimApiVersion = "dlf.sim/v1";

std::string_view api_version_for(Kind k) {
  if (k == Kind::kDataset) return kDatasetApiVersion;
  if (k == Kind::kPod) return "v1";
  return kSimApiVersion;
}

void emit_map(YAML::Emitter& out, const char* key, const std::map<std::string, std::string>& m) {
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  for (const auto& [k, v] : m) out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
  out << YAML::EndMap;
}

void emit_json(YAML::Emitter& out, const nlohmann::json& j) {
  if (j.is_object()) {
    out << YAML::BeginMap;
    for (const auto& [k, v] : j.items()) {
      out << YAML::Key << k << YAML::Value;
      emit_json(out, v);
    }
    out << YAML::EndMap;
  } else if (j.is_array()) {
    out << YAML::BeginSeq;
    for (const auto& v : j) emit_json(out, v);
    out << YAML::EndSeq;
  } else {
    out << YAML::DoubleQuoted << j.get<std::string>();
  }
}

void emit_meta(YAML::Emitter& out, const ObjectMeta& m) {
  out << YAML::Key << "metadata" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << m.name;
  if (!m.ns.empty()) out << YAML::Key << "namespace" << YAML::Value << m.ns;
  out << YAML::Key << "uid" << YAML::Value << m.uid;
  out << YAML::Key << "resourceVersion" << YAML::Value << std::to_string(m.resource_version);
  if (!m.labels.empty()) emit_map(out, "labels", m.labels);
  if (!m.annotations.empty()) emit_map(out, "annotations", m.annotations);
  if (!m.owner_refs.empty()) {
    out << YAML::Key << "ownerReferences" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : m.owner_refs) {
      out << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << r.kind << YAML::Key << "name"
          << YAML::Value << r.name << YAML::Key << "uid" << YAML::Value << r.uid << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!m.finalizers.empty()) {
    out << YAML::Key << "finalizers" << YAML::Value << YAML::BeginSeq;
    for (const auto& f : m.finalizers) out << YAML::DoubleQuoted << f;
    out << YAML::EndSeq;
  }
  if (m.deletion_requested) out << YAML::Key << "deletionRequested" << YAML::Value << "true";
  out << YAML::EndMap;
}

void emit_status(YAML::Emitter& out, const DatasetStatus& s) {
  out << YAML::Key << "status" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "phase" << YAML::Value << std::string(to_string(s.phase));
  if (!s.message.empty()) out << YAML::Key << "message" << YAML::Value << YAML::DoubleQuoted << s.message;
  if (s.bound_claim) out << YAML::Key << "boundClaim" << YAML::Value << *s.bound_claim;
  if (s.bound_secret) out << YAML::Key << "boundSecret" << YAML::Value << *s.bound_secret;
  out << YAML::Key << "cached" << YAML::Value << (s.cached ? "true" : "false");
  if (s.last_probe) {
    const auto& p = *s.last_probe;
    out << YAML::Key << "lastProbe" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "reachable" << YAML::Value << (p.reachable ? "true" : "false");
    out << YAML::Key << "authorized" << YAML::Value << (p.authorized ? "true" : "false");
    out << YAML::Key << "bucketExists" << YAML::Value << (p.bucket_exists ? "true" : "false");
    out << YAML::Key << "detail" << YAML::Value << YAML::DoubleQuoted << p.detail;
    out << YAML::Key << "timestamp" << YAML::Value << std::to_string(p.timestamp_ms);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
}

void emit_object(YAML::Emitter& out, const StoredObject& obj) {
  out << YAML::BeginMap;
  out << YAML::Key << "apiVersion" << YAML::Value << std::string(api_version_for(obj.kind));
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(obj.kind));
  emit_meta(out, obj.meta);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DatasetPayload>) {
          out << YAML::Key << "spec" << YAML::Value << YAML::BeginMap << YAML::Key << "local"
              << YAML::Value;
          emit_dataset_source(out, p.spec);
          out << YAML::EndMap;
          emit_status(out, p.status);
        } else if constexpr (std::is_same_v<T, VolumeClaimPayload>) {
          out << YAML::Key << "spec" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "storageClassName" << YAML::Value << p.storage_class;
          out << YAML::Key << "accessMode" << YAML::Value << p.access_mode;
          if (!p.attributes.empty()) emit_map(out, "attributes", p.attributes);
          if (p.secret_name) out << YAML::Key << "secretName" << YAML::Value << *p.secret_name;
          out << YAML::EndMap;
        } else if constexpr (std::is_same_v<T, SecretPayload> || std::is_same_v<T, ConfigMapPayload>) {
          emit_map(out, "data", p.data);
        } else if constexpr (std::is_same_v<T, PodPayload>) {
          out << YAML::Key << "spec" << YAML::Value;
          emit_json(out, pod_to_json(Pod{{}, p.spec})["spec"]);
        }
      },
      obj.payload);
  out << YAML::EndMap;
}

bool parse_bool(const YAML::Node& map, std::string_view key, std::string_view where) {
  auto v = yaml::opt_scalar(map, key, where);
  if (!v || *v == "false") return false;
  if (*v == "true") return true;
  yaml::fail(map[std::string(key)], std::string(where) + "." + std::string(key) + ": expected true or false");
}

std::int64_t parse_int(const YAML::Node& map, std::string_view key, std::string_view where) {
  auto v = yaml::req_scalar(map, key, where);
  try {
    size_t used = 0;
    std::int64_t n = std::stoll(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  yaml::fail(map[std::string(key)], std::string(where) + "." + std::string(key) + ": expected an integer");
}

ObjectMeta decode_meta(const YAML::Node& m) {
  yaml::check_map(m, "metadata",
                  {"name", "namespace", "uid", "resourceVersion", "labels", "annotations",
                   "ownerReferences", "finalizers", "deletionRequested"});
  ObjectMeta meta;
  meta.name = yaml::req_scalar(m, "name", "metadata");
  meta.ns = yaml::opt_scalar(m, "namespace", "metadata").value_or("");
  meta.uid = yaml::req_scalar(m, "uid", "metadata");
  meta.resource_version = parse_int(m, "resourceVersion", "metadata");
  if (auto l = m["labels"]) meta.labels = yaml::string_map(l, "metadata.labels");
  if (auto a = m["annotations"]) meta.annotations = yaml::string_map(a, "metadata.annotations");
  if (auto refs = m["ownerReferences"]) {
    if (!refs.IsSequence()) yaml::fail(refs, "metadata.ownerReferences: expected a list");
    for (const auto& r : refs) {
      yaml::check_map(r, "ownerReferences[]", {"kind", "name", "uid"});
      meta.owner_refs.push_back({yaml::req_scalar(r, "kind", "ownerReferences[]"),
                                 yaml::req_scalar(r, "name", "ownerReferences[]"),
                                 yaml::req_scalar(r, "uid", "ownerReferences[]")});
    }
  }
  if (auto f = m["finalizers"]) {
    if (!f.IsSequence()) yaml::fail(f, "metadata.finalizers: expected a list");
    for (const auto& item : f) {
      if (!item.IsScalar()) yaml::fail(item, "metadata.finalizers: expected strings");
      meta.finalizers.push_back(item.Scalar());
    }
  }
  meta.deletion_requested = parse_bool(m, "deletionRequested", "metadata");
  return meta;
}

DatasetStatus decode_status(const YAML::Node& s) {
  yaml::check_map(s, "status", {"phase", "message", "boundClaim", "boundSecret", "cached", "lastProbe"});
  DatasetStatus status;
  const auto phase = yaml::req_scalar(s, "phase", "status");
  auto p = parse_phase(phase);
  if (!p) yaml::fail(s["phase"], "unknown phase '" + phase + "'");
  status.phase = *p;
  status.message = yaml::opt_scalar(s, "message", "status").value_or("");
  status.bound_claim = yaml::opt_scalar(s, "boundClaim", "status");
  status.bound_secret = yaml::opt_scalar(s, "boundSecret", "status");
  status.cached = parse_bool(s, "cached", "status");
  if (auto lp = s["lastProbe"]) {
    yaml::check_map(lp, "status.lastProbe",
                    {"reachable", "authorized", "bucketExists", "detail", "timestamp"});
    ProbeSummary probe;
    probe.reachable = parse_bool(lp, "reachable", "lastProbe");
    probe.authorized = parse_bool(lp, "authorized", "lastProbe");
    probe.bucket_exists = parse_bool(lp, "bucketExists", "lastProbe");
    probe.detail = yaml::opt_scalar(lp, "detail", "lastProbe").value_or("");
    probe.timestamp_ms = parse_int(lp, "timestamp", "lastProbe");
    status.last_probe = probe;
  }
  return status;
}

StoredObject decode_object(const YAML::Node& doc) {
  yaml::check_map(doc, "object", {"apiVersion", "kind", "metadata", "spec", "status", "data"});
  const auto kind_str = yaml::req_scalar(doc, "kind", "object");
  auto kind = parse_kind(kind_str);
  if (!kind || to_string(*kind) != kind_str) yaml::fail(doc["kind"], "unknown kind '" + kind_str + "'");
  const auto api = yaml::req_scalar(doc, "apiVersion", "object");
  if (api != api_version_for(*kind)) yaml::fail(doc["apiVersion"], "unsupported apiVersion '" + api + "'");
  if (!doc["metadata"]) yaml::fail(doc, "metadata: required");

  StoredObject obj;
  obj.kind = *kind;
  obj.meta = decode_meta(doc["metadata"]);
  auto require = [&](const char* key) {
    if (!doc[key]) yaml::fail(doc, std::string(key) + ": required for " + kind_str);
    return doc[key];
  };
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (doc[k]) yaml::fail(doc[k], std::string(k) + ": not allowed for " + kind_str);
    }
  };
  switch (*kind) {
    case Kind::kDataset: {
      forbid({"data"});
      const auto spec = require("spec");
      yaml::check_map(spec, "spec", {"local"});
      if (!spec["local"]) yaml::fail(spec, "spec.local: required");
      DatasetPayload p{decode_dataset_source(spec["local"]), {}};
      if (auto st = doc["status"]) p.status = decode_status(st);
      obj.payload = std::move(p);
      break;
    }
    case Kind::kVolumeClaim: {
      forbid({"data", "status"});
      const auto spec = require("spec");
      yaml::check_map(spec, "spec", {"storageClassName", "accessMode", "attributes", "secretName"});
      VolumeClaimPayload p;
      p.storage_class = yaml::req_scalar(spec, "storageClassName", "spec");
      p.access_mode = yaml::opt_scalar(spec, "accessMode", "spec").value_or("ReadWriteMany");
      if (auto a = spec["attributes"]) p.attributes = yaml::string_map(a, "spec.attributes");
      p.secret_name = yaml::opt_scalar(spec, "secretName", "spec");
      obj.payload = std::move(p);
      break;
    }
    case Kind::kSecret:
    case Kind::kConfigMap: {
      forbid({"spec", "status"});
      Labels data;
      if (auto d = doc["data"]) data = yaml::string_map(d, "data");
      if (*kind == Kind::kSecret) {
        obj.payload = SecretPayload{std::move(data)};
      } else {
        obj.payload = ConfigMapPayload{std::move(data)};
      }
      break;
    }
    case Kind::kPod: {
      forbid({"data", "status"});
      nlohmann::json body = {{"metadata", {{"name", obj.meta.name}}},
                             {"spec", yaml::to_json(require("spec"))}};
      try {
        obj.payload = PodPayload{pod_from_json(body).spec};
      } catch (const std::exception& e) {
        yaml::fail(doc["spec"], e.what());
      }
      break;
    }
    case Kind::kNamespace:
      forbid({"data", "status", "spec"});
      obj.payload = NamespacePayload{};
      break;
  }
  return obj;
}

}  // namespace

std::string encode_object(const StoredObject& obj) {
  YAML::Emitter out;
  emit_object(out, obj);
  return std::string(out.c_str()) + "\n";
}

std::string dump_snapshot(const std::vector<StoredObject>& objects) {
  std::string out;
  for (const auto& obj : objects) {
    out += "---\n";
    out += encode_object(obj);
  }
  return out;
}

std::vector<StoredObject> load_snapshot(std::string_view text) {
  std::vector<StoredObject> out;
  for (const auto& doc : yaml::load_documents(text)) out.push_back(decode_object(doc));
  return out;
}

void save_store(const Store& store, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << dump_snapshot(store.snapshot());
  }
  std::filesystem::rename(tmp, path);
}

void load_store(Store& store, const std::string& path) {
  std::ifstream f(path);
  if (!f) return;
  std::stringstream buf;
  buf << f.rdbuf();
  store.restore(load_snapshot(buf.str()));
}

}  // namespace dlf
