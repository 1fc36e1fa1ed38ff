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

#include "dlf/model/manifest.h"

#include <set>

#include <yaml-cpp/yaml.h>

#include "dlf/model/yaml_strict.h"

namespace dlf {

ManifestError::ManifestError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace yaml {

void fail(const YAML::Node& at, const std::string& message) {
  const YAML::Mark mark = at.Mark();
  if (mark.is_null()) throw ManifestError(message, 0, 0);
  throw ManifestError(message, mark.line + 1, mark.column + 1);
}

std::vector<YAML::Node> load_documents(std::string_view text) {
  try {
    std::vector<YAML::Node> docs;
    for (auto& d : YAML::LoadAll(std::string(text))) {
      if (!d.IsNull()) docs.push_back(std::move(d));
    }
    return docs;
  } catch (const YAML::ParserException& e) {
    throw ManifestError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

void check_map(const YAML::Node& node, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) fail(node, std::string(where) + ": expected a mapping");
  std::set<std::string> seen;
  for (auto it = node.begin(); it != node.end(); ++it) {
    if (!it->first.IsScalar()) fail(it->first, std::string(where) + ": keys must be scalars");
    const std::string key = it->first.Scalar();
    if (!seen.insert(key).second) {
      fail(it->first, std::string(where) + ": duplicate key '" + key + "'");
    }
    if (allowed.size() > 0) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) fail(it->first, std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

std::optional<std::string> opt_scalar(const YAML::Node& map, std::string_view key,
                                      std::string_view where) {
  const YAML::Node v = map[std::string(key)];
  if (!v) return std::nullopt;
  if (v.IsNull()) return std::string();
  if (!v.IsScalar()) fail(v, std::string(where) + "." + std::string(key) + ": expected a string");
  return v.Scalar();
}

std::string req_scalar(const YAML::Node& map, std::string_view key, std::string_view where) {
  auto v = opt_scalar(map, key, where);
  if (!v) fail(map, std::string(where) + "." + std::string(key) + ": required");
  return *v;
}

Labels string_map(const YAML::Node& node, std::string_view where) {
  Labels out;
  if (node.IsNull()) return out;
  check_map(node, where);
  for (auto it = node.begin(); it != node.end(); ++it) {
    const YAML::Node& v = it->second;
    if (v.IsNull()) {
      out[it->first.Scalar()] = "";
    } else if (v.IsScalar()) {
      out[it->first.Scalar()] = v.Scalar();
    } else {
      fail(v, std::string(where) + "." + it->first.Scalar() + ": expected a string");
    }
  }
  return out;
}

nlohmann::json to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      check_map(node, "document");
      nlohmann::json out = nlohmann::json::object();
      for (auto it = node.begin(); it != node.end(); ++it) {
        out[it->first.Scalar()] = to_json(it->second);
      }
      return out;
    }
    case YAML::NodeType::Sequence: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& item : node) out.push_back(to_json(item));
      return out;
    }
    case YAML::NodeType::Scalar:
      return node.Scalar();
    default:
      return nullptr;
  }
}

}  // namespace yaml

namespace {

constexpr std::string_view kLocal = "spec.local";

void check_header(const YAML::Node& doc, std::string_view api_version, std::string_view kind) {
  const auto api = yaml::req_scalar(doc, "apiVersion", "manifest");
  if (api != api_version) {
    yaml::fail(doc["apiVersion"], "unsupported apiVersion '" + api + "'");
  }
  const auto k = yaml::req_scalar(doc, "kind", "manifest");
  if (k != kind) yaml::fail(doc["kind"], "expected kind " + std::string(kind) + ", got '" + k + "'");
}

ObjectMeta decode_user_meta(const YAML::Node& meta) {
  yaml::check_map(meta, "metadata", {"name", "namespace", "labels", "annotations"});
  ObjectMeta out;
  out.name = yaml::req_scalar(meta, "name", "metadata");
  out.ns = yaml::opt_scalar(meta, "namespace", "metadata").value_or(std::string(kDefaultNamespace));
  if (auto l = meta["labels"]) out.labels = yaml::string_map(l, "metadata.labels");
  if (auto a = meta["annotations"]) out.annotations = yaml::string_map(a, "metadata.annotations");
  return out;
}

void emit_string_map(YAML::Emitter& out, const char* key, const Labels& m) {
  if (m.empty()) return;
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  for (const auto& [k, v] : m) out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
  out << YAML::EndMap;
}

}  // namespace

DatasetSpec decode_dataset_source(const YAML::Node& local) {
  if (!local.IsMap()) yaml::fail(local, "spec.local: expected a mapping");
  yaml::check_map(local, kLocal);
  const auto type_str = yaml::req_scalar(local, "type", kLocal);
  const auto type = parse_dataset_type(type_str);
  if (!type) yaml::fail(local["type"], "unknown datasetType '" + type_str + "'");

  DatasetSpec spec;
  auto get = [&](std::string_view k) { return yaml::opt_scalar(local, k, kLocal).value_or(""); };
  switch (*type) {
    case DatasetType::kCos: {
      yaml::check_map(local, kLocal,
                      {"type", "endpoint", "bucket", "accessKeyID", "secretAccessKey", "region",
                       "secretRef"});
      CosSource cos;
      cos.endpoint = get("endpoint");
      cos.bucket = get("bucket");
      cos.access_key_id = get("accessKeyID");
      cos.secret_access_key = get("secretAccessKey");
      cos.region = yaml::opt_scalar(local, "region", kLocal);
      cos.secret_ref = yaml::opt_scalar(local, "secretRef", kLocal);
      spec.source = std::move(cos);
      break;
    }
    case DatasetType::kNfs:
      yaml::check_map(local, kLocal, {"type", "server", "share"});
      spec.source = NfsSource{get("server"), get("share")};
      break;
    case DatasetType::kArchive: {
      yaml::check_map(local, kLocal, {"type", "url", "format"});
      const auto fmt_str = yaml::req_scalar(local, "format", kLocal);
      const auto fmt = parse_archive_format(fmt_str);
      if (!fmt) yaml::fail(local["format"], "unknown archive format '" + fmt_str + "'");
      spec.source = ArchiveSource{get("url"), *fmt};
      break;
    }
  }
  return spec;
}

void emit_dataset_source(YAML::Emitter& out, const DatasetSpec& spec) {
  out << YAML::BeginMap;
  out << YAML::Key << "type" << YAML::Value << std::string(to_string(spec.type()));
  auto field = [&](const char* k, const std::string& v) {
    out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
  };
  if (const auto* cos = spec.cos()) {
    field("endpoint", cos->endpoint);
    field("bucket", cos->bucket);
    field("accessKeyID", cos->access_key_id);
    if (!cos->secret_access_key.empty() || !cos->secret_ref) {
      field("secretAccessKey", cos->secret_access_key);
    }
    if (cos->region) field("region", *cos->region);
    if (cos->secret_ref) field("secretRef", *cos->secret_ref);
  } else if (const auto* nfs = spec.nfs()) {
    field("server", nfs->server);
    field("share", nfs->share);
  } else if (const auto* archive = spec.archive()) {
    field("url", archive->url);
    field("format", std::string(to_string(archive->format)));
  }
  out << YAML::EndMap;
}

Dataset parse_manifest(std::string_view text) {
  auto docs = yaml::load_documents(text);
  if (docs.size() != 1) {
    throw ManifestError("expected exactly one document, found " + std::to_string(docs.size()), 0, 0);
  }
  const YAML::Node& doc = docs.front();
  yaml::check_map(doc, "manifest", {"apiVersion", "kind", "metadata", "spec"});
  check_header(doc, kDatasetApiVersion, "Dataset");
  if (!doc["metadata"]) yaml::fail(doc, "metadata: required");
  if (!doc["spec"]) yaml::fail(doc, "spec: required");

  Dataset ds;
  ds.meta = decode_user_meta(doc["metadata"]);
  const YAML::Node spec = doc["spec"];
  yaml::check_map(spec, "spec", {"local"});
  if (!spec["local"]) yaml::fail(spec, "spec.local: required");
  ds.spec = decode_dataset_source(spec["local"]);
  ds.status.phase = Phase::kPending;
  return ds;
}

std::string serialize_manifest(const Dataset& ds) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "apiVersion" << YAML::Value << std::string(kDatasetApiVersion);
  out << YAML::Key << "kind" << YAML::Value << "Dataset";
  out << YAML::Key << "metadata" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << ds.meta.name;
  out << YAML::Key << "namespace" << YAML::Value << ds.meta.ns;
  emit_string_map(out, "labels", ds.meta.labels);
  emit_string_map(out, "annotations", ds.meta.annotations);
  out << YAML::EndMap;
  out << YAML::Key << "spec" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "local" << YAML::Value;
  emit_dataset_source(out, ds.spec);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Pod decode_pod(const YAML::Node& doc) {
  yaml::check_map(doc, "manifest", {"apiVersion", "kind", "metadata", "spec"});
  check_header(doc, "v1", "Pod");
  if (!doc["metadata"]) yaml::fail(doc, "metadata: required");
  if (!doc["spec"]) yaml::fail(doc, "spec: required");
  nlohmann::json body = {{"metadata", yaml::to_json(doc["metadata"])},
                         {"spec", yaml::to_json(doc["spec"])}};
  try {
    return pod_from_json(body);
  } catch (const std::invalid_argument& e) {
    yaml::fail(doc, e.what());
  } catch (const nlohmann::json::exception& e) {
    yaml::fail(doc, e.what());
  }
}

Pod parse_pod_manifest(std::string_view text) {
  auto docs = yaml::load_documents(text);
  if (docs.size() != 1) {
    throw ManifestError("expected exactly one document, found " + std::to_string(docs.size()), 0, 0);
  }
  return decode_pod(docs.front());
}

}  // namespace dlf
