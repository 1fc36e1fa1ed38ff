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

#include "dlf/admission/convention.h"

#include <cctype>
#include <map>
#include <regex>

namespace dlf::admission {

std::string_view to_string(UseAs u) { return u == UseAs::kMount ? "mount" : "configmap"; }

std::string_view to_string(AdmissionErrc e) {
  switch (e) {
    case AdmissionErrc::kMalformedConvention: return "MalformedConvention";
    case AdmissionErrc::kDatasetNotFound: return "DatasetNotFound";
    case AdmissionErrc::kDatasetNotReady: return "DatasetNotReady";
    case AdmissionErrc::kMountPathCollision: return "MountPathCollision";
    case AdmissionErrc::kUnsupportedAccess: return "UnsupportedAccessMode";
  }
  return "?";
}

namespace {

struct Group {
  std::optional<std::string> id, useas, uses, mountpath;
};

[[noreturn]] void malformed(const std::string& msg) {
  throw AdmissionError(AdmissionErrc::kMalformedConvention, "malformed dataset labels: " + msg);
}

// Groups dataset.<N>.<field> labels by N. Unknown fields are ignored.
// Returns false (lenient) or throws (strict) on a non-canonical index.
bool collect(const Labels& labels, std::map<int, Group>& out, bool strict) {
  static const std::regex key_re(R"(^dataset\.([0-9]+)\.([A-Za-z]+)$)");
  for (const auto& [key, value] : labels) {
    std::smatch m;
    if (!std::regex_match(key, m, key_re)) continue;
    const std::string digits = m[1].str();
    if ((digits.size() > 1 && digits[0] == '0') || digits.size() > 9) {
      if (strict) malformed("non-canonical index in " + key);
      continue;
    }
    Group& g = out[std::stoi(digits)];
    const std::string field = m[2].str();
    if (field == "id") g.id = value;
    else if (field == "useas") g.useas = value;
    else if (field == "uses") g.uses = value;
    else if (field == "mountpath") g.mountpath = value;
  }
  return true;
}

std::optional<UseAs> parse_useas(const std::string& v) {
  if (v == "mount") return UseAs::kMount;
  if (v == "configmap") return UseAs::kConfigMap;
  return std::nullopt;
}

}  // namespace

std::vector<DatasetRef> extract_dataset_refs(const Labels& labels) {
  std::map<int, Group> groups;
  collect(labels, groups, true);
  std::vector<DatasetRef> refs;
  std::map<std::string, int> mounted;
  for (const auto& [index, g] : groups) {
    const std::string at = "dataset." + std::to_string(index);
    if (!g.id) {
      if (g.useas || g.uses || g.mountpath) malformed(at + ".id missing");
      continue;
    }
    if (!is_dns_label(*g.id)) malformed(at + ".id is not a valid dataset name: " + *g.id);
    if (g.useas && g.uses && *g.useas != *g.uses) {
      malformed(at + ".useas and " + at + ".uses disagree");
    }
    const std::optional<std::string>& raw = g.useas ? g.useas : g.uses;
    if (!raw) malformed(at + ".useas missing for id " + *g.id);
    const auto useas = parse_useas(*raw);
    if (!useas) malformed(at + ".useas has unknown value '" + *raw + "'");

    DatasetRef ref{index, *g.id, *useas, std::nullopt};
    if (g.mountpath) {
      if (*useas != UseAs::kMount) malformed(at + ".mountpath given for a configmap ref");
      if (g.mountpath->empty() || g.mountpath->front() != '/') {
        malformed(at + ".mountpath must be absolute: " + *g.mountpath);
      }
      ref.mount_path_override = g.mountpath;
    }
    if (*useas == UseAs::kMount) {
      auto [it, fresh] = mounted.emplace(ref.id, index);
      if (!fresh) {
        malformed("dataset " + ref.id + " mounted twice (indices " + std::to_string(it->second) +
                  " and " + std::to_string(index) + ")");
      }
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

bool has_dataset_pair(const Labels& labels) {
  std::map<int, Group> groups;
  collect(labels, groups, false);
  for (const auto& [index, g] : groups) {
    const std::optional<std::string>& raw = g.useas ? g.useas : g.uses;
    if (g.id && raw && parse_useas(*raw)) return true;
  }
  return false;
}

std::string default_mount_path(std::string_view id) { return std::string(kMountRoot) + std::string(id); }

std::string env_prefix(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace dlf::admission
