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

#include "dlf/model/fingerprint.h"

#include <cstdio>
#include <map>

namespace dlf {

std::string canonical_spec(const DatasetSpec& spec) {
  std::map<std::string, std::string> fields;
  fields["type"] = std::string(to_string(spec.type()));
  if (const auto* cos = spec.cos()) {
    fields["endpoint"] = cos->endpoint;
    fields["bucket"] = cos->bucket;
    fields["accessKeyID"] = cos->access_key_id;
    fields["secretAccessKey"] = cos->secret_access_key;
    if (cos->region) fields["region"] = *cos->region;
    if (cos->secret_ref) fields["secretRef"] = *cos->secret_ref;
  } else if (const auto* nfs = spec.nfs()) {
    fields["server"] = nfs->server;
    fields["share"] = nfs->share;
  } else if (const auto* archive = spec.archive()) {
    fields["url"] = archive->url;
    fields["format"] = std::string(to_string(archive->format));
  }
  std::string out;
  for (const auto& [k, v] : fields) {
    out += k;
    out.push_back('\0');
    out += v;
    out.push_back('\0');
  }
  return out;
}

std::uint64_t spec_fingerprint(const DatasetSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_spec(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace dlf
