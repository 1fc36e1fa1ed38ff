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

#include "dlf/model/dataset.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <regex>

namespace dlf {

std::string_view to_string(DatasetType t) {
  switch (t) {
    case DatasetType::kCos: return "COS";
    case DatasetType::kNfs: return "NFS";
    case DatasetType::kArchive: return "ARCHIVE";
  }
  return "?";
}

std::optional<DatasetType> parse_dataset_type(std::string_view s) {
  if (s == "COS") return DatasetType::kCos;
  if (s == "NFS") return DatasetType::kNfs;
  if (s == "ARCHIVE") return DatasetType::kArchive;
  return std::nullopt;
}

std::string_view to_string(ArchiveFormat f) {
  switch (f) {
    case ArchiveFormat::kRaw: return "raw";
    case ArchiveFormat::kTar: return "tar";
    case ArchiveFormat::kTarGz: return "targz";
  }
  return "?";
}

std::optional<ArchiveFormat> parse_archive_format(std::string_view s) {
  if (s == "raw") return ArchiveFormat::kRaw;
  if (s == "tar") return ArchiveFormat::kTar;
  if (s == "targz") return ArchiveFormat::kTarGz;
  return std::nullopt;
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kPending: return "Pending";
    case Phase::kProvisioning: return "Provisioning";
    case Phase::kReady: return "Ready";
    case Phase::kFailed: return "Failed";
    case Phase::kTerminating: return "Terminating";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::kPending, Phase::kProvisioning, Phase::kReady,
                  Phase::kFailed, Phase::kTerminating}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

bool can_transition(Phase from, Phase to) {
  if (from == to) return false;
  if (to == Phase::kTerminating) return true;
  switch (from) {
    case Phase::kPending: return to == Phase::kProvisioning;
    case Phase::kProvisioning: return to == Phase::kReady || to == Phase::kFailed;
    case Phase::kFailed: return to == Phase::kProvisioning;
    // A spec change on a Ready dataset re-provisions its dependents.
    case Phase::kReady: return to == Phase::kProvisioning;
    case Phase::kTerminating: return false;
  }
  return false;
}

namespace {

bool is_ipv4(std::string_view s) {
  int parts = 0;
  size_t i = 0;
  while (i <= s.size()) {
    size_t j = s.find('.', i);
    if (j == std::string_view::npos) j = s.size();
    auto part = s.substr(i, j - i);
    if (part.empty() || part.size() > 3) return false;
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size() || v > 255) return false;
    ++parts;
    i = j + 1;
  }
  return parts == 4;
}

bool is_hostname(std::string_view s) {
  static const std::regex re(R"(^[A-Za-z0-9]([A-Za-z0-9.-]*[A-Za-z0-9])?$)");
  return s.size() <= 253 && std::regex_match(s.begin(), s.end(), re);
}

void require(ValidationResult& r, const std::string& value, const char* field) {
  if (value.empty()) r.errors.push_back({field, "required"});
}

void check_url(ValidationResult& r, const std::string& value, const char* field) {
  if (value.empty()) {
    r.errors.push_back({field, "required"});
  } else if (!parse_url(value)) {
    r.errors.push_back({field, "must be an absolute http or https URL"});
  }
}

}  // namespace

bool is_valid_bucket_name(std::string_view name) {
  if (name.size() < 3 || name.size() > 63) return false;
  auto alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!std::all_of(name.begin(), name.end(),
                   [&](char c) { return alnum(c) || c == '.' || c == '-'; })) {
    return false;
  }
  if (!alnum(name.front()) || !alnum(name.back())) return false;
  if (name.find("..") != std::string_view::npos) return false;
  if (is_ipv4(name)) return false;
  if (name.starts_with("xn--") || name.starts_with("sthree-")) return false;
  if (name.ends_with("-s3alias") || name.ends_with("--ol-s3")) return false;
  return true;
}

std::optional<ParsedUrl> parse_url(std::string_view url) {
  static const std::regex re(R"(^(https?)://([^/:?#\s]+)(:([0-9]{1,5}))?([/?#]\S*)?$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(url.begin(), url.end(), m, re)) return std::nullopt;
  ParsedUrl out;
  out.scheme = m[1].str();
  out.host = m[2].str();
  if (!is_hostname(out.host)) return std::nullopt;
  if (m[4].matched) {
    int port = std::stoi(m[4].str());
    if (port < 1 || port > 65535) return std::nullopt;
    out.port = static_cast<std::uint16_t>(port);
  } else {
    out.port = out.scheme == "https" ? 443 : 80;
  }
  out.path = m[5].matched ? m[5].str() : "/";
  if (out.path.front() != '/') out.path.insert(out.path.begin(), '/');
  return out;
}

ValidationResult validate_dataset(const DatasetSpec& spec) {
  ValidationResult r;
  if (const auto* cos = spec.cos()) {
    check_url(r, cos->endpoint, "spec.endpoint");
    if (cos->bucket.empty()) {
      r.errors.push_back({"spec.bucket", "required"});
    } else if (!is_valid_bucket_name(cos->bucket)) {
      r.errors.push_back({"spec.bucket", "must match S3 bucket grammar"});
    }
    require(r, cos->access_key_id, "spec.accessKeyID");
    if (cos->secret_ref) {
      if (!is_dns_label(*cos->secret_ref)) {
        r.errors.push_back({"spec.secretRef", "must be a DNS label"});
      }
    } else {
      require(r, cos->secret_access_key, "spec.secretAccessKey");
    }
    if (cos->region) {
      static const std::regex region_re("^[a-z0-9]([-a-z0-9]*[a-z0-9])?$");
      if (!std::regex_match(*cos->region, region_re)) {
        r.errors.push_back({"spec.region", "must be lowercase alphanumerics and hyphens"});
      }
    }
  } else if (const auto* nfs = spec.nfs()) {
    if (nfs->server.empty()) {
      r.errors.push_back({"spec.server", "required"});
    } else if (!is_hostname(nfs->server)) {
      r.errors.push_back({"spec.server", "must be a host name or address"});
    }
    if (nfs->share.empty()) {
      r.errors.push_back({"spec.share", "required"});
    } else if (nfs->share.front() != '/') {
      r.errors.push_back({"spec.share", "must be an absolute path"});
    }
  } else if (const auto* archive = spec.archive()) {
    check_url(r, archive->url, "spec.url");
  }
  return r;
}

}  // namespace dlf
