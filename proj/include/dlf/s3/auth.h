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

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dlf::s3 {

struct Credentials {
  std::string access_key_id;
  std::string secret_access_key;

  bool operator==(const Credentials&) const = default;
};

// Two request authorization schemes, both carried in `Authorization`:
//
//   DLF-SIMPLE AccessKeyId=<id>,SecretDigest=<hex sha256(secret)>
//   DLF-HMAC AccessKeyId=<id>,Signature=<hex hmac_sha256(secret, string-to-sign)>
//
// string-to-sign is `METHOD "\n" PATH "\n" X-Dlf-Date`, PATH being the
// unescaped request path (`/<bucket>/<key>`).
enum class AuthScheme { kSimple, kSigned };

inline constexpr const char* kAuthHeader = "Authorization";
inline constexpr const char* kDateHeader = "X-Dlf-Date";
inline constexpr const char* kVersionHeader = "X-Dlf-Version";

std::string sha256_hex(std::string_view data);
std::string hmac_sha256_hex(std::string_view key, std::string_view data);

std::string string_to_sign(std::string_view method, std::string_view path, std::string_view date);

std::string make_authorization(const Credentials& creds, AuthScheme scheme,
                               std::string_view method, std::string_view path,
                               std::string_view date);

struct ParsedAuthorization {
  AuthScheme scheme = AuthScheme::kSimple;
  std::string access_key_id;
  std::string proof;  // secret digest or signature, lowercase hex
};

std::optional<ParsedAuthorization> parse_authorization(std::string_view header);

// Proof check against known credentials (access key ids must already match).
bool verify_authorization(const ParsedAuthorization& auth, const Credentials& creds,
                          std::string_view method, std::string_view path, std::string_view date);

}  // namespace dlf::s3
