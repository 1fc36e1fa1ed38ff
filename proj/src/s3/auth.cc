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

#include "dlf/s3/auth.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>

namespace dlf::s3 {

namespace {

std::string to_hex(const unsigned char* data, unsigned int len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xf]);
  }
  return out;
}

// Constant-time over equal lengths.
bool equal_digest(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  unsigned char diff = 0;
  for (size_t i = 0; i < a.size(); ++i) diff |= static_cast<unsigned char>(a[i] ^ b[i]);
  return diff == 0;
}

constexpr std::string_view kSimplePrefix = "DLF-SIMPLE ";
constexpr std::string_view kSignedPrefix = "DLF-HMAC ";

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  return to_hex(md.data(), len);
}

std::string hmac_sha256_hex(std::string_view key, std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
       reinterpret_cast<const unsigned char*>(data.data()), data.size(), md.data(), &len);
  return to_hex(md.data(), len);
}

std::string string_to_sign(std::string_view method, std::string_view path, std::string_view date) {
  std::string out;
  out.append(method).append("\n").append(path).append("\n").append(date);
  return out;
}

std::string make_authorization(const Credentials& creds, AuthScheme scheme,
                               std::string_view method, std::string_view path,
                               std::string_view date) {
  if (scheme == AuthScheme::kSimple) {
    return std::string(kSimplePrefix) + "AccessKeyId=" + creds.access_key_id +
           ",SecretDigest=" + sha256_hex(creds.secret_access_key);
  }
  return std::string(kSignedPrefix) + "AccessKeyId=" + creds.access_key_id + ",Signature=" +
         hmac_sha256_hex(creds.secret_access_key, string_to_sign(method, path, date));
}

std::optional<ParsedAuthorization> parse_authorization(std::string_view header) {
  ParsedAuthorization out;
  std::string_view proof_key;
  if (header.starts_with(kSimplePrefix)) {
    out.scheme = AuthScheme::kSimple;
    header.remove_prefix(kSimplePrefix.size());
    proof_key = "SecretDigest=";
  } else if (header.starts_with(kSignedPrefix)) {
    out.scheme = AuthScheme::kSigned;
    header.remove_prefix(kSignedPrefix.size());
    proof_key = "Signature=";
  } else {
    return std::nullopt;
  }
  constexpr std::string_view kIdKey = "AccessKeyId=";
  auto comma = header.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto id_part = header.substr(0, comma);
  auto proof_part = header.substr(comma + 1);
  if (!id_part.starts_with(kIdKey) || !proof_part.starts_with(proof_key)) return std::nullopt;
  out.access_key_id = std::string(id_part.substr(kIdKey.size()));
  out.proof = std::string(proof_part.substr(proof_key.size()));
  if (out.access_key_id.empty() || out.proof.empty()) return std::nullopt;
  return out;
}

bool verify_authorization(const ParsedAuthorization& auth, const Credentials& creds,
                          std::string_view method, std::string_view path, std::string_view date) {
  if (auth.access_key_id != creds.access_key_id) return false;
  if (auth.scheme == AuthScheme::kSimple) {
    return equal_digest(auth.proof, sha256_hex(creds.secret_access_key));
  }
  return equal_digest(auth.proof,
                      hmac_sha256_hex(creds.secret_access_key, string_to_sign(method, path, date)));
}

}  // namespace dlf::s3
