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

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlf/model/dataset.h"
#include "dlf/s3/auth.h"

namespace dlf::s3 {

enum class S3Errc { kNoSuchBucket, kNoSuchKey, kAccessDenied, kUnreachable, kProtocol };

std::string_view to_string(S3Errc e);

class S3Error : public std::runtime_error {
 public:
  S3Error(S3Errc code, const std::string& message, int http_status = 0)
      : std::runtime_error(message), code_(code), http_status_(http_status) {}

  S3Errc code() const { return code_; }
  int http_status() const { return http_status_; }

 private:
  S3Errc code_;
  int http_status_;
};

struct ClientOptions {
  std::chrono::milliseconds timeout{2000};
  std::string user_agent = "dlf-s3-client";
  AuthScheme scheme = AuthScheme::kSimple;
  bool anonymous = false;  // send no Authorization header
};

// Blocking path-style S3-subset client (`http://host:port/<bucket>/<key>`).
// Each call opens its own connection, so one client may be shared by threads.
class S3Client {
 public:
  // Throws std::invalid_argument if endpoint is not an absolute http URL.
  S3Client(const std::string& endpoint, Credentials creds, ClientOptions options = {});

  const std::string& endpoint() const { return endpoint_; }
  const ClientOptions& options() const { return options_; }

  // Raw HTTP status of HEAD /<bucket>; throws S3Error(kUnreachable) when no
  // response arrives.
  int head_bucket(const std::string& bucket) const;
  int head_object(const std::string& bucket, const std::string& key) const;

  std::string get_object(const std::string& bucket, const std::string& key) const;
  // Returns the per-key version assigned by the server.
  std::int64_t put_object(const std::string& bucket, const std::string& key,
                          const std::string& content) const;
  void delete_object(const std::string& bucket, const std::string& key) const;
  // Keys with the given prefix, lexicographic order.
  std::vector<std::string> list_objects(const std::string& bucket, const std::string& prefix) const;

 private:
  std::string endpoint_;
  ParsedUrl url_;
  Credentials creds_;
  ClientOptions options_;
};

// Parses `<Key>` entries out of a ListBucketResult body.
std::vector<std::string> parse_list_response(const std::string& body);
std::string xml_escape(std::string_view s);

}  // namespace dlf::s3
