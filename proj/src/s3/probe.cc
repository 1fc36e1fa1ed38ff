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

#include "dlf/s3/probe.h"

#include <stdexcept>

#include "dlf/s3/client.h"

namespace dlf::s3 {

ProbeSummary ProbeResult::summary(std::int64_t timestamp_ms) const {
  return ProbeSummary{reachable, authorized, bucket_exists, detail, timestamp_ms};
}

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
}

ProbeResult from_status(int status, const std::string& what) {
  ProbeResult r;
  r.reachable = true;
  switch (status) {
    case 200:
      r.authorized = true;
      r.bucket_exists = true;
      r.detail = what + " ok";
      break;
    case 404:
      r.authorized = true;
      r.detail = what + " not found";
      break;
    case 403:
      r.detail = "access denied";
      break;
    default:
      r.detail = "unexpected HTTP status " + std::to_string(status);
  }
  return r;
}

}  // namespace

ProbeResult probe_cos(const std::string& endpoint, const std::string& bucket,
                      const Credentials& creds, std::chrono::milliseconds timeout) {
  auto url = parse_url(endpoint);
  if (!url) throw std::invalid_argument("malformed endpoint URL: " + endpoint);
  const auto t0 = Clock::now();
  if (url->scheme != "http") {
    ProbeResult r;
    r.detail = "unsupported scheme " + url->scheme + " (loopback probes are plain http)";
    return r;
  }
  ClientOptions opts;
  opts.timeout = timeout;
  opts.user_agent = "dlf-prober";
  S3Client client(endpoint, creds, opts);
  try {
    ProbeResult r = from_status(client.head_bucket(bucket), "bucket " + bucket);
    r.latency = since(t0);
    return r;
  } catch (const S3Error& e) {
    ProbeResult r;
    r.latency = since(t0);
    r.detail = e.what();
    return r;
  }
}

ProbeResult probe_archive(const std::string& url, std::chrono::milliseconds timeout) {
  auto parsed = parse_url(url);
  if (!parsed) throw std::invalid_argument("malformed archive URL: " + url);
  const auto t0 = Clock::now();
  if (parsed->scheme != "http") {
    ProbeResult r;
    r.detail = "unsupported scheme " + parsed->scheme + " (loopback probes are plain http)";
    return r;
  }
  // Path-style: /<bucket>/<key...>
  const std::string& path = parsed->path;
  const auto slash = path.find('/', 1);
  if (slash == std::string::npos || slash + 1 >= path.size()) {
    throw std::invalid_argument("archive URL must name /<bucket>/<object>: " + url);
  }
  ClientOptions opts;
  opts.timeout = timeout;
  opts.user_agent = "dlf-prober";
  opts.anonymous = true;
  S3Client client(parsed->scheme + "://" + parsed->host + ":" + std::to_string(parsed->port), {}, opts);
  try {
    ProbeResult r = from_status(client.head_object(path.substr(1, slash - 1), path.substr(slash + 1)),
                                "archive");
    r.latency = since(t0);
    return r;
  } catch (const S3Error& e) {
    ProbeResult r;
    r.latency = since(t0);
    r.detail = e.what();
    return r;
  }
}

ProbeResult EndpointProber::probe(const DatasetSpec& spec, std::chrono::milliseconds timeout) {
  try {
    if (const auto* cos = spec.cos()) {
      return probe_cos(cos->endpoint, cos->bucket, {cos->access_key_id, cos->secret_access_key}, timeout);
    }
    if (const auto* archive = spec.archive()) return probe_archive(archive->url, timeout);
  } catch (const std::invalid_argument& e) {
    ProbeResult r;
    r.detail = e.what();
    return r;
  }
  ProbeResult r;
  r.reachable = r.authorized = r.bucket_exists = true;
  r.detail = "nfs share not probed";
  return r;
}

ProbeResult TrustingProber::probe(const DatasetSpec&, std::chrono::milliseconds) {
  ProbeResult r;
  r.reachable = r.authorized = r.bucket_exists = true;
  r.detail = "probe disabled";
  return r;
}

}  // namespace dlf::s3
