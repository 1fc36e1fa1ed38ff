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

#include "dlf/s3/client.h"

#include <chrono>
#include <regex>

#include "httplib.h"

namespace dlf::s3 {

std::string_view to_string(S3Errc e) {
  switch (e) {
    case S3Errc::kNoSuchBucket: return "NoSuchBucket";
    case S3Errc::kNoSuchKey: return "NoSuchKey";
    case S3Errc::kAccessDenied: return "AccessDenied";
    case S3Errc::kUnreachable: return "Unreachable";
    case S3Errc::kProtocol: return "ProtocolError";
  }
  return "?";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string xml_unescape(std::string s) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}, {"&amp;", '&'}};
  std::string out;
  for (size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [ent, ch] : kEntities) {
        if (s.compare(i, ent.size(), ent) == 0) {
          out.push_back(ch);
          i += ent.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

std::string error_code(const std::string& body) {
  static const std::regex re("<Code>([^<]*)</Code>");
  std::smatch m;
  return std::regex_search(body, m, re) ? m[1].str() : std::string();
}

std::string now_stamp() {
  return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count());
}

[[noreturn]] void raise(const httplib::Result& res, const std::string& what) {
  if (!res) {
    throw S3Error(S3Errc::kUnreachable, what + ": " + httplib::to_string(res.error()));
  }
  const std::string code = error_code(res->body);
  if (code == "NoSuchBucket" || (code.empty() && res->status == 404 && what.starts_with("HEAD /"))) {
    throw S3Error(S3Errc::kNoSuchBucket, what + ": NoSuchBucket", res->status);
  }
  if (code == "NoSuchKey") throw S3Error(S3Errc::kNoSuchKey, what + ": NoSuchKey", res->status);
  if (res->status == 403 || code == "AccessDenied") {
    throw S3Error(S3Errc::kAccessDenied, what + ": AccessDenied", res->status);
  }
  throw S3Error(S3Errc::kProtocol, what + ": HTTP " + std::to_string(res->status), res->status);
}

}  // namespace

std::vector<std::string> parse_list_response(const std::string& body) {
  static const std::regex re("<Key>([^<]*)</Key>");
  std::vector<std::string> keys;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), re); it != std::sregex_iterator(); ++it) {
    keys.push_back(xml_unescape((*it)[1].str()));
  }
  return keys;
}

S3Client::S3Client(const std::string& endpoint, Credentials creds, ClientOptions options)
    : endpoint_(endpoint), creds_(std::move(creds)), options_(std::move(options)) {
  auto url = parse_url(endpoint);
  if (!url || url->scheme != "http") {
    throw std::invalid_argument("endpoint must be an absolute http URL: " + endpoint);
  }
  url_ = *url;
}

namespace {

struct Call {
  httplib::Client cli;
  httplib::Headers headers;

  Call(const ParsedUrl& url, const Credentials& creds, const ClientOptions& opt,
       const std::string& method, const std::string& path)
      : cli(url.host, url.port) {
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(opt.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(opt.timeout - secs);
    cli.set_connection_timeout(secs.count(), usecs.count());
    cli.set_read_timeout(secs.count(), usecs.count());
    cli.set_write_timeout(secs.count(), usecs.count());
    cli.set_keep_alive(false);
    headers.emplace("User-Agent", opt.user_agent);
    if (!opt.anonymous) {
      const std::string date = now_stamp();
      headers.emplace(kDateHeader, date);
      headers.emplace(kAuthHeader, make_authorization(creds, opt.scheme, method, path, date));
    }
  }
};

}  // namespace

int S3Client::head_bucket(const std::string& bucket) const {
  const std::string path = "/" + bucket;
  Call call(url_, creds_, options_, "HEAD", path);
  auto res = call.cli.Head(path, call.headers);
  if (!res) raise(res, "HEAD " + path);
  return res->status;
}

int S3Client::head_object(const std::string& bucket, const std::string& key) const {
  const std::string path = "/" + bucket + "/" + key;
  Call call(url_, creds_, options_, "HEAD", path);
  auto res = call.cli.Head(path, call.headers);
  if (!res) raise(res, "HEAD " + path);
  return res->status;
}

std::string S3Client::get_object(const std::string& bucket, const std::string& key) const {
  const std::string path = "/" + bucket + "/" + key;
  Call call(url_, creds_, options_, "GET", path);
  auto res = call.cli.Get(path, call.headers);
  if (!res || res->status != 200) raise(res, "GET " + path);
  return std::move(res->body);
}

std::int64_t S3Client::put_object(const std::string& bucket, const std::string& key,
                                  const std::string& content) const {
  const std::string path = "/" + bucket + "/" + key;
  Call call(url_, creds_, options_, "PUT", path);
  auto res = call.cli.Put(path, call.headers, content, "application/octet-stream");
  if (!res || res->status != 200) raise(res, "PUT " + path);
  const std::string version = res->get_header_value(kVersionHeader);
  return version.empty() ? 0 : std::stoll(version);
}

void S3Client::delete_object(const std::string& bucket, const std::string& key) const {
  const std::string path = "/" + bucket + "/" + key;
  Call call(url_, creds_, options_, "DELETE", path);
  auto res = call.cli.Delete(path, call.headers);
  if (!res || (res->status != 204 && res->status != 200)) raise(res, "DELETE " + path);
}

std::vector<std::string> S3Client::list_objects(const std::string& bucket,
                                                const std::string& prefix) const {
  const std::string path = "/" + bucket;
  Call call(url_, creds_, options_, "GET", path);
  httplib::Params params{{"prefix", prefix}};
  auto res = call.cli.Get(path, params, call.headers);
  if (!res || res->status != 200) raise(res, "GET " + path);
  return parse_list_response(res->body);
}

}  // namespace dlf::s3
