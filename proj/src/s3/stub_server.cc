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

#include "dlf/s3/stub_server.h"

#include <optional>
#include <stdexcept>

#include "httplib.h"

#include "dlf/s3/client.h"

namespace dlf::s3 {

namespace {

std::string error_body(std::string_view code, std::string_view resource) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<Error><Code>" + std::string(code) +
         "</Code><Resource>" + xml_escape(resource) + "</Resource></Error>";
}

void set_error(httplib::Response& res, int status, std::string_view code, std::string_view resource) {
  res.status = status;
  res.set_content(error_body(code, resource), "application/xml");
}

constexpr int kServerThreads = 16;

}  // namespace

StubServer::StubServer(std::vector<StubBucketConfig> buckets, StubOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  for (auto& cfg : buckets) {
    Bucket b;
    b.objects = cfg.objects;
    for (const auto& [k, v] : b.objects) b.versions[k] = 1;
    std::string name = cfg.bucket_name;
    b.config = std::move(cfg);
    if (!buckets_.emplace(name, std::move(b)).second) {
      throw std::invalid_argument("duplicate stub bucket " + name);
    }
  }
}

std::unique_ptr<StubServer> StubServer::start(std::vector<StubBucketConfig> buckets,
                                              StubOptions options) {
  std::unique_ptr<StubServer> s(new StubServer(std::move(buckets), std::move(options)));
  s->install_routes();
  s->server_->new_task_queue = [] { return new httplib::ThreadPool(kServerThreads); };
  if (s->options_.port == 0) {
    s->port_ = s->server_->bind_to_any_port(s->options_.host);
  } else {
    s->port_ = s->server_->bind_to_port(s->options_.host, s->options_.port) ? s->options_.port : -1;
  }
  if (s->port_ <= 0) throw std::runtime_error("stub server: cannot bind " + s->options_.host);
  s->running_ = true;
  StubServer* raw = s.get();
  s->thread_ = std::thread([raw] { raw->server_->listen_after_bind(); });
  s->server_->wait_until_ready();
  return s;
}

StubServer::~StubServer() { stop(); }

void StubServer::stop() {
  if (running_.exchange(false)) {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }
}

std::string StubServer::endpoint() const {
  return "http://" + options_.host + ":" + std::to_string(port_);
}

void StubServer::record(const StubRequest& req) {
  ++counters_[{req.bucket, req.verb}];
  ++total_;
  log_.push_back(req);
}

void StubServer::install_routes() {
  // Runs under mu_. Returns the bucket when the request is allowed; otherwise
  // writes the error response and returns null.
  auto authorize = [this](const httplib::Request& req, httplib::Response& res,
                          const std::string& bucket, bool read) -> Bucket* {
    const std::string header = req.get_header_value(kAuthHeader);
    if (!header.empty()) {
      auto parsed = parse_authorization(header);
      if (!parsed || (options_.verify_signatures && parsed->scheme != AuthScheme::kSigned)) {
        set_error(res, 403, "AccessDenied", req.path);
        return nullptr;
      }
      const std::string date = req.get_header_value(kDateHeader);
      const Credentials* matched = nullptr;
      for (const auto& [name, b] : buckets_) {
        if (verify_authorization(*parsed, b.config.credentials, req.method, req.path, date)) {
          matched = &b.config.credentials;
          break;
        }
      }
      if (!matched) {
        set_error(res, 403, "AccessDenied", req.path);
        return nullptr;
      }
      auto it = buckets_.find(bucket);
      if (it == buckets_.end()) {
        set_error(res, 404, "NoSuchBucket", bucket);
        return nullptr;
      }
      if (!(it->second.config.credentials == *matched) && !(read && it->second.config.public_read)) {
        set_error(res, 403, "AccessDenied", req.path);
        return nullptr;
      }
      return &it->second;
    }
    auto it = buckets_.find(bucket);
    if (it == buckets_.end()) {
      set_error(res, 404, "NoSuchBucket", bucket);
      return nullptr;
    }
    if (!(read && it->second.config.public_read)) {
      set_error(res, 403, "AccessDenied", req.path);
      return nullptr;
    }
    return &it->second;
  };

  auto object_route = [this, authorize](const std::string& route_verb) {
    return [this, authorize, route_verb](const httplib::Request& req, httplib::Response& res) {
      const std::string verb = req.method == "HEAD" ? std::string("HEAD") : route_verb;
      const std::string bucket = req.matches[1];
      const std::string key = req.matches[2];
      const bool read = verb == "GET" || verb == "HEAD";
      std::chrono::nanoseconds delay{0};
      {
        std::lock_guard lock(mu_);
        Bucket* b = authorize(req, res, bucket, read);
        if (b) {
          if (read) {
            auto it = b->objects.find(key);
            if (it == b->objects.end()) {
              set_error(res, 404, "NoSuchKey", key);
            } else {
              res.status = 200;
              res.set_header(kVersionHeader, std::to_string(b->versions[key]));
              if (verb == "GET") {
                res.set_content(it->second, "application/octet-stream");
                delay = b->config.latency.delay_for(it->second.size());
              } else {
                delay = b->config.latency.delay_for(0);
              }
            }
          } else if (verb == "PUT") {
            b->objects[key] = req.body;
            const auto version = ++b->versions[key];
            res.status = 200;
            res.set_header(kVersionHeader, std::to_string(version));
            delay = b->config.latency.delay_for(req.body.size());
          } else {
            b->objects.erase(key);
            res.status = 204;
            delay = b->config.latency.delay_for(0);
          }
        }
        record({verb, bucket, key, req.get_header_value("User-Agent"), res.status});
      }
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
    };
  };

  constexpr const char* kObjectPath = R"(/([^/]+)/(.+))";
  constexpr const char* kBucketPath = R"(/([^/]+)/?)";
  server_->Get(kObjectPath, object_route("GET"));
  server_->Put(kObjectPath, object_route("PUT"));
  server_->Delete(kObjectPath, object_route("DELETE"));

  // HEAD is routed through the GET table by httplib; distinguish by method.
  server_->Get(kBucketPath, [this, authorize](const httplib::Request& req, httplib::Response& res) {
    const std::string bucket = req.matches[1];
    const bool head = req.method == "HEAD";
    std::chrono::nanoseconds delay{0};
    {
      std::lock_guard lock(mu_);
      Bucket* b = authorize(req, res, bucket, true);
      if (b) {
        res.status = 200;
        delay = b->config.latency.delay_for(0);
        if (!head) {
          const std::string prefix = req.get_param_value("prefix");
          std::string body =
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<ListBucketResult><Name>" +
              xml_escape(bucket) + "</Name><Prefix>" + xml_escape(prefix) + "</Prefix>";
          for (auto it = b->objects.lower_bound(prefix);
               it != b->objects.end() && it->first.starts_with(prefix); ++it) {
            body += "<Contents><Key>" + xml_escape(it->first) + "</Key><Size>" +
                    std::to_string(it->second.size()) + "</Size></Contents>";
          }
          body += "</ListBucketResult>";
          res.set_content(body, "application/xml");
        }
      }
      record({head ? "HEAD" : "LIST", bucket, "", req.get_header_value("User-Agent"), res.status});
    }
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
  });
}

std::uint64_t StubServer::request_count(const std::string& bucket, const std::string& verb) const {
  std::lock_guard lock(mu_);
  auto it = counters_.find({bucket, verb});
  return it == counters_.end() ? 0 : it->second;
}

std::uint64_t StubServer::request_count(const std::string& bucket, const std::string& verb,
                                        const std::string& user_agent) const {
  std::lock_guard lock(mu_);
  std::uint64_t n = 0;
  for (const auto& r : log_) {
    if (r.bucket == bucket && r.verb == verb && r.user_agent == user_agent) ++n;
  }
  return n;
}

std::uint64_t StubServer::total_requests() const {
  std::lock_guard lock(mu_);
  return total_;
}

std::map<std::pair<std::string, std::string>, std::uint64_t> StubServer::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

std::vector<StubRequest> StubServer::request_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

void StubServer::reset_counters() {
  std::lock_guard lock(mu_);
  counters_.clear();
  log_.clear();
  total_ = 0;
}

std::optional<std::string> StubServer::object(const std::string& bucket, const std::string& key) const {
  std::lock_guard lock(mu_);
  auto b = buckets_.find(bucket);
  if (b == buckets_.end()) return std::nullopt;
  auto it = b->second.objects.find(key);
  if (it == b->second.objects.end()) return std::nullopt;
  return it->second;
}

void StubServer::put_direct(const std::string& bucket, const std::string& key, std::string content) {
  std::lock_guard lock(mu_);
  auto& b = buckets_.at(bucket);
  b.objects[key] = std::move(content);
  ++b.versions[key];
}

std::size_t StubServer::object_count(const std::string& bucket) const {
  std::lock_guard lock(mu_);
  auto b = buckets_.find(bucket);
  return b == buckets_.end() ? 0 : b->second.objects.size();
}

}  // namespace dlf::s3
