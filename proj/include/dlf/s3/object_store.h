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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dlf/s3/client.h"

namespace dlf::s3 {

// Whole-object key/value view of one bucket. Errors are S3Error.
class ObjectStore {
 public:
  virtual ~ObjectStore() = default;

  virtual std::string get(const std::string& key) = 0;
  virtual void put(const std::string& key, const std::string& content) = 0;
  virtual void remove(const std::string& key) = 0;
  virtual std::vector<std::string> list(const std::string& prefix) = 0;
  // "<endpoint>/<bucket>" style locator.
  virtual std::string describe() const = 0;
};

class BucketStore : public ObjectStore {
 public:
  BucketStore(S3Client client, std::string bucket)
      : client_(std::move(client)), bucket_(std::move(bucket)) {}

  std::string get(const std::string& key) override { return client_.get_object(bucket_, key); }
  void put(const std::string& key, const std::string& content) override {
    client_.put_object(bucket_, key, content);
  }
  void remove(const std::string& key) override { client_.delete_object(bucket_, key); }
  std::vector<std::string> list(const std::string& prefix) override {
    return client_.list_objects(bucket_, prefix);
  }
  std::string describe() const override { return client_.endpoint() + "/" + bucket_; }

  const std::string& bucket() const { return bucket_; }
  const S3Client& client() const { return client_; }

 private:
  S3Client client_;
  std::string bucket_;
};

class MemoryObjectStore : public ObjectStore {
 public:
  explicit MemoryObjectStore(std::string name = "memory") : name_(std::move(name)) {}

  std::string get(const std::string& key) override;
  void put(const std::string& key, const std::string& content) override;
  void remove(const std::string& key) override;
  std::vector<std::string> list(const std::string& prefix) override;
  std::string describe() const override { return "mem://" + name_; }

 private:
  std::string name_;
  std::mutex mu_;
  std::map<std::string, std::string> objects_;
};

}  // namespace dlf::s3
