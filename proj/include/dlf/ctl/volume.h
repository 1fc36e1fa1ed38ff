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

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlf/s3/object_store.h"
#include "dlf/store/store.h"

namespace dlf::ctl {

// User agent of the emulated CSI S3 driver; stub counters use it to tell
// mounted-volume traffic apart from application calls.
inline constexpr std::string_view kDriverUserAgent = "csi-s3";

// What a node plugin would do when publishing a volume claim: resolve the
// claim's bucket attributes and its credentials Secret, then expose the
// bucket as a filesystem subtree. Only COS-backed claims carry data here.
class MountedVolume {
 public:
  // Throws std::runtime_error if the claim or its secret is missing, or the
  // claim is not S3-backed.
  static MountedVolume publish(const Store& store, const std::string& ns, const std::string& claim,
                               std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));

  // Paths are relative to the volume root.
  std::string read(const std::string& rel) const { return bucket_->get(rel); }
  void write(const std::string& rel, const std::string& content) const { bucket_->put(rel, content); }
  void remove(const std::string& rel) const { bucket_->remove(rel); }
  std::vector<std::string> list(const std::string& prefix = "") const { return bucket_->list(prefix); }

  const std::string& claim() const { return claim_; }
  std::shared_ptr<s3::ObjectStore> backing() const { return bucket_; }

 private:
  MountedVolume(std::string claim, std::shared_ptr<s3::ObjectStore> bucket)
      : claim_(std::move(claim)), bucket_(std::move(bucket)) {}

  std::string claim_;
  std::shared_ptr<s3::ObjectStore> bucket_;
};

// The view from inside one container of an admitted pod: absolute paths are
// routed to the volume whose mount path is the longest matching prefix.
class ContainerFs {
 public:
  // Publishes every claim the container mounts. Throws like publish().
  ContainerFs(const Store& store, const Pod& pod, std::size_t container = 0);

  std::string read(const std::string& path) const;
  void write(const std::string& path, const std::string& content) const;
  // Absolute paths of files under `dir`.
  std::vector<std::string> list(const std::string& dir) const;
  bool mounted(const std::string& path) const;
  std::vector<std::string> mount_paths() const;

 private:
  std::pair<const MountedVolume*, std::string> resolve(const std::string& path) const;

  std::vector<std::pair<std::string, MountedVolume>> mounts_;  // (mount path, volume)
};

}  // namespace dlf::ctl
