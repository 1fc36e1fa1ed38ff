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

#include "dlf/ctl/volume.h"

#include <stdexcept>

namespace dlf::ctl {

MountedVolume MountedVolume::publish(const Store& store, const std::string& ns, const std::string& claim,
                                     std::chrono::milliseconds timeout) {
  auto pvc = store.get(Kind::kVolumeClaim, ns, claim);
  if (!pvc) throw std::runtime_error("volume claim not found: " + ns + "/" + claim);
  const auto& spec = pvc->as<VolumeClaimPayload>();
  if (!spec.secret_name || !spec.attributes.contains("endpoint") || !spec.attributes.contains("bucket")) {
    throw std::runtime_error("volume claim " + claim + " (" + spec.storage_class +
                             ") has no object-store backing");
  }
  auto secret = store.get(Kind::kSecret, ns, *spec.secret_name);
  if (!secret) throw std::runtime_error("secret not found: " + ns + "/" + *spec.secret_name);
  const auto& data = secret->as<SecretPayload>().data;
  auto field = [&](const char* k) {
    auto it = data.find(k);
    if (it == data.end()) throw std::runtime_error("secret " + *spec.secret_name + " lacks " + k);
    return it->second;
  };
  s3::ClientOptions opts;
  opts.user_agent = std::string(kDriverUserAgent);
  opts.timeout = timeout;
  s3::S3Client client(spec.attributes.at("endpoint"), {field("accessKeyID"), field("secretAccessKey")}, opts);
  return MountedVolume(claim, std::make_shared<s3::BucketStore>(std::move(client), spec.attributes.at("bucket")));
}

ContainerFs::ContainerFs(const Store& store, const Pod& pod, std::size_t container) {
  if (container >= pod.spec.containers.size()) throw std::out_of_range("no such container");
  for (const auto& m : pod.spec.containers[container].volume_mounts) {
    const Volume* vol = nullptr;
    for (const auto& v : pod.spec.volumes) {
      if (v.name == m.name) vol = &v;
    }
    if (!vol) throw std::runtime_error("mount " + m.mount_path + " names unknown volume " + m.name);
    std::string root = m.mount_path;
    while (root.size() > 1 && root.back() == '/') root.pop_back();
    mounts_.emplace_back(root, MountedVolume::publish(store, pod.meta.ns, vol->claim_name));
  }
}

std::pair<const MountedVolume*, std::string> ContainerFs::resolve(const std::string& path) const {
  const MountedVolume* best = nullptr;
  std::size_t best_len = 0;
  std::string rel;
  for (const auto& [root, vol] : mounts_) {
    if (path.size() > root.size() + 1 && path.compare(0, root.size(), root) == 0 &&
        path[root.size()] == '/' && root.size() >= best_len) {
      best = &vol;
      best_len = root.size();
      rel = path.substr(root.size() + 1);
    }
  }
  return {best, rel};
}

bool ContainerFs::mounted(const std::string& path) const { return resolve(path).first != nullptr; }

std::string ContainerFs::read(const std::string& path) const {
  auto [vol, rel] = resolve(path);
  if (!vol) throw std::runtime_error("no volume mounted at " + path);
  return vol->read(rel);
}

void ContainerFs::write(const std::string& path, const std::string& content) const {
  auto [vol, rel] = resolve(path);
  if (!vol) throw std::runtime_error("no volume mounted at " + path);
  vol->write(rel, content);
}

std::vector<std::string> ContainerFs::list(const std::string& dir) const {
  std::string d = dir;
  while (d.size() > 1 && d.back() == '/') d.pop_back();
  for (const auto& [root, vol] : mounts_) {
    if (d == root) {
      std::vector<std::string> out;
      for (auto& k : vol.list("")) out.push_back(root + "/" + k);
      return out;
    }
  }
  auto [vol, rel] = resolve(d);
  if (!vol) throw std::runtime_error("no volume mounted at " + dir);
  const std::string root = d.substr(0, d.size() - rel.size() - 1);
  std::vector<std::string> out;
  for (auto& k : vol->list(rel + "/")) out.push_back(root + "/" + k);
  return out;
}

std::vector<std::string> ContainerFs::mount_paths() const {
  std::vector<std::string> out;
  for (const auto& [root, vol] : mounts_) out.push_back(root);
  return out;
}

}  // namespace dlf::ctl
