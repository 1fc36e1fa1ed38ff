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

#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <string>

#include "dlf/reconciler/reconciler.h"
#include "dlf/s3/probe.h"
#include "dlf/store/store.h"

namespace dlf::testing {

// Prober whose answer depends only on the endpoint it is handed. Endpoints
// in `down` come back unreachable; everything else is fully healthy.
class ScriptedProber : public s3::Prober {
 public:
  s3::ProbeResult probe(const DatasetSpec& spec, std::chrono::milliseconds) override {
    ++calls_;
    std::string target;
    if (const auto* cos = spec.cos()) target = cos->endpoint;
    if (const auto* arc = spec.archive()) target = arc->url;
    if (const auto* nfs = spec.nfs()) target = nfs->server;
    s3::ProbeResult r;
    std::lock_guard lock(mu_);
    if (down_.contains(target)) {
      r.detail = "connection refused";
      return r;
    }
    r.reachable = r.authorized = r.bucket_exists = true;
    r.detail = "ok";
    return r;
  }

  void set_down(const std::string& endpoint, bool down = true) {
    std::lock_guard lock(mu_);
    if (down) {
      down_.insert(endpoint);
    } else {
      down_.erase(endpoint);
    }
  }
  int calls() const { return calls_.load(); }

 private:
  std::mutex mu_;
  std::set<std::string> down_;
  std::atomic<int> calls_{0};
};

inline Dataset random_dataset(std::mt19937_64& rng, const std::string& name,
                              const std::string& ns = "default") {
  Dataset ds;
  ds.meta.name = name;
  ds.meta.ns = ns;
  const std::string host = "h" + std::to_string(rng() % 1000) + ".example.test";
  switch (rng() % 3) {
    case 0: {
      CosSource cos{"http://" + host + ":" + std::to_string(8000 + rng() % 1000),
                    "bucket-" + std::to_string(rng() % 10000), "AKID" + std::to_string(rng() % 100000),
                    "secret-" + std::to_string(rng()), {}, {}};
      if (rng() % 2) cos.region = "region-" + std::to_string(rng() % 5);
      ds.spec.source = cos;
      break;
    }
    case 1:
      ds.spec.source = NfsSource{host, "/export/" + std::to_string(rng() % 100)};
      break;
    default:
      ds.spec.source = ArchiveSource{"http://" + host + "/archives/a" + std::to_string(rng() % 100) + ".tar.gz",
                                     static_cast<ArchiveFormat>(rng() % 3)};
  }
  return ds;
}

// Checks the postcondition table for a live dataset expected to be Ready.
// Returns an empty string when it holds, otherwise the first violation.
inline std::string fixed_point_violation(const Store& store, const std::string& ns,
                                         const std::string& name) {
  auto obj = store.get(Kind::kDataset, ns, name);
  if (!obj) return "dataset missing";
  const Dataset ds = to_dataset(*obj);
  if (ds.status.phase != Phase::kReady) return "phase " + std::string(to_string(ds.status.phase));
  if (!ds.meta.has_finalizer(kCleanupFinalizer)) return "finalizer missing";
  if (!ds.meta.annotations.contains(std::string(kFingerprintAnnotation))) return "fingerprint missing";
  auto claim = store.get(Kind::kVolumeClaim, ns, name);
  if (!claim) return "claim missing";
  if (claim->meta.owner_refs.size() != 1 || claim->meta.owner_refs[0].uid != ds.meta.uid) {
    return "claim ownership";
  }
  if (claim->as<VolumeClaimPayload>().storage_class != storage_class_for(ds.spec.type())) {
    return "storage class";
  }
  if (ds.status.bound_claim != name) return "boundClaim";
  auto secret = store.get(Kind::kSecret, ns, name);
  if (const auto* cos = ds.spec.cos()) {
    if (!cos->secret_access_key.empty()) return "plaintext secret left in spec";
    if (!secret) return "secret missing";
    if (secret->meta.owner_refs.size() != 1 || secret->meta.owner_refs[0].uid != ds.meta.uid) {
      return "secret ownership";
    }
    const auto& data = secret->as<SecretPayload>().data;
    if (!data.contains("accessKeyID") || !data.contains("secretAccessKey") ||
        data.at("secretAccessKey").empty()) {
      return "secret contents";
    }
  } else if (secret) {
    return "unexpected secret";
  }
  return {};
}

inline std::size_t owned_dependents(const Store& store) {
  std::size_t n = 0;
  for (Kind kind : {Kind::kSecret, Kind::kVolumeClaim}) {
    for (const auto& o : store.list(kind, "")) {
      for (const auto& ref : o.meta.owner_refs) n += ref.kind == "Dataset";
    }
  }
  return n;
}

}  // namespace dlf::testing
