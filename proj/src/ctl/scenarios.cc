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

#include "dlf/ctl/scenarios.h"

#include <cstdio>
#include <functional>
#include <random>

#include "dlf/admission/convention.h"
#include "dlf/ctl/session.h"
#include "dlf/ctl/volume.h"
#include "dlf/s3/stub_server.h"

namespace dlf::ctl {

namespace {

std::string random_bytes(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> len(lo, hi);
  std::uniform_int_distribution<int> byte(0, 255);
  std::string out(len(rng), '\0');
  for (auto& c : out) c = static_cast<char>(byte(rng));
  return out;
}

std::string numbered(const char* fmt, int i) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, i);
  return buf;
}

Dataset cos_dataset(const std::string& ns, const std::string& name, const std::string& endpoint,
                    const std::string& bucket, const s3::Credentials& creds) {
  Dataset ds;
  ds.meta.name = name;
  ds.meta.ns = ns;
  ds.spec.source = CosSource{endpoint, bucket, creds.access_key_id, creds.secret_access_key, {}, {}};
  return ds;
}

Pod consumer_pod(const std::string& ns, const std::string& name, const std::string& image,
                 const Labels& labels) {
  Pod pod;
  pod.meta.name = name;
  pod.meta.ns = ns;
  pod.meta.labels = labels;
  pod.spec.containers.push_back({"main", image, {}, {}});
  return pod;
}

// Runs body; an escaping exception becomes a failed step.
ScenarioReport guarded(std::string name, const std::function<void(ScenarioReport&)>& body) {
  ScenarioReport report;
  report.scenario = std::move(name);
  try {
    body(report);
  } catch (const std::exception& e) {
    report.check("scenario ran to completion", false, e.what());
  }
  return report;
}

// Namespace + datasets in a fresh cluster; every dataset must become Ready.
bool provision(Cluster& cluster, ScenarioReport& report, const std::string& ns,
               const std::vector<Dataset>& datasets) {
  cluster.start();
  cluster.label_namespace(ns, std::string(admission::kMonitorLabel), std::string(admission::kMonitorValue));
  for (const auto& ds : datasets) apply_dataset(cluster.store(), ds);
  for (const auto& ds : datasets) {
    auto ready = cluster.wait_phase(ns, ds.meta.name, Phase::kReady);
    if (!report.check("dataset " + ds.meta.name + " Ready", ready.has_value())) return false;
  }
  return true;
}

std::string align(const std::string& chunk) {
  std::string out = "aligned:" + std::to_string(chunk.size()) + ":";
  out.append(chunk.rbegin(), chunk.rend());
  return out;
}

}  // namespace

ScenarioReport run_notebook(const ScenarioOptions& o) {
  return guarded("notebook", [&](ScenarioReport& r) {
    const int n = o.scale > 0 ? o.scale : kNotebookDefaultObjects;
    const std::string bucket = "notebook-images";
    const std::string ns = "notebook";
    const s3::Credentials creds{"nb-access", "nb-secret"};
    std::mt19937_64 rng(o.seed);

    s3::StubBucketConfig cfg{bucket, creds, {}, {}, false};
    for (int i = 0; i < n; ++i) cfg.objects[numbered("images/img-%05d.jpg", i)] = random_bytes(rng, 64, 2048);
    const auto fixture = cfg.objects;
    auto stub = s3::StubServer::start({cfg});

    // Path A: explicit REST downloads.
    s3::ClientOptions dl_opts;
    dl_opts.user_agent = std::string(kDownloaderUserAgent);
    s3::S3Client downloader(stub->endpoint(), creds, dl_opts);
    const auto keys = downloader.list_objects(bucket, "images/");
    bool same = keys.size() == fixture.size();
    for (const auto& k : keys) same = same && downloader.get_object(bucket, k) == fixture.at(k);
    r.counters["downloadCallsA"] =
        static_cast<std::int64_t>(stub->request_count(bucket, "GET", std::string(kDownloaderUserAgent)));
    r.check("path A downloaded every object byte-exact", same);
    r.check("path A made one download call per object", r.counters["downloadCallsA"] == n,
            std::to_string(r.counters["downloadCallsA"]) + " calls for " + std::to_string(n) + " objects");
    stub->reset_counters();

    // Path B: dataset mounted into the notebook pod.
    Cluster cluster({.workers = o.workers});
    if (!provision(cluster, r, ns, {cos_dataset(ns, bucket, stub->endpoint(), bucket, creds)})) return;
    std::optional<Pod> pod;
    auto decision = cluster.create_pod(
        consumer_pod(ns, "notebook-server", "jupyter/minimal-notebook",
                     {{"dataset.0.id", bucket}, {"dataset.0.useas", "mount"}}),
        &pod);
    if (!r.check("notebook pod admitted", decision.allowed, decision.reason)) return;
    r.counters["podsMutated"] = decision.patch.empty() ? 0 : 1;

    ContainerFs fs(cluster.store(), *pod);
    const std::string root = admission::default_mount_path(bucket);
    r.check("dataset mounted at " + root, fs.mounted(root + "/x"));
    const auto files = fs.list(root + "/images");
    bool b_same = files.size() == fixture.size();
    for (const auto& path : files) b_same = b_same && fs.read(path) == fixture.at(path.substr(root.size() + 1));
    r.check("path B read every object byte-exact through the mount", b_same);

    r.counters["objects"] = n;
    r.counters["downloadCallsB"] =
        static_cast<std::int64_t>(stub->request_count(bucket, "GET", std::string(kDownloaderUserAgent)));
    r.counters["driverReads"] =
        static_cast<std::int64_t>(stub->request_count(bucket, "GET", std::string(kDriverUserAgent)));
    r.check("path B made no download calls", r.counters["downloadCallsB"] == 0);
    r.check("driver served one read per object", r.counters["driverReads"] == n);
    cluster.stop();
  });
}

ScenarioReport run_tensorboard(const ScenarioOptions& o) {
  return guarded("tensorboard", [&](ScenarioReport& r) {
    const int m = o.scale > 0 ? o.scale : kTensorboardDefaultObjects;
    const std::string bucket = "tb-logs";
    const std::string ns = "tensorboard";
    const s3::Credentials creds{"tb-access", "tb-secret"};
    std::mt19937_64 rng(o.seed);
    auto stub = s3::StubServer::start({{bucket, creds, {}, {}, false}});

    Cluster cluster({.workers = o.workers});
    if (!provision(cluster, r, ns, {cos_dataset(ns, bucket, stub->endpoint(), bucket, creds)})) return;

    // Deployment with one replica; its pod template uses the `uses` spelling.
    const Labels template_labels{{"app", "tensorboard"}, {"dataset.0.id", bucket}, {"dataset.0.uses", "mount"}};
    const std::string root = admission::default_mount_path(bucket);
    std::map<std::string, std::string> written;
    std::int64_t mutated = 0;
    std::int64_t verified = 0;

    for (int generation = 0; generation < 2; ++generation) {
      const std::string name = "tensorboard-" + std::to_string(generation);
      std::optional<Pod> pod;
      auto decision = cluster.create_pod(consumer_pod(ns, name, "tensorflow/tensorflow", template_labels), &pod);
      if (!r.check("pod " + name + " admitted", decision.allowed, decision.reason)) return;
      if (!decision.patch.empty()) ++mutated;
      bool has_mount = false;
      for (const auto& vm : pod->spec.containers.front().volume_mounts) has_mount |= vm.mount_path == root;
      r.check("pod " + name + " mounts " + root, has_mount);

      ContainerFs fs(cluster.store(), *pod);
      if (generation == 0) {
        for (int i = 0; i < m; ++i) {
          const std::string path = root + numbered("/runs/run-%d/events.out.tfevents", i);
          written[path] = random_bytes(rng, 32, 512);
          fs.write(path, written[path]);
        }
        cluster.store().remove(Kind::kPod, ns, name);
        r.check("pod " + name + " deleted", !cluster.store().get(Kind::kPod, ns, name));
      } else {
        bool ok = true;
        for (const auto& [path, bytes] : written) {
          const std::string back = fs.read(path);
          ok = ok && back == bytes;
          verified += static_cast<std::int64_t>(back.size());
        }
        r.check("metadata survived pod deletion", ok);
      }
    }
    r.counters["podsMutated"] = mutated;
    r.counters["metadataObjects"] = static_cast<std::int64_t>(written.size());
    r.counters["bytesVerified"] = verified;
    r.counters["driverWrites"] =
        static_cast<std::int64_t>(stub->request_count(bucket, "PUT", std::string(kDriverUserAgent)));
    r.counters["driverReads"] =
        static_cast<std::int64_t>(stub->request_count(bucket, "GET", std::string(kDriverUserAgent)));
    cluster.stop();
  });
}

ScenarioReport run_g1k_mode(PipelineMode mode, const ScenarioOptions& o) {
  return guarded("g1k-" + std::string(to_string(mode)), [&](ScenarioReport& r) {
    const int k = o.scale > 0 ? o.scale : kG1kDefaultChunks;
    const std::string in_bucket = "g1k-input";
    const std::string out_bucket = "g1k-output";
    const std::string ns = "g1k";
    const s3::Credentials in_creds{"g1k-in", "g1k-in-secret"};
    const s3::Credentials out_creds{"g1k-out", "g1k-out-secret"};
    std::mt19937_64 rng(o.seed);

    s3::StubBucketConfig input{in_bucket, in_creds, {}, {}, false};
    for (int i = 0; i < k; ++i) input.objects[numbered("chunks/chunk-%04d.bam", i)] = random_bytes(rng, 128, 1024);
    const auto chunks = input.objects;
    auto stub = s3::StubServer::start({input, {out_bucket, out_creds, {}, {}, false}});

    std::int64_t staging_writes = 0;
    if (mode == PipelineMode::kStaged) {
      s3::MemoryObjectStore staging("staging-rwx");
      s3::ClientOptions side;
      side.user_agent = std::string(kSidecarUserAgent);
      s3::S3Client sidecar(stub->endpoint(), in_creds, side);
      int i = 0;
      for (const auto& [key, bytes] : chunks) {
        const std::string local = numbered("in/%04d", i);
        staging.put(local, sidecar.get_object(in_bucket, key));
        ++staging_writes;
        staging.put(numbered("out/%04d.vcf", i), align(staging.get(local)));
        ++staging_writes;
        ++i;
      }
      s3::ClientOptions up;
      up.user_agent = std::string(kUploaderUserAgent);
      s3::S3Client uploader(stub->endpoint(), out_creds, up);
      for (const auto& key : staging.list("out/")) {
        uploader.put_object(out_bucket, "results/" + key.substr(4), staging.get(key));
      }
    } else {
      Cluster cluster({.workers = o.workers});
      if (!provision(cluster, r, ns,
                     {cos_dataset(ns, in_bucket, stub->endpoint(), in_bucket, in_creds),
                      cos_dataset(ns, out_bucket, stub->endpoint(), out_bucket, out_creds)})) {
        return;
      }
      const std::string in_root = admission::default_mount_path(in_bucket);
      const std::string out_root = admission::default_mount_path(out_bucket);
      int i = 0;
      for (const auto& [key, bytes] : chunks) {
        std::optional<Pod> pod;
        auto decision = cluster.create_pod(
            consumer_pod(ns, numbered("align-%04d", i), "g1k/aligner",
                         {{"dataset.0.id", in_bucket}, {"dataset.0.useas", "mount"},
                          {"dataset.1.id", out_bucket}, {"dataset.1.useas", "mount"}}),
            &pod);
        if (!r.check(numbered("worker %d admitted", i), decision.allowed, decision.reason)) return;
        ContainerFs fs(cluster.store(), *pod);
        fs.write(out_root + numbered("/results/%04d.vcf", i), align(fs.read(in_root + "/" + key)));
        ++i;
      }
      cluster.stop();
    }

    // Outputs land in the bucket identically in both modes.
    bool outputs_ok = stub->object_count(out_bucket) == static_cast<std::size_t>(k);
    int i = 0;
    for (const auto& [key, bytes] : chunks) {
      auto got = stub->object(out_bucket, numbered("results/%04d.vcf", i++));
      outputs_ok = outputs_ok && got && *got == align(bytes);
    }
    r.check("every chunk's result is in the output bucket", outputs_ok);

    const SimResult sim = simulate_pipeline(mode, k, o.contention, o.seed);
    r.simulated_duration_s = sim.makespan;
    r.counters["chunks"] = k;
    r.counters["steps"] = static_cast<std::int64_t>(sim.steps.size());
    r.counters["alignSteps"] = sim.count(StepKind::kAlign);
    r.counters["sidecarSteps"] = sim.count(StepKind::kSidecarFetch);
    r.counters["uploaderSteps"] = sim.count(StepKind::kUpload);
    r.counters["sharedStagingWrites"] = staging_writes;
    r.counters["outputObjects"] = static_cast<std::int64_t>(stub->object_count(out_bucket));
    r.counters["sidecarGets"] =
        static_cast<std::int64_t>(stub->request_count(in_bucket, "GET", std::string(kSidecarUserAgent)));
    r.counters["uploaderPuts"] =
        static_cast<std::int64_t>(stub->request_count(out_bucket, "PUT", std::string(kUploaderUserAgent)));
    r.counters["driverReads"] =
        static_cast<std::int64_t>(stub->request_count(in_bucket, "GET", std::string(kDriverUserAgent)));
    r.counters["driverWrites"] =
        static_cast<std::int64_t>(stub->request_count(out_bucket, "PUT", std::string(kDriverUserAgent)));

    // Simulated steps must agree with what actually crossed the wire.
    r.check("sidecar steps match sidecar GETs", r.counters["sidecarSteps"] == r.counters["sidecarGets"]);
    r.check("uploader steps match uploader PUTs", r.counters["uploaderSteps"] == r.counters["uploaderPuts"]);
    if (mode == PipelineMode::kDirect) {
      r.check("workers read and wrote only through mounts",
              r.counters["driverReads"] == k && r.counters["driverWrites"] == k);
    }
  });
}

ScenarioReport run_g1k(const ScenarioOptions& o) {
  const ScenarioReport before = run_g1k_mode(PipelineMode::kStaged, o);
  const ScenarioReport after = run_g1k_mode(PipelineMode::kDirect, o);
  ScenarioReport r;
  r.scenario = "g1k";
  for (const auto* part : {&before, &after}) {
    const std::string prefix = part == &before ? "before." : "after.";
    for (const auto& s : part->steps) r.steps.push_back({prefix + s.description, s.ok, s.detail});
    for (const auto& [k, v] : part->counters) r.counters[prefix + k] = v;
    r.counters[prefix + "simulatedDurationMs"] = static_cast<std::int64_t>(part->simulated_duration_s * 1000.0);
  }
  r.simulated_duration_s = after.simulated_duration_s;
  r.check("after mode has no uploader or sidecar steps",
          r.counters["after.uploaderSteps"] == 0 && r.counters["after.sidecarSteps"] == 0);
  r.check("after mode writes nothing to a shared staging volume", r.counters["after.sharedStagingWrites"] == 0);
  r.check("after mode has fewer pipeline steps", r.counters["after.steps"] < r.counters["before.steps"]);
  r.check("after mode finishes sooner", after.simulated_duration_s < before.simulated_duration_s,
          std::to_string(after.simulated_duration_s) + "s vs " + std::to_string(before.simulated_duration_s) + "s");
  return r;
}

std::optional<ScenarioReport> run_scenario(std::string_view name, const ScenarioOptions& options) {
  if (name == "notebook") return run_notebook(options);
  if (name == "tensorboard") return run_tensorboard(options);
  if (name == "g1k") return run_g1k(options);
  return std::nullopt;
}

}  // namespace dlf::ctl
