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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dlf/ctl/cli.h"
#include "dlf/ctl/pipeline_sim.h"
#include "dlf/ctl/report.h"
#include "dlf/ctl/scenarios.h"
#include "dlf/ctl/session.h"
#include "dlf/ctl/volume.h"
#include "dlf/model/manifest.h"
#include "dlf/s3/stub_server.h"

namespace dlf::ctl {
namespace {

namespace fs = std::filesystem;
using namespace std::chrono_literals;

ContentionModel flat() {
  ContentionModel m;
  m.compute_jitter = 0.0;
  return m;
}

TEST(PipelineSim, HandComputedMakespans) {
  auto staged = simulate_pipeline(PipelineMode::kStaged, 3, flat(), 1);
  EXPECT_NEAR(staged.makespan, 4.85, 1e-9);
  auto direct = simulate_pipeline(PipelineMode::kDirect, 3, flat(), 1);
  EXPECT_NEAR(direct.makespan, 2.9, 1e-9);
  auto one = simulate_pipeline(PipelineMode::kStaged, 1, flat(), 1);
  EXPECT_NEAR(one.makespan, 0.5 + 2.0 + 0.4 + 0.3, 1e-9);
}

TEST(PipelineSim, StepCountsPerMode) {
  for (int k : {1, 4, 16}) {
    auto s = simulate_pipeline(PipelineMode::kStaged, k, {}, 3);
    EXPECT_EQ(s.count(StepKind::kSidecarFetch), k);
    EXPECT_EQ(s.count(StepKind::kAlign), k);
    EXPECT_EQ(s.count(StepKind::kStagingWrite), k);
    EXPECT_EQ(s.count(StepKind::kUpload), k);
    EXPECT_EQ(s.count(StepKind::kDirectWrite), 0);
    auto d = simulate_pipeline(PipelineMode::kDirect, k, {}, 3);
    EXPECT_EQ(d.count(StepKind::kSidecarFetch) + d.count(StepKind::kUpload) + d.count(StepKind::kStagingWrite), 0);
    EXPECT_EQ(d.count(StepKind::kDirectWrite), k);
    EXPECT_EQ(static_cast<int>(d.steps.size()), 2 * k);
  }
  EXPECT_THROW(simulate_pipeline(PipelineMode::kDirect, 0, {}, 1), std::invalid_argument);
}

TEST(PipelineSim, StagingWritesNeverOverlapAndPrecedeUploads) {
  auto s = simulate_pipeline(PipelineMode::kStaged, 12, {}, 9);
  std::vector<SimStep> writes;
  double last_write_end = 0, first_upload = 1e9, makespan = 0;
  for (const auto& st : s.steps) {
    EXPECT_LE(st.start, st.end);
    makespan = std::max(makespan, st.end);
    if (st.kind == StepKind::kStagingWrite) {
      writes.push_back(st);
      last_write_end = std::max(last_write_end, st.end);
    }
    if (st.kind == StepKind::kUpload) first_upload = std::min(first_upload, st.start);
  }
  std::sort(writes.begin(), writes.end(), [](auto& a, auto& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < writes.size(); ++i) EXPECT_GE(writes[i].start, writes[i - 1].end - 1e-12);
  EXPECT_GE(first_upload, last_write_end - 1e-12);
  EXPECT_DOUBLE_EQ(s.makespan, makespan);
}

TEST(PipelineSim, DirectBeatsStagedAcrossSeedsAndSizes) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (int k = 1; k <= 24; ++k) {
      const double before = simulate_pipeline(PipelineMode::kStaged, k, {}, seed).makespan;
      const double after = simulate_pipeline(PipelineMode::kDirect, k, {}, seed).makespan;
      ASSERT_LT(after, before) << "k=" << k << " seed=" << seed;
    }
  }
}

TEST(PipelineSim, Deterministic) {
  auto a = simulate_pipeline(PipelineMode::kStaged, 8, {}, 42);
  auto b = simulate_pipeline(PipelineMode::kStaged, 8, {}, 42);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    EXPECT_EQ(a.steps[i].kind, b.steps[i].kind);
    EXPECT_EQ(a.steps[i].end, b.steps[i].end);
  }
  EXPECT_NE(a.makespan, simulate_pipeline(PipelineMode::kStaged, 8, {}, 43).makespan);
}

TEST(Report, JsonShape) {
  ScenarioReport r;
  r.scenario = "demo";
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.check("first", true));
  EXPECT_FALSE(r.check("second", false, "why"));
  r.counters["calls"] = 3;
  r.simulated_duration_s = 1.5;
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->description, "second");
  auto j = r.to_json();
  EXPECT_EQ(j["scenarioName"], "demo");
  EXPECT_EQ(j["steps"][1]["outcome"], "fail");
  EXPECT_EQ(j["steps"][1]["detail"], "why");
  EXPECT_EQ(j["counters"]["calls"], 3);
  EXPECT_EQ(j["simulatedDuration"], 1.5);
  EXPECT_EQ(j["passed"], false);
  EXPECT_EQ(nlohmann::json::parse(r.to_text()), j);
}

const s3::Credentials kCreds{"AKIDEXAMPLE", "wJalrXUtnFEMI"};

Dataset cos_dataset(const std::string& endpoint, const std::string& bucket) {
  Dataset ds;
  ds.meta.name = "example-dataset";
  ds.meta.ns = "default";
  ds.spec.source = CosSource{endpoint, bucket, kCreds.access_key_id, kCreds.secret_access_key, {}, {}};
  return ds;
}

TEST(Apply, CreatedUnchangedConfigured) {
  Cluster cluster({.workers = 2, .probe = ProbeMode::kNone});
  cluster.start();
  Store& store = cluster.store();
  const Dataset ds = cos_dataset("http://s3.example.test", "bucket-a");
  EXPECT_EQ(apply_dataset(store, ds), ApplyResult::kCreated);
  EXPECT_EQ(apply_dataset(store, ds), ApplyResult::kUnchanged);  // before any reconcile
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kReady));
  ASSERT_TRUE(cluster.settle());
  EXPECT_EQ(apply_dataset(store, ds), ApplyResult::kUnchanged);  // plaintext vs scrubbed

  Dataset relabeled = ds;
  relabeled.meta.labels["team"] = "x";
  EXPECT_EQ(apply_dataset(store, relabeled), ApplyResult::kConfigured);
  Dataset moved = relabeled;
  moved.spec.cos()->bucket = "bucket-b";
  EXPECT_EQ(apply_dataset(store, moved), ApplyResult::kConfigured);
  ASSERT_TRUE(cluster.settle());
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kReady));
  EXPECT_EQ(store.get(Kind::kVolumeClaim, "default", "example-dataset")->as<VolumeClaimPayload>().attributes.at("bucket"),
            "bucket-b");
  cluster.stop();
}

TEST(Apply, RestoresLostCredentialsSecret) {
  Cluster cluster({.workers = 1, .probe = ProbeMode::kNone});
  cluster.start();
  const Dataset ds = cos_dataset("http://s3.example.test", "bucket-a");
  apply_dataset(cluster.store(), ds);
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kReady));
  cluster.store().remove(Kind::kSecret, "default", "example-dataset");
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kFailed));
  EXPECT_EQ(apply_dataset(cluster.store(), ds), ApplyResult::kConfigured);
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kReady));
  EXPECT_EQ(cluster.store().get(Kind::kSecret, "default", "example-dataset")->as<SecretPayload>().data.at(
                "secretAccessKey"),
            kCreds.secret_access_key);
  cluster.stop();
}

TEST(Apply, InvalidSpecNamesFields) {
  Store store;
  Dataset ds = cos_dataset("ftp://nope", "B");
  try {
    apply_dataset(store, ds);
    FAIL();
  } catch (const StoreError& e) {
    EXPECT_EQ(e.code(), StoreErrc::kInvalidObject);
    EXPECT_NE(std::string(e.what()).find("spec.endpoint"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("spec.bucket"), std::string::npos);
  }
}

TEST(Volume, PodReadsAndWritesThroughMount) {
  auto stub = s3::StubServer::start({{"data", kCreds, {{"images/a.png", "A"}, {"images/b.png", "B"}}, {}, false}});
  Cluster cluster({.workers = 2});
  cluster.start();
  cluster.label_namespace("default", "monitor-pods-datasets", "enabled");
  apply_dataset(cluster.store(), cos_dataset(stub->endpoint(), "data"));
  ASSERT_TRUE(cluster.wait_phase("default", "example-dataset", Phase::kReady));

  Pod pod;
  pod.meta.name = "reader";
  pod.meta.labels = {{"dataset.0.id", "example-dataset"}, {"dataset.0.useas", "mount"}};
  pod.spec.containers.push_back({"main", "busybox", {}, {}});
  std::optional<Pod> created;
  auto decision = cluster.create_pod(pod, &created);
  ASSERT_TRUE(decision.allowed) << decision.reason;
  ASSERT_TRUE(created);
  EXPECT_TRUE(cluster.store().get(Kind::kPod, "default", "reader"));

  ContainerFs fsys(cluster.store(), *created);
  EXPECT_TRUE(fsys.mounted("/mnt/datasets/example-dataset/images/a.png"));
  EXPECT_FALSE(fsys.mounted("/tmp/x"));
  EXPECT_EQ(fsys.read("/mnt/datasets/example-dataset/images/b.png"), "B");
  fsys.write("/mnt/datasets/example-dataset/out/c.txt", "C");
  EXPECT_EQ(stub->object("data", "out/c.txt"), "C");
  EXPECT_EQ(fsys.list("/mnt/datasets/example-dataset/images"),
            (std::vector<std::string>{"/mnt/datasets/example-dataset/images/a.png",
                                      "/mnt/datasets/example-dataset/images/b.png"}));
  EXPECT_EQ(stub->request_count("data", "GET", std::string(kDriverUserAgent)), 1u);
  EXPECT_THROW(fsys.read("/etc/passwd"), std::exception);
  cluster.stop();
}

// CLI flows against a snapshot file in a scratch directory.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("dlfctl-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
           ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
    session = (dir / "session.yaml").string();
  }
  void TearDown() override { fs::remove_all(dir); }

  int run(std::vector<std::string> args) {
    out.str("");
    err.str("");
    args.insert(args.begin(), {"--session", session});
    return run_cli(args, out, err);
  }
  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir / name).string();
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir;
  std::string session;
  std::ostringstream out, err;
};

std::string manifest(const std::string& endpoint, const std::string& bucket) {
  return "apiVersion: com.ie.ibm.hpsys/v1alpha1\nkind: Dataset\nmetadata:\n  name: example-dataset\nspec:\n"
         "  local:\n    type: \"COS\"\n    accessKeyID: \"" + kCreds.access_key_id + "\"\n    secretAccessKey: \"" +
         kCreds.secret_access_key + "\"\n    endpoint: \"" + endpoint + "\"\n    bucket: \"" + bucket + "\"\n";
}

const char* kPodManifest = R"(apiVersion: v1
kind: Pod
metadata:
  name: nginx
  labels:
    dataset.0.id: "example-dataset"
    dataset.0.useas: "mount"
spec:
  containers:
    - name: nginx
      image: nginx
)";

TEST_F(Cli, DatasetLifecycleWithLiveProbe) {
  auto stub = s3::StubServer::start({{"my-bucket", kCreds, {}, {}, false}});
  const auto file = write("ds.yaml", manifest(stub->endpoint(), "my-bucket"));
  ASSERT_EQ(run({"apply", "-f", file}), kExitOk) << err.str();
  EXPECT_EQ(out.str(), "dataset/example-dataset created\n");
  ASSERT_EQ(run({"apply", "-f", file}), kExitOk);
  EXPECT_EQ(out.str(), "dataset/example-dataset unchanged\n");
  EXPECT_GE(stub->request_count("my-bucket", "HEAD"), 1u);

  ASSERT_EQ(run({"get", "dataset", "example-dataset"}), kExitOk);
  EXPECT_NE(out.str().find("Ready"), std::string::npos) << out.str();
  ASSERT_EQ(run({"get", "pvc"}), kExitOk);
  EXPECT_NE(out.str().find("csi-s3"), std::string::npos) << out.str();
  ASSERT_EQ(run({"get", "dataset", "example-dataset", "-o", "yaml"}), kExitOk);
  EXPECT_EQ(out.str().find(kCreds.secret_access_key), std::string::npos);  // scrubbed

  const auto pod = write("pod.yaml", kPodManifest);
  ASSERT_EQ(run({"admit", pod, "--dry-run"}), kExitOk);
  EXPECT_EQ(out.str(), "no mutation\n");  // namespace not monitored yet
  ASSERT_EQ(run({"label", "namespace", "default", "monitor-pods-datasets=enabled"}), kExitOk);
  ASSERT_EQ(run({"admit", pod, "--dry-run"}), kExitOk);
  auto patch = nlohmann::json::parse(out.str());
  ASSERT_EQ(patch.size(), 2u);
  EXPECT_EQ(patch[1]["value"][0]["mountPath"], "/mnt/datasets/example-dataset");
  ASSERT_EQ(run({"admit", pod}), kExitOk);
  EXPECT_EQ(out.str(), "pod/nginx created (mutated)\n");
  ASSERT_EQ(run({"get", "pod", "nginx", "-o", "yaml"}), kExitOk);
  EXPECT_NE(out.str().find("/mnt/datasets/example-dataset"), std::string::npos);

  ASSERT_EQ(run({"delete", "dataset", "example-dataset"}), kExitOk);
  EXPECT_EQ(run({"get", "dataset", "example-dataset"}), kExitUserError);
  EXPECT_EQ(err.str(), "error: dataset \"example-dataset\" not found\n");
  ASSERT_EQ(run({"get", "secret"}), kExitOk);
  EXPECT_EQ(out.str(), "No resources found.\n");
  ASSERT_EQ(run({"get", "pvc"}), kExitOk);
  EXPECT_EQ(out.str(), "No resources found.\n");
}

TEST_F(Cli, UnreachableEndpointLeavesDatasetFailed) {
  auto stub = s3::StubServer::start({{"tmp", kCreds, {}, {}, false}});
  const std::string endpoint = stub->endpoint();
  stub->stop();
  const auto file = write("ds.yaml", manifest(endpoint, "my-bucket"));
  ASSERT_EQ(run({"--probe-timeout-ms", "200", "apply", "-f", file}), kExitOk) << err.str();
  ASSERT_EQ(run({"--probe-timeout-ms", "200", "get", "dataset"}), kExitOk);
  EXPECT_NE(out.str().find("Failed"), std::string::npos) << out.str();
  const auto pod = write("pod.yaml", kPodManifest);
  ASSERT_EQ(run({"--probe-timeout-ms", "200", "label", "namespace", "default", "monitor-pods-datasets=enabled"}),
            kExitOk);
  EXPECT_EQ(run({"--probe-timeout-ms", "200", "admit", pod, "--dry-run"}), kExitUserError);
  EXPECT_NE(err.str().find("rejected: dataset not ready: example-dataset"), std::string::npos) << err.str();
}

TEST_F(Cli, UserErrors) {
  EXPECT_EQ(run({"apply", "-f", (dir / "missing.yaml").string()}), kExitUserError);
  EXPECT_NE(err.str().find("cannot read"), std::string::npos);
  const auto bad = write("bad.yaml", manifest("http://s3.example.test", "NOT_A_BUCKET"));
  EXPECT_EQ(run({"apply", "-f", bad}), kExitUserError);
  EXPECT_NE(err.str().find("spec.bucket"), std::string::npos) << err.str();
  const auto broken = write("broken.yaml", "kind: Dataset\nmetadata: [\n");
  EXPECT_EQ(run({"apply", "-f", broken}), kExitUserError);
  EXPECT_EQ(run({"get", "gizmo"}), kExitUserError);
  EXPECT_EQ(run({"delete", "dataset", "nope"}), kExitUserError);
  EXPECT_EQ(run({"scenario", "nope"}), kExitUserError);
  EXPECT_EQ(run({"label", "namespace", "default", "novalue"}), kExitUserError);
  EXPECT_EQ(run({"--workers", "0", "get", "dataset"}), kExitUserError);
  EXPECT_EQ(run({}), kExitUserError);
  EXPECT_EQ(run({"--help"}), kExitOk);
}

TEST_F(Cli, ScenarioWritesReport) {
  const auto report = (dir / "report.json").string();
  ASSERT_EQ(run({"--scenario-scale", "3", "--report", report, "scenario", "notebook"}), kExitOk) << err.str();
  std::ifstream in(report);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["scenarioName"], "notebook");
  EXPECT_EQ(j["counters"]["downloadCallsA"], 3);
  EXPECT_EQ(j["counters"]["downloadCallsB"], 0);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(nlohmann::json::parse(out.str()), j);
}

TEST_F(Cli, CacheStats) {
  ASSERT_EQ(run({"cache", "stats", "--keys", "10", "--reuse", "3", "--origin-latency-us", "500"}), kExitOk);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["reads"], 30);
  EXPECT_GE(j["hitRatio"].get<double>(), 0.6);
  EXPECT_EQ(j["originGetsObserved"], j["originRequests"]);
  EXPECT_EQ(j["originGetsUncached"].get<int>() - j["originGetsObserved"].get<int>(), j["hits"].get<int>());
  EXPECT_EQ(j["byteFidelity"], true);
  EXPECT_EQ(j["capacityRespected"], true);
}

TEST(Scenarios, Notebook) {
  auto r = run_notebook({.scale = 7});
  ASSERT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.counters.at("downloadCallsA"), 7);
  EXPECT_EQ(r.counters.at("downloadCallsB"), 0);
  EXPECT_EQ(r.counters.at("driverReads"), 7);
}

TEST(Scenarios, Tensorboard) {
  auto r = run_tensorboard({});
  EXPECT_TRUE(r.passed()) << r.to_text();
}

TEST(Scenarios, G1kModes) {
  auto before = run_g1k_mode(PipelineMode::kStaged, {.scale = 4});
  auto after = run_g1k_mode(PipelineMode::kDirect, {.scale = 4});
  ASSERT_TRUE(before.passed()) << before.to_text();
  ASSERT_TRUE(after.passed()) << after.to_text();
  EXPECT_EQ(before.counters.at("sidecarSteps"), 4);
  EXPECT_EQ(before.counters.at("uploaderSteps"), 4);
  EXPECT_GT(before.counters.at("sharedStagingWrites"), 0);
  EXPECT_EQ(after.counters.at("sidecarSteps"), 0);
  EXPECT_EQ(after.counters.at("uploaderSteps"), 0);
  EXPECT_EQ(after.counters.at("sharedStagingWrites"), 0);
  EXPECT_EQ(after.counters.at("outputObjects"), 4);
  EXPECT_LT(after.simulated_duration_s, before.simulated_duration_s);
}

TEST(Scenarios, ReplayableForAGivenSeed) {
  auto a = run_g1k({.scale = 4, .seed = 11});
  auto b = run_g1k({.scale = 4, .seed = 11});
  EXPECT_EQ(a.to_json(), b.to_json());
  auto n1 = run_notebook({.scale = 4, .seed = 5});
  auto n2 = run_notebook({.scale = 4, .seed = 5});
  EXPECT_EQ(n1.to_json(), n2.to_json());
}

TEST(Scenarios, ByName) {
  EXPECT_FALSE(run_scenario("unknown", {}));
  auto r = run_scenario("g1k", {.scale = 2});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->scenario, "g1k");
}

}  // namespace
}  // namespace dlf::ctl
