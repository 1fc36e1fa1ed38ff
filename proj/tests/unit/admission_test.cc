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

#include <random>

#include "admission_table.h"
#include "dlf/admission/admission.h"
#include "dlf/admission/convention.h"
#include "dlf/admission/patch.h"

namespace dlf::admission {
namespace {

using testing::make_pod;

TEST(Convention, PaperExample) {
  auto refs = extract_dataset_refs({{"dataset.0.id", "my-dataset"}, {"dataset.0.useas", "mount"}});
  EXPECT_EQ(refs, (std::vector<DatasetRef>{{0, "my-dataset", UseAs::kMount, std::nullopt}}));
  EXPECT_TRUE(extract_dataset_refs({}).empty());
}

TEST(Convention, SparseIndicesAndAlias) {
  auto refs = extract_dataset_refs({{"dataset.0.id", "a"},
                                    {"dataset.0.useas", "mount"},
                                    {"dataset.2.id", "b"},
                                    {"dataset.2.uses", "configmap"}});
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_EQ(refs[0].index, 0);
  EXPECT_EQ(refs[1].index, 2);
  EXPECT_EQ(refs[1].useas, UseAs::kConfigMap);
}

TEST(Convention, NumericOrderNotLexicographic) {
  auto refs = extract_dataset_refs({{"dataset.10.id", "late"},
                                    {"dataset.10.useas", "mount"},
                                    {"dataset.9.id", "early"},
                                    {"dataset.9.useas", "mount"}});
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_EQ(refs[0].id, "early");
}

TEST(Convention, NonCanonicalIndexRejected) {
  try {
    extract_dataset_refs({{"dataset.01.id", "a"}, {"dataset.01.useas", "mount"}});
    FAIL();
  } catch (const AdmissionError& e) {
    EXPECT_EQ(e.code(), AdmissionErrc::kMalformedConvention);
  }
}

TEST(Convention, EnvPrefix) {
  EXPECT_EQ(env_prefix("ds-a"), "DS_A");
  EXPECT_EQ(env_prefix("my-data-set2"), "MY_DATA_SET2");
}

// Every label subset over indices 0..3 built from a small value pool, checked
// against the straight-line reference reading. Exhaustive for one and two
// populated indices, sampled beyond that.
TEST(Convention, MatchesReferenceParser) {
  const std::vector<std::optional<std::string>> ids = {std::nullopt, "a", "b", "Bad_Id"};
  const std::vector<std::optional<std::string>> modes = {std::nullopt, "mount", "configmap", "volume"};
  const std::vector<std::optional<std::string>> alias = {std::nullopt, "mount", "configmap"};
  const std::vector<std::optional<std::string>> paths = {std::nullopt, "/p", "rel"};
  struct Slot {
    std::optional<std::string> id, useas, uses, path;
  };
  std::vector<Slot> slots;
  for (const auto& i : ids)
    for (const auto& m : modes)
      for (const auto& u : alias)
        for (const auto& p : paths) slots.push_back({i, m, u, p});

  auto labels_for = [](const std::vector<std::pair<int, Slot>>& placed) {
    Labels l;
    for (const auto& [n, s] : placed) {
      const std::string p = "dataset." + std::to_string(n) + ".";
      if (s.id) l[p + "id"] = *s.id;
      if (s.useas) l[p + "useas"] = *s.useas;
      if (s.uses) l[p + "uses"] = *s.uses;
      if (s.path) l[p + "mountpath"] = *s.path;
    }
    return l;
  };
  std::size_t checked = 0;
  auto check = [&](const Labels& labels) {
    auto expected = testing::reference_refs(labels);
    ++checked;
    if (const auto* refs = std::get_if<std::vector<DatasetRef>>(&expected)) {
      ASSERT_EQ(extract_dataset_refs(labels), *refs);
    } else {
      try {
        extract_dataset_refs(labels);
        FAIL() << "accepted malformed labels";
      } catch (const AdmissionError& e) {
        ASSERT_EQ(e.code(), AdmissionErrc::kMalformedConvention);
      }
    }
  };
  for (int n = 0; n <= 3; ++n) {
    for (const auto& s : slots) check(labels_for({{n, s}}));
  }
  for (const auto& s0 : slots) {
    for (const auto& s2 : slots) check(labels_for({{0, s0}, {2, s2}}));
  }
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20000; ++i) {
    std::vector<std::pair<int, Slot>> placed;
    for (int n = 0; n <= 3; ++n) {
      if (rng() % 4) placed.emplace_back(n, slots[rng() % slots.size()]);
    }
    check(labels_for(placed));
  }
  EXPECT_GT(checked, 20000u);
}

class Table : public ::testing::Test {
 protected:
  void SetUp() override { testing::seed_admission_store(store); }
  Store store;
};

TEST_F(Table, EveryRowExact) {
  for (const auto& row : testing::admission_table()) {
    EXPECT_EQ(testing::check_row(row, store), "") << row.name;
  }
}

TEST_F(Table, GateNegation) {
  const Labels pair = {{"dataset.0.id", "my-dataset"}, {"dataset.0.useas", "mount"}};
  EXPECT_TRUE(should_mutate(make_pod(pair), {{"monitor-pods-datasets", "enabled"}}));
  EXPECT_FALSE(should_mutate(make_pod(pair), {}));
  EXPECT_FALSE(should_mutate(make_pod(pair), {{"monitor-pods-datasets", "disabled"}}));
  EXPECT_FALSE(should_mutate(make_pod({}), {{"monitor-pods-datasets", "enabled"}}));
}

TEST_F(Table, AllowPendingOption) {
  Pod pod = make_pod({{"dataset.0.id", "pending-ds"}, {"dataset.0.useas", "mount"}});
  EXPECT_FALSE(admit(pod, "labs", store).allowed);
  auto d = admit(pod, "labs", store, {.allow_pending = true});
  EXPECT_TRUE(d.allowed);
  EXPECT_EQ(d.patch.ops.size(), 2u);
}

TEST_F(Table, TerminatingDatasetCountsAsMissing) {
  Dataset ds;
  ds.meta.name = "going";
  ds.meta.ns = "labs";
  ds.meta.finalizers = {"dlf/cleanup"};
  ds.spec = testing::cos_spec("g");
  ds.status.phase = Phase::kReady;
  store.create(make_object(ds));
  store.remove(Kind::kDataset, "labs", "going");
  auto d = admit(make_pod({{"dataset.0.id", "going"}, {"dataset.0.useas", "mount"}}), "labs", store);
  EXPECT_EQ(d.reason, "dataset not found: going");
}

TEST_F(Table, ExistingEnvIsReplacedOrKept) {
  Pod pod = make_pod({{"dataset.0.id", "ds-a"}, {"dataset.0.useas", "configmap"}});
  pod.spec.containers[0].env = {{"DS_A_ENDPOINT", "http://stale", std::nullopt},
                                {"DS_A_BUCKET", "bucket-b", std::nullopt}};
  auto d = admit(pod, "labs", store);
  ASSERT_TRUE(d.allowed) << d.reason;
  auto j = d.patch.to_json();
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["op"], "replace");
  EXPECT_EQ(j[0]["path"], "/spec/containers/0/env/0");
  EXPECT_EQ(j[0]["value"]["value"], testing::kCosEndpoint);
  EXPECT_EQ(j[1]["path"], "/spec/containers/0/env/-");
}

TEST_F(Table, PatchTextRoundTrip) {
  Pod pod = make_pod({{"dataset.0.id", "my-dataset"}, {"dataset.0.useas", "mount"}});
  auto d = admit(pod, "labs", store);
  auto back = AdmissionPatch::from_json(nlohmann::json::parse(d.patch.to_text()));
  EXPECT_EQ(back, d.patch);
}

TEST_F(Table, AdmitIsDeterministic) {
  Pod pod = make_pod({{"dataset.0.id", "my-dataset"}, {"dataset.0.useas", "mount"},
                      {"dataset.1.id", "ds-a"}, {"dataset.1.useas", "configmap"}}, 3);
  const auto first = admit(pod, "labs", store).patch;
  for (int i = 0; i < 20; ++i) EXPECT_EQ(admit(pod, "labs", store).patch, first);
}

// Random pods and ref sets: the applied patch validates, adds one volume per
// mount ref and one mount per (ref, container); re-admission is a no-op.
TEST_F(Table, PatchSoundnessAndIdempotence) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> mountable = {"my-dataset", "ds-a", "my-nfs"};
  int exercised = 0;
  for (int iter = 0; iter < 500; ++iter) {
    Labels labels;
    std::vector<int> picks = {0, 1, 2};
    std::shuffle(picks.begin(), picks.end(), rng);
    const int nrefs = 1 + static_cast<int>(rng() % 3);
    int mount_refs = 0;
    std::set<std::string> overrides;
    for (int r = 0; r < nrefs; ++r) {
      const std::string id = mountable[picks[r]];
      const std::string p = "dataset." + std::to_string(r * 2) + ".";
      labels[p + "id"] = id;
      const bool configmap = id != "my-nfs" && rng() % 3 == 0;
      labels[p + (rng() % 2 ? "useas" : "uses")] = configmap ? "configmap" : "mount";
      if (!configmap) {
        ++mount_refs;
        if (rng() % 3 == 0) labels[p + "mountpath"] = "/data/" + id;
      }
    }
    const int containers = 1 + static_cast<int>(rng() % 3);
    Pod pod = make_pod(labels, containers);
    if (rng() % 2) {
      pod.spec.volumes.push_back({"scratch", "scratch"});
      for (auto& c : pod.spec.containers) {
        c.volume_mounts.push_back({"scratch", "/scratch"});
        c.env.push_back({"HOME", "/root", std::nullopt});
      }
    }
    auto d = admit(pod, "labs", store);
    ASSERT_TRUE(d.allowed) << d.reason;
    const Pod patched = apply_patch(pod, d.patch);
    ASSERT_TRUE(validate_pod(patched).ok());
    ASSERT_EQ(patched.spec.volumes.size(), pod.spec.volumes.size() + mount_refs);
    for (int c = 0; c < containers; ++c) {
      ASSERT_EQ(patched.spec.containers[c].volume_mounts.size(),
                pod.spec.containers[c].volume_mounts.size() + mount_refs);
    }
    for (const auto& ref : extract_dataset_refs(labels)) {
      if (ref.useas != UseAs::kMount) continue;
      const std::string want = ref.mount_path_override.value_or("/mnt/datasets/" + ref.id);
      for (const auto& c : patched.spec.containers) {
        const bool found = std::any_of(c.volume_mounts.begin(), c.volume_mounts.end(), [&](const VolumeMount& m) {
          return m.name == ref.id && m.mount_path == want;
        });
        ASSERT_TRUE(found);
      }
    }
    auto again = admit(patched, "labs", store);
    ASSERT_TRUE(again.allowed);
    ASSERT_TRUE(again.patch.empty()) << again.patch.to_text();
    ++exercised;
  }
  EXPECT_EQ(exercised, 500);
}

TEST(DefaultPathLaw, RandomIds) {
  Store store;
  store.create(make_namespace("labs", {{"monitor-pods-datasets", "enabled"}}));
  std::mt19937_64 rng(99);
  const std::string head = "abcdefghijklmnopqrstuvwxyz0123456789";
  const std::string body = head + "-";
  std::set<std::string> ids;
  while (ids.size() < 1000) {
    const std::size_t len = 1 + rng() % 63;
    std::string id;
    for (std::size_t i = 0; i < len; ++i) {
      const bool edge = i == 0 || i + 1 == len;
      id += edge ? head[rng() % head.size()] : body[rng() % body.size()];
    }
    ids.insert(id);
  }
  for (const auto& id : ids) {
    testing::add_dataset(store, "labs", id, testing::cos_spec("b"));
    auto d = admit(make_pod({{"dataset.0.id", id}, {"dataset.0.useas", "mount"}}), "labs", store);
    ASSERT_TRUE(d.allowed) << id << ": " << d.reason;
    ASSERT_EQ(d.patch.ops.size(), 2u);
    ASSERT_EQ(d.patch.ops[1].value[0]["mountPath"], "/mnt/datasets/" + id);
    ASSERT_EQ(default_mount_path(id), "/mnt/datasets/" + id);
  }
}

}  // namespace
}  // namespace dlf::admission
