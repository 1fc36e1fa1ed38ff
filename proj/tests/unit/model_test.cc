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

#include "dlf/model/dataset.h"
#include "dlf/model/fingerprint.h"
#include "dlf/model/manifest.h"
#include "dlf/model/pod.h"

namespace dlf {
namespace {

CosSource good_cos() { return {"http://s3.example.test", "example-bucket", "k", "s", {}, {}}; }

TEST(Validate, ExampleCosSpecIsValid) {
  DatasetSpec spec{good_cos()};
  EXPECT_TRUE(validate_dataset(spec).ok());
}

TEST(Validate, MissingSecretIsReportedWithFieldPath) {
  CosSource cos = good_cos();
  cos.secret_access_key.clear();
  auto r = validate_dataset({cos});
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].to_string(), "spec.secretAccessKey: required");
}

TEST(Validate, BadBucketNameUsesGrammarMessage) {
  CosSource cos = good_cos();
  cos.bucket = "AB";
  auto r = validate_dataset({cos});
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].to_string(), "spec.bucket: must match S3 bucket grammar");
}

TEST(Validate, SecretRefStandsInForScrubbedSecret) {
  CosSource cos = good_cos();
  cos.secret_access_key.clear();
  cos.secret_ref = "example-bucket";
  EXPECT_TRUE(validate_dataset({cos}).ok());
}

// Published bucket rules, one row each.
struct BucketRow {
  std::string name;
  bool valid;
};

TEST(Validate, BucketGrammarTable) {
  const BucketRow rows[] = {
      {"abc", true},
      {"example-bucket", true},
      {"my.bucket.01", true},
      {"a1b2c3", true},
      {"000", true},
      {"ab", false},                        // too short
      {std::string(63, 'a').c_str(), true},  // longest allowed
      {"AB1", false},                        // uppercase
      {"my_bucket", false},                  // underscore
      {"-abc", false},                       // must start alnum
      {"abc-", false},                       // must end alnum
      {".abc", false},
      {"abc.", false},
      {"a..b", false},                       // adjacent periods
      {"192.168.5.4", false},                // IP address form
      {"192.168.5", true},                   // not a full address
      {"xn--abc", false},                    // reserved prefix
      {"sthree-abc", false},
      {"abc-s3alias", false},                // reserved suffix
      {"abc--ol-s3", false},
      {"a b", false},
  };
  for (const auto& row : rows) {
    EXPECT_EQ(is_valid_bucket_name(row.name), row.valid) << row.name;
  }
  EXPECT_FALSE(is_valid_bucket_name(std::string(64, 'a')));
}

// Property: validate_dataset agrees with a predicate built from a table of
// candidate field values whose validity is known up front.
struct Candidate {
  std::string value;
  bool ok;
};

TEST(Validate, AgreesWithFieldTablePredicate) {
  const std::vector<Candidate> endpoints = {
      {"http://s3.example.test", true}, {"https://10.0.0.1:9000", true}, {"http://h/p?q=1", true},
      {"", false}, {"ftp://x.test", false}, {"s3.example.test", false}, {"http://", false},
      {"http://a.test:99999", false}};
  const std::vector<Candidate> buckets = {
      {"example-bucket", true}, {"b.u.c", true}, {"", false}, {"AB", false}, {"a..b", false}, {"1.2.3.4", false}};
  const std::vector<Candidate> keys = {{"k", true}, {"AKIA123", true}, {"", false}};
  const std::vector<Candidate> secrets = {{"s", true}, {"x/y+z", true}, {"", false}};
  const std::vector<Candidate> regions = {{"", true} /* unset */, {"us-east-1", true}, {"US_EAST", false}};
  const std::vector<Candidate> servers = {{"nfs.example.test", true}, {"10.1.2.3", true}, {"", false}, {"bad host", false}};
  const std::vector<Candidate> shares = {{"/export/data", true}, {"/", true}, {"", false}, {"export", false}};

  std::mt19937_64 rng(7);
  auto pick = [&](const std::vector<Candidate>& v) { return v[rng() % v.size()]; };
  for (int i = 0; i < 5000; ++i) {
    DatasetSpec spec;
    bool expect = true;
    switch (rng() % 3) {
      case 0: {
        auto e = pick(endpoints), b = pick(buckets), k = pick(keys), s = pick(secrets), r = pick(regions);
        CosSource cos{e.value, b.value, k.value, s.value, {}, {}};
        if (!r.value.empty()) cos.region = r.value;
        spec.source = cos;
        expect = e.ok && b.ok && k.ok && s.ok && r.ok;
        break;
      }
      case 1: {
        auto sv = pick(servers), sh = pick(shares);
        spec.source = NfsSource{sv.value, sh.value};
        expect = sv.ok && sh.ok;
        break;
      }
      default: {
        auto u = pick(endpoints);
        spec.source = ArchiveSource{u.value, static_cast<ArchiveFormat>(rng() % 3)};
        expect = u.ok;
      }
    }
    ASSERT_EQ(validate_dataset(spec).ok(), expect) << canonical_spec(spec);
  }
}

TEST(Phase, EdgeSetIsExact) {
  const Phase all[] = {Phase::kPending, Phase::kProvisioning, Phase::kReady, Phase::kFailed, Phase::kTerminating};
  std::set<std::pair<Phase, Phase>> edges = {
      {Phase::kPending, Phase::kProvisioning},      {Phase::kProvisioning, Phase::kReady},
      {Phase::kProvisioning, Phase::kFailed},       {Phase::kFailed, Phase::kProvisioning},
      {Phase::kReady, Phase::kProvisioning},        {Phase::kPending, Phase::kTerminating},
      {Phase::kProvisioning, Phase::kTerminating},  {Phase::kReady, Phase::kTerminating},
      {Phase::kFailed, Phase::kTerminating},
  };
  for (Phase a : all) {
    for (Phase b : all) EXPECT_EQ(can_transition(a, b), edges.contains({a, b})) << to_string(a) << "->" << to_string(b);
  }
}

// Straight-line reimplementation of the canonical form + FNV-1a.
std::uint64_t reference_fingerprint(const std::vector<std::pair<std::string, std::string>>& sorted_fields) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0;
    h *= 1099511628211ULL;
  };
  for (const auto& [k, v] : sorted_fields) {
    feed(k);
    feed(v);
  }
  return h;
}

TEST(Fingerprint, MatchesReferenceImplementation) {
  CosSource cos = good_cos();
  cos.region = "eu-de";
  const std::uint64_t expected = reference_fingerprint({{"accessKeyID", "k"},
                                                        {"bucket", "example-bucket"},
                                                        {"endpoint", "http://s3.example.test"},
                                                        {"region", "eu-de"},
                                                        {"secretAccessKey", "s"},
                                                        {"type", "COS"}});
  EXPECT_EQ(spec_fingerprint({cos}), expected);
  EXPECT_EQ(spec_fingerprint({NfsSource{"n.test", "/x"}}),
            reference_fingerprint({{"server", "n.test"}, {"share", "/x"}, {"type", "NFS"}}));
  EXPECT_EQ(spec_fingerprint({ArchiveSource{"http://a.test/x.tgz", ArchiveFormat::kTarGz}}),
            reference_fingerprint({{"format", "targz"}, {"type", "ARCHIVE"}, {"url", "http://a.test/x.tgz"}}));
}

TEST(Fingerprint, DeterministicAndCoversCredentials) {
  CosSource a = good_cos(), b = good_cos();
  EXPECT_EQ(spec_fingerprint({a}), spec_fingerprint({a}));
  b.secret_access_key = "rotated";
  EXPECT_NE(spec_fingerprint({a}), spec_fingerprint({b}));
  EXPECT_EQ(fingerprint_hex(0xabcULL), "0000000000000abc");
}

const char* kExampleManifest = R"(apiVersion: com.ie.ibm.hpsys/v1alpha1
kind: Dataset
metadata:
  name: example-dataset
spec:
  local:
    type: "COS"
    accessKeyID: "iQkv3FABR0eywcEeyJAQ"
    secretAccessKey: "MIK3FPER+YQgb2ug26osxP/c8htr/05TVNJYuwmy"
    endpoint: "http://192.168.1.70:32343"
    bucket: "my-bucket-d4078283-dc35-4f12-a1a3-6f32571b0d62"
)";

TEST(Manifest, ParsesExample) {
  Dataset ds = parse_manifest(kExampleManifest);
  EXPECT_EQ(ds.meta.name, "example-dataset");
  EXPECT_EQ(ds.meta.ns, "default");
  EXPECT_EQ(ds.status.phase, Phase::kPending);
  ASSERT_NE(ds.spec.cos(), nullptr);
  EXPECT_EQ(ds.spec.cos()->bucket, "my-bucket-d4078283-dc35-4f12-a1a3-6f32571b0d62");
  EXPECT_TRUE(validate_dataset(ds.spec).ok());
}

TEST(Manifest, UnknownTypeRejected) {
  std::string text = kExampleManifest;
  text.replace(text.find("\"COS\""), 5, "\"FTP\"");
  try {
    parse_manifest(text);
    FAIL() << "accepted FTP";
  } catch (const ManifestError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown datasetType"), std::string::npos) << e.what();
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Manifest, DuplicateKeyRejectedWithPosition) {
  std::string text = std::string(kExampleManifest) + "    bucket: \"other\"\n";
  try {
    parse_manifest(text);
    FAIL() << "accepted duplicate bucket";
  } catch (const ManifestError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 12);
  }
}

TEST(Manifest, UnknownFieldRejected) {
  std::string text = std::string(kExampleManifest) + "    colour: blue\n";
  EXPECT_THROW(parse_manifest(text), ManifestError);
  EXPECT_THROW(parse_manifest("apiVersion: v1\nkind: Dataset\nmetadata: {name: a}\nspec: {local: {type: NFS}}\n"),
               ManifestError);
  EXPECT_THROW(parse_manifest("{{{"), ManifestError);
}

// Random valid datasets survive serialize -> parse unchanged.
TEST(Manifest, RoundTripProperty) {
  std::mt19937_64 rng(11);
  auto word = [&](int n) {
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(alphabet[rng() % 36]);
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    Dataset ds;
    ds.meta.name = "ds-" + word(6);
    ds.meta.ns = "ns-" + word(3);
    if (rng() % 2) ds.meta.labels["team"] = word(4);
    if (rng() % 2) ds.meta.annotations["note"] = "free text: " + word(5) + " #x";
    switch (rng() % 3) {
      case 0: {
        CosSource cos{"http://" + word(5) + ".test:" + std::to_string(1000 + rng() % 9000), "b-" + word(8),
                      word(12), word(20) + "/+=", {}, {}};
        if (rng() % 2) cos.region = "us-" + word(3);
        ds.spec.source = cos;
        break;
      }
      case 1:
        ds.spec.source = NfsSource{word(4) + ".example.test", "/export/" + word(3)};
        break;
      default:
        ds.spec.source = ArchiveSource{"https://" + word(6) + ".test/data.tar.gz", static_cast<ArchiveFormat>(rng() % 3)};
    }
    ASSERT_TRUE(validate_dataset(ds.spec).ok());
    const std::string text = serialize_manifest(ds);
    Dataset back = parse_manifest(text);
    ASSERT_EQ(back, ds) << text;
  }
}

TEST(Pod, JsonRoundTripAndValidation) {
  Pod pod;
  pod.meta.name = "nginx";
  pod.meta.labels = {{"dataset.0.id", "a"}};
  pod.spec.containers.push_back({"c", "nginx", {{"A", "1", {}}, {"B", "", SecretKeyRef{"s", "k"}}}, {{"v", "/data"}}});
  pod.spec.volumes.push_back({"v", "claim"});
  EXPECT_TRUE(validate_pod(pod).ok());
  EXPECT_EQ(pod_from_json(pod_to_json(pod)), pod);

  Pod bad = pod;
  bad.spec.containers[0].volume_mounts.push_back({"missing", "data"});
  auto r = validate_pod(bad);
  EXPECT_EQ(r.errors.size(), 2u);  // unknown volume + relative path
  EXPECT_THROW(pod_from_json({{"metadata", {{"name", "x"}}}, {"spec", {{"containers", 3}}}}), std::invalid_argument);
}

TEST(Pod, ManifestParses) {
  Pod pod = parse_pod_manifest(R"(apiVersion: v1
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
)");
  EXPECT_EQ(pod.meta.labels.at("dataset.0.useas"), "mount");
  EXPECT_EQ(pod.spec.containers.size(), 1u);
}

TEST(Url, ParsesAbsoluteHttp) {
  auto u = parse_url("http://127.0.0.1:9000/bucket/key");
  ASSERT_TRUE(u);
  EXPECT_EQ(u->host, "127.0.0.1");
  EXPECT_EQ(u->port, 9000);
  EXPECT_EQ(u->path, "/bucket/key");
  EXPECT_EQ(parse_url("https://x.test")->port, 443);
  EXPECT_FALSE(parse_url("x.test/a"));
}

}  // namespace
}  // namespace dlf
