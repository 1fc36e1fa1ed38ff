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

#include "dlf/ctl/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dlf/admission/admission.h"
#include "dlf/ctl/scenarios.h"
#include "dlf/ctl/session.h"
#include "dlf/model/manifest.h"
#include "dlf/s3/stub_server.h"
#include "dlf/store/snapshot.h"

namespace dlf::ctl {

namespace {

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string kind_slug(Kind k) { return lower(std::string(to_string(k))); }

struct Globals {
  std::string session = "dlf-session.yaml";
  int workers = 2;
  bool allow_pending = false;
  std::string probe = "s3";
  int probe_timeout_ms = 2000;
  int scale = 0;
  std::string report;
  std::uint64_t seed = 1;

  ClusterOptions cluster() const {
    ClusterOptions o;
    o.workers = workers;
    o.probe = probe == "none" ? ProbeMode::kNone : ProbeMode::kS3;
    o.probe_timeout = std::chrono::milliseconds(probe_timeout_ms);
    o.admission.allow_pending = allow_pending;
    return o;
  }
};

void print_row(std::ostream& out, const std::vector<std::string>& cols, const std::vector<std::size_t>& widths) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i + 1 == cols.size()) {
      out << cols[i];
    } else {
      out << std::left << std::setw(static_cast<int>(widths[i]) + 2) << cols[i];
    }
  }
  out << "\n";
}

std::vector<std::string> summarize(const StoredObject& obj) {
  switch (obj.kind) {
    case Kind::kDataset: {
      const auto& p = obj.as<DatasetPayload>();
      return {obj.meta.name, std::string(to_string(p.spec.type())), std::string(to_string(p.status.phase)),
              p.status.message};
    }
    case Kind::kVolumeClaim: {
      const auto& p = obj.as<VolumeClaimPayload>();
      return {obj.meta.name, p.storage_class, p.access_mode, p.secret_name.value_or("")};
    }
    case Kind::kSecret:
      return {obj.meta.name, std::to_string(obj.as<SecretPayload>().data.size()) + " keys"};
    case Kind::kConfigMap:
      return {obj.meta.name, std::to_string(obj.as<ConfigMapPayload>().data.size()) + " keys"};
    case Kind::kPod: {
      const auto& p = obj.as<PodPayload>();
      return {obj.meta.name, std::to_string(p.spec.containers.size()) + " containers",
              std::to_string(p.spec.volumes.size()) + " volumes"};
    }
    case Kind::kNamespace: {
      std::string labels;
      for (const auto& [k, v] : obj.meta.labels) labels += (labels.empty() ? "" : ",") + k + "=" + v;
      return {obj.meta.name, labels};
    }
  }
  return {obj.meta.name};
}

std::vector<std::string> header_for(Kind k) {
  switch (k) {
    case Kind::kDataset: return {"NAME", "TYPE", "PHASE", "MESSAGE"};
    case Kind::kVolumeClaim: return {"NAME", "STORAGECLASS", "ACCESS", "SECRET"};
    case Kind::kSecret:
    case Kind::kConfigMap: return {"NAME", "DATA"};
    case Kind::kPod: return {"NAME", "CONTAINERS", "VOLUMES"};
    case Kind::kNamespace: return {"NAME", "LABELS"};
  }
  return {"NAME"};
}

Kind kind_arg(const std::string& s) {
  auto k = parse_kind(lower(s));
  if (!k) throw UserError("unknown kind: " + s);
  return *k;
}

std::string ns_for(Kind k, const std::string& ns) { return is_namespaced(k) ? ns : std::string(); }

int cmd_apply(const Globals& g, const std::string& file, const std::string& ns_flag, std::ostream& out,
              std::ostream& err) {
  Dataset ds;
  try {
    ds = parse_manifest(read_file(file));
  } catch (const ManifestError& e) {
    err << "error: " << file << ":" << e.what() << "\n";
    return kExitUserError;
  }
  if (!ns_flag.empty()) ds.meta.ns = ns_flag;
  if (ds.meta.ns.empty()) ds.meta.ns = std::string(kDefaultNamespace);
  const ValidationResult valid = validate_dataset(ds.spec);
  if (!valid.ok()) {
    err << "error: dataset " << ds.meta.name << " is invalid:\n";
    for (const auto& e : valid.errors) err << "  " << e.to_string() << "\n";
    return kExitUserError;
  }
  Session session(g.session, g.cluster());
  const ApplyResult result = apply_dataset(session.store(), ds);
  session.commit();
  out << "dataset/" << ds.meta.name << " " << to_string(result) << "\n";
  return kExitOk;
}

int cmd_get(const Globals& g, const std::string& kind_s, const std::string& name, const std::string& ns,
            const std::string& format, std::ostream& out, std::ostream& err) {
  const Kind kind = kind_arg(kind_s);
  Session session(g.session, g.cluster());
  std::vector<StoredObject> items;
  if (!name.empty()) {
    auto obj = session.store().get(kind, ns_for(kind, ns), name);
    if (!obj) {
      session.commit();
      err << "error: " << kind_slug(kind) << " \"" << name << "\" not found\n";
      return kExitUserError;
    }
    items.push_back(*obj);
  } else {
    items = session.store().list(kind, ns_for(kind, ns));
  }
  session.commit();
  if (format == "yaml") {
    out << dump_snapshot(items);
    return kExitOk;
  }
  if (items.empty()) {
    out << "No resources found.\n";
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows{header_for(kind)};
  for (const auto& obj : items) rows.push_back(summarize(obj));
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) print_row(out, row, widths);
  return kExitOk;
}

int cmd_delete(const Globals& g, const std::string& kind_s, const std::string& name, const std::string& ns,
               std::ostream& out, std::ostream& err) {
  const Kind kind = kind_arg(kind_s);
  Session session(g.session, g.cluster());
  try {
    session.store().remove(kind, ns_for(kind, ns), name);
  } catch (const StoreError& e) {
    session.commit();
    if (e.code() != StoreErrc::kNotFound) throw;
    err << "error: " << kind_slug(kind) << " \"" << name << "\" not found\n";
    return kExitUserError;
  }
  session.commit();
  out << kind_slug(kind) << "/" << name << " deleted\n";
  return kExitOk;
}

int cmd_label(const Globals& g, const std::string& kind_s, const std::string& name,
              const std::vector<std::string>& pairs, std::ostream& out, std::ostream&) {
  if (kind_arg(kind_s) != Kind::kNamespace) throw UserError("only namespaces can be labeled");
  if (pairs.empty()) throw UserError("expected at least one key=value");
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UserError("expected key=value, got " + p);
    kv.emplace_back(p.substr(0, eq), p.substr(eq + 1));
  }
  Session session(g.session, g.cluster());
  for (const auto& [k, v] : kv) session.cluster().label_namespace(name, k, v);
  session.commit();
  out << "namespace/" << name << " labeled\n";
  return kExitOk;
}

int cmd_admit(const Globals& g, const std::string& file, const std::string& ns_flag, bool dry_run,
              std::ostream& out, std::ostream& err) {
  Pod pod;
  try {
    pod = parse_pod_manifest(read_file(file));
  } catch (const ManifestError& e) {
    err << "error: " << file << ":" << e.what() << "\n";
    return kExitUserError;
  }
  if (!ns_flag.empty()) pod.meta.ns = ns_flag;
  if (pod.meta.ns.empty()) pod.meta.ns = std::string(kDefaultNamespace);

  Session session(g.session, g.cluster());
  if (dry_run) {
    auto decision = admission::admit(pod, pod.meta.ns, session.store(), g.cluster().admission);
    session.commit();
    if (!decision.allowed) {
      err << "rejected: " << decision.reason << "\n";
      return kExitUserError;
    }
    if (decision.patch.empty()) {
      out << "no mutation\n";
    } else {
      out << decision.patch.to_text() << "\n";
    }
    return kExitOk;
  }
  std::optional<Pod> created;
  admission::AdmissionDecision decision;
  try {
    decision = session.cluster().create_pod(pod, &created);
  } catch (const StoreError& e) {
    session.commit();
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  session.commit();
  if (!decision.allowed) {
    err << "rejected: " << decision.reason << "\n";
    return kExitUserError;
  }
  out << "pod/" << pod.meta.name << " created" << (decision.patch.empty() ? "" : " (mutated)") << "\n";
  return kExitOk;
}

int cmd_scenario(const Globals& g, const std::string& name, std::ostream& out, std::ostream& err) {
  ScenarioOptions opts;
  opts.scale = g.scale;
  opts.seed = g.seed;
  opts.workers = g.workers;
  auto report = run_scenario(name, opts);
  if (!report) {
    err << "error: unknown scenario " << name << " (notebook, tensorboard, g1k)\n";
    return kExitUserError;
  }
  const std::string text = report->to_text();
  out << text << "\n";
  if (!g.report.empty()) {
    std::ofstream f(g.report);
    if (!f) throw UserError("cannot write " + g.report);
    f << text << "\n";
  }
  if (!report->passed()) {
    const auto* fail = report->first_failure();
    err << "scenario " << name << " failed at: " << fail->description
        << (fail->detail.empty() ? "" : " (" + fail->detail + ")") << "\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_cache_stats(const CacheTraceOptions& opts, std::ostream& out) {
  const CacheTraceResult r = run_cache_trace(opts);
  const auto& s = r.stats;
  nlohmann::json j = {
      {"reads", r.reads},
      {"hits", s.hits},
      {"misses", s.misses},
      {"evictions", s.evictions},
      {"hitRatio", r.reads ? static_cast<double>(s.hits) / static_cast<double>(r.reads) : 0.0},
      {"bytesServedFromCache", s.bytes_served_from_cache},
      {"bytesFetchedFromOrigin", s.bytes_fetched_from_origin},
      {"originRequests", s.origin_requests},
      {"originGetsObserved", r.origin_gets},
      {"originGetsUncached", r.uncached_origin_gets},
      {"cachedBytes", s.cached_bytes},
      {"capacityBytes", opts.capacity_bytes},
      {"byteFidelity", r.bytes_ok},
      {"capacityRespected", r.capacity_ok},
      {"secondsCached", r.seconds_cached},
      {"secondsUncached", r.seconds_uncached},
  };
  out << j.dump(2) << "\n";
  return r.bytes_ok && r.capacity_ok ? kExitOk : kExitAssertion;
}

}  // namespace

CacheTraceResult run_cache_trace(const CacheTraceOptions& o) {
  std::mt19937_64 rng(o.seed);
  const std::string bucket = "origin";
  const s3::Credentials creds{"cache-access", "cache-secret"};
  s3::StubBucketConfig cfg{bucket, creds, {}, {}, false};
  cfg.latency.fixed = std::chrono::microseconds(o.origin_latency_us);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::string> keys;
  for (int i = 0; i < o.keys; ++i) {
    std::string data(o.object_bytes, '\0');
    for (auto& c : data) c = static_cast<char>(byte(rng));
    keys.push_back("obj-" + std::to_string(i));
    cfg.objects[keys.back()] = std::move(data);
  }
  const auto truth = cfg.objects;
  std::vector<std::string> trace;
  for (int r = 0; r < o.reuse; ++r) trace.insert(trace.end(), keys.begin(), keys.end());
  std::shuffle(trace.begin(), trace.end(), rng);

  auto stub = s3::StubServer::start({cfg});
  auto origin = std::make_shared<s3::BucketStore>(s3::S3Client(stub->endpoint(), creds), bucket);
  cache::CachingGateway gateway(origin, o.capacity_bytes);

  CacheTraceResult result;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& k : trace) {
    result.bytes_ok = result.bytes_ok && gateway.get(k) == truth.at(k);
    result.capacity_ok = result.capacity_ok && gateway.stats().cached_bytes <= o.capacity_bytes;
    ++result.reads;
  }
  auto t1 = std::chrono::steady_clock::now();
  result.origin_gets = stub->request_count(bucket, "GET");
  for (const auto& k : trace) origin->get(k);
  auto t2 = std::chrono::steady_clock::now();
  result.uncached_origin_gets = stub->request_count(bucket, "GET") - result.origin_gets;
  result.stats = gateway.stats();
  result.seconds_cached = std::chrono::duration<double>(t1 - t0).count();
  result.seconds_uncached = std::chrono::duration<double>(t2 - t1).count();
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dlfctl: dataset lifecycle control against an embedded cluster", "dlfctl"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--session", g.session, "Session snapshot file")->capture_default_str();
  app.add_option("--workers", g.workers, "Controller worker threads")->check(CLI::Range(1, 64))->capture_default_str();
  app.add_flag("--allow-pending-datasets", g.allow_pending, "Admit pods whose datasets are not Ready yet");
  app.add_option("--probe", g.probe, "Endpoint probing: s3 or none")
      ->check(CLI::IsMember({"s3", "none"}))
      ->capture_default_str();
  app.add_option("--probe-timeout-ms", g.probe_timeout_ms, "Probe timeout")->check(CLI::PositiveNumber);
  app.add_option("--scenario-scale", g.scale, "Objects / chunks for scenarios (0 = default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--report", g.report, "Write the scenario report to this file");
  app.add_option("--seed", g.seed, "Seed for scenario randomness");

  std::string file, kind, name, ns = std::string(kDefaultNamespace), format = "table";
  std::vector<std::string> pairs;
  bool dry_run = false;
  CacheTraceOptions trace;

  auto* apply = app.add_subcommand("apply", "Create or update a Dataset from a manifest");
  apply->add_option("-f,--filename,file", file, "Manifest path")->required();
  apply->add_option("-n,--namespace", ns, "Namespace override");

  auto* get = app.add_subcommand("get", "Show objects");
  get->add_option("kind", kind)->required();
  get->add_option("name", name);
  get->add_option("-n,--namespace", ns);
  get->add_option("-o,--output", format)->check(CLI::IsMember({"table", "yaml"}));

  auto* del = app.add_subcommand("delete", "Delete an object");
  del->add_option("kind", kind)->required();
  del->add_option("name", name)->required();
  del->add_option("-n,--namespace", ns);

  auto* label = app.add_subcommand("label", "Label a namespace");
  label->add_option("kind", kind)->required();
  label->add_option("name", name)->required();
  label->add_option("pairs", pairs, "key=value ...")->required();

  auto* admit = app.add_subcommand("admit", "Run pod admission on a pod manifest");
  admit->add_option("file", file)->required();
  admit->add_option("-n,--namespace", ns);
  admit->add_flag("--dry-run", dry_run, "Print the patch without creating the pod");

  auto* scenario = app.add_subcommand("scenario", "Run a scenario: notebook, tensorboard, g1k");
  scenario->add_option("name", name)->required();

  auto* cache = app.add_subcommand("cache", "Cache tools");
  cache->require_subcommand(1);
  auto* stats = cache->add_subcommand("stats", "Run a synthetic trace through the caching gateway");
  stats->add_option("--keys", trace.keys)->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--reuse", trace.reuse)->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--object-bytes", trace.object_bytes)->capture_default_str();
  stats->add_option("--capacity-bytes", trace.capacity_bytes)->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--origin-latency-us", trace.origin_latency_us)->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }
  const bool ns_given = !apply->get_option("--namespace")->empty() ||
                        !admit->get_option("--namespace")->empty();

  try {
    if (*apply) return cmd_apply(g, file, ns_given ? ns : std::string(), out, err);
    if (*get) return cmd_get(g, kind, name, ns, format, out, err);
    if (*del) return cmd_delete(g, kind, name, ns, out, err);
    if (*label) return cmd_label(g, kind, name, pairs, out, err);
    if (*admit) return cmd_admit(g, file, ns_given ? ns : std::string(), dry_run, out, err);
    if (*scenario) return cmd_scenario(g, name, out, err);
    if (*stats) {
      trace.seed = g.seed;
      return cmd_cache_stats(trace, out);
    }
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const ManifestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const StoreError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}

}  // namespace dlf::ctl
