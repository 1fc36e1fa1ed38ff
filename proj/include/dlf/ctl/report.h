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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace dlf::ctl {

struct ScenarioStep {
  std::string description;
  bool ok = true;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<ScenarioStep> steps;
  std::map<std::string, std::int64_t> counters;
  double simulated_duration_s = 0.0;

  // Conjunction of step outcomes (an empty report passes).
  bool passed() const;
  // Appends a step; returns `ok` so callers can bail out early.
  bool check(std::string description, bool ok, std::string detail = {});
  const ScenarioStep* first_failure() const;

  nlohmann::json to_json() const;
  std::string to_text() const;  // to_json().dump(2)
};

}  // namespace dlf::ctl
