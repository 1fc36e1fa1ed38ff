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

#include "dlf/ctl/report.h"

namespace dlf::ctl {

bool ScenarioReport::passed() const { return first_failure() == nullptr; }

bool ScenarioReport::check(std::string description, bool ok, std::string detail) {
  steps.push_back({std::move(description), ok, std::move(detail)});
  return ok;
}

const ScenarioStep* ScenarioReport::first_failure() const {
  for (const auto& s : steps) {
    if (!s.ok) return &s;
  }
  return nullptr;
}

nlohmann::json ScenarioReport::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json j = {{"description", s.description}, {"outcome", s.ok ? "pass" : "fail"}};
    if (!s.detail.empty()) j["detail"] = s.detail;
    steps_json.push_back(std::move(j));
  }
  return {{"scenarioName", scenario},
          {"steps", std::move(steps_json)},
          {"counters", counters},
          {"simulatedDuration", simulated_duration_s},
          {"passed", passed()}};
}

std::string ScenarioReport::to_text() const { return to_json().dump(2); }

}  // namespace dlf::ctl
