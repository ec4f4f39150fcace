// Copyright 2026, The arl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal model server speaking the bridge protocol over stdin/stdout, backed by the
// in-process empirical estimator. Used only by tests. An optional first argument
// selects a failure mode: fail-fit, garbage-predict, exit-on-fit, short-predict.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include <json.hpp>

#include "arl/dataset.hpp"
#include "arl/empirical.hpp"

using nlohmann::json;

namespace {

arl::Dataset dataset_from_fit(const json& message) {
  const auto columns = message.at("columns").get<std::vector<std::string>>();
  const auto categories = message.at("categories").get<std::vector<std::vector<std::string>>>();
  const auto rows = message.at("rows").get<std::vector<std::vector<std::string>>>();
  std::vector<arl::FeatureDef> defs;
  for (std::size_t f = 0; f < columns.size(); ++f) defs.push_back({columns[f], categories.at(f)});
  arl::CodeMatrix codes(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t f = 0; f < columns.size(); ++f) {
      auto c = defs[f].category_index(rows[r].at(f));
      if (!c) throw std::runtime_error("unknown category " + rows[r][f]);
      codes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = *c;
    }
  return arl::Dataset(arl::ItemUniverse(std::move(defs)), std::move(codes));
}

void reply(const json& j) { std::cout << j.dump() << "\n" << std::flush; }
void fail(const std::string& message) { reply(json{{"ok", false}, {"error", message}}); }

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "";
  double alpha = 0.0;
  if (const char* env = std::getenv("SMOOTHING_ALPHA")) alpha = std::atof(env);
  arl::EmpiricalBackend backend(alpha);
  std::unique_ptr<arl::FittedModel> fitted;
  std::vector<std::string> target_classes;

  std::string line;
  while (std::getline(std::cin, line)) {
    json message;
    try {
      message = json::parse(line);
    } catch (const json::parse_error&) {
      fail("malformed JSON");
      continue;
    }
    const std::string op = message.is_object() ? message.value("op", "") : "";
    try {
      if (op == "hello") {
        reply(json{{"ok", true}, {"name", "fixture-empirical"}});
      } else if (op == "fit") {
        if (mode == "fail-fit") {
          fail("estimator exploded");
          continue;
        }
        if (mode == "exit-on-fit") return 0;
        const auto labels = message.at("labels").get<std::vector<std::string>>();
        target_classes = message.at("target_classes").get<std::vector<std::string>>();
        fitted = backend.fit_context(dataset_from_fit(message), labels);
        reply(json{{"ok", true}});
      } else if (op == "predict") {
        if (!fitted) {
          fail("not fitted");
          continue;
        }
        if (mode == "garbage-predict") {
          std::cout << "this is not json\n" << std::flush;
          continue;
        }
        const auto rows = message.at("rows").get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd probes(static_cast<Eigen::Index>(rows.size()), fitted->width());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (static_cast<Eigen::Index>(rows[r].size()) != fitted->width()) throw std::runtime_error("width mismatch");
          for (std::size_t c = 0; c < rows[r].size(); ++c)
            probes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
        const Eigen::MatrixXd probs = fitted->predict_proba(probes);
        // Responses follow the fit message's class order.
        json out = json::array();
        const auto& classes = fitted->classes();
        for (Eigen::Index r = 0; r < probs.rows(); ++r) {
          if (probs.row(r).hasNaN()) {
            out.push_back(nullptr);
            continue;
          }
          json row = json::array();
          for (const auto& name : target_classes) {
            const auto at = std::find(classes.begin(), classes.end(), name) - classes.begin();
            row.push_back(probs(r, at));
          }
          out.push_back(std::move(row));
        }
        if (mode == "short-predict" && !out.empty()) out.erase(out.end() - 1);
        reply(json{{"ok", true}, {"probs", std::move(out)}});
      } else if (op == "shutdown") {
        reply(json{{"ok", true}});
        return 0;
      } else {
        fail("unknown op '" + op + "'");
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return 0;
}
