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

#include "arl/empirical.hpp"

#include <limits>
#include <sstream>
#include <unordered_map>

#include "arl/error.hpp"
#include "arl/tidset.hpp"

namespace arl {

std::optional<double> empirical_conditional(const Dataset& dataset, ItemId target, const Evidence& evidence,
                                            double alpha) {
  const auto& universe = dataset.universe();
  if (target < 0 || target >= universe.item_count()) throw ConfigError("target item out of range");
  if (alpha < 0.0) throw ConfigError("smoothing alpha must be >= 0");
  const FeatureId target_feature = universe.feature_of(target);
  std::vector<bool> used(static_cast<std::size_t>(universe.feature_count()), false);
  for (const auto& e : evidence) {
    if (e.feature < 0 || e.feature >= universe.feature_count() || e.category < 0 ||
        e.category >= universe.cardinality(e.feature))
      throw ConfigError("evidence item out of range");
    if (e.feature == target_feature) throw ConfigError("evidence touches the target's feature");
    if (used[static_cast<std::size_t>(e.feature)]) throw ConfigError("evidence holds two items of one feature");
    used[static_cast<std::size_t>(e.feature)] = true;
  }

  long matched = 0;
  long joint = 0;
  for (int r = 0; r < dataset.row_count(); ++r) {
    bool holds = true;
    for (const auto& e : evidence)
      if (dataset.code(r, e.feature) != e.category) {
        holds = false;
        break;
      }
    if (!holds) continue;
    ++matched;
    if (dataset.row_contains(r, target)) ++joint;
  }
  if (alpha == 0.0 && matched == 0) return std::nullopt;
  return (static_cast<double>(joint) + alpha) /
         (static_cast<double>(matched) + alpha * universe.cardinality(target_feature));
}

namespace {

class EmpiricalModel final : public FittedModel {
 public:
  EmpiricalModel(const Dataset& context, const std::vector<std::string>& labels, double alpha)
      : universe_(context.universe()),
        item_rows_(context.item_tidsets()),
        rows_(static_cast<std::size_t>(context.row_count())),
        alpha_(alpha) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < labels.size(); ++r) {
      auto [it, inserted] = index.try_emplace(labels[r], classes_.size());
      if (inserted) {
        classes_.push_back(labels[r]);
        class_rows_.emplace_back(rows_);
      }
      class_rows_[it->second].set(r);
    }
  }

  const std::vector<std::string>& classes() const override { return classes_; }
  Eigen::Index width() const override { return universe_.item_count(); }

  Eigen::MatrixXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& probes) override {
    if (probes.cols() != width())
      throw ConfigError("probe width " + std::to_string(probes.cols()) + " does not match context width " +
                        std::to_string(width()));
    const auto class_count = static_cast<Eigen::Index>(classes_.size());
    Eigen::MatrixXd out(probes.rows(), class_count);
    for (Eigen::Index r = 0; r < probes.rows(); ++r) {
      const auto evidence = hard_evidence(probes.row(r), universe_);
      TidSet mask(rows_, true);
      for (FeatureId f = 0; f < universe_.feature_count(); ++f)
        if (const int c = evidence[static_cast<std::size_t>(f)]; c >= 0)
          mask &= item_rows_[static_cast<std::size_t>(universe_.item(f, c))];
      const auto matched = static_cast<double>(mask.count());
      if (alpha_ == 0.0 && matched == 0.0) {
        out.row(r).setConstant(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      for (Eigen::Index c = 0; c < class_count; ++c) {
        const auto joint = static_cast<double>(mask.intersect_count(class_rows_[static_cast<std::size_t>(c)]));
        out(r, c) = (joint + alpha_) / (matched + alpha_ * static_cast<double>(class_count));
      }
    }
    return out;
  }

 private:
  ItemUniverse universe_;
  std::vector<TidSet> item_rows_;
  std::size_t rows_;
  double alpha_;
  std::vector<std::string> classes_;
  std::vector<TidSet> class_rows_;
};

}  // namespace

EmpiricalBackend::EmpiricalBackend(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("smoothing alpha must be >= 0");
}

std::string EmpiricalBackend::name() const {
  if (alpha_ == 0.0) return "empirical";
  std::ostringstream os;
  os << "empirical(alpha=" << alpha_ << ")";
  return os.str();
}

std::unique_ptr<FittedModel> EmpiricalBackend::fit_context(const Dataset& context,
                                                           const std::vector<std::string>& labels) {
  if (labels.empty() || context.row_count() == 0) throw DataError("empty context");
  if (static_cast<int>(labels.size()) != context.row_count())
    throw DataError("context has " + std::to_string(context.row_count()) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  return std::make_unique<EmpiricalModel>(context, labels, alpha_);
}

}  // namespace arl
