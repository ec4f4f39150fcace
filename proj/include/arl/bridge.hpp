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

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arl/model.hpp"

namespace arl {

class BridgeConnection;

/// Backend delegating to an external model server spoken to over newline-delimited
/// JSON on the stdin/stdout of a child process (`/bin/sh -c command`).
///
///   -> {"op":"hello","version":1}        <- {"ok":true,"name":"..."}
///   -> {"op":"fit","columns":[...],"rows":[[...]],"categories":[[...]],
///       "target_classes":[...],"labels":[...]}                  <- {"ok":true}
///   -> {"op":"predict","rows":[[...]]}    <- {"ok":true,"probs":[[...]]}
///   -> {"op":"shutdown"}                  <- {"ok":true}
///
/// Any {"ok":false,"error":...} reply raises TransportError. A `null` probability
/// row is read as an undefined conditional.
class BridgeBackend final : public ModelBackend {
 public:
  explicit BridgeBackend(std::string command);
  ~BridgeBackend() override;

  BridgeBackend(const BridgeBackend&) = delete;
  BridgeBackend& operator=(const BridgeBackend&) = delete;

  /// Server-reported name prefixed with "bridge:".
  std::string name() const override;

  std::unique_ptr<FittedModel> fit_context(const Dataset& context,
                                           const std::vector<std::string>& labels) override;

  /// Sends shutdown and reaps the child. Idempotent; also run by the destructor.
  void close();

 private:
  std::shared_ptr<BridgeConnection> connection_;
  std::string name_;
};

}  // namespace arl
