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

#include "arl/bridge.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>

#include <json.hpp>

#include "arl/error.hpp"

namespace arl {

using nlohmann::json;

/// One child process and its two pipes; one request in flight at a time.
class BridgeConnection {
 public:
  explicit BridgeConnection(const std::string& command) {
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) throw TransportError(std::string("pipe: ") + std::strerror(errno));
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw TransportError(std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = ::fork();
    if (pid_ < 0) throw TransportError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
    ::fcntl(write_fd_, F_SETFD, FD_CLOEXEC);
    ::fcntl(read_fd_, F_SETFD, FD_CLOEXEC);
  }

  ~BridgeConnection() { close(); }

  BridgeConnection(const BridgeConnection&) = delete;
  BridgeConnection& operator=(const BridgeConnection&) = delete;

  json request(const json& message) {
    std::lock_guard lock(mutex_);
    if (write_fd_ < 0) throw TransportError("bridge connection is closed");
    send_line(message.dump());
    const std::string line = read_line();
    json reply;
    try {
      reply = json::parse(line);
    } catch (const json::parse_error& e) {
      throw TransportError(std::string("malformed reply from model server: ") + e.what());
    }
    if (!reply.is_object() || !reply.contains("ok") || !reply["ok"].is_boolean())
      throw TransportError("reply lacks an \"ok\" flag: " + line);
    if (!reply["ok"].get<bool>()) {
      std::string message_text = "model server error";
      if (reply.contains("error") && reply["error"].is_string()) message_text += ": " + reply["error"].get<std::string>();
      throw TransportError(message_text);
    }
    return reply;
  }

  void close() {
    std::lock_guard lock(mutex_);
    if (write_fd_ < 0) return;
    try {
      send_line(json{{"op", "shutdown"}}.dump());
      (void)read_line();
    } catch (const TransportError&) {
    }
    ::close(write_fd_);
    ::close(read_fd_);
    write_fd_ = read_fd_ = -1;
    int status = 0;
    if (pid_ > 0 && ::waitpid(pid_, &status, 0) < 0 && errno == ECHILD) pid_ = -1;
    pid_ = -1;
  }

  std::uint64_t next_generation() { return ++generation_; }
  std::uint64_t generation() const { return generation_; }

 private:
  void send_line(const std::string& payload) {
    std::string data = payload + "\n";
    const char* p = data.data();
    std::size_t left = data.size();
    while (left > 0) {
      const ssize_t written = ::write(write_fd_, p, left);
      if (written < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("write to model server failed: ") + std::strerror(errno));
      }
      p += written;
      left -= static_cast<std::size_t>(written);
    }
  }

  std::string read_line() {
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[65536];
      const ssize_t got = ::read(read_fd_, chunk, sizeof(chunk));
      if (got < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("read from model server failed: ") + std::strerror(errno));
      }
      if (got == 0) throw TransportError("model server closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(got));
    }
  }

  std::mutex mutex_;
  pid_t pid_ = -1;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::string buffer_;
  std::uint64_t generation_ = 0;
};

namespace {

// Ignore SIGPIPE so a dead server surfaces as a write error.
struct IgnoreSigpipe {
  IgnoreSigpipe() { ::signal(SIGPIPE, SIG_IGN); }
};

class BridgeModel final : public FittedModel {
 public:
  BridgeModel(std::shared_ptr<BridgeConnection> connection, json fit_message, std::vector<std::string> classes,
              Eigen::Index width)
      : connection_(std::move(connection)),
        fit_message_(std::move(fit_message)),
        classes_(std::move(classes)),
        width_(width) {
    fit();
  }

  const std::vector<std::string>& classes() const override { return classes_; }
  Eigen::Index width() const override { return width_; }

  Eigen::MatrixXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& probes) override {
    if (probes.cols() != width_)
      throw ConfigError("probe width " + std::to_string(probes.cols()) + " does not match context width " +
                        std::to_string(width_));
    // The server keeps a single fitted context; refit if another handle replaced it.
    if (connection_->generation() != generation_) fit();
    json rows = json::array();
    for (Eigen::Index r = 0; r < probes.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < probes.cols(); ++c) row.push_back(probes(r, c));
      rows.push_back(std::move(row));
    }
    const json reply = connection_->request(json{{"op", "predict"}, {"rows", std::move(rows)}});
    if (!reply.contains("probs") || !reply["probs"].is_array())
      throw TransportError("predict reply lacks \"probs\"");
    const auto& probs = reply["probs"];
    if (probs.size() != static_cast<std::size_t>(probes.rows()))
      throw TransportError("predict reply has " + std::to_string(probs.size()) + " rows, expected " +
                           std::to_string(probes.rows()));
    const auto class_count = static_cast<Eigen::Index>(classes_.size());
    Eigen::MatrixXd out(probes.rows(), class_count);
    for (Eigen::Index r = 0; r < probes.rows(); ++r) {
      const auto& row = probs[static_cast<std::size_t>(r)];
      if (row.is_null()) {
        out.row(r).setConstant(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      if (!row.is_array() || row.size() != classes_.size())
        throw TransportError("predict reply row " + std::to_string(r) + " does not hold " +
                             std::to_string(classes_.size()) + " probabilities");
      for (Eigen::Index c = 0; c < class_count; ++c) {
        const auto& v = row[static_cast<std::size_t>(c)];
        if (v.is_null()) {
          out(r, c) = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        if (!v.is_number()) throw TransportError("non-numeric probability in predict reply");
        const double p = v.get<double>();
        if (!(p >= 0.0 && p <= 1.0)) throw TransportError("probability outside [0,1] in predict reply");
        out(r, c) = p;
      }
      if (!out.row(r).hasNaN() && std::abs(out.row(r).sum() - 1.0) > 1e-9)
        throw TransportError("predict reply row " + std::to_string(r) + " does not sum to 1");
    }
    return out;
  }

 private:
  void fit() {
    connection_->request(fit_message_);
    generation_ = connection_->next_generation();
  }

  std::shared_ptr<BridgeConnection> connection_;
  json fit_message_;
  std::vector<std::string> classes_;
  Eigen::Index width_;
  std::uint64_t generation_ = 0;
};

}  // namespace

BridgeBackend::BridgeBackend(std::string command) {
  static IgnoreSigpipe ignore_sigpipe;
  connection_ = std::make_shared<BridgeConnection>(command);
  const json reply = connection_->request(json{{"op", "hello"}, {"version", 1}});
  name_ = "bridge";
  if (reply.contains("name") && reply["name"].is_string()) name_ += ":" + reply["name"].get<std::string>();
}

BridgeBackend::~BridgeBackend() { close(); }

void BridgeBackend::close() {
  if (connection_) connection_->close();
}

std::string BridgeBackend::name() const { return name_; }

std::unique_ptr<FittedModel> BridgeBackend::fit_context(const Dataset& context, const std::vector<std::string>& labels) {
  if (labels.empty() || context.row_count() == 0) throw DataError("empty context");
  if (static_cast<int>(labels.size()) != context.row_count())
    throw DataError("context has " + std::to_string(context.row_count()) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  std::vector<std::string> classes;
  for (const auto& label : labels)
    if (std::find(classes.begin(), classes.end(), label) == classes.end()) classes.push_back(label);

  const TextTable table = context.to_table();
  json columns = table.columns;
  json rows = table.rows;
  // Category lists fix the probe column layout even when a category is absent from rows.
  json categories = json::array();
  for (const auto& def : context.universe().features()) categories.push_back(def.categories);
  json message = {{"op", "fit"}, {"columns", std::move(columns)}, {"rows", std::move(rows)},
                  {"categories", std::move(categories)}, {"target_classes", classes}, {"labels", labels}};
  return std::make_unique<BridgeModel>(connection_, std::move(message), std::move(classes),
                                       context.universe().item_count());
}

}  // namespace arl
