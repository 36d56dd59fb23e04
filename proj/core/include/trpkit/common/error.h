// Copyright 2026 The trpkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef TRPKIT_COMMON_ERROR_H_
#define TRPKIT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace trpkit {

// Broad failure classes. The command-line front end maps each one to a
// distinct process exit code.
enum class ErrorKind {
  kConfig,     // invalid argument, configuration or shape mismatch
  kIo,         // missing/unreadable/corrupt file
  kNumerical,  // non-convergence or non-finite values
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &message)
      : Error(ErrorKind::kConfig, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &message)
      : Error(ErrorKind::kIo, message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &message, double residual = 0.0)
      : Error(ErrorKind::kNumerical, message), residual_(residual) {}

  // Off-diagonal residual at the point of failure, when meaningful.
  double residual() const { return residual_; }

 private:
  double residual_;
};

const char *ErrorKindName(ErrorKind kind);

}  // namespace trpkit

#endif  // TRPKIT_COMMON_ERROR_H_
