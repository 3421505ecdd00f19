// Copyright 2026 The flowjam Authors.
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

#ifndef FLOWJAM_ERRORS_HPP_
#define FLOWJAM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace flowjam {

enum class ErrorKind {
  kInvalidInput,
  kCycleDetected,
  kPathBudgetExceeded,
  kNotAFlow,
  kNotAPath,
  kInfeasible,
  kNumericalFailure,
  kBadDistribution,
  kInfeasibleAtKappa,
  kDegenerateInstance,
  kGenerationFailed,
  kInvalidFormula,
  kParseError,
  kSchemaError,
};

const char* ErrorKindName(ErrorKind kind);

// Every failure raised by the library is an Error; the kind tells callers
// (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class PathBudgetExceeded : public Error {
 public:
  PathBudgetExceeded(std::size_t reached, std::size_t cap)
      : Error(ErrorKind::kPathBudgetExceeded,
              "more than " + std::to_string(cap) + " s-t paths (reached " +
                  std::to_string(reached) + ")"),
        reached_(reached) {}

  std::size_t reached() const { return reached_; }

 private:
  std::size_t reached_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(ErrorKind::kSchemaError, pointer + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace flowjam

#endif  // FLOWJAM_ERRORS_HPP_
