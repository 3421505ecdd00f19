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


#include "flowjam/errors.hpp"

namespace flowjam {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kCycleDetected: return "CycleDetected";
    case ErrorKind::kPathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorKind::kNotAFlow: return "NotAFlow";
    case ErrorKind::kNotAPath: return "NotAPath";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kNumericalFailure: return "NumericalFailure";
    case ErrorKind::kBadDistribution: return "BadDistribution";
    case ErrorKind::kInfeasibleAtKappa: return "InfeasibleAtKappa";
    case ErrorKind::kDegenerateInstance: return "DegenerateInstance";
    case ErrorKind::kGenerationFailed: return "GenerationFailed";
    case ErrorKind::kInvalidFormula: return "InvalidFormula";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace flowjam
