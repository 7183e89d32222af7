// Copyright 2026 The nolabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOLABEL_COMMON_HPP
#define NOLABEL_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nolabel {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Amplitudes and norms below this are treated as exact zeros.
inline constexpr double kZeroTolerance = 1e-12;
// Equality tolerance for values that went through floating-point arithmetic.
inline constexpr double kEqualTolerance = 1e-9;

enum class ErrorCode {
  kStructural,
  kBasisMismatch,
  kDegenerateState,
  kNoParticleInRegion,
  kDeformationUndefined,
  kMeasureUndefined,
  kNoCoincidence,
  kPhaseUndefined,
  kChannelUndefined,
  kInvalidArgument,
  kConfig,
  kIo,
};

inline const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kBasisMismatch: return "basis-mismatch";
    case ErrorCode::kDegenerateState: return "degenerate-state";
    case ErrorCode::kNoParticleInRegion: return "no-particle-in-region";
    case ErrorCode::kDeformationUndefined: return "deformation-undefined";
    case ErrorCode::kMeasureUndefined: return "measure-undefined";
    case ErrorCode::kNoCoincidence: return "no-coincidence";
    case ErrorCode::kPhaseUndefined: return "phase-undefined";
    case ErrorCode::kChannelUndefined: return "channel-undefined";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_zero(Complex z, double tol = kZeroTolerance) { return std::abs(z) < tol; }

}  // namespace nolabel

#endif  // NOLABEL_COMMON_HPP
