// Copyright 2026 The renyikw Authors
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

#ifndef RENYIKW_TYPES_HPP
#define RENYIKW_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace renyikw {

template <typename Real = double>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real = double>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real = double>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

/// Ordered subsystem dimensions of a composite Hilbert space.
using Dims = std::vector<std::size_t>;

inline std::size_t product(const Dims& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

enum class ErrorKind {
  NonHermitian,
  InvalidAlpha,
  DimMismatch,
  InvalidState,
  InvalidRank,
  IncompleteKraus,
  TooFewOutcomes,
  SingularNormalizer,
  NonFiniteObjective,
  SingletonEnsemble,
  InvalidInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::IncompleteKraus: return "IncompleteKraus";
    case ErrorKind::TooFewOutcomes: return "TooFewOutcomes";
    case ErrorKind::SingularNormalizer: return "SingularNormalizer";
    case ErrorKind::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorKind::SingletonEnsemble: return "SingletonEnsemble";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Validation errors (bad user input) as opposed to numerical failures.
inline bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidAlpha:
    case ErrorKind::DimMismatch:
    case ErrorKind::InvalidRank:
    case ErrorKind::TooFewOutcomes:
    case ErrorKind::SingletonEnsemble:
    case ErrorKind::InvalidInput:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace renyikw

#endif  // RENYIKW_TYPES_HPP
