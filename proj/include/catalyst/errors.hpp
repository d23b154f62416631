// Copyright 2026 The catalyst-kit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace catalyst {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the density-matrix, unitary or distribution invariants.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidChannel : public Error {
 public:
  using Error::Error;
};

/// The environment marginal depends on the input (the residue test failed).
class NotRandomnessUtilizing : public Error {
 public:
  NotRandomnessUtilizing(const std::string& what, double independence_error)
      : Error(what), independence_error_(independence_error) {}
  double independence_error() const { return independence_error_; }

 private:
  double independence_error_;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSource : public Error {
 public:
  using Error::Error;
};

class NotControlled : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double final_defect)
      : Error(what), final_defect_(final_defect) {}
  double final_defect() const { return final_defect_; }

 private:
  double final_defect_;
};

class DecompositionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace catalyst
