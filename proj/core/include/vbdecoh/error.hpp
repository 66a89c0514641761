/* Copyright 2026 The vbdecoh Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace vbdecoh {

// All library failures derive from Error. The CLI maps ConfigError to exit
// code 2 and NumericalError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or missing user input (unknown key, negative temperature, ...).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  explicit ConfigError(const std::string& what) : Error(what) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operand dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Requested problem is larger than the engine is allowed to build.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Coincident positions where a 1/r^3 coupling is evaluated.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Generated lattice patch does not contain the requested sites.
class LatticeExtentError : public Error {
 public:
  using Error::Error;
};

// Quadrature, root finding or fitting did not converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace vbdecoh
