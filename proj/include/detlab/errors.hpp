// Copyright 2026 The detlab Authors
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

#ifndef DETLAB_ERRORS_HPP_
#define DETLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace detlab {

/// Base class of all detlab exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: non-finite values, dimension mismatch, invalid parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the admissible domain: singular radii, vanishing
/// denominators, inadmissible profile parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a capability the object does not have (missing
/// derivative, primitive, Hessian, or analytically known image region).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace detlab

#endif  // DETLAB_ERRORS_HPP_
