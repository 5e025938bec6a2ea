// Copyright 2026 The mmot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mmot {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (rationals, JSON documents, reward expressions).
/// `pointer` is a JSON pointer into the offending document when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::string pointer = {})
      : Error(pointer.empty() ? message : pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Mathematical precondition failures. The CLI maps these to exit code 2.
class MathError : public Error {
 public:
  using Error::Error;
};

class NegativeWeight : public MathError {
 public:
  using MathError::MathError;
};

class NotInConvexOrder : public MathError {
 public:
  using MathError::MathError;
};

class NotInPositiveConvexOrder : public MathError {
 public:
  using MathError::MathError;
};

class MarginalMismatch : public MathError {
 public:
  using MathError::MathError;
};

class NotMartingale : public MathError {
 public:
  using MathError::MathError;
};

class Infeasible : public MathError {
 public:
  using MathError::MathError;
};

class Unbounded : public MathError {
 public:
  using MathError::MathError;
};

/// A construction would exceed its configured path cap.
class PathLimitExceeded : public MathError {
 public:
  using MathError::MathError;
};

/// An internal invariant that the theory guarantees did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmot
