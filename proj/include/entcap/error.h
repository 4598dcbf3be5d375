// Copyright 2026 The entcap Authors.
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

#ifndef ENTCAP_ERROR_H_
#define ENTCAP_ERROR_H_

#include <stdexcept>
#include <string>

namespace entcap {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not follow its file format. Carries the offending line when
// known (1-based, 0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line = 0,
             const std::string &file = "")
      : Error(Format(message, line, file)), line_(line) {}

  int line() const { return line_; }

 private:
  static std::string Format(const std::string &message, int line,
                            const std::string &file) {
    std::string where = file;
    if (line > 0) where += (where.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? message : where + ": " + message;
  }

  int line_;
};

// Well-formed input whose values are outside the accepted vocabulary.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A dependency parse or mention layer violates its tree/span invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Numeric preconditions violated, e.g. corrupted co-occurrence statistics.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search would exceed the configured limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Caller broke an API contract (e.g. assignment for a non-slot position).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace entcap

#endif  // ENTCAP_ERROR_H_
