// Copyright 2026 The efce-dynamics Authors
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

namespace efce {

// Base class for recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed EFGT text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A syntactically valid game that violates a structural invariant (tree
// topology, information-set consistency, perfect recall, chance mass).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical routines that failed to reach their stated tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// NextElement/ObserveUtility called out of alternation.
class CallOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace efce
