// Copyright 2026 The SiteQA Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace siteqa {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data or arguments. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed line in a line-oriented input file (corpus JSON-lines,
// N-Triples). Line and column are 1-based; column is 0 when unknown.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : ValidationError("line " + std::to_string(line) +
                        (column ? ", column " + std::to_string(column) : std::string()) +
                        ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// The remote reader could not be reached or timed out.
class ReaderUnavailable : public Error {
 public:
  explicit ReaderUnavailable(const std::string& detail)
      : Error("reader unavailable: " + detail) {}
};

// The remote reader answered with something that violates the span contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace siteqa
