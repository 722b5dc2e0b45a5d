// Copyright 2026 The qwalk Authors.
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

#ifndef QWALK_ERROR_HPP_
#define QWALK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qwalk {

// Base class of every error thrown by the library. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid simulation / grid / solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message names the row and column.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Singular normal equations in a linear fit.
class RankError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwalk

#endif  // QWALK_ERROR_HPP_
