// Copyright 2026 The oceval Authors. All Rights Reserved.
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

#ifndef OCEVAL_ERRORS_H_
#define OCEVAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace oceval {

// Root of every error the library raises on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or an ill-posed problem (e.g. beta outside [0, 1],
// unbalanced supplies and demands).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed numeric input such as degenerate boxes, NaN or negative costs.
class InputError : public Error {
 public:
  using Error::Error;
};

// Bad command-line usage or an unknown option value.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A file could not be parsed or does not have the expected structure.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid data that violates a semantic rule (dangling ids,
// out-of-range scores, mismatched coverage between files).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace oceval

#endif  // OCEVAL_ERRORS_H_
