// Copyright 2026 The mlsmells Authors.
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

#ifndef MLSMELLS_UTIL_ERRORS_H_
#define MLSMELLS_UTIL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mlsmells {

// Operational failures. Per-file problems during corpus runs are reported as
// diagnostics instead; these are thrown only when an operation as a whole
// cannot proceed.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or corrupt git repository, or a failing git invocation.
class RepoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file (CSV header, config, JSON artifact).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Arguments outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlsmells

#endif  // MLSMELLS_UTIL_ERRORS_H_
