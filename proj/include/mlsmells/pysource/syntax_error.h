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

#ifndef MLSMELLS_PYSOURCE_SYNTAX_ERROR_H_
#define MLSMELLS_PYSOURCE_SYNTAX_ERROR_H_

#include <string>
#include <utility>
#include <variant>

namespace mlsmells::pysource {

struct SyntaxError {
  int line = 0;
  std::string message;

  friend bool operator==(const SyntaxError&, const SyntaxError&) = default;
};

// Either a value or the syntax error that prevented producing it. Syntax
// errors are an expected outcome when mining real repositories, so they are
// carried as values rather than thrown across the API.
template <typename T>
class SyntaxResult {
 public:
  SyntaxResult(T value) : v_(std::move(value)) {}  // NOLINT
  SyntaxResult(SyntaxError error) : v_(std::move(error)) {}  // NOLINT

  bool ok() const { return std::holds_alternative<T>(v_); }
  const SyntaxError& error() const { return std::get<SyntaxError>(v_); }
  T& value() & { return std::get<T>(v_); }
  const T& value() const& { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, SyntaxError> v_;
};

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_SYNTAX_ERROR_H_
