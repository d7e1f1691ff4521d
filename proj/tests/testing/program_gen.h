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

#ifndef MLSMELLS_TESTING_PROGRAM_GEN_H_
#define MLSMELLS_TESTING_PROGRAM_GEN_H_

#include <cstdint>
#include <string>

namespace mlsmells::testing {

// Random syntactically valid Python programs for property tests. The output
// never parenthesizes a bare name, call or attribute, so expression start
// positions agree with CPython's ast module.
std::string RandomProgram(uint32_t seed, int statements = 12);

}  // namespace mlsmells::testing

#endif  // MLSMELLS_TESTING_PROGRAM_GEN_H_
