// Copyright 2026 The Circuitum Authors
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

#include <stdexcept>
#include <string>

namespace circuitum {

// Machine-readable error vocabulary. The token spelling (see err_name) is a
// stable interface: the CLI prints it and the JSON output carries it.
#define CIRCUITUM_ERR_LIST(X)                                                  \
  X(CYCLE)                                                                     \
  X(ISOLATED_NODE)                                                             \
  X(BAD_INPUT_DEGREE)                                                          \
  X(BAD_OUTPUT_DEGREE)                                                         \
  X(BAD_GATE_DEGREE)                                                           \
  X(EDGE_LIST_MISMATCH)                                                        \
  X(BAD_TIMELINES)                                                             \
  X(BAD_RANK)                                                                  \
  X(UNKNOWN_NODE)                                                              \
  X(UNKNOWN_EDGE)                                                              \
  X(UNKNOWN_GATE)                                                              \
  X(NOT_BALANCED)                                                              \
  X(NOT_BALANCED_GATE)                                                         \
  X(NO_TIMELINES)                                                              \
  X(NOT_CONVEX)                                                                \
  X(NOT_CONVEX_BLOCK)                                                          \
  X(NOT_COHERENT)                                                              \
  X(WIDTH_MISMATCH)                                                            \
  X(EMPTY_SEQUENCE)                                                            \
  X(TOO_MANY)                                                                  \
  X(NOT_A_PERMUTATION)                                                         \
  X(ELEMENT_MISMATCH)                                                          \
  X(INCOHERENT_INPUT)                                                          \
  X(INVALID_POSET)                                                             \
  X(ARITY_MISMATCH)                                                            \
  X(MISSING_FUNCTION)                                                          \
  X(BAD_EDGE_MAP)                                                              \
  X(CROSS_CHECK_FAILED)                                                        \
  X(BAD_INPUT_LENGTH)                                                          \
  X(WIDTH_TOO_LARGE)                                                           \
  X(DIM_MISMATCH)                                                              \
  X(NOT_UNITARY)                                                               \
  X(NOT_ANTICHAIN)                                                             \
  X(NOT_ANTICHAIN_BLOCK)                                                       \
  X(UNKNOWN_BUILTIN)                                                           \
  X(KIND_MISMATCH)                                                             \
  X(BAD_STATE)

enum class Err {
#define CIRCUITUM_ERR_ENUM(name) name,
  CIRCUITUM_ERR_LIST(CIRCUITUM_ERR_ENUM)
#undef CIRCUITUM_ERR_ENUM
};

const char* err_name(Err code);

/// Exception carrying one of the error codes above plus a human message.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace circuitum
