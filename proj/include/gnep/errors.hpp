// Copyright 2026 The gnep Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gnep {

// Base class for every error the toolkit raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical failure in an expression. position() is the 0-based
// byte offset into the input where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Unbound variable, domain error (log/sqrt/pow), division by zero, or a
// non-finite final value during expression evaluation.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Structurally ill-formed model: dimension mismatch, duplicate labels,
// out-of-range variable references, incomplete payoff tables, bad files.
class ModelError : public Error {
 public:
  using Error::Error;
};

// A player has no admissible decision at the queried global decision.
class EmptySliceError : public Error {
 public:
  EmptySliceError(int player, const std::string& what)
      : Error(what), player_(player) {}
  int player() const { return player_; }

 private:
  int player_;
};

// Operation not defined for this economy: enumeration over continuous spaces,
// certificates whose preconditions fail, probes on unsupported geometry.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace gnep
