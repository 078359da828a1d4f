// Copyright 2026 The fairpar Authors
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

namespace fairpar {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad dimensions, class mismatch, indices
// out of range, incomplete allocations where a complete one is required.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A guard cap (enumeration size, grid size) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Exact integer arithmetic would not fit the available width.
class Overflow : public Error {
 public:
  using Error::Error;
};

// A min-plus closure found a negative cycle.
class NegativeCycle : public Error {
 public:
  using Error::Error;
};

// No payment vector makes the allocation envy-free.
class NotEnvyFreeable : public Error {
 public:
  using Error::Error;
};

// Two writers hit the same cell in one synchronous step.
class CrewViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fairpar
