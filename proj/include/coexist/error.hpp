// Copyright 2026 The coexist Authors
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

#ifndef COEXIST_ERROR_HPP_
#define COEXIST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace coexist {

// Base for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates the invariants of the type it was meant to build.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but the quantity does not exist
// (no successful updates, degenerate distributions, off-grid lookups).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A simulation finished its horizon without any channel activity.
class NoProgressError : public Error {
 public:
  using Error::Error;
};

}  // namespace coexist

#endif  // COEXIST_ERROR_HPP_
