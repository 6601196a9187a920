// Copyright 2026 The softpulse Authors
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

namespace softpulse {

// All library failures derive from Error so front ends can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitian : public Error {
 public:
  using Error::Error;
};
class ZeroVector : public Error {
 public:
  using Error::Error;
};
class ReductionFailure : public Error {
 public:
  using Error::Error;
};
class NoRoot : public Error {
 public:
  using Error::Error;
};
class InvalidBound : public Error {
 public:
  using Error::Error;
};
class IdentityNotFound : public Error {
 public:
  using Error::Error;
};
class NoBracket : public Error {
 public:
  using Error::Error;
};
class StepTooLarge : public Error {
 public:
  using Error::Error;
};
class NotUnitary : public Error {
 public:
  using Error::Error;
};
class InvalidParams : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace softpulse
