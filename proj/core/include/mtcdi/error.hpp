// Copyright 2026 The mtcdi Authors
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

#ifndef MTCDI_ERROR_HPP_
#define MTCDI_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mtcdi {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a precondition: bad slot, unknown device, empty selector list.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Generator or profile configuration that cannot be realized.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data (dataset file, model payload) is malformed or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

// A computed quantity left its provable range.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtcdi

#endif  // MTCDI_ERROR_HPP_
