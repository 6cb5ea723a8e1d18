// Copyright 2026 The Argsup Authors.
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

#ifndef ARGSUP_ERROR_H_
#define ARGSUP_ERROR_H_

#include <stdexcept>
#include <string>

namespace argsup {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data (corpus, lexicon, model or config files) violates its schema or
// an invariant of the data model.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition does not hold (bad argument, empty input...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace argsup

#endif  // ARGSUP_ERROR_H_
