// Copyright 2026 The vidseg Authors. All Rights Reserved.
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

#ifndef VIDSEG_ERRORS_HPP
#define VIDSEG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vidseg {

// Malformed or inconsistent caller-supplied data (sizes, ranges, missing frames).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A box or window reaching outside the image it indexes.
class BoundsError : public InputError {
 public:
  using InputError::InputError;
};

// A file or byte stream that does not follow its declared format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search whose state space exceeds the supported limit.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vidseg

#endif  // VIDSEG_ERRORS_HPP
