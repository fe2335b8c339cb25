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
#ifndef VIDSEG_EXT_REAL_HPP
#define VIDSEG_EXT_REAL_HPP

#include <ostream>

namespace vidseg {

/// A real number or negative infinity, with infinity carried as a flag rather
/// than a floating sentinel. Multiplication treats -inf as absorbing.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {}  // NOLINT: implicit by intent

  static constexpr ExtReal neg_inf() {
    ExtReal r;
    r.neg_inf_ = true;
    return r;
  }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  constexpr bool is_finite() const { return !neg_inf_; }

  /// Finite value; 0 for -inf (check is_neg_inf first).
  constexpr double value() const { return neg_inf_ ? 0.0 : value_; }

  friend constexpr ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.neg_inf_ || b.neg_inf_) return neg_inf();
    return ExtReal(a.value_ * b.value_);
  }
  ExtReal& operator*=(ExtReal o) { return *this = *this * o; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(ExtReal a, ExtReal b) {
    if (b.neg_inf_) return false;
    if (a.neg_inf_) return true;
    return a.value_ < b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, ExtReal r) {
    return r.neg_inf_ ? (os << "-inf") : (os << r.value_);
  }

 private:
  double value_ = 0.0;
  bool neg_inf_ = false;
};

}  // namespace vidseg

#endif  // VIDSEG_EXT_REAL_HPP
