// Copyright (c) 2026 plclink authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace plclink {

// Minimal expected-style carrier for fallible operations. A Result is either
// a value or an error; accessing the wrong alternative is a programming error.
template <typename T, typename E>
class Result {
 public:
  Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}

  static Result failure(E err) { return Result(fail_tag{}, std::move(err)); }

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() {
    assert(ok());
    return std::get<0>(v_);
  }
  const T& value() const {
    assert(ok());
    return std::get<0>(v_);
  }
  const E& error() const {
    assert(!ok());
    return std::get<1>(v_);
  }

 private:
  struct fail_tag {};
  Result(fail_tag, E err) : v_(std::in_place_index<1>, std::move(err)) {}

  std::variant<T, E> v_;
};

}  // namespace plclink
