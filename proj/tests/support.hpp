// Copyright 2026 The divrit Authors. All Rights Reserved.
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

#ifndef DIVRIT_TESTS_SUPPORT_HPP_
#define DIVRIT_TESTS_SUPPORT_HPP_

#include <doctest.h>

#include <string>

#include "divrit/error.hpp"

namespace divrit::testing {

// mem lamed final-kaf, and the two readings of it.
inline const std::u32string kMlk = U"\u05DE\u05DC\u05DA";
inline const std::u32string kMelekh = U"\u05DE\u05B6\u05DC\u05B6\u05DA\u05B0";
inline const std::u32string kMalakh = U"\u05DE\u05B8\u05DC\u05B7\u05DA\u05B0";

template <typename F>
ErrorCode thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected divrit::Error");
  return ErrorCode::IoError;
}

}  // namespace divrit::testing

#define CHECK_THROWS_CODE(expr, expected) \
  CHECK(::divrit::testing::thrown_code([&] { (void)(expr); }) == (expected))

#endif  // DIVRIT_TESTS_SUPPORT_HPP_
