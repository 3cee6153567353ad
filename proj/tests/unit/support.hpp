#pragma once

#include <doctest.h>

#include <ostream>
#include <sstream>
#include <string>

#include "pathauction/rational.hpp"

namespace doctest {
template <>
struct StringMaker<pathauction::Rational> {
  static String convert(const pathauction::Rational& r) { return r.str().c_str(); }
};
}  // namespace doctest

namespace testing {

inline pathauction::Rational q(const char* text) { return pathauction::Rational::parse(text); }

}  // namespace testing
