#pragma once

#include <doctest.h>

#include <string>

#include "qgc/scalars.hpp"

namespace doctest {
template <>
struct StringMaker<qgc::Scalar> {
  static String convert(const qgc::Scalar& x) { return x.to_string().c_str(); }
};
}  // namespace doctest
