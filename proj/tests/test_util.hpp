#pragma once

#include <complex>
#include <doctest.h>

#include "p33/grassmann.hpp"

namespace p33::test {

inline bool near(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

#define CHECK_NEAR(a, b, tol) CHECK(::p33::test::near((a), (b), (tol)))

}  // namespace p33::test
