#pragma once

// 113-bit binary float. Closed-form outage expressions are alternating
// binomial sums whose terms exceed the result by up to ~16 orders of
// magnitude at high transmit power; they are evaluated in this type.
#include <boost/multiprecision/float128.hpp>

namespace fdrs {

using quad = boost::multiprecision::float128;

}  // namespace fdrs
