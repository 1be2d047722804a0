#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace canon {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace canon
