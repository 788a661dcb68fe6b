#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibbench {

/// Arbitrary-precision signed integer backing all exact Fibonacci values.
using BigInt = boost::multiprecision::cpp_int;

/// Number of bits in the binary representation of |x|; 0 for x == 0.
inline std::size_t bit_length(const BigInt& x) {
    if (x.is_zero()) {
        return 0;
    }
    return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

}  // namespace fibbench
