#include "fibbench/core_helpers.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace fibbench {

Float64 num_pow_iter(double base, std::uint64_t exponent) {
    double result = 1.0;
    double square = base;
    while (exponent != 0) {
        if (exponent & 1u) {
            result *= square;
        }
        exponent >>= 1u;
        if (exponent != 0) {
            square *= square;
        }
    }
    if (!std::isfinite(result)) {
        return {result, true};
    }
    return {result, false};
}

BigInt round_half_away(double x) {
    if (!std::isfinite(x)) {
        throw NotFiniteError("round_half_away: argument is not finite");
    }
    // std::round already ties away from zero; the result is an integral
    // double, so the BigInt conversion below is exact.
    return BigInt(std::round(x));
}

BigInt negafib(std::uint64_t n, BigInt fib_n) {
    if (n % 2 == 0) {
        return -std::move(fib_n);
    }
    return fib_n;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {
        a.m00 * b.m00 + a.m01 * b.m10,
        a.m00 * b.m01 + a.m01 * b.m11,
        a.m10 * b.m00 + a.m11 * b.m10,
        a.m10 * b.m01 + a.m11 * b.m11,
    };
}

Mat2 mat_mul_opt(const Mat2& a) {
    return {a.m00 + a.m01, a.m00, a.m10 + a.m11, a.m10};
}

Mat2 mat_pow_recur(const Mat2& m, std::uint64_t n, DepthGuard* guard) {
    std::optional<DepthScope> frame;
    if (guard != nullptr) {
        frame.emplace(*guard);
    }
    if (n == 0) {
        return Mat2::identity();
    }
    Mat2 half = mat_pow_recur(m, n / 2, guard);
    Mat2 squared = mat_mul(half, half);
    if (n % 2 == 1) {
        return mat_mul(squared, m);
    }
    return squared;
}

Mat2 mat_pow_iter(const Mat2& m, std::uint64_t n) {
    Mat2 result = Mat2::identity();
    Mat2 square = m;
    while (n != 0) {
        if (n & 1u) {
            result = mat_mul(result, square);
        }
        n >>= 1u;
        if (n != 0) {
            square = mat_mul(square, square);
        }
    }
    return result;
}

}  // namespace fibbench
