#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fibbench/bigint.hpp"

namespace fibbench {

// Floating-point constants shared by the closed-form algorithms. kPhi is the
// golden ratio (1+sqrt(5))/2, kPsi its conjugate root of x^2 = x + 1.
inline const double kSqrt5 = std::sqrt(5.0);
inline const double kPhi = (1.0 + kSqrt5) / 2.0;
inline const double kPsi = (1.0 - kSqrt5) / 2.0;

/// A binary64 value that records overflow instead of silently propagating
/// infinities. `value` is finite whenever `overflowed` is false.
struct Float64 {
    double value = 0.0;
    bool overflowed = false;
};

/// a^n by repeated squaring over the bits of n. Overflow out of binary64
/// range is reported through the `overflowed` flag; the caller decides
/// whether that is fatal.
Float64 num_pow_iter(double base, std::uint64_t exponent);

/// Thrown when a float that must be rounded to an integer is inf or NaN.
class NotFiniteError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Nearest integer to x, exact .5 ties rounded away from zero.
/// Throws NotFiniteError for inf/NaN (float overflow upstream).
BigInt round_half_away(double x);

/// Negafibonacci sign adjustment: F_{-n} = (-1)^{n+1} F_n, given F_n.
BigInt negafib(std::uint64_t n, BigInt fib_n);

/// Thrown by guarded recursive helpers when the configured recursion depth
/// is exhausted. Algorithms convert this into a Failed outcome.
class DepthLimitError : public std::runtime_error {
public:
    DepthLimitError() : std::runtime_error("recursion depth limit exceeded") {}
};

/// Explicit recursion depth budget. Native stack overflow is not portably
/// catchable, so recursive algorithms charge every frame against one of
/// these and fail with a first-class error instead.
class DepthGuard {
public:
    explicit DepthGuard(int limit) : remaining_(limit) {}

    void enter() {
        if (remaining_ <= 0) {
            throw DepthLimitError();
        }
        --remaining_;
    }
    void leave() { ++remaining_; }

private:
    int remaining_;
};

/// RAII frame marker for DepthGuard.
class DepthScope {
public:
    explicit DepthScope(DepthGuard& guard) : guard_(guard) { guard_.enter(); }
    ~DepthScope() { guard_.leave(); }
    DepthScope(const DepthScope&) = delete;
    DepthScope& operator=(const DepthScope&) = delete;

private:
    DepthGuard& guard_;
};

/// Row-major 2x2 matrix of big integers.
struct Mat2 {
    BigInt m00, m01, m10, m11;

    static Mat2 identity() { return {1, 0, 0, 1}; }

    /// The Q matrix [[1,1],[1,0]]; its (n-1)th power packs F_n, F_{n-1}, F_{n-2}.
    static Mat2 q() { return {1, 1, 1, 0}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Full 2x2 product: 8 multiplications, 4 additions.
Mat2 mat_mul(const Mat2& a, const Mat2& b);

/// mat_mul(a, Q) exploiting Q's structure: 2 additions, no multiplications.
Mat2 mat_mul_opt(const Mat2& a);

/// m^n by recursive repeated squaring; m^0 is the identity. Frames are
/// charged against `guard` when one is supplied (depth ~ lg n).
Mat2 mat_pow_recur(const Mat2& m, std::uint64_t n, DepthGuard* guard = nullptr);

/// m^n by iterative repeated squaring; pointwise equal to mat_pow_recur.
Mat2 mat_pow_iter(const Mat2& m, std::uint64_t n);

}  // namespace fibbench
