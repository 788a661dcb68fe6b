#include "fibbench/core_helpers.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "fibbench/oracle.hpp"
#include "test_util.hpp"

using namespace fibbench;

namespace {

// Reference a^n by n explicit multiplications.
double naive_pow(double a, std::uint64_t n) {
    double r = 1.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        r *= a;
    }
    return r;
}

Mat2 brute_force_pow(const Mat2& m, std::uint64_t n) {
    Mat2 r = Mat2::identity();
    for (std::uint64_t i = 0; i < n; ++i) {
        r = mat_mul(r, m);
    }
    return r;
}

}  // namespace

TEST_CASE("constants match the closed-form definitions") {
    CHECK(kPhi == (1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(kPsi == (1.0 - std::sqrt(5.0)) / 2.0);
    CHECK(kPhi == doctest::Approx(1.618033).epsilon(1e-6));
    CHECK(kPsi == doctest::Approx(-0.618033).epsilon(1e-6));
    CHECK(kPhi * kPsi == doctest::Approx(-1.0));  // conjugate roots of x^2=x+1
}

TEST_CASE("num_pow_iter computes exact powers of two") {
    const Float64 r = num_pow_iter(2.0, 10);
    CHECK_FALSE(r.overflowed);
    CHECK(r.value == 1024.0);
}

TEST_CASE("num_pow_iter n=0 is the identity") {
    const Float64 r = num_pow_iter(1.618033988749895, 0);
    CHECK_FALSE(r.overflowed);
    CHECK(r.value == 1.0);
}

TEST_CASE("num_pow_iter matches a naive multiplication loop") {
    const Float64 r = num_pow_iter(1.618033988749895, 11);
    CHECK_FALSE(r.overflowed);
    CHECK(r.value == doctest::Approx(199.0050249987).epsilon(1e-9));
    CHECK(std::abs(r.value - naive_pow(1.618033988749895, 11)) <=
          1e-9 * std::abs(r.value));

    auto rng = test::make_rng();
    std::uniform_real_distribution<double> base_dist(0.5, 2.0);
    std::uniform_int_distribution<std::uint64_t> exp_dist(0, 64);
    for (int i = 0; i < 200; ++i) {
        const double a = base_dist(rng);
        const std::uint64_t n = exp_dist(rng);
        const Float64 got = num_pow_iter(a, n);
        const double want = naive_pow(a, n);
        CHECK_FALSE(got.overflowed);
        CHECK(std::abs(got.value - want) <= 1e-9 * std::abs(want));
    }
}

TEST_CASE("num_pow_iter flags overflow instead of propagating inf") {
    const Float64 r = num_pow_iter(2.0, 5000);
    CHECK(r.overflowed);
    CHECK_FALSE(std::isfinite(r.value));
    // shrinking bases never overflow
    CHECK_FALSE(num_pow_iter(kPsi, 5000).overflowed);
}

TEST_CASE("mat_mul identity and hand-checked Q powers") {
    const Mat2 q = Mat2::q();
    auto rng = test::make_rng(7);
    for (int i = 0; i < 20; ++i) {
        const Mat2 x{test::random_bigint(rng, 128), test::random_bigint(rng, 128),
                     test::random_bigint(rng, 128), test::random_bigint(rng, 128)};
        CHECK(mat_mul(Mat2::identity(), x) == x);
        CHECK(mat_mul(x, Mat2::identity()) == x);
    }
    const Mat2 q2 = mat_mul(q, q);
    CHECK(q2 == Mat2{2, 1, 1, 1});
    CHECK(mat_mul(q2, q) == Mat2{3, 2, 2, 1});
}

TEST_CASE("mat_mul_opt equals multiplication by Q") {
    CHECK(mat_mul_opt(Mat2::identity()) == Mat2::q());
    CHECK(mat_mul_opt(Mat2::q()) == Mat2{2, 1, 1, 1});
    CHECK(mat_mul_opt(Mat2{5, 3, 3, 2}) == Mat2{8, 5, 5, 3});

    auto rng = test::make_rng(11);
    for (int i = 0; i < 50; ++i) {
        const Mat2 m{test::random_bigint(rng, 256), test::random_bigint(rng, 256),
                     test::random_bigint(rng, 256), test::random_bigint(rng, 256)};
        CHECK(mat_mul_opt(m) == mat_mul(m, Mat2::q()));
    }
}

TEST_CASE("mat_pow_recur base cases and small powers") {
    const Mat2 q = Mat2::q();
    CHECK(mat_pow_recur(q, 0) == Mat2::identity());
    CHECK(mat_pow_recur(q, 5) == Mat2{8, 5, 5, 3});
    CHECK(mat_pow_recur(q, 5) == brute_force_pow(q, 5));

    // 64 sequential optimized multiplies applied to the identity
    Mat2 iterated = Mat2::identity();
    for (int i = 0; i < 64; ++i) {
        iterated = mat_mul_opt(iterated);
    }
    CHECK(mat_pow_recur(q, 64) == iterated);
}

TEST_CASE("mat_pow_iter base cases and forced associativity") {
    const Mat2 q = Mat2::q();
    CHECK(mat_pow_iter(q, 1) == q);
    CHECK(mat_pow_iter(q, 5) == Mat2{8, 5, 5, 3});

    auto rng = test::make_rng(13);
    for (int i = 0; i < 20; ++i) {
        const Mat2 m{test::random_bigint(rng, 96), test::random_bigint(rng, 96),
                     test::random_bigint(rng, 96), test::random_bigint(rng, 96)};
        CHECK(mat_pow_iter(m, 3) == mat_mul(mat_mul(m, m), m));
    }
}

TEST_CASE("both matrix power routes agree with brute force on Q") {
    const Mat2 q = Mat2::q();
    Mat2 brute = Mat2::identity();
    for (std::uint64_t n = 0; n <= 200; ++n) {
        const Mat2 it = mat_pow_iter(q, n);
        CHECK(it == mat_pow_recur(q, n));
        CHECK(it == brute);
        if (n >= 1) {
            // powers of Q are symmetric and the top-left entry obeys the
            // Fibonacci recurrence across entries
            CHECK(it.m01 == it.m10);
            CHECK(it.m00 == it.m01 + it.m11);
        }
        brute = mat_mul(brute, q);
    }
}

TEST_CASE("the largest entry of a Q power is m00") {
    // fib6/fib7/fib8 read F_n straight from m00 of Q^(n-1)
    for (std::uint64_t n = 2; n <= 100; ++n) {
        const Mat2 p = mat_pow_iter(Mat2::q(), n - 1);
        CHECK(p.m00 >= p.m01);
        CHECK(p.m00 >= p.m10);
        CHECK(p.m00 >= p.m11);
    }
}

TEST_CASE("matrix powers of Q pack Fibonacci numbers") {
    const Mat2 q = Mat2::q();
    BigInt f_prev2 = oracle_fib(0);
    BigInt f_prev = oracle_fib(1);
    BigInt f = f_prev + f_prev2;
    for (std::uint64_t n = 2; n <= 400; ++n) {
        const Mat2 p = mat_pow_iter(q, n - 1);
        CHECK(p.m00 == f);
        CHECK(p.m01 == f_prev);
        CHECK(p.m10 == f_prev);
        CHECK(p.m11 == f_prev2);
        f_prev2 = f_prev;
        f_prev = f;
        f = f_prev + f_prev2;
    }
}

TEST_CASE("mat_pow_recur charges the depth guard") {
    DepthGuard tight(3);
    CHECK_THROWS_AS(mat_pow_recur(Mat2::q(), 1024, &tight), DepthLimitError);
    DepthGuard roomy(64);
    CHECK(mat_pow_recur(Mat2::q(), 1024, &roomy) == mat_pow_iter(Mat2::q(), 1024));
}

TEST_CASE("negafib applies the sign rule") {
    CHECK(negafib(1, 1) == 1);    // F_-1 = 1
    CHECK(negafib(2, 1) == -1);   // F_-2 = -1
    CHECK(negafib(0, 0) == 0);

    // sign alternation: F_-n positive iff n odd
    for (std::uint64_t n = 1; n <= 50; ++n) {
        const BigInt value = negafib(n, oracle_fib(n));
        CHECK((n % 2 == 1 ? value > 0 : value < 0));
    }
    // extended recurrence F_{-n} = F_{-n+2} - F_{-n+1}
    const auto f_neg = [](std::uint64_t n) { return negafib(n, oracle_fib(n)); };
    for (std::uint64_t n = 1; n <= 50; ++n) {
        const BigInt lhs = f_neg(n);
        const BigInt rhs =
            (n >= 2 ? f_neg(n - 2) : oracle_fib(2 - n)) -
            (n >= 1 ? f_neg(n - 1) : oracle_fib(1 - n));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("round_half_away basics and tie direction") {
    CHECK(round_half_away(0.4) == 0);
    CHECK(round_half_away(-0.6) == -1);
    CHECK(round_half_away(0.5) == 1);
    CHECK(round_half_away(-0.5) == -1);
    CHECK(round_half_away(2.5) == 3);
    CHECK(round_half_away(-2.5) == -3);
}

TEST_CASE("round_half_away recovers F_11 from the closed form") {
    const double x = std::pow(kPhi, 11.0) / kSqrt5;  // ~88.9977...
    CHECK(round_half_away(x) == 89);
}

TEST_CASE("round_half_away is exact for large integral doubles") {
    const double big = std::ldexp(1.0, 400);
    CHECK(round_half_away(big) == BigInt(1) << 400);
    CHECK(round_half_away(-big) == -(BigInt(1) << 400));
}

TEST_CASE("round_half_away rejects non-finite input") {
    CHECK_THROWS_AS(round_half_away(std::numeric_limits<double>::infinity()),
                    NotFiniteError);
    CHECK_THROWS_AS(round_half_away(-std::numeric_limits<double>::infinity()),
                    NotFiniteError);
    CHECK_THROWS_AS(round_half_away(std::nan("")), NotFiniteError);
}

TEST_CASE("depth guard allows exactly its budget") {
    DepthGuard guard(2);
    DepthScope first(guard);
    {
        DepthScope second(guard);
        CHECK_THROWS_AS((DepthScope{guard}), DepthLimitError);
    }
    // leaving a frame restores budget
    DepthScope again(guard);
}
