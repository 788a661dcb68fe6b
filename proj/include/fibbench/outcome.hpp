#pragma once

#include <optional>
#include <utility>

#include "fibbench/bigint.hpp"

namespace fibbench {

enum class FibStatus { Exact, Approximate, Failed };

enum class FibFailure { RecursionDepthExceeded, FloatOverflow };

const char* to_string(FibStatus status);
const char* to_string(FibFailure failure);

/// Result of one algorithm invocation. `value` is engaged exactly when the
/// status is not Failed; `failure` is engaged exactly when it is.
struct FibOutcome {
    FibStatus status = FibStatus::Failed;
    std::optional<BigInt> value;
    std::optional<FibFailure> failure;

    static FibOutcome exact(BigInt v) {
        return {FibStatus::Exact, std::move(v), std::nullopt};
    }
    static FibOutcome approximate(BigInt v) {
        return {FibStatus::Approximate, std::move(v), std::nullopt};
    }
    static FibOutcome failed(FibFailure f) {
        return {FibStatus::Failed, std::nullopt, f};
    }

    bool ok() const { return status != FibStatus::Failed; }
};

}  // namespace fibbench
