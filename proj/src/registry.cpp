#include "fibbench/registry.hpp"

#include <array>

namespace fibbench {
namespace {

constexpr std::uint64_t kFib1SafeCeiling = 40;     // exponential time beyond this
constexpr std::uint64_t kFib2SafeCeiling = 1000;   // default recursion budget
constexpr std::uint64_t kFloat64SafeCeiling = 1474;  // phi^n leaves binary64 range

constexpr std::array<AlgorithmDescriptor, kAlgorithmCount> kDescriptors{{
    {AlgoId::Fib1, "fib1", ExactnessClass::Exact, RecursionClass::Recursive,
     TimeClass::ExponentialPhiN, TimeClass::ExponentialPhiN, kFib1SafeCeiling},
    {AlgoId::Fib2, "fib2", ExactnessClass::Exact, RecursionClass::Recursive,
     TimeClass::Linear, TimeClass::Quadratic, kFib2SafeCeiling},
    {AlgoId::Fib3, "fib3", ExactnessClass::Exact, RecursionClass::Iterative,
     TimeClass::Linear, TimeClass::Quadratic, std::nullopt},
    {AlgoId::Fib4, "fib4", ExactnessClass::ApproximateBeyondThreshold,
     RecursionClass::ClosedForm, TimeClass::Constant, TimeClass::Constant,
     kFloat64SafeCeiling},
    {AlgoId::Fib5, "fib5", ExactnessClass::ApproximateBeyondThreshold,
     RecursionClass::ClosedForm, TimeClass::Constant, TimeClass::Constant,
     kFloat64SafeCeiling},
    {AlgoId::Fib6, "fib6", ExactnessClass::Exact, RecursionClass::Iterative,
     TimeClass::Linear, TimeClass::Quadratic, std::nullopt},
    {AlgoId::Fib7, "fib7", ExactnessClass::Exact, RecursionClass::Recursive,
     TimeClass::LogN, TimeClass::Linear, std::nullopt},
    {AlgoId::Fib8, "fib8", ExactnessClass::Exact, RecursionClass::Iterative,
     TimeClass::LogN, TimeClass::Linear, std::nullopt},
    {AlgoId::Fib9, "fib9", ExactnessClass::Exact, RecursionClass::Recursive,
     TimeClass::LogN, TimeClass::Linear, std::nullopt},
    {AlgoId::Fib10, "fib10", ExactnessClass::Exact, RecursionClass::Iterative,
     TimeClass::LogN, TimeClass::Linear, std::nullopt},
    {AlgoId::Fib11, "fib11", ExactnessClass::Exact, RecursionClass::Iterative,
     TimeClass::LogN, TimeClass::Linear, std::nullopt},
    {AlgoId::Fib12, "fib12", ExactnessClass::ApproximateBeyondThreshold,
     RecursionClass::Iterative, TimeClass::Linear, TimeClass::Quadratic,
     kFloat64SafeCeiling},
}};

}  // namespace

Registry& Registry::instance() {
    static Registry registry;
    return registry;
}

std::span<const AlgorithmDescriptor> Registry::descriptors() const {
    return kDescriptors;
}

const AlgorithmDescriptor& Registry::descriptor(AlgoId id) const {
    return kDescriptors[static_cast<std::size_t>(id)];
}

std::optional<std::uint64_t> Registry::exact_through(AlgoId id) const {
    std::lock_guard lock(mutex_);
    return exact_through_[static_cast<std::size_t>(id)];
}

void Registry::set_exact_through(AlgoId id, std::uint64_t n) {
    std::lock_guard lock(mutex_);
    auto& slot = exact_through_[static_cast<std::size_t>(id)];
    if (!slot.has_value()) {
        slot = n;
    }
}

std::string_view to_string(AlgoId id) {
    return kDescriptors[static_cast<std::size_t>(id)].name;
}

const char* to_string(TimeClass t) {
    switch (t) {
        case TimeClass::Constant: return "O(1)";
        case TimeClass::LogN: return "O(lg n)";
        case TimeClass::Linear: return "O(n)";
        case TimeClass::Quadratic: return "O(n^2)";
        case TimeClass::ExponentialPhiN: return "O(phi^n)";
    }
    return "?";
}

std::optional<AlgoId> parse_algo_id(std::string_view name) {
    for (const auto& d : kDescriptors) {
        if (d.name == name) {
            return d.id;
        }
    }
    return std::nullopt;
}

}  // namespace fibbench
