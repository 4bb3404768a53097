#pragma once

#include <stdexcept>
#include <string>

namespace bernsum {

// Subset enumeration (or 2^n expansion) would exceed the configured budget.
struct SubsetExplosion : std::runtime_error {
    explicit SubsetExplosion(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a Bernoulli-sum construction the distribution does not have.
struct NotBernoulliSum : std::runtime_error {
    explicit NotBernoulliSum(const std::string& what) : std::runtime_error(what) {}
};

// Shifting a truncated series is not a truncation of the shifted series.
struct TruncationUnsound : std::runtime_error {
    explicit TruncationUnsound(const std::string& what) : std::runtime_error(what) {}
};

struct AlternatingSeriesUnstable : std::runtime_error {
    explicit AlternatingSeriesUnstable(const std::string& what) : std::runtime_error(what) {}
};

// Tail series failed its geometric decay certificate (or term cap).
struct DivergenceSuspected : std::runtime_error {
    explicit DivergenceSuspected(const std::string& what) : std::runtime_error(what) {}
};

struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedKind : std::runtime_error {
    explicit UnsupportedKind(const std::string& what) : std::runtime_error(what) {}
};

// Bad parameters, malformed spec JSON, unparsable numbers.
struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bernsum
