#pragma once

#include <stdexcept>
#include <string>

namespace moran {

struct InvalidSequence : std::runtime_error {
    int index;
    InvalidSequence(int k, const std::string& reason)
        : std::runtime_error("invalid sequence at k=" + std::to_string(k) + ": " + reason),
          index(k) {}
};

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct ScaleTooFine : std::runtime_error {
    explicit ScaleTooFine(const std::string& what) : std::runtime_error(what) {}
};

struct DepthOutOfRange : std::runtime_error {
    explicit DepthOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientPoints : std::runtime_error {
    explicit InsufficientPoints(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moran
