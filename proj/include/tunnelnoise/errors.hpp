#pragma once

#include <stdexcept>
#include <string>

namespace tunnelnoise {

/// Input outside the physical domain of an operation (E >= V0, gap <= 0, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A finite input whose evaluation would overflow the double range.
class RangeError : public std::range_error {
public:
    explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// Two independent computation routes disagreed beyond their stated tolerance.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// Malformed or contradictory configuration; the message names the field.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace tunnelnoise
