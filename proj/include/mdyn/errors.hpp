#pragma once

#include <stdexcept>
#include <string>

namespace mdyn {

// Raised when an input document or string cannot be decoded at all.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a decoded value violates a structural invariant
// (negative quantity, unsorted iso-util vertices, unknown version tag, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation is applied outside its mathematical domain
// (converting a non-convex iso-util, subtracting past zero, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdyn
