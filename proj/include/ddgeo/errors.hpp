#pragma once

#include <stdexcept>
#include <string>

namespace ddgeo {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidScalar : Error {
    explicit InvalidScalar(const std::string& msg) : Error(msg) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

struct InvalidReparam : Error {
    explicit InvalidReparam(const std::string& msg) : Error(msg) {}
};

struct InsufficientDomain : Error {
    explicit InsufficientDomain(const std::string& msg) : Error(msg) {}
};

struct DuplicatePoint : Error {
    std::size_t first_index;
    std::size_t second_index;
    DuplicatePoint(std::size_t i, std::size_t j)
        : Error("duplicate points at indices " + std::to_string(i) + " and " + std::to_string(j)),
          first_index(i),
          second_index(j) {}
};

struct DuplicateElement : Error {
    explicit DuplicateElement(const std::string& msg) : Error(msg) {}
};

struct TooSmall : Error {
    explicit TooSmall(const std::string& msg) : Error(msg) {}
};

struct NotPrime : Error {
    explicit NotPrime(const std::string& msg) : Error(msg) {}
};

struct SizeGuard : Error {
    explicit SizeGuard(const std::string& msg) : Error(msg) {}
};

struct AbsentClosedForm : Error {
    explicit AbsentClosedForm(const std::string& msg) : Error(msg) {}
};

struct InvalidDimension : Error {
    explicit InvalidDimension(const std::string& msg) : Error(msg) {}
};

// Parse failures carry the byte offset of the offending input.
struct ParseError : Error {
    std::size_t offset;
    ParseError(std::size_t byte_offset, const std::string& expected)
        : Error("parse error at byte " + std::to_string(byte_offset) + ": expected " + expected),
          offset(byte_offset) {}
};

}  // namespace ddgeo
