#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace interkernel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PositionOutOfRange : public Error {
public:
    using Error::Error;
};

class SignatureError : public Error {
public:
    using Error::Error;
};

/// Raised when a loop-free term is required but a loop node is present.
class ContainsLoop : public Error {
public:
    using Error::Error;
};

class NotInFrontier : public Error {
public:
    using Error::Error;
};

/// A computed trace set exceeded its configured cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class EmptySemantics : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected, std::string found)
        : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected +
                ", found " + found),
          offset_(offset),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

}  // namespace interkernel
