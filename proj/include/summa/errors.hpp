#pragma once

#include <stdexcept>
#include <string>

namespace summa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class InvalidDimension : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_dimension"; }
};

class InvalidSubsequence : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_subsequence"; }
};

class InvalidWeight : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_weight"; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain_error"; }
};

/// Requested Haar indices are finer than the dyadic resolution can represent exactly.
class ResolutionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "resolution_error"; }
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "index_out_of_range"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_config"; }
};

}  // namespace summa
