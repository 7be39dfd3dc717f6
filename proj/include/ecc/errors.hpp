/**
 * @file errors.hpp
 * @brief Exception taxonomy shared by every module.
 *
 * The command-line front end maps each class onto an exit code:
 * ValidationError -> 1, PreconditionError -> 2, InvariantError -> 3.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ecc {

/// An input violated a documented precondition of an operation.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A presentation or document failed validation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed; signals a bug or an invalid model.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ecc
