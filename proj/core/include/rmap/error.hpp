#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmap {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression text. offset is the byte position of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(const std::string& name, std::size_t offset)
        : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// An expression evaluated outside its domain (log of a non-positive value, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Geometric data that violates a structural requirement (non-SPD metric, odd
// dimension with a complex structure, rank change, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

// A caller-supplied input violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Singular values sit too close to the rank threshold to decide the rank.
class RankAmbiguityError : public StructuralError {
public:
    using StructuralError::StructuralError;
};

// All validation problems found in a scenario manifest, not just the first.
class ManifestError : public Error {
public:
    explicit ManifestError(std::vector<std::string> problems)
        : Error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out = "invalid manifest:";
        for (const auto& item : items) {
            out += "\n  - ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace rmap
