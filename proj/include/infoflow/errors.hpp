#pragma once

#include <stdexcept>
#include <string>

namespace infoflow {

// Error taxonomy shared by the library and the CLI exit codes:
//   invalid-input -> 2, undefined-operation -> 3, budget-exceeded -> 4.
enum class ErrorKind {
    InvalidInput,
    UndefinedOperation,
    BudgetExceeded,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::UndefinedOperation: return "undefined-operation";
        case ErrorKind::BudgetExceeded: return "budget-exceeded";
        }
        return "unknown";
    }

private:
    ErrorKind kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& message)
        : Error(ErrorKind::InvalidInput, message) {}
};

// Operations that are mathematically undefined on the given input
// (total conflict, conditioning on a zero-possibility event, ...).
class UndefinedOperation : public Error {
public:
    explicit UndefinedOperation(const std::string& message)
        : Error(ErrorKind::UndefinedOperation, message) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& message)
        : Error(ErrorKind::BudgetExceeded, message) {}
};

} // namespace infoflow
