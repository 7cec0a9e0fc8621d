#pragma once

#include <stdexcept>
#include <string>

namespace fermatkit {

enum class ErrorCode {
    BackendMismatch,
    DivisionByZero,
    NonExactExponential,
    DuplicateExponential,
    NotRepresentable,   // exact value requested that the exact backend cannot express
    Overflow,
    InvalidOperator,
    InvalidEquation,
    InvalidArgument,
    EvenK,
    NonPolynomialQuotient,
    ConsistencyFailure,
    DegenerateParameters,
    ExclusionViolated,
    LeadingCoefficientZero,
    ZeroW,
    BudgetExceeded,
    SyntaxError,
    SchemaError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace fermatkit
