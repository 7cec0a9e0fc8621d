#pragma once

#include "fermatkit/json_io.hpp"

namespace fermatkit {

/// Envelope of a CLI input file:
///   {
///     "version": 1,
///     "backend": "exact" | "float",
///     "eps_zero": number,                       // optional
///     "declared_exponentials": [[key, value]],  // optional, exact backend
///     "command": { "op": "...", ... }
///   }
/// Text that is not JSON raises SyntaxError with line/column; a well-formed
/// document with the wrong shape raises SchemaError naming the field.
struct SpecFile {
    int version = 1;
    Backend backend = Backend::Exact;
    double eps_zero = kDefaultEpsZero;
    std::vector<std::pair<Scalar, Scalar>> declared_exponentials;
    nlohmann::json command;
};

SpecFile parse_spec(const std::string& text);

std::string print_spec(const SpecFile& sf);

/// Context with the file's backend, eps_zero, and declarations applied
/// (declarations may raise DuplicateExponential or NonExactExponential).
Context make_context(const SpecFile& sf);

} // namespace fermatkit
