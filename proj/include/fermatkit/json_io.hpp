#pragma once

#include "fermatkit/verifier.hpp"

#include <json.hpp>

namespace fermatkit {

/// JSON shapes:
///   Scalar   {"re": <component>, "im": <component>, "backend": "exact"|"float"}
///            exact components are rational strings "p/q" (or "p") or JSON
///            integers; JSON floats are rejected to keep exactness honest.
///            Float components are JSON numbers. A bare number or string is
///            shorthand for a purely real scalar in the expected backend.
///   Poly     [Scalar, ...] ascending by degree (trailing zeros tolerated).
///   ExpPoly  {"terms": [{"poly": Poly, "freq": Scalar}, ...]}
///            denormalized input (repeated or unsorted frequencies, zero
///            polynomials) is accepted and canonicalized on read.
///   Operator {"kind": "linear_shift", "c": Scalar, "coeffs": Poly-like list}
///            {"kind": "difference",  "c": Scalar, "P": Poly}
///            {"kind": "diff_delta",  "k": uint, "c": Scalar, "R": Poly}
///            {"kind": "mixed_delay", "m": uint, "n": uint, "c": Scalar,
///             "A": Scalar, "B": Scalar, "R": Poly}
/// Malformed structure raises SchemaError naming the offending path.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, Backend expected,
                        const std::string& where = "scalar");

nlohmann::json poly_to_json(const Poly& p, Backend be);
Poly poly_from_json(const nlohmann::json& j, const Context& ctx,
                    const std::string& where = "poly");

nlohmann::json exppoly_to_json(const ExpPoly& f, Backend be);
ExpPoly exppoly_from_json(const nlohmann::json& j, const Context& ctx,
                          const std::string& where = "exppoly");

nlohmann::json operator_to_json(const OperatorSpec& op, Backend be);
OperatorSpec operator_from_json(const nlohmann::json& j, const Context& ctx,
                                const std::string& where = "operator");

/// Exactly {"symbolic_pass": bool, "residual": ExpPoly, "sample_max_abs": number}.
nlohmann::json report_to_json(const VerificationReport& rep, Backend be);

} // namespace fermatkit
