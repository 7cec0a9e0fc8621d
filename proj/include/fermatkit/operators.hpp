#pragma once

#include <variant>
#include <vector>

#include "fermatkit/exppoly.hpp"

namespace fermatkit {

/// L_c: f(z) -> sum_j coeffs[j] * f(z + j*c). coeffs = [a_0 .. a_tau],
/// tau >= 1, a_tau != 0, c != 0.
struct LinearShift {
    Scalar c;
    std::vector<Scalar> coeffs;
    std::size_t tau() const { return coeffs.size() - 1; }
};

/// f(z) -> P(z) * (f(z+c) - f(z)), P != 0, c != 0.
struct Difference {
    Scalar c;
    Poly P;
};

/// f(z) -> R(z) * (f^(k)(z+c) - f^(k)(z)), k >= 1, R != 0, c != 0.
struct DiffDelta {
    unsigned k = 1;
    Scalar c;
    Poly R;
};

/// f(z) -> R(z) * (A * f^(m)(z+c) + B * f^(n)(z)); m or n may be 0 with
/// f^(0) = f. A, B, R nonzero, c != 0.
struct MixedDelay {
    unsigned m = 0;
    unsigned n = 0;
    Scalar c;
    Scalar A;
    Scalar B;
    Poly R;
};

using OperatorSpec = std::variant<LinearShift, Difference, DiffDelta, MixedDelay>;

/// Validating constructors; raise InvalidOperator on invariant violations.
LinearShift make_linear_shift(const Scalar& c, std::vector<Scalar> coeffs,
                              double eps_zero = kDefaultEpsZero);
Difference make_difference(const Scalar& c, Poly P, double eps_zero = kDefaultEpsZero);
DiffDelta make_diff_delta(unsigned k, const Scalar& c, Poly R,
                          double eps_zero = kDefaultEpsZero);
MixedDelay make_mixed_delay(unsigned m, unsigned n, const Scalar& c, const Scalar& A,
                            const Scalar& B, Poly R, double eps_zero = kDefaultEpsZero);

/// The operator's shift constant (every family has one).
const Scalar& operator_shift(const OperatorSpec& op);

ExpPoly apply(const OperatorSpec& op, const ExpPoly& f, const Context& ctx);

/// Forward difference f(z+c) - f(z).
ExpPoly delta_c(const ExpPoly& f, const Scalar& c, const Context& ctx);

} // namespace fermatkit
