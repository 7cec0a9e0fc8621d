#pragma once

#include "fermatkit/operators.hpp"

namespace fermatkit {

/// f^2 + (op f)^2 = rhs, rhs != 0.
struct FermatEquation {
    OperatorSpec op;
    ExpPoly rhs;
};

/// denom * f^m + q * (L f)^n = p.
///
/// denom is 1 for the plain equation f^m + q (L f)^n = p. When the original
/// equation carries a rational-function coefficient q0 = q/denom (and rhs
/// p0 = p/denom), the caller supplies the cleared numerators q, p together
/// with the common denominator polynomial; the kernel then verifies the
/// denominator-cleared identity, which keeps every object inside the
/// exponential-polynomial ring.
struct NonlinearShiftEquation {
    unsigned m = 1;
    unsigned n = 1;
    ExpPoly q;
    ExpPoly p;
    LinearShift L;
    Poly denom; // empty means 1
};

FermatEquation make_fermat_equation(OperatorSpec op, ExpPoly rhs);
NonlinearShiftEquation make_nonlinear_shift_equation(unsigned m, unsigned n, ExpPoly q,
                                                     ExpPoly p, LinearShift L,
                                                     Poly denom = Poly());

} // namespace fermatkit
