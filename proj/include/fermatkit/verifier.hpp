#pragma once

#include "fermatkit/equation.hpp"

namespace fermatkit {

/// Outcome of a verification. symbolic_pass holds exactly when the canonical
/// residual has an empty term list; sample_max_abs is the residual evaluated
/// numerically at the quasi-random sample points (diagnostic for float data,
/// zero by construction for passing exact data).
struct VerificationReport {
    ExpPoly residual;
    bool symbolic_pass = false;
    double sample_max_abs = 0.0;
    std::vector<std::complex<double>> sample_points;
};

/// Quasi-random points in the closed disk |z| <= radius (Halton bases 2, 3).
std::vector<std::complex<double>> halton_disk(std::size_t n, double radius = 3.0);

VerificationReport verify_fermat(const ExpPoly& f, const FermatEquation& eq,
                                 const Context& ctx);

/// Checks the factorized identity (f + i g)(f - i g) = rhs, g = op f.
/// Agrees with verify_fermat by the identity x^2 + y^2 = (x+iy)(x-iy).
bool verify_factorized(const ExpPoly& f, const FermatEquation& eq, const Context& ctx);

VerificationReport verify_nonlinear(const ExpPoly& f, const NonlinearShiftEquation& eq,
                                    const Context& ctx);

/// Independent numeric oracle: evaluates the equation pointwise, applying
/// shifts by argument translation (never through the registered exponential
/// table) and powers by scalar arithmetic. Returns max |residual(z_i)| over
/// at least 16 points. Meaningful for genuine (float) data.
double sample_residual(const ExpPoly& f, const FermatEquation& eq,
                       const std::vector<std::complex<double>>& points = {});
double sample_residual(const ExpPoly& f, const NonlinearShiftEquation& eq,
                       const std::vector<std::complex<double>>& points = {});

} // namespace fermatkit
