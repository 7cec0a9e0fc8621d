#pragma once

#include <map>
#include <string>
#include <variant>

#include "fermatkit/verifier.hpp"

namespace fermatkit {

/// The cosh-shaped family f = (Q1 e^{az+b} + Q2 e^{-(az+b)}) / 2.
///
/// Rendering needs e^b. In the float backend it is computed directly. In the
/// exact backend e^b must be registered in the context's exponential table;
/// the builders register it as the formal unit 1 when b != 0 (and the table
/// does not already pin it), which is sound for verification: the residual's
/// coefficient at frequency j*a is scaled by the nonzero constant e^{jb}, so
/// it vanishes for one choice of e^b exactly when it vanishes for all.
struct CoshForm {
    Scalar a;
    Scalar b;
    Poly Q1;
    Poly Q2;
};

ExpPoly render_cosh(const CoshForm& f, const Context& ctx);

/// A named scalar identity that must evaluate to zero.
struct SideCondition {
    std::string name;
    Scalar residual;
};

/// A named membership check on the computed shift multiplier.
struct ExclusionCheck {
    std::string name;
    bool ok = true;
};

struct SolutionFamily {
    CoshForm f;
    OperatorSpec op;
    ExpPoly rhs;
    std::vector<SideCondition> side_conditions;
    std::vector<ExclusionCheck> exclusions_checked;
    Context ctx;
    VerificationReport report;
};

/// A constraint system with no solution; rule names a stable reason code.
struct Infeasible {
    std::string rule;
    std::string detail;
};

inline constexpr const char* kInfeasibleShiftSystem = "shift-system-inconsistent";

/// Constant-pair family for f^2 + R^2 (f^(k)(z+c) - f^(k)(z))^2 = Q1*Q2:
/// a is an odd multiple of pi*i / c, R solves 2 i R a^k + 1 = 0, k odd.
///
/// Exact backend convention: c is given in units of pi*i (so the genuine
/// shift constant is c*pi*i), making a = (2*branch_m+1)/c rational; the
/// context then registers e^{ac} = -1. Float backend: c is the genuine
/// constant and a = (2*branch_m+1)*pi*i/c.
SolutionFamily build_case_i(unsigned k, const Scalar& c, long branch_m, const Scalar& Q1,
                            const Scalar& Q2, const Scalar& b, Context ctx);

/// Polynomial-pair family under e^{ac} = 1 (the context must already declare
/// this in the exact backend; the float backend checks it numerically).
/// R = Q1 / P(Q1) with P(Q1) = i * sum_l C(k,l) a^{k-l} (Q1^(l)(z+c) -
/// Q1^(l)(z)); the assembled equation is verified rather than trusting any
/// printed sign rule, and a verification failure reports ConsistencyFailure.
SolutionFamily build_case_ii(unsigned k, const Scalar& a, const Scalar& c, const Poly& Q1,
                             const Poly& Q2, const Scalar& b, Context ctx);

enum class Branch { Plus, Minus };

/// cosh family for f^2 + R^2 (A f^(m)(z+c) + B f^(n)(z))^2 = 1. The shift
/// multiplier w = e^{ac} and R are derived from the pairing relations
///   i R (a^m w A + a^n B) = 1  and  i R ((-a)^m w^{-1} A + (-a)^n B) = -1
/// by the parity of (m, n); the closed forms are re-checked as side
/// conditions. Exact backend: the shift constant is the stand-in c = 1 with
/// e^{a*1} = w registered (square roots must exist in Q(i), else
/// NotRepresentable). Float backend: c = Log(w)/a.
SolutionFamily build_mixed(unsigned m, unsigned n, const Scalar& A, const Scalar& B,
                           const Scalar& a, const Scalar& b, Branch branch, Context ctx);

using PinMap = std::map<std::size_t, Scalar>;
using ShiftCoeffResult = std::variant<std::vector<Scalar>, Infeasible>;

/// Solves  sum_j a_j w^j = -i,  sum_j a_j w^-j = i  for [a_0..a_tau],
/// honoring pinned entries. Underdetermined systems resolve deterministically:
/// free coefficients become 0, except a free a_tau becomes 1 so the leading
/// coefficient stays nonzero. A solved a_tau of zero is an error; an
/// inconsistent system (w = +-1, or contradictory pins) is Infeasible.
ShiftCoeffResult solve_shift_coeffs(std::size_t tau, const Scalar& w, const PinMap& pinned,
                                    const Context& ctx);

/// The two shift multipliers implied by pinning (a_0, a_1) = (-1, 1) at
/// tau = 1 (the forward difference operator): the first equation forces one
/// value, the mirror equation another; they never agree, so the pinned
/// system is infeasible for every w.
struct PinnedDifferenceWitness {
    Scalar w_from_forward;
    Scalar w_from_mirror;
    bool consistent = false;
};

PinnedDifferenceWitness difference_pin_witness(const Context& ctx);

/// sin(pi z / (2 c)) as a cosh form (a = i pi/(2c), e^b = -i) together with
/// shift coefficients solving the alternating-parity systems (w = i).
/// Exact backend: c is a rational stand-in with e^{ac} = i registered.
std::variant<SolutionFamily, Infeasible> build_sin_family(const Scalar& c, std::size_t tau,
                                                          const PinMap& pinned, Context ctx);

/// Concrete shift constant with e^{ac} = w: c = (Log w + 2 pi i k)/a.
/// Always returns a float scalar (principal logarithm).
Scalar ac_to_c(const Scalar& w, const Scalar& a, long branch_k);

} // namespace fermatkit
