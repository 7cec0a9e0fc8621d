#pragma once

#include "fermatkit/verifier.hpp"

#include <cstdint>
#include <variant>

namespace fermatkit {

enum class FunctionClass { Entire, Meromorphic };

const char* function_class_name(FunctionClass cls);

/// Verdict of the non-existence gate for f^m + q (L f)^n = p with a
/// tau-step linear shift operator. guaranteed means no admissible solution
/// of the stated class exists; rule names the threshold that fired (or the
/// one that failed to fire, for callers that want to report why the gate
/// stayed open).
struct GateVerdict {
    bool guaranteed = false;
    std::string rule;
};

/// Meromorphic class: guaranteed when m >= (tau + 1)(n + 2) + 2.
/// Entire class: guaranteed when m >= n + 2.
GateVerdict gate(unsigned m, unsigned n, std::size_t tau, FunctionClass cls);

/// Finite search space: candidate frequencies, a per-frequency polynomial
/// degree cap, and the maximum number of distinct frequencies per candidate.
struct AnsatzSpace {
    std::vector<Scalar> freq_lattice;
    unsigned max_poly_degree = 1;
    std::size_t max_terms = 2;
};

/// Lattice {0} union {j pi i / c : 0 < |j| <= max_j}, the frequencies that
/// keep e^{freq * c} on the unit circle's rational angles. Float backend.
AnsatzSpace default_lattice(const Scalar& c, int max_j = 4, unsigned max_poly_degree = 1,
                            std::size_t max_terms = 2);

/// Issued when the search exhausts the whole space without an accept: every
/// frequency support was examined and none fit below tol.
struct ExhaustionCertificate {
    AnsatzSpace space;
    std::size_t supports_examined = 0;
    double tol = 0.0;
};

struct SearchOptions {
    double tol = 1e-8;          // max pointwise residual for acceptance
    std::size_t budget = 1000000; // supports allowed before BudgetExceeded
    bool parallel = true;       // OpenMP over supports; false = serial reference
    int starts = 8;             // deterministic starts per support
    int max_iterations = 80;    // Levenberg-Marquardt iteration cap
    std::uint64_t seed = 1;     // base seed for the randomized starts
};

using SearchOutcome = std::variant<std::vector<ExpPoly>, ExhaustionCertificate>;

/// Bounded constructive search for exponential-polynomial solutions of eq
/// over the given space. Deterministic for fixed options (parallel and
/// serial paths produce identical results). Float backend only. Raises
/// BudgetExceeded when the support count alone exceeds opts.budget.
SearchOutcome ansatz_search(const NonlinearShiftEquation& eq, const AnsatzSpace& space,
                            const SearchOptions& opts, const Context& ctx);

} // namespace fermatkit
