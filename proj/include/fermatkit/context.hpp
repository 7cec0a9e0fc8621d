#pragma once

#include <utility>
#include <vector>

#include "fermatkit/scalar.hpp"

namespace fermatkit {

/// Per-computation environment: backend choice, tolerances, and the exact
/// backend's registered exponential points.
///
/// The exact backend cannot evaluate e^u for arbitrary u, so callers register
/// the finitely many exponential values a computation needs as (u, e^u)
/// pairs. exp_of derives integer powers automatically: once (u0, v) is
/// registered, e^{n*u0} = v^n for any integer n. Registering a point that
/// conflicts with an existing entry (directly or through a derived integer
/// power) is an error. Undeclared points are errors, never approximations.
class Context {
public:
    Backend backend = Backend::Exact;
    /// Absolute tolerance for float-backend zero tests.
    double eps_zero = kDefaultEpsZero;
    /// Distance below which two float frequencies are considered equal.
    double freq_merge_eps = 1e-9;

    Context() = default;
    explicit Context(Backend b, double eps = kDefaultEpsZero) : backend(b), eps_zero(eps) {}

    const std::vector<std::pair<Scalar, Scalar>>& exp_table() const { return table_; }

    /// Registers e^{key} = value (exact backend). value must be nonzero.
    void declare_exponential(const Scalar& key, const Scalar& value);

    /// e^u. Float backend: direct evaluation. Exact backend: looked up in
    /// the registered table (including derived integer powers).
    Scalar exp_of(const Scalar& u) const;

    Scalar zero() const { return Scalar::zero(backend); }
    Scalar one() const { return Scalar::one(backend); }
    Scalar i() const { return Scalar::i(backend); }
    Scalar integer(long n) const { return Scalar::integer(n, backend); }

private:
    std::vector<std::pair<Scalar, Scalar>> table_;
};

} // namespace fermatkit
