#pragma once

#include <complex>
#include <vector>

#include "fermatkit/context.hpp"
#include "fermatkit/poly.hpp"

namespace fermatkit {

/// One summand P(z) * e^{freq * z}. Valid terms carry a nonzero polynomial.
struct ExpTerm {
    Poly poly;
    Scalar freq;
};

/// Canonical finite sum of ExpTerms: frequencies pairwise distinct (per
/// backend equality/tolerance), sorted lexicographically by (re, im), no
/// zero-polynomial terms. A canonical ExpPoly is identically zero if and
/// only if its term list is empty, which is the kernel's zero test.
class ExpPoly {
public:
    ExpPoly() = default; // the zero function

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::string str() const;

private:
    friend ExpPoly normalize(std::vector<ExpTerm> terms, const Context& ctx);
    std::vector<ExpTerm> terms_;
};

/// Merges equal frequencies, drops zero polynomials, sorts. Idempotent.
ExpPoly normalize(std::vector<ExpTerm> terms, const Context& ctx);

/// Convenience constructors.
ExpPoly ep_zero();
ExpPoly ep_const(const Scalar& s, const Context& ctx);
ExpPoly ep_from_poly(const Poly& p, const Context& ctx);
/// P(z) * e^{freq z}.
ExpPoly ep_term(const Poly& p, const Scalar& freq, const Context& ctx);

ExpPoly ep_add(const ExpPoly& f, const ExpPoly& g, const Context& ctx);
ExpPoly ep_sub(const ExpPoly& f, const ExpPoly& g, const Context& ctx);
ExpPoly ep_neg(const ExpPoly& f);
ExpPoly ep_scale(const ExpPoly& f, const Scalar& s, const Context& ctx);
ExpPoly ep_mul(const ExpPoly& f, const ExpPoly& g, const Context& ctx);
/// f^n by repeated squaring, normalizing between steps.
ExpPoly ep_pow(const ExpPoly& f, unsigned n, const Context& ctx);

/// k-th derivative: one step maps (P, mu) to (P' + mu*P, mu).
ExpPoly ep_derive(const ExpPoly& f, unsigned k, const Context& ctx);

/// f(z) -> f(z+c): each term (P, mu) -> (e^{mu c} * P(z+c), mu). The exact
/// backend requires e^{mu c} to be registered in ctx.
ExpPoly ep_shift(const ExpPoly& f, const Scalar& c, const Context& ctx);

/// Direct numeric evaluation (both backends' coefficients are converted).
std::complex<double> ep_eval(const ExpPoly& f, std::complex<double> z);

/// 0 for polynomials (all frequencies zero), 1 otherwise.
int growth_order(const ExpPoly& f, const Context& ctx);

ExpPoly ep_to_float(const ExpPoly& f, const Context& float_ctx);

bool ep_equal(const ExpPoly& f, const ExpPoly& g, const Context& ctx);

} // namespace fermatkit
