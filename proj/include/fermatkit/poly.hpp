#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fermatkit/scalar.hpp"

namespace fermatkit {

/// Dense univariate polynomial over Scalar, coefficients in ascending powers
/// of z. Invariant: the trailing coefficient is nonzero; the zero polynomial
/// is the empty coefficient list. The zero polynomial is backend-neutral.
class Poly {
public:
    Poly() = default;
    /// Trims trailing (near-)zeros on construction.
    explicit Poly(std::vector<Scalar> coeffs, double eps_zero = kDefaultEpsZero);

    static Poly constant(const Scalar& s, double eps_zero = kDefaultEpsZero);
    /// The monomial z.
    static Poly z(Backend b);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& leading() const;
    /// Coefficient of z^j; zero of `fallback` backend beyond the degree.
    Scalar coeff(std::size_t j, Backend fallback = Backend::Exact) const;
    Backend backend_or(Backend fallback) const;

    Poly neg() const;
    Poly add(const Poly& o, double eps_zero = kDefaultEpsZero) const;
    Poly sub(const Poly& o, double eps_zero = kDefaultEpsZero) const;
    Poly mul(const Poly& o, double eps_zero = kDefaultEpsZero) const;
    Poly scale(const Scalar& s, double eps_zero = kDefaultEpsZero) const;
    Poly derive() const;
    /// P(z) -> P(z+c), exact binomial expansion in either backend.
    Poly shift(const Scalar& c, double eps_zero = kDefaultEpsZero) const;

    Scalar eval(const Scalar& z) const;
    /// Numeric Horner evaluation; valid for both backends (coefficients are
    /// converted), intended for the sampling oracle.
    std::complex<double> eval_c(std::complex<double> z) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& den, double eps_zero = kDefaultEpsZero) const;

    Poly to_float() const;

    bool equals(const Poly& o, double eps_zero = kDefaultEpsZero) const;

    std::string str() const;

private:
    std::vector<Scalar> c_;
};

} // namespace fermatkit
