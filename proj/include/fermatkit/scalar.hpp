#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "fermatkit/error.hpp"

namespace fermatkit {

enum class Backend { Exact, Float };

const char* backend_name(Backend b);

/// Default absolute tolerance for float-backend zero tests. Verification
/// contexts normally carry their own value; this is the fallback for
/// operator/ and other tolerance-free call sites.
inline constexpr double kDefaultEpsZero = 1e-9;

struct GaussianRational {
    mpq_class re, im;
};

/// A complex number under one of two backends: exact Gaussian rationals
/// (arbitrary-precision, decidable equality) or binary64 pairs with
/// tolerance-based zero tests. Mixing backends in arithmetic is an error,
/// never a coercion; conversion is explicit via to_float().
class Scalar {
public:
    Scalar() : v_(GaussianRational{0, 0}) {}

    static Scalar exact(mpq_class re, mpq_class im = 0) {
        return Scalar(GaussianRational{std::move(re), std::move(im)});
    }
    static Scalar exact(long re, long im = 0) { return exact(mpq_class(re), mpq_class(im)); }
    static Scalar floating(std::complex<double> v) { return Scalar(v); }
    static Scalar floating(double re, double im = 0.0) {
        return Scalar(std::complex<double>(re, im));
    }

    static Scalar zero(Backend b) { return b == Backend::Exact ? exact(0) : floating(0.0); }
    static Scalar one(Backend b) { return b == Backend::Exact ? exact(1) : floating(1.0); }
    static Scalar i(Backend b) { return b == Backend::Exact ? exact(0, 1) : floating(0.0, 1.0); }
    static Scalar integer(long n, Backend b) {
        return b == Backend::Exact ? exact(n) : floating(double(n));
    }

    Backend backend() const {
        return std::holds_alternative<GaussianRational>(v_) ? Backend::Exact : Backend::Float;
    }
    bool is_exact() const { return backend() == Backend::Exact; }

    const GaussianRational& rat() const;
    std::complex<double> cplx() const;

    /// Lossy numeric view, valid for both backends.
    std::complex<double> to_complex() const;
    /// Explicit backend conversion.
    Scalar to_float() const { return floating(to_complex()); }

    bool is_zero(double eps_zero = kDefaultEpsZero) const;
    bool equals(const Scalar& o, double eps_zero = kDefaultEpsZero) const;
    /// Lexicographic (re, im) comparison; used for canonical term order.
    static int cmp_lex(const Scalar& a, const Scalar& b);

    Scalar operator-() const;
    Scalar conj() const;
    Scalar inv(double eps_zero = kDefaultEpsZero) const;
    double abs() const { return std::abs(to_complex()); }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar pow_nat(unsigned n) const;

    /// Square root within the same backend. Exact backend: succeeds only
    /// when the root lies in Q(i); float backend: always the principal root.
    std::optional<Scalar> try_sqrt() const;

    /// "p/q" / "p/q+r/s i" style for exact, "(re,im)" for float.
    std::string str() const;

private:
    explicit Scalar(GaussianRational g) : v_(std::move(g)) {}
    explicit Scalar(std::complex<double> c) : v_(c) {}

    std::variant<GaussianRational, std::complex<double>> v_;
};

/// Throws BackendMismatch unless both scalars share a backend.
void require_same_backend(const Scalar& a, const Scalar& b, const char* where);

} // namespace fermatkit
