#include "fermatkit/scalar.hpp"

#include <cmath>
#include <sstream>

namespace fermatkit {

const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

void require_same_backend(const Scalar& a, const Scalar& b, const char* where) {
    if (a.backend() != b.backend()) {
        raise(ErrorCode::BackendMismatch,
              std::string(where) + ": operands use " + backend_name(a.backend()) + " and " +
                  backend_name(b.backend()) + " backends");
    }
}

const GaussianRational& Scalar::rat() const {
    if (!is_exact()) raise(ErrorCode::BackendMismatch, "rat() on float scalar");
    return std::get<GaussianRational>(v_);
}

std::complex<double> Scalar::cplx() const {
    if (is_exact()) raise(ErrorCode::BackendMismatch, "cplx() on exact scalar");
    return std::get<std::complex<double>>(v_);
}

std::complex<double> Scalar::to_complex() const {
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        return {g.re.get_d(), g.im.get_d()};
    }
    return std::get<std::complex<double>>(v_);
}

bool Scalar::is_zero(double eps_zero) const {
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        return g.re == 0 && g.im == 0;
    }
    return std::abs(std::get<std::complex<double>>(v_)) <= eps_zero;
}

bool Scalar::equals(const Scalar& o, double eps_zero) const {
    require_same_backend(*this, o, "equals");
    return (*this - o).is_zero(eps_zero);
}

int Scalar::cmp_lex(const Scalar& a, const Scalar& b) {
    require_same_backend(a, b, "cmp_lex");
    if (a.is_exact()) {
        const auto& x = std::get<GaussianRational>(a.v_);
        const auto& y = std::get<GaussianRational>(b.v_);
        int c = cmp(x.re, y.re);
        if (c != 0) return c;
        return cmp(x.im, y.im);
    }
    auto x = std::get<std::complex<double>>(a.v_);
    auto y = std::get<std::complex<double>>(b.v_);
    if (x.real() < y.real()) return -1;
    if (x.real() > y.real()) return 1;
    if (x.imag() < y.imag()) return -1;
    if (x.imag() > y.imag()) return 1;
    return 0;
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        return Scalar(GaussianRational{-g.re, -g.im});
    }
    return Scalar(-std::get<std::complex<double>>(v_));
}

Scalar Scalar::conj() const {
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        return Scalar(GaussianRational{g.re, -g.im});
    }
    return Scalar(std::conj(std::get<std::complex<double>>(v_)));
}

Scalar Scalar::inv(double eps_zero) const {
    if (is_zero(eps_zero)) raise(ErrorCode::DivisionByZero, "inv of zero scalar");
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        mpq_class n = g.re * g.re + g.im * g.im;
        return Scalar(GaussianRational{g.re / n, -g.im / n});
    }
    return Scalar(1.0 / std::get<std::complex<double>>(v_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_backend(a, b, "add");
    if (a.is_exact()) {
        const auto& x = std::get<GaussianRational>(a.v_);
        const auto& y = std::get<GaussianRational>(b.v_);
        return Scalar(GaussianRational{x.re + y.re, x.im + y.im});
    }
    return Scalar(std::get<std::complex<double>>(a.v_) + std::get<std::complex<double>>(b.v_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same_backend(a, b, "sub");
    if (a.is_exact()) {
        const auto& x = std::get<GaussianRational>(a.v_);
        const auto& y = std::get<GaussianRational>(b.v_);
        return Scalar(GaussianRational{x.re - y.re, x.im - y.im});
    }
    return Scalar(std::get<std::complex<double>>(a.v_) - std::get<std::complex<double>>(b.v_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_backend(a, b, "mul");
    if (a.is_exact()) {
        const auto& x = std::get<GaussianRational>(a.v_);
        const auto& y = std::get<GaussianRational>(b.v_);
        return Scalar(
            GaussianRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
    }
    return Scalar(std::get<std::complex<double>>(a.v_) * std::get<std::complex<double>>(b.v_));
}

Scalar Scalar::pow_nat(unsigned n) const {
    Scalar acc = Scalar::one(backend());
    Scalar base = *this;
    while (n > 0) {
        if (n & 1u) acc *= base;
        base *= base;
        n >>= 1u;
    }
    return acc;
}

namespace {

// Rational square root: succeeds iff numerator and denominator are
// perfect squares of the canonicalized non-negative input.
std::optional<mpq_class> sqrt_rational(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

} // namespace

std::optional<Scalar> Scalar::try_sqrt() const {
    if (!is_exact()) return Scalar(std::sqrt(std::get<std::complex<double>>(v_)));
    const auto& g = std::get<GaussianRational>(v_);
    if (g.im == 0) {
        if (g.re >= 0) {
            auto r = sqrt_rational(g.re);
            if (!r) return std::nullopt;
            return exact(*r, 0);
        }
        auto r = sqrt_rational(mpq_class(-g.re));
        if (!r) return std::nullopt;
        return exact(0, *r);
    }
    // sqrt(x+iy) = u+iv with u^2 = (|w|+x)/2, v^2 = (|w|-x)/2, sign(v)=sign(y).
    auto norm = sqrt_rational(g.re * g.re + g.im * g.im);
    if (!norm) return std::nullopt;
    auto u = sqrt_rational((*norm + g.re) / 2);
    auto v = sqrt_rational((*norm - g.re) / 2);
    if (!u || !v) return std::nullopt;
    if (g.im < 0) *v = -*v;
    return exact(*u, *v);
}

std::string Scalar::str() const {
    std::ostringstream os;
    if (is_exact()) {
        const auto& g = std::get<GaussianRational>(v_);
        os << g.re.get_str();
        if (g.im != 0) {
            os << (g.im > 0 ? "+" : "") << g.im.get_str() << "i";
        }
    } else {
        auto c = std::get<std::complex<double>>(v_);
        os << "(" << c.real() << "," << c.imag() << ")";
    }
    return os.str();
}

} // namespace fermatkit
