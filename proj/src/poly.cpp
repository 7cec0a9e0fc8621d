#include "fermatkit/poly.hpp"

#include <sstream>

namespace fermatkit {

namespace {

void trim_trailing(std::vector<Scalar>& c, double eps_zero) {
    while (!c.empty() && c.back().is_zero(eps_zero)) c.pop_back();
}

} // namespace

Poly::Poly(std::vector<Scalar> coeffs, double eps_zero) : c_(std::move(coeffs)) {
    for (std::size_t j = 1; j < c_.size(); ++j) {
        require_same_backend(c_[0], c_[j], "Poly coefficients");
    }
    trim_trailing(c_, eps_zero);
}

Poly Poly::constant(const Scalar& s, double eps_zero) {
    return Poly(std::vector<Scalar>{s}, eps_zero);
}

Poly Poly::z(Backend b) {
    return Poly(std::vector<Scalar>{Scalar::zero(b), Scalar::one(b)});
}

const Scalar& Poly::leading() const {
    if (c_.empty()) raise(ErrorCode::InvalidArgument, "leading() of zero polynomial");
    return c_.back();
}

Scalar Poly::coeff(std::size_t j, Backend fallback) const {
    if (j < c_.size()) return c_[j];
    return Scalar::zero(backend_or(fallback));
}

Backend Poly::backend_or(Backend fallback) const {
    return c_.empty() ? fallback : c_[0].backend();
}

Poly Poly::neg() const {
    std::vector<Scalar> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(-x);
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Poly Poly::add(const Poly& o, double eps_zero) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    require_same_backend(c_[0], o.c_[0], "Poly add");
    std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(c_[0].backend()));
    for (std::size_t j = 0; j < c_.size(); ++j) r[j] += c_[j];
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[j] += o.c_[j];
    trim_trailing(r, eps_zero);
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Poly Poly::sub(const Poly& o, double eps_zero) const { return add(o.neg(), eps_zero); }

Poly Poly::mul(const Poly& o, double eps_zero) const {
    if (is_zero() || o.is_zero()) return Poly();
    require_same_backend(c_[0], o.c_[0], "Poly mul");
    std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(c_[0].backend()));
    for (std::size_t j = 0; j < c_.size(); ++j) {
        for (std::size_t k = 0; k < o.c_.size(); ++k) {
            r[j + k] += c_[j] * o.c_[k];
        }
    }
    trim_trailing(r, eps_zero);
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Poly Poly::scale(const Scalar& s, double eps_zero) const {
    if (is_zero()) return Poly();
    if (s.is_zero(eps_zero)) return Poly();
    std::vector<Scalar> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    trim_trailing(r, eps_zero);
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Poly Poly::derive() const {
    if (c_.size() <= 1) return Poly();
    Backend b = c_[0].backend();
    std::vector<Scalar> r;
    r.reserve(c_.size() - 1);
    for (std::size_t j = 1; j < c_.size(); ++j) {
        r.push_back(c_[j] * Scalar::integer(static_cast<long>(j), b));
    }
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Poly Poly::shift(const Scalar& c, double eps_zero) const {
    if (is_zero()) return Poly();
    Backend b = c_[0].backend();
    require_same_backend(c_[0], c, "Poly shift");
    if (c.is_zero(eps_zero)) return *this;
    const std::size_t n = c_.size();
    // result[j] = sum_{k>=j} c_k * C(k,j) * c^{k-j}; Pascal row kept in Scalar
    // arithmetic so exact coefficients stay exact at any degree.
    std::vector<Scalar> r(n, Scalar::zero(b));
    std::vector<Scalar> binom(n, Scalar::zero(b)); // C(k, j) for current k
    std::vector<Scalar> cpow(n, Scalar::zero(b));  // c^t
    cpow[0] = Scalar::one(b);
    for (std::size_t t = 1; t < n; ++t) cpow[t] = cpow[t - 1] * c;
    for (std::size_t k = 0; k < n; ++k) {
        // update Pascal row in place: C(k,j) = C(k-1,j-1) + C(k-1,j)
        for (std::size_t j = k; j > 0; --j) binom[j] = binom[j] + binom[j - 1];
        binom[0] = Scalar::one(b);
        for (std::size_t j = 0; j <= k; ++j) {
            r[j] += c_[k] * binom[j] * cpow[k - j];
        }
    }
    trim_trailing(r, eps_zero);
    Poly p;
    p.c_ = std::move(r);
    return p;
}

Scalar Poly::eval(const Scalar& z) const {
    if (is_zero()) return Scalar::zero(z.backend());
    require_same_backend(c_[0], z, "Poly eval");
    Scalar acc = Scalar::zero(z.backend());
    for (std::size_t j = c_.size(); j-- > 0;) {
        acc = acc * z + c_[j];
    }
    return acc;
}

std::complex<double> Poly::eval_c(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (std::size_t j = c_.size(); j-- > 0;) {
        acc = acc * z + c_[j].to_complex();
    }
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& den, double eps_zero) const {
    if (den.is_zero()) raise(ErrorCode::DivisionByZero, "Poly divmod by zero polynomial");
    if (is_zero()) return {Poly(), Poly()};
    require_same_backend(c_[0], den.c_[0], "Poly divmod");
    Backend b = c_[0].backend();
    std::vector<Scalar> rem = c_;
    const int dd = den.degree();
    const Scalar lead_inv = den.leading().inv(eps_zero);
    std::vector<Scalar> quot;
    int rd = static_cast<int>(rem.size()) - 1;
    if (rd >= dd) quot.assign(static_cast<std::size_t>(rd - dd) + 1, Scalar::zero(b));
    while (true) {
        while (!rem.empty() && rem.back().is_zero(eps_zero)) rem.pop_back();
        rd = static_cast<int>(rem.size()) - 1;
        if (rd < dd) break;
        Scalar q = rem.back() * lead_inv;
        quot[static_cast<std::size_t>(rd - dd)] = q;
        for (int j = 0; j <= dd; ++j) {
            rem[static_cast<std::size_t>(rd - dd + j)] -= q * den.c_[static_cast<std::size_t>(j)];
        }
        rem.pop_back(); // leading term cancels by construction
    }
    Poly pq, pr;
    trim_trailing(quot, eps_zero);
    trim_trailing(rem, eps_zero);
    pq.c_ = std::move(quot);
    pr.c_ = std::move(rem);
    return {pq, pr};
}

Poly Poly::to_float() const {
    std::vector<Scalar> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x.to_float());
    Poly p;
    p.c_ = std::move(r);
    return p;
}

bool Poly::equals(const Poly& o, double eps_zero) const {
    return sub(o, eps_zero).is_zero();
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (j) os << " + ";
        os << "(" << c_[j].str() << ")";
        if (j == 1) os << "*z";
        if (j > 1) os << "*z^" << j;
    }
    return os.str();
}

} // namespace fermatkit
