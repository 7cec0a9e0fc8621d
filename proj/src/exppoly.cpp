#include "fermatkit/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fermatkit {

namespace {

bool freq_close(const Scalar& a, const Scalar& b, const Context& ctx) {
    if (a.is_exact()) return a.equals(b);
    return std::abs(a.cplx() - b.cplx()) <= ctx.freq_merge_eps;
}

} // namespace

ExpPoly normalize(std::vector<ExpTerm> terms, const Context& ctx) {
    // Backend consistency across every coefficient and frequency.
    const Scalar* probe = nullptr;
    for (const auto& t : terms) {
        if (!probe) probe = &t.freq;
        require_same_backend(*probe, t.freq, "normalize frequencies");
        if (!t.poly.is_zero()) {
            require_same_backend(t.freq, t.poly.coeffs()[0], "normalize coefficients");
        }
    }
    // Cluster by frequency. Term counts are small, so quadratic clustering is
    // fine and avoids the non-transitivity pitfalls of tolerance sorting.
    std::vector<ExpTerm> merged;
    for (auto& t : terms) {
        if (t.poly.is_zero()) continue;
        bool found = false;
        for (auto& m : merged) {
            if (freq_close(m.freq, t.freq, ctx)) {
                m.poly = m.poly.add(t.poly, ctx.eps_zero);
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const ExpTerm& t) { return t.poly.is_zero(); });
    std::sort(merged.begin(), merged.end(), [](const ExpTerm& x, const ExpTerm& y) {
        return Scalar::cmp_lex(x.freq, y.freq) < 0;
    });
    ExpPoly out;
    out.terms_ = std::move(merged);
    return out;
}

ExpPoly ep_zero() { return ExpPoly(); }

ExpPoly ep_const(const Scalar& s, const Context& ctx) {
    return ep_from_poly(Poly::constant(s, ctx.eps_zero), ctx);
}

ExpPoly ep_from_poly(const Poly& p, const Context& ctx) {
    if (p.is_zero()) return ExpPoly();
    return normalize({ExpTerm{p, Scalar::zero(p.backend_or(ctx.backend))}}, ctx);
}

ExpPoly ep_term(const Poly& p, const Scalar& freq, const Context& ctx) {
    if (p.is_zero()) return ExpPoly();
    return normalize({ExpTerm{p, freq}}, ctx);
}

ExpPoly ep_add(const ExpPoly& f, const ExpPoly& g, const Context& ctx) {
    std::vector<ExpTerm> terms = f.terms();
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return normalize(std::move(terms), ctx);
}

ExpPoly ep_sub(const ExpPoly& f, const ExpPoly& g, const Context& ctx) {
    return ep_add(f, ep_neg(g), ctx);
}

ExpPoly ep_neg(const ExpPoly& f) {
    std::vector<ExpTerm> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) terms.push_back({t.poly.neg(), t.freq});
    // Negation preserves canonical form; bypass re-normalization.
    Context dummy;
    return normalize(std::move(terms), dummy);
}

ExpPoly ep_scale(const ExpPoly& f, const Scalar& s, const Context& ctx) {
    std::vector<ExpTerm> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) terms.push_back({t.poly.scale(s, ctx.eps_zero), t.freq});
    return normalize(std::move(terms), ctx);
}

ExpPoly ep_mul(const ExpPoly& f, const ExpPoly& g, const Context& ctx) {
    std::vector<ExpTerm> terms;
    terms.reserve(f.size() * g.size());
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            terms.push_back({a.poly.mul(b.poly, ctx.eps_zero), a.freq + b.freq});
        }
    }
    return normalize(std::move(terms), ctx);
}

ExpPoly ep_pow(const ExpPoly& f, unsigned n, const Context& ctx) {
    ExpPoly acc = ep_const(Scalar::one(f.is_zero() ? ctx.backend : f.terms()[0].freq.backend()), ctx);
    if (n == 0) return acc;
    ExpPoly base = f;
    while (true) {
        if (n & 1u) acc = ep_mul(acc, base, ctx);
        n >>= 1u;
        if (n == 0) break;
        base = ep_mul(base, base, ctx);
    }
    return acc;
}

ExpPoly ep_derive(const ExpPoly& f, unsigned k, const Context& ctx) {
    ExpPoly cur = f;
    for (unsigned step = 0; step < k; ++step) {
        std::vector<ExpTerm> terms;
        terms.reserve(cur.size());
        for (const auto& t : cur.terms()) {
            Poly p = t.poly.derive().add(t.poly.scale(t.freq, ctx.eps_zero), ctx.eps_zero);
            terms.push_back({std::move(p), t.freq});
        }
        cur = normalize(std::move(terms), ctx);
    }
    return cur;
}

ExpPoly ep_shift(const ExpPoly& f, const Scalar& c, const Context& ctx) {
    std::vector<ExpTerm> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        require_same_backend(t.freq, c, "ep_shift");
        Scalar factor = ctx.exp_of(t.freq * c);
        terms.push_back({t.poly.shift(c, ctx.eps_zero).scale(factor, ctx.eps_zero), t.freq});
    }
    return normalize(std::move(terms), ctx);
}

std::complex<double> ep_eval(const ExpPoly& f, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (const auto& t : f.terms()) {
        std::complex<double> w = t.freq.to_complex() * z;
        if (w.real() > 700.0) {
            raise(ErrorCode::Overflow, "ep_eval: exponent real part exceeds 700");
        }
        acc += std::exp(w) * t.poly.eval_c(z);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
        raise(ErrorCode::Overflow, "ep_eval: non-finite result");
    }
    return acc;
}

int growth_order(const ExpPoly& f, const Context& ctx) {
    for (const auto& t : f.terms()) {
        if (!t.freq.is_zero(ctx.eps_zero)) return 1;
    }
    return 0;
}

ExpPoly ep_to_float(const ExpPoly& f, const Context& float_ctx) {
    std::vector<ExpTerm> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        terms.push_back({t.poly.to_float(), t.freq.to_float()});
    }
    return normalize(std::move(terms), float_ctx);
}

bool ep_equal(const ExpPoly& f, const ExpPoly& g, const Context& ctx) {
    return ep_sub(f, g, ctx).is_zero();
}

std::string ExpPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        if (j) os << " + ";
        os << "[" << terms_[j].poly.str() << "]";
        if (!terms_[j].freq.is_zero()) os << "*e^{(" << terms_[j].freq.str() << ")z}";
    }
    return os.str();
}

} // namespace fermatkit
