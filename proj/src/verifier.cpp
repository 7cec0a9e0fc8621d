#include "fermatkit/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fermatkit {

FermatEquation make_fermat_equation(OperatorSpec op, ExpPoly rhs) {
    if (rhs.is_zero()) {
        raise(ErrorCode::InvalidEquation, "Fermat equation: right-hand side must be nonzero");
    }
    return FermatEquation{std::move(op), std::move(rhs)};
}

NonlinearShiftEquation make_nonlinear_shift_equation(unsigned m, unsigned n, ExpPoly q,
                                                     ExpPoly p, LinearShift L, Poly denom) {
    if (m == 0 || n == 0) {
        raise(ErrorCode::InvalidEquation, "nonlinear shift equation: m, n must be >= 1");
    }
    if (q.is_zero()) {
        raise(ErrorCode::InvalidEquation, "nonlinear shift equation: q must be nonzero");
    }
    return NonlinearShiftEquation{m, n, std::move(q), std::move(p), std::move(L),
                                  std::move(denom)};
}

std::vector<std::complex<double>> halton_disk(std::size_t n, double radius) {
    auto radical_inverse = [](std::size_t i, unsigned base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= base;
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };
    std::vector<std::complex<double>> pts;
    pts.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double u = radical_inverse(i, 2);
        double v = radical_inverse(i, 3);
        double r = radius * std::sqrt(u);
        double th = 2.0 * std::numbers::pi * v;
        pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return pts;
}

namespace {

constexpr std::size_t kSamplePoints = 24;

double max_abs_at(const ExpPoly& residual, const std::vector<std::complex<double>>& pts) {
    double worst = 0.0;
    for (auto z : pts) {
        worst = std::max(worst, std::abs(ep_eval(residual, z)));
    }
    return worst;
}

VerificationReport make_report(ExpPoly residual) {
    VerificationReport rep;
    rep.symbolic_pass = residual.is_zero();
    rep.sample_points = halton_disk(kSamplePoints);
    rep.sample_max_abs = max_abs_at(residual, rep.sample_points);
    rep.residual = std::move(residual);
    return rep;
}

ExpPoly fermat_residual(const ExpPoly& f, const FermatEquation& eq, const Context& ctx) {
    ExpPoly g = apply(eq.op, f, ctx);
    ExpPoly lhs = ep_add(ep_pow(f, 2, ctx), ep_pow(g, 2, ctx), ctx);
    return ep_sub(lhs, eq.rhs, ctx);
}

ExpPoly nonlinear_residual(const ExpPoly& f, const NonlinearShiftEquation& eq,
                           const Context& ctx) {
    ExpPoly fm = ep_pow(f, eq.m, ctx);
    if (!eq.denom.is_zero()) {
        fm = ep_mul(ep_from_poly(eq.denom, ctx), fm, ctx);
    }
    ExpPoly ln = ep_pow(apply(OperatorSpec{eq.L}, f, ctx), eq.n, ctx);
    return ep_sub(ep_add(fm, ep_mul(eq.q, ln, ctx), ctx), eq.p, ctx);
}

} // namespace

VerificationReport verify_fermat(const ExpPoly& f, const FermatEquation& eq,
                                 const Context& ctx) {
    return make_report(fermat_residual(f, eq, ctx));
}

bool verify_factorized(const ExpPoly& f, const FermatEquation& eq, const Context& ctx) {
    ExpPoly g = apply(eq.op, f, ctx);
    Backend b = ctx.backend;
    ExpPoly ig = ep_scale(g, Scalar::i(b), ctx);
    ExpPoly prod = ep_mul(ep_add(f, ig, ctx), ep_sub(f, ig, ctx), ctx);
    return ep_sub(prod, eq.rhs, ctx).is_zero();
}

VerificationReport verify_nonlinear(const ExpPoly& f, const NonlinearShiftEquation& eq,
                                    const Context& ctx) {
    return make_report(nonlinear_residual(f, eq, ctx));
}

namespace {

// Pointwise application of an operator: shifts evaluate by argument
// translation, so this path never consults the exponential table.
std::complex<double> apply_at(const OperatorSpec& op, const ExpPoly& f, const Context& ctx,
                              std::complex<double> z) {
    if (const auto* ls = std::get_if<LinearShift>(&op)) {
        std::complex<double> c = ls->c.to_complex();
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < ls->coeffs.size(); ++j) {
            acc += ls->coeffs[j].to_complex() * ep_eval(f, z + double(j) * c);
        }
        return acc;
    }
    if (const auto* d = std::get_if<Difference>(&op)) {
        std::complex<double> c = d->c.to_complex();
        return d->P.eval_c(z) * (ep_eval(f, z + c) - ep_eval(f, z));
    }
    if (const auto* dd = std::get_if<DiffDelta>(&op)) {
        ExpPoly fk = ep_derive(f, dd->k, ctx);
        std::complex<double> c = dd->c.to_complex();
        return dd->R.eval_c(z) * (ep_eval(fk, z + c) - ep_eval(fk, z));
    }
    const auto& md = std::get<MixedDelay>(op);
    ExpPoly fm = ep_derive(f, md.m, ctx);
    ExpPoly fn = ep_derive(f, md.n, ctx);
    std::complex<double> c = md.c.to_complex();
    return md.R.eval_c(z) *
           (md.A.to_complex() * ep_eval(fm, z + c) + md.B.to_complex() * ep_eval(fn, z));
}

std::vector<std::complex<double>> ensure_points(const std::vector<std::complex<double>>& pts) {
    if (pts.size() >= 16) return pts;
    return halton_disk(kSamplePoints);
}

std::complex<double> ipow(std::complex<double> x, unsigned n) {
    std::complex<double> acc = 1.0;
    while (n > 0) {
        if (n & 1u) acc *= x;
        x *= x;
        n >>= 1u;
    }
    return acc;
}

} // namespace

double sample_residual(const ExpPoly& f, const FermatEquation& eq,
                       const std::vector<std::complex<double>>& points) {
    Context fctx(Backend::Float);
    auto pts = ensure_points(points);
    double worst = 0.0;
    for (auto z : pts) {
        std::complex<double> fv = ep_eval(f, z);
        std::complex<double> gv = apply_at(eq.op, f, fctx, z);
        std::complex<double> r = fv * fv + gv * gv - ep_eval(eq.rhs, z);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double sample_residual(const ExpPoly& f, const NonlinearShiftEquation& eq,
                       const std::vector<std::complex<double>>& points) {
    Context fctx(Backend::Float);
    auto pts = ensure_points(points);
    double worst = 0.0;
    for (auto z : pts) {
        std::complex<double> fv = ep_eval(f, z);
        std::complex<double> lv = apply_at(OperatorSpec{eq.L}, f, fctx, z);
        std::complex<double> denom = eq.denom.is_zero() ? 1.0 : eq.denom.eval_c(z);
        std::complex<double> r = denom * ipow(fv, eq.m) + ep_eval(eq.q, z) * ipow(lv, eq.n) -
                                 ep_eval(eq.p, z);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace fermatkit
