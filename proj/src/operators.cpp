#include "fermatkit/operators.hpp"

namespace fermatkit {

LinearShift make_linear_shift(const Scalar& c, std::vector<Scalar> coeffs, double eps_zero) {
    if (c.is_zero(eps_zero)) raise(ErrorCode::InvalidOperator, "linear shift: c must be nonzero");
    if (coeffs.size() < 2) {
        raise(ErrorCode::InvalidOperator, "linear shift: need tau >= 1 (at least two coefficients)");
    }
    for (const auto& a : coeffs) require_same_backend(c, a, "linear shift coefficients");
    if (coeffs.back().is_zero(eps_zero)) {
        raise(ErrorCode::InvalidOperator, "linear shift: leading coefficient a_tau must be nonzero");
    }
    return LinearShift{c, std::move(coeffs)};
}

Difference make_difference(const Scalar& c, Poly P, double eps_zero) {
    if (c.is_zero(eps_zero)) raise(ErrorCode::InvalidOperator, "difference: c must be nonzero");
    if (P.is_zero()) raise(ErrorCode::InvalidOperator, "difference: P must be nonzero");
    require_same_backend(c, P.coeffs()[0], "difference");
    return Difference{c, std::move(P)};
}

DiffDelta make_diff_delta(unsigned k, const Scalar& c, Poly R, double eps_zero) {
    if (k == 0) raise(ErrorCode::InvalidOperator, "delay delta: k must be >= 1");
    if (c.is_zero(eps_zero)) raise(ErrorCode::InvalidOperator, "delay delta: c must be nonzero");
    if (R.is_zero()) raise(ErrorCode::InvalidOperator, "delay delta: R must be nonzero");
    require_same_backend(c, R.coeffs()[0], "delay delta");
    return DiffDelta{k, c, std::move(R)};
}

MixedDelay make_mixed_delay(unsigned m, unsigned n, const Scalar& c, const Scalar& A,
                            const Scalar& B, Poly R, double eps_zero) {
    if (c.is_zero(eps_zero)) raise(ErrorCode::InvalidOperator, "mixed delay: c must be nonzero");
    if (A.is_zero(eps_zero) || B.is_zero(eps_zero)) {
        raise(ErrorCode::InvalidOperator, "mixed delay: A and B must be nonzero");
    }
    if (R.is_zero()) raise(ErrorCode::InvalidOperator, "mixed delay: R must be nonzero");
    require_same_backend(c, A, "mixed delay");
    require_same_backend(c, B, "mixed delay");
    require_same_backend(c, R.coeffs()[0], "mixed delay");
    return MixedDelay{m, n, c, A, B, std::move(R)};
}

const Scalar& operator_shift(const OperatorSpec& op) {
    return std::visit([](const auto& o) -> const Scalar& { return o.c; }, op);
}

namespace {

ExpPoly apply_linear_shift(const LinearShift& op, const ExpPoly& f, const Context& ctx) {
    ExpPoly acc;
    for (std::size_t j = 0; j < op.coeffs.size(); ++j) {
        if (op.coeffs[j].is_zero(ctx.eps_zero)) continue;
        Scalar cj = op.c * Scalar::integer(static_cast<long>(j), op.c.backend());
        ExpPoly shifted = (j == 0) ? f : ep_shift(f, cj, ctx);
        acc = ep_add(acc, ep_scale(shifted, op.coeffs[j], ctx), ctx);
    }
    return acc;
}

} // namespace

ExpPoly apply(const OperatorSpec& op, const ExpPoly& f, const Context& ctx) {
    if (const auto* ls = std::get_if<LinearShift>(&op)) {
        return apply_linear_shift(*ls, f, ctx);
    }
    if (const auto* d = std::get_if<Difference>(&op)) {
        ExpPoly diff = ep_sub(ep_shift(f, d->c, ctx), f, ctx);
        return ep_mul(ep_from_poly(d->P, ctx), diff, ctx);
    }
    if (const auto* dd = std::get_if<DiffDelta>(&op)) {
        ExpPoly fk = ep_derive(f, dd->k, ctx);
        ExpPoly diff = ep_sub(ep_shift(fk, dd->c, ctx), fk, ctx);
        return ep_mul(ep_from_poly(dd->R, ctx), diff, ctx);
    }
    const auto& md = std::get<MixedDelay>(op);
    ExpPoly fm = ep_shift(ep_derive(f, md.m, ctx), md.c, ctx);
    ExpPoly fn = ep_derive(f, md.n, ctx);
    ExpPoly comb = ep_add(ep_scale(fm, md.A, ctx), ep_scale(fn, md.B, ctx), ctx);
    return ep_mul(ep_from_poly(md.R, ctx), comb, ctx);
}

ExpPoly delta_c(const ExpPoly& f, const Scalar& c, const Context& ctx) {
    Backend b = c.backend();
    LinearShift d = make_linear_shift(c, {-Scalar::one(b), Scalar::one(b)}, ctx.eps_zero);
    return apply(OperatorSpec{d}, f, ctx);
}

} // namespace fermatkit
