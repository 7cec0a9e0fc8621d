#include "fermatkit/fixtures.hpp"

#include <numbers>

namespace fermatkit {

namespace {

Scalar rat(long num, long den) { return Scalar::exact(mpq_class(num, den)); }

/// Constant-pair instance f = (2 e^{3z+2} + 3 e^{-(3z+2)})/2 against
/// f^2 + (R (f'(z+c) - f'(z)))^2 = 6 with c = pi i, R = i/6.
Fixture const_pair(Backend be) {
    Context ctx(be);
    Scalar c = be == Backend::Exact ? Scalar::exact(1) // stand-in, pi i units
                                    : Scalar::floating(0.0, std::numbers::pi);
    Scalar q1 = Scalar::integer(2, be), q2 = Scalar::integer(3, be);
    Scalar b = Scalar::integer(2, be);
    SolutionFamily fam = build_case_i(1, c, 1, q1, q2, b, ctx);
    Fixture fx;
    fx.name = be == Backend::Exact ? "diffdelta-const-coeffs-exact"
                                   : "diffdelta-const-coeffs-float";
    fx.summary = "constant coefficient pair, first derivative, half-turn step";
    fx.ctx = fam.ctx;
    fx.f = render_cosh(fam.f, fam.ctx);
    fx.equation = make_fermat_equation(fam.op, fam.rhs);
    return fx;
}

/// Linear-pair instance f = (z e^{2z} + z e^{-2z})/2 against
/// f^2 + (R (f'(z+c) - f'(z)))^2 = z^2 with e^{2c} = 1, R = z/(2ic).
Fixture linear_pair(Backend be) {
    Context ctx(be);
    Scalar a = Scalar::integer(2, be);
    Scalar c;
    if (be == Backend::Exact) {
        c = Scalar::exact(1); // stand-in for the full period 2 pi i / a
        ctx.declare_exponential(a * c, Scalar::exact(1));
    } else {
        c = Scalar::floating(0.0, std::numbers::pi); // e^{2 pi i} = 1
    }
    Poly zp = Poly::z(be);
    SolutionFamily fam = build_case_ii(1, a, c, zp, zp, Scalar::zero(be), ctx);
    Fixture fx;
    fx.name = be == Backend::Exact ? "diffdelta-linear-coeffs-exact"
                                   : "diffdelta-linear-coeffs-float";
    fx.summary = "degree-one coefficient pair, full-period step";
    fx.ctx = fam.ctx;
    fx.f = render_cosh(fam.f, fam.ctx);
    fx.equation = make_fermat_equation(fam.op, fam.rhs);
    return fx;
}

Fixture mixed(Backend be, const char* name, const char* summary, unsigned m, unsigned n,
              long A, long B, long a, long b, Branch branch) {
    Context ctx(be);
    SolutionFamily fam =
        build_mixed(m, n, Scalar::integer(A, be), Scalar::integer(B, be),
                    Scalar::integer(a, be), Scalar::integer(b, be), branch, ctx);
    Fixture fx;
    fx.name = name;
    fx.summary = summary;
    fx.ctx = fam.ctx;
    fx.f = render_cosh(fam.f, fam.ctx);
    fx.equation = make_fermat_equation(fam.op, fam.rhs);
    return fx;
}

Fixture sin_shift(Backend be, std::size_t tau) {
    Context ctx(be);
    Scalar c = Scalar::one(be);
    auto out = build_sin_family(c, tau, {}, ctx);
    const SolutionFamily& fam = std::get<SolutionFamily>(out);
    Fixture fx;
    fx.name = std::string("sin-shift-tau") + std::to_string(tau) +
              (be == Backend::Exact ? "-exact" : "-float");
    fx.summary = "quarter-turn linear shift family (sine solution)";
    fx.ctx = fam.ctx;
    fx.f = render_cosh(fam.f, fam.ctx);
    fx.equation = make_fermat_equation(fam.op, fam.rhs);
    return fx;
}

/// f = e^{w z} + z with e^{w c} = -1 against f^2 - z (L f) = e^{2 w z},
/// tau = 3 coefficients (7/4, -1, -1/4, 1/2).
Fixture exp_plus_z(Backend be) {
    Context ctx(be);
    Scalar c = Scalar::one(be);
    Scalar w;
    if (be == Backend::Exact) {
        w = Scalar::exact(1); // stand-in for pi i
        ctx.declare_exponential(w * c, Scalar::exact(-1));
    } else {
        w = Scalar::floating(0.0, std::numbers::pi);
    }
    const double e = ctx.eps_zero;
    ExpPoly f = ep_add(ep_term(Poly::constant(Scalar::one(be), e), w, ctx),
                       ep_from_poly(Poly::z(be), ctx), ctx);
    std::vector<Scalar> coeffs;
    if (be == Backend::Exact) {
        coeffs = {rat(7, 4), Scalar::exact(-1), rat(-1, 4), rat(1, 2)};
    } else {
        coeffs = {Scalar::floating(1.75), Scalar::floating(-1.0), Scalar::floating(-0.25),
                  Scalar::floating(0.5)};
    }
    LinearShift L = make_linear_shift(c, coeffs, e);
    ExpPoly q = ep_from_poly(Poly::z(be).scale(-Scalar::one(be), e), ctx);
    ExpPoly p = ep_term(Poly::constant(Scalar::one(be), e), w + w, ctx);
    Fixture fx;
    fx.name = be == Backend::Exact ? "nonlinear-exp-plus-z-exact" : "nonlinear-exp-plus-z-float";
    fx.summary = "square plus z-weighted shift combination with exponential-plus-z solution";
    fx.ctx = ctx;
    fx.f = f;
    fx.equation = make_nonlinear_shift_equation(2, 1, q, p, L);
    return fx;
}

/// f = z e^{w z} with e^{w c} = -1 against (z+1) f + (L f) = z (z+2) e^{w z},
/// the cleared form of f + (L f)/(z+1) = z(z+2)/(z+1) e^{w z};
/// tau = 2 coefficients (2, 2, 1).
Fixture z_exp(Backend be) {
    Context ctx(be);
    Scalar c = Scalar::one(be);
    Scalar w;
    if (be == Backend::Exact) {
        w = Scalar::exact(1); // stand-in for pi i
        ctx.declare_exponential(w * c, Scalar::exact(-1));
    } else {
        w = Scalar::floating(0.0, std::numbers::pi);
    }
    const double e = ctx.eps_zero;
    const Scalar one = Scalar::one(be);
    ExpPoly f = ep_term(Poly::z(be), w, ctx);
    LinearShift L = make_linear_shift(
        c, {Scalar::integer(2, be), Scalar::integer(2, be), one}, e);
    ExpPoly q = ep_const(one, ctx);
    Poly zz2({Scalar::zero(be), Scalar::integer(2, be), one}, e); // z^2 + 2z
    ExpPoly p = ep_term(zz2, w, ctx);
    Poly denom({one, one}, e); // z + 1
    Fixture fx;
    fx.name = be == Backend::Exact ? "nonlinear-z-exp-exact" : "nonlinear-z-exp-float";
    fx.summary = "rational-coefficient shift equation with z-times-exponential solution";
    fx.ctx = ctx;
    fx.f = f;
    fx.equation = make_nonlinear_shift_equation(1, 1, q, p, L, denom);
    return fx;
}

/// The constant-pair instance with R scaled by 1.01: must be rejected.
Fixture perturbed_const_pair() {
    Context ctx(Backend::Float);
    Scalar c = Scalar::floating(0.0, std::numbers::pi);
    SolutionFamily fam = build_case_i(1, c, 1, Scalar::floating(2.0), Scalar::floating(3.0),
                                      Scalar::floating(2.0), ctx);
    const DiffDelta& dd = std::get<DiffDelta>(fam.op);
    Poly r_off = dd.R.scale(Scalar::floating(1.01), ctx.eps_zero);
    Fixture fx;
    fx.name = "diffdelta-const-perturbed-rejects";
    fx.summary = "multiplier off by 1%: verification must fail";
    fx.ctx = fam.ctx;
    fx.f = render_cosh(fam.f, fam.ctx);
    fx.equation = make_fermat_equation(make_diff_delta(dd.k, dd.c, r_off, ctx.eps_zero),
                                       fam.rhs);
    fx.expect_pass = false;
    return fx;
}

/// Pure difference operator (a_0, a_1) = (-1, 1) admits no solution of the
/// sine shape; the quarter-turn candidate must be rejected.
Fixture difference_probe() {
    Context ctx(Backend::Float);
    const double e = ctx.eps_zero;
    Scalar c = Scalar::one(Backend::Float);
    Scalar a = Scalar::floating(0.0, std::numbers::pi / 2.0);
    Scalar b = Scalar::floating(0.0, -std::numbers::pi / 2.0);
    CoshForm shape{a, b, Poly::constant(Scalar::one(Backend::Float), e),
                   Poly::constant(Scalar::one(Backend::Float), e)};
    LinearShift diff = make_linear_shift(
        c, {Scalar::floating(-1.0), Scalar::floating(1.0)}, e);
    Fixture fx;
    fx.name = "difference-shift-no-solution-probe";
    fx.summary = "plain difference operator rejects the sine candidate";
    fx.ctx = ctx;
    fx.f = render_cosh(shape, ctx);
    fx.equation = make_fermat_equation(OperatorSpec{diff}, ep_const(Scalar::one(Backend::Float), ctx));
    fx.expect_pass = false;
    return fx;
}

} // namespace

std::vector<Fixture> builtin_fixtures() {
    std::vector<Fixture> all;
    all.push_back(const_pair(Backend::Exact));
    all.push_back(const_pair(Backend::Float));
    all.push_back(linear_pair(Backend::Exact));
    all.push_back(linear_pair(Backend::Float));
    all.push_back(mixed(Backend::Float, "mixed-even-even-float",
                        "both orders even; multiplier root is a surd", 2, 2, 1, 3, 2, 3,
                        Branch::Plus));
    all.push_back(mixed(Backend::Exact, "mixed-odd-odd-exact",
                        "both orders odd; multiplier -1", 1, 3, 5, 1, 3, 4, Branch::Minus));
    all.push_back(mixed(Backend::Float, "mixed-odd-odd-float",
                        "both orders odd; multiplier -1", 1, 3, 5, 1, 3, 4, Branch::Minus));
    all.push_back(mixed(Backend::Exact, "mixed-even-odd-exact",
                        "even shifted order, odd plain order; multiplier i", 2, 3, 1, 3, 1, 2,
                        Branch::Plus));
    all.push_back(mixed(Backend::Float, "mixed-even-odd-float",
                        "even shifted order, odd plain order; multiplier i", 2, 3, 1, 3, 1, 2,
                        Branch::Plus));
    all.push_back(mixed(Backend::Exact, "mixed-odd-even-exact",
                        "odd shifted order, even plain order; multiplier 1/3", 1, 2, 3, 2, 2, 3,
                        Branch::Plus));
    all.push_back(mixed(Backend::Float, "mixed-odd-even-float",
                        "odd shifted order, even plain order; multiplier 1/3", 1, 2, 3, 2, 2, 3,
                        Branch::Plus));
    all.push_back(sin_shift(Backend::Exact, 1));
    all.push_back(sin_shift(Backend::Float, 1));
    all.push_back(sin_shift(Backend::Exact, 2));
    all.push_back(sin_shift(Backend::Float, 2));
    all.push_back(exp_plus_z(Backend::Exact));
    all.push_back(exp_plus_z(Backend::Float));
    all.push_back(z_exp(Backend::Exact));
    all.push_back(z_exp(Backend::Float));
    all.push_back(perturbed_const_pair());
    all.push_back(difference_probe());
    return all;
}

const Fixture* find_fixture(const std::vector<Fixture>& all, const std::string& name) {
    for (const auto& fx : all) {
        if (fx.name == name) return &fx;
    }
    return nullptr;
}

VerificationReport run_fixture(const Fixture& fx) {
    if (const auto* fe = std::get_if<FermatEquation>(&fx.equation)) {
        return verify_fermat(fx.f, *fe, fx.ctx);
    }
    return verify_nonlinear(fx.f, std::get<NonlinearShiftEquation>(fx.equation), fx.ctx);
}

} // namespace fermatkit
