#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermatkit/fixtures.hpp"
#include "fermatkit/nonexistence.hpp"
#include "test_util.hpp"

using namespace fermatkit;
using tutil::expect_error;

namespace {

bool identical(const ExpPoly& a, const ExpPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a.terms()[t].freq.to_complex() != b.terms()[t].freq.to_complex()) return false;
        const auto& pa = a.terms()[t].poly.coeffs();
        const auto& pb = b.terms()[t].poly.coeffs();
        if (pa.size() != pb.size()) return false;
        for (std::size_t d = 0; d < pa.size(); ++d) {
            if (pa[d].to_complex() != pb[d].to_complex()) return false;
        }
    }
    return true;
}

NonlinearShiftEquation exp_plus_z_equation(Context& ctx_out) {
    static std::vector<Fixture> all = builtin_fixtures();
    const Fixture* fx = find_fixture(all, "nonlinear-exp-plus-z-float");
    REQUIRE(fx != nullptr);
    ctx_out = fx->ctx;
    return std::get<NonlinearShiftEquation>(fx->equation);
}

/// sigma e^{pi i z} + z for sigma = +-1, the two lattice solutions of the
/// exponential-plus-z equation.
bool has_exp_plus_z_shape(const ExpPoly& sol) {
    if (sol.size() != 2) return false;
    const ExpTerm* zero_term = nullptr;
    const ExpTerm* exp_term = nullptr;
    for (const auto& t : sol.terms()) {
        if (std::abs(t.freq.to_complex()) < 1e-6) {
            zero_term = &t;
        } else if (std::abs(t.freq.to_complex() - std::complex<double>(0.0, std::numbers::pi)) <
                   1e-6) {
            exp_term = &t;
        }
    }
    if (!zero_term || !exp_term) return false;
    auto z0 = zero_term->poly.coeff(0, Backend::Float).to_complex();
    auto z1 = zero_term->poly.coeff(1, Backend::Float).to_complex();
    if (std::abs(z0) > 1e-6 || std::abs(z1 - 1.0) > 1e-6) return false;
    auto e0 = exp_term->poly.coeff(0, Backend::Float).to_complex();
    auto e1 = exp_term->poly.coeff(1, Backend::Float).to_complex();
    return std::abs(std::abs(e0) - 1.0) < 1e-6 && std::abs(e0.imag()) < 1e-6 &&
           std::abs(e1) < 1e-6;
}

} // namespace

TEST_CASE("gate thresholds match the published inequalities exactly") {
    CHECK(!gate(7, 1, 1, FunctionClass::Meromorphic).guaranteed);
    CHECK(gate(8, 1, 1, FunctionClass::Meromorphic).guaranteed);
    CHECK(gate(8, 1, 1, FunctionClass::Meromorphic).rule ==
          "meromorphic-linear-shift-threshold");
    CHECK(!gate(10, 1, 2, FunctionClass::Meromorphic).guaranteed);
    CHECK(gate(11, 1, 2, FunctionClass::Meromorphic).guaranteed);
    CHECK(!gate(17, 2, 3, FunctionClass::Meromorphic).guaranteed);
    CHECK(gate(18, 2, 3, FunctionClass::Meromorphic).guaranteed);
    CHECK(!gate(2, 1, 1, FunctionClass::Entire).guaranteed);
    CHECK(gate(3, 1, 1, FunctionClass::Entire).guaranteed);
    CHECK(gate(3, 1, 7, FunctionClass::Entire).guaranteed); // tau-independent
    CHECK(gate(2, 1, 1, FunctionClass::Entire).rule == "entire-linear-shift-threshold");
    CHECK(std::string(function_class_name(FunctionClass::Entire)) == "entire");
    CHECK(std::string(function_class_name(FunctionClass::Meromorphic)) == "meromorphic");
}

TEST_CASE("gate verdicts are monotone in m with the right first-true point") {
    for (FunctionClass cls : {FunctionClass::Entire, FunctionClass::Meromorphic}) {
        for (unsigned n = 1; n <= 3; ++n) {
            for (std::size_t tau = 1; tau <= 3; ++tau) {
                unsigned first = 0;
                bool prev = false;
                for (unsigned m = 1; m <= 30; ++m) {
                    bool g = gate(m, n, tau, cls).guaranteed;
                    CHECK(!(prev && !g)); // once guaranteed, stays guaranteed
                    if (g && first == 0) first = m;
                    prev = g;
                }
                unsigned expected = cls == FunctionClass::Meromorphic
                                        ? static_cast<unsigned>((tau + 1) * (n + 2) + 2)
                                        : n + 2;
                CAPTURE(n);
                CAPTURE(tau);
                CHECK(first == expected);
            }
        }
    }
    expect_error(ErrorCode::InvalidArgument,
                 [] { (void)gate(0, 1, 1, FunctionClass::Entire); });
    expect_error(ErrorCode::InvalidArgument,
                 [] { (void)gate(1, 0, 1, FunctionClass::Entire); });
    expect_error(ErrorCode::InvalidArgument,
                 [] { (void)gate(1, 1, 0, FunctionClass::Meromorphic); });
}

TEST_CASE("default lattice holds the symmetric pi-multiples, sorted") {
    AnsatzSpace space = default_lattice(Scalar::floating(1.0), 4, 2, 3);
    REQUIRE(space.freq_lattice.size() == 9);
    CHECK(space.max_poly_degree == 2);
    CHECK(space.max_terms == 3);
    for (std::size_t t = 0; t < 9; ++t) {
        auto v = space.freq_lattice[t].to_complex();
        CHECK(std::abs(v.real()) < 1e-12);
        double expected_im = (static_cast<double>(t) - 4.0) * std::numbers::pi;
        CHECK(std::abs(v.imag() - expected_im) < 1e-12);
    }
    // A complex step tilts the lattice off the imaginary axis.
    AnsatzSpace tilted = default_lattice(Scalar::floating(0.0, 1.0), 1);
    REQUIRE(tilted.freq_lattice.size() == 3);
    CHECK(std::abs(tilted.freq_lattice[0].to_complex().real() + std::numbers::pi) < 1e-12);
    expect_error(ErrorCode::InvalidArgument,
                 [] { (void)default_lattice(Scalar::floating(0.0), 4); });
    expect_error(ErrorCode::InvalidArgument,
                 [] { (void)default_lattice(Scalar::floating(1.0), -1); });
}

TEST_CASE("ansatz search recovers the exponential-plus-z solutions") {
    Context ctx;
    NonlinearShiftEquation eq = exp_plus_z_equation(ctx);
    AnsatzSpace space = default_lattice(Scalar::floating(1.0), 2, 1, 2);
    REQUIRE(space.freq_lattice.size() == 5);
    SearchOptions opts;
    SearchOutcome out = ansatz_search(eq, space, opts, ctx);
    REQUIRE(std::holds_alternative<std::vector<ExpPoly>>(out));
    const auto& sols = std::get<std::vector<ExpPoly>>(out);
    REQUIRE(!sols.empty());
    bool shape_found = false;
    for (const ExpPoly& sol : sols) {
        CHECK(sample_residual(sol, eq) < 1e-8);
        shape_found = shape_found || has_exp_plus_z_shape(sol);
    }
    CHECK(shape_found);
}

TEST_CASE("parallel and serial search paths agree term for term") {
    Context ctx;
    NonlinearShiftEquation eq = exp_plus_z_equation(ctx);
    AnsatzSpace space = default_lattice(Scalar::floating(1.0), 2, 1, 2);
    SearchOptions par;
    par.parallel = true;
    SearchOptions ser = par;
    ser.parallel = false;
    auto a = ansatz_search(eq, space, par, ctx);
    auto b = ansatz_search(eq, space, ser, ctx);
    auto c = ansatz_search(eq, space, par, ctx); // repeatability
    REQUIRE(std::holds_alternative<std::vector<ExpPoly>>(a));
    const auto& va = std::get<std::vector<ExpPoly>>(a);
    const auto& vb = std::get<std::vector<ExpPoly>>(b);
    const auto& vc = std::get<std::vector<ExpPoly>>(c);
    REQUIRE(va.size() == vb.size());
    REQUIRE(va.size() == vc.size());
    for (std::size_t t = 0; t < va.size(); ++t) {
        CHECK(identical(va[t], vb[t]));
        CHECK(identical(va[t], vc[t]));
    }
}

TEST_CASE("a gate-covered equation exhausts the space with a certificate") {
    Context ctx(Backend::Float);
    const double e = ctx.eps_zero;
    // f^8 + (f(z) + f(z+1)) = z has no admissible solution (m = 8 clears the
    // tau = 1, n = 1 threshold), so the search must come back empty-handed.
    REQUIRE(gate(8, 1, 1, FunctionClass::Meromorphic).guaranteed);
    LinearShift L = make_linear_shift(Scalar::floating(1.0),
                                      {Scalar::floating(1.0), Scalar::floating(1.0)}, e);
    NonlinearShiftEquation eq = make_nonlinear_shift_equation(
        8, 1, ep_const(Scalar::floating(1.0), ctx), ep_from_poly(Poly::z(Backend::Float), ctx),
        L);
    AnsatzSpace space = default_lattice(Scalar::floating(1.0), 1, 1, 1);
    SearchOptions opts;
    opts.starts = 2;
    opts.max_iterations = 25;
    opts.parallel = false;
    SearchOutcome out = ansatz_search(eq, space, opts, ctx);
    REQUIRE(std::holds_alternative<ExhaustionCertificate>(out));
    const auto& cert = std::get<ExhaustionCertificate>(out);
    CHECK(cert.supports_examined == 3);
    CHECK(cert.tol == opts.tol);
    CHECK(cert.space.freq_lattice.size() == 3);
}

TEST_CASE("search validates its budget and options before any work") {
    Context ctx;
    NonlinearShiftEquation eq = exp_plus_z_equation(ctx);
    AnsatzSpace space = default_lattice(Scalar::floating(1.0), 2, 1, 2);
    SearchOptions tight;
    tight.budget = 1;
    expect_error(ErrorCode::BudgetExceeded,
                 [&] { (void)ansatz_search(eq, space, tight, ctx); });
    Context exact_ctx(Backend::Exact);
    SearchOptions opts;
    expect_error(ErrorCode::InvalidArgument,
                 [&] { (void)ansatz_search(eq, space, opts, exact_ctx); });
    AnsatzSpace empty = space;
    empty.max_terms = 0;
    expect_error(ErrorCode::InvalidArgument,
                 [&] { (void)ansatz_search(eq, empty, opts, ctx); });
    SearchOptions bad_tol;
    bad_tol.tol = 0.0;
    expect_error(ErrorCode::InvalidArgument,
                 [&] { (void)ansatz_search(eq, space, bad_tol, ctx); });
    SearchOptions bad_starts;
    bad_starts.starts = 0;
    expect_error(ErrorCode::InvalidArgument,
                 [&] { (void)ansatz_search(eq, space, bad_starts, ctx); });
}
