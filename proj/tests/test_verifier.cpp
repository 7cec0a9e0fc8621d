#include <doctest.h>

#include <random>

#include "fermatkit/fixtures.hpp"
#include "test_util.hpp"

using namespace fermatkit;
using tutil::expect_error;
using tutil::rat;

TEST_CASE("equation factories reject degenerate inputs") {
    Context ctx(Backend::Exact);
    LinearShift L = make_linear_shift(Scalar::exact(1), {Scalar::exact(1), Scalar::exact(1)});
    expect_error(ErrorCode::InvalidEquation,
                 [&] { (void)make_fermat_equation(OperatorSpec{L}, ep_zero()); });
    ExpPoly one = ep_const(Scalar::exact(1), ctx);
    expect_error(ErrorCode::InvalidEquation,
                 [&] { (void)make_nonlinear_shift_equation(0, 1, one, one, L); });
    expect_error(ErrorCode::InvalidEquation,
                 [&] { (void)make_nonlinear_shift_equation(1, 0, one, one, L); });
    expect_error(ErrorCode::InvalidEquation,
                 [&] { (void)make_nonlinear_shift_equation(1, 1, ep_zero(), one, L); });
    // p = 0 is a legal right-hand side for the nonlinear form.
    CHECK(make_nonlinear_shift_equation(1, 1, one, ep_zero(), L).p.is_zero());
}

TEST_CASE("quasi-random sample points are deterministic and stay in the disk") {
    auto pts = halton_disk(64);
    CHECK(pts.size() == 64);
    for (auto z : pts) CHECK(std::abs(z) <= 3.0 + 1e-12);
    auto again = halton_disk(64);
    for (std::size_t t = 0; t < pts.size(); ++t) CHECK(pts[t] == again[t]);
    // No duplicate points in a modest prefix.
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            CHECK(std::abs(pts[a] - pts[b]) > 1e-9);
        }
    }
    auto small = halton_disk(10, 0.5);
    for (auto z : small) CHECK(std::abs(z) <= 0.5 + 1e-12);
}

TEST_CASE("the built-in corpus verifies exactly as its expectations state") {
    for (const Fixture& fx : builtin_fixtures()) {
        CAPTURE(fx.name);
        VerificationReport rep = run_fixture(fx);
        if (fx.expect_pass) {
            if (fx.ctx.backend == Backend::Exact) {
                CHECK(rep.symbolic_pass);
                CHECK(rep.residual.is_zero());
                CHECK(rep.sample_max_abs == 0.0);
            } else {
                CHECK((rep.symbolic_pass || rep.sample_max_abs < 1e-8));
            }
        } else {
            CHECK(!rep.symbolic_pass);
            CHECK(rep.sample_max_abs > 1e-3);
        }
    }
}

TEST_CASE("fixture lookup finds every corpus entry by name") {
    auto all = builtin_fixtures();
    CHECK(all.size() >= 20);
    for (const Fixture& fx : all) {
        const Fixture* hit = find_fixture(all, fx.name);
        REQUIRE(hit != nullptr);
        CHECK(hit->summary == fx.summary);
    }
    CHECK(find_fixture(all, "no-such-fixture") == nullptr);
}

TEST_CASE("factorized verification agrees with the squared residual") {
    // Random instances almost never satisfy the equation; the two verifiers
    // must nevertheless agree on every single draw.
    Context ctx(Backend::Exact);
    ctx.declare_exponential(Scalar::exact(1), Scalar::exact(5));
    std::mt19937 rng(20250817);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<int> freq(-1, 1);
    auto rand_poly = [&] {
        std::vector<Scalar> c;
        int deg = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int d = 0; d <= deg; ++d) c.push_back(rat(num(rng), den(rng)));
        return Poly(std::move(c));
    };
    auto rand_ep = [&] {
        std::vector<ExpTerm> terms;
        int nterms = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int t = 0; t < nterms; ++t) {
            terms.push_back({rand_poly(), Scalar::integer(freq(rng), Backend::Exact)});
        }
        return normalize(std::move(terms), ctx);
    };
    int agreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ExpPoly f = rand_ep();
        ExpPoly rhs = rand_ep();
        if (rhs.is_zero()) continue;
        Scalar lead = rat(num(rng), den(rng));
        if (lead.is_zero()) lead = Scalar::exact(1);
        LinearShift L = make_linear_shift(Scalar::exact(1), {rat(num(rng), den(rng)), lead});
        FermatEquation eq = make_fermat_equation(OperatorSpec{L}, rhs);
        bool squared = verify_fermat(f, eq, ctx).symbolic_pass;
        bool factored = verify_factorized(f, eq, ctx);
        CHECK(squared == factored);
        ++agreements;
    }
    CHECK(agreements > 150);
    // And they agree on genuine solutions, where both must say yes.
    for (const Fixture& fx : builtin_fixtures()) {
        if (fx.ctx.backend != Backend::Exact || !fx.expect_pass) continue;
        const auto* fe = std::get_if<FermatEquation>(&fx.equation);
        if (!fe) continue;
        CAPTURE(fx.name);
        CHECK(verify_factorized(fx.f, *fe, fx.ctx));
    }
}

TEST_CASE("a one-percent multiplier error is loudly rejected") {
    auto all = builtin_fixtures();
    const Fixture* fx = find_fixture(all, "diffdelta-const-perturbed-rejects");
    REQUIRE(fx != nullptr);
    CHECK(!fx->expect_pass);
    VerificationReport rep = run_fixture(*fx);
    CHECK(!rep.symbolic_pass);
    CHECK(rep.sample_max_abs > 1.0);
}

TEST_CASE("the sampling oracle confirms every float fixture independently") {
    // The oracle shifts by argument translation and never consults the
    // registered exponential table, so it cross-validates the symbolic path.
    // Pointwise cancellation noise grows with the dominant-term magnitude
    // (|f|^m reaches ~1e10 for the wider frequencies), so the pass bound is
    // relative to the peak of f^m over the same sample points.
    auto pts = halton_disk(24);
    for (const Fixture& fx : builtin_fixtures()) {
        if (fx.ctx.backend != Backend::Float) continue;
        CAPTURE(fx.name);
        double worst = 0.0;
        unsigned mpow = 2;
        if (const auto* fe = std::get_if<FermatEquation>(&fx.equation)) {
            worst = sample_residual(fx.f, *fe, pts);
        } else {
            const auto& ne = std::get<NonlinearShiftEquation>(fx.equation);
            worst = sample_residual(fx.f, ne, pts);
            mpow = ne.m;
        }
        double fpeak = 1.0;
        for (auto z : pts) fpeak = std::max(fpeak, std::abs(ep_eval(fx.f, z)));
        if (fx.expect_pass) {
            CHECK(worst < 1e-12 * std::pow(fpeak, mpow));
        } else {
            CHECK(worst > 1e-3);
        }
    }
}

TEST_CASE("sampling honors caller-provided points and pads short lists") {
    auto all = builtin_fixtures();
    const Fixture* fx = find_fixture(all, "nonlinear-z-exp-float");
    REQUIRE(fx != nullptr);
    const auto& eq = std::get<NonlinearShiftEquation>(fx->equation);
    // A 2-point list is below the floor and must be padded internally.
    CHECK(sample_residual(fx->f, eq, {{0.1, 0.0}, {0.2, 0.3}}) < 1e-8);
    CHECK(sample_residual(fx->f, eq, halton_disk(40, 2.0)) < 1e-8);
}

TEST_CASE("reports carry the residual, the verdict, and the sampled bound") {
    auto all = builtin_fixtures();
    const Fixture* fx = find_fixture(all, "diffdelta-const-coeffs-exact");
    REQUIRE(fx != nullptr);
    VerificationReport rep = run_fixture(*fx);
    CHECK(rep.symbolic_pass);
    CHECK(rep.residual.is_zero());
    CHECK(rep.sample_max_abs == 0.0);
    CHECK(rep.sample_points.size() >= 16);
}
