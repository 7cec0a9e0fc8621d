#include <doctest.h>

#include "fermatkit/exppoly.hpp"
#include "fermatkit/verifier.hpp"
#include "test_util.hpp"

using namespace fermatkit;
using tutil::expect_error;
using tutil::rat;

namespace {

Poly pconst(long v, Backend be = Backend::Exact) {
    return Poly::constant(Scalar::integer(v, be));
}

} // namespace

TEST_CASE("normalize merges frequencies, drops zeros, and sorts") {
    Context ctx(Backend::Exact);
    std::vector<ExpTerm> terms;
    terms.push_back({pconst(1), Scalar::exact(2)});
    terms.push_back({pconst(4), Scalar::exact(-1)});
    terms.push_back({pconst(2), Scalar::exact(2)});  // same frequency as the first
    terms.push_back({Poly(), Scalar::exact(5)});     // zero polynomial, dropped
    ExpPoly f = normalize(terms, ctx);
    REQUIRE(f.size() == 2);
    CHECK(f.terms()[0].freq.equals(Scalar::exact(-1)));
    CHECK(f.terms()[0].poly.equals(pconst(4)));
    CHECK(f.terms()[1].freq.equals(Scalar::exact(2)));
    CHECK(f.terms()[1].poly.equals(pconst(3)));
    // Idempotent: renormalizing canonical terms changes nothing.
    ExpPoly g = normalize(f.terms(), ctx);
    CHECK(ep_equal(f, g, ctx));
}

TEST_CASE("merging cancels to the zero function exactly when all terms vanish") {
    Context ctx(Backend::Exact);
    ExpPoly f = ep_term(pconst(3), Scalar::exact(1, 1), ctx);
    CHECK(ep_sub(f, f, ctx).is_zero());
    CHECK(ep_zero().is_zero());
    CHECK(ep_add(f, ep_neg(f), ctx).is_zero());
    CHECK(!ep_sub(f, ep_scale(f, Scalar::exact(2), ctx), ctx).is_zero());
}

TEST_CASE("float frequencies merge within the clustering tolerance") {
    Context ctx(Backend::Float);
    std::vector<ExpTerm> terms;
    terms.push_back({pconst(1, Backend::Float), Scalar::floating(1.0)});
    terms.push_back({pconst(1, Backend::Float), Scalar::floating(1.0 + 1e-12)});
    terms.push_back({pconst(1, Backend::Float), Scalar::floating(1.0 + 1e-3)});
    ExpPoly f = normalize(terms, ctx);
    CHECK(f.size() == 2); // the 1e-12 neighbor merged, the 1e-3 one did not
}

TEST_CASE("normalize rejects terms with mixed backends") {
    Context ctx(Backend::Exact);
    std::vector<ExpTerm> terms;
    terms.push_back({pconst(1), Scalar::exact(1)});
    terms.push_back({pconst(1, Backend::Float), Scalar::floating(2.0)});
    expect_error(ErrorCode::BackendMismatch, [&] { (void)normalize(terms, ctx); });
}

TEST_CASE("squaring a two-sided exponential pair produces the middle cross term") {
    Context ctx(Backend::Exact);
    // f = e^{3z} + (3/2) e^{-3z}; f^2 = e^{6z} + 3 + (9/4) e^{-6z}.
    ExpPoly f = ep_add(ep_term(pconst(1), Scalar::exact(3), ctx),
                       ep_term(Poly::constant(rat(3, 2)), Scalar::exact(-3), ctx), ctx);
    ExpPoly f2 = ep_pow(f, 2, ctx);
    REQUIRE(f2.size() == 3);
    CHECK(f2.terms()[0].freq.equals(Scalar::exact(-6)));
    CHECK(f2.terms()[0].poly.equals(Poly::constant(rat(9, 4))));
    CHECK(f2.terms()[1].freq.equals(Scalar::exact(0)));
    CHECK(f2.terms()[1].poly.equals(Poly::constant(Scalar::exact(3))));
    CHECK(f2.terms()[2].freq.equals(Scalar::exact(6)));
    CHECK(f2.terms()[2].poly.equals(pconst(1)));
    CHECK(ep_equal(f2, ep_mul(f, f, ctx), ctx));

    // Numeric cross-check of the same identity on the float twin.
    Context fctx(Backend::Float);
    ExpPoly g = ep_to_float(f, fctx);
    ExpPoly g2 = ep_pow(g, 2, fctx);
    for (auto z : halton_disk(20, 1.5)) {
        auto v = ep_eval(g, z);
        CHECK(tutil::close(ep_eval(g2, z), v * v, 1e-8));
    }
}

TEST_CASE("power zero is one and powers compose multiplicatively") {
    Context ctx(Backend::Exact);
    ExpPoly f = ep_add(ep_term(Poly::z(Backend::Exact), Scalar::exact(1), ctx),
                       ep_const(Scalar::exact(2), ctx), ctx);
    CHECK(ep_equal(ep_pow(f, 0, ctx), ep_const(Scalar::exact(1), ctx), ctx));
    CHECK(ep_equal(ep_pow(f, 1, ctx), f, ctx));
    CHECK(ep_equal(ep_pow(f, 3, ctx), ep_mul(f, ep_mul(f, f, ctx), ctx), ctx));
}

TEST_CASE("differentiation maps P e^{mu z} to (P' + mu P) e^{mu z}") {
    Context ctx(Backend::Exact);
    Poly p({Scalar::exact(1), Scalar::exact(0), Scalar::exact(2)}); // 1 + 2z^2
    Scalar mu = Scalar::exact(3);
    ExpPoly f = ep_term(p, mu, ctx);
    ExpPoly df = ep_derive(f, 1, ctx);
    REQUIRE(df.size() == 1);
    CHECK(df.terms()[0].poly.equals(p.derive().add(p.scale(mu))));
    // k-fold derivative equals k single steps.
    CHECK(ep_equal(ep_derive(f, 3, ctx), ep_derive(ep_derive(ep_derive(f, 1, ctx), 1, ctx), 1, ctx), ctx));
    // Derivative of a degree-0 polynomial term at frequency 0 vanishes.
    CHECK(ep_derive(ep_const(Scalar::exact(7), ctx), 1, ctx).is_zero());
    // Linearity.
    ExpPoly g = ep_term(Poly::z(Backend::Exact), Scalar::exact(-1), ctx);
    CHECK(ep_equal(ep_derive(ep_add(f, g, ctx), 1, ctx),
                   ep_add(ep_derive(f, 1, ctx), ep_derive(g, 1, ctx), ctx), ctx));
}

TEST_CASE("derivative agrees with a finite difference on float data") {
    Context ctx(Backend::Float);
    ExpPoly f = ep_add(ep_term(Poly({Scalar::floating(0.5), Scalar::floating(1.0)}),
                               Scalar::floating(0.0, 1.0), ctx),
                       ep_term(pconst(2, Backend::Float), Scalar::floating(-0.5), ctx), ctx);
    ExpPoly df = ep_derive(f, 1, ctx);
    const double h = 1e-6;
    for (auto z : halton_disk(12, 1.0)) {
        auto fd = (ep_eval(f, z + h) - ep_eval(f, z - h)) / (2.0 * h);
        CHECK(tutil::close(ep_eval(df, z), fd, 1e-5));
    }
}

TEST_CASE("exact shifts resolve through the registered exponential table") {
    Context ctx(Backend::Exact);
    ctx.declare_exponential(Scalar::exact(3), Scalar::exact(-1)); // e^{3} := -1
    ExpPoly f = ep_term(pconst(2), Scalar::exact(3), ctx);
    ExpPoly s = ep_shift(f, Scalar::exact(1), ctx);
    REQUIRE(s.size() == 1);
    CHECK(s.terms()[0].poly.equals(pconst(-2)));
    // Derived integer powers: e^{-3} = (-1)^{-1} = -1, e^{6} = 1.
    ExpPoly g = ep_term(pconst(1), Scalar::exact(-3), ctx);
    CHECK(ep_shift(g, Scalar::exact(1), ctx).terms()[0].poly.equals(pconst(-1)));
    ExpPoly h = ep_term(pconst(1), Scalar::exact(6), ctx);
    CHECK(ep_shift(h, Scalar::exact(1), ctx).terms()[0].poly.equals(pconst(1)));
    // The polynomial part translates: (z e^{3z})(z+1) = -(z+1) e^{3z}.
    ExpPoly zf = ep_term(Poly::z(Backend::Exact), Scalar::exact(3), ctx);
    ExpPoly zs = ep_shift(zf, Scalar::exact(1), ctx);
    CHECK(zs.terms()[0].poly.equals(Poly({Scalar::exact(-1), Scalar::exact(-1)})));
    // Frequency zero never needs a declaration.
    ExpPoly c0 = ep_from_poly(Poly::z(Backend::Exact), ctx);
    CHECK(ep_shift(c0, Scalar::exact(1), ctx).terms()[0].poly.equals(
        Poly({Scalar::exact(1), Scalar::exact(1)})));
}

TEST_CASE("exact shifts without a declaration are errors, not approximations") {
    Context ctx(Backend::Exact);
    ExpPoly f = ep_term(pconst(1), Scalar::exact(5), ctx);
    expect_error(ErrorCode::NonExactExponential,
                 [&] { (void)ep_shift(f, Scalar::exact(1), ctx); });
}

TEST_CASE("float shifts agree with argument translation pointwise") {
    Context ctx(Backend::Float);
    ExpPoly f = ep_add(ep_term(Poly({Scalar::floating(1.0), Scalar::floating(2.0)}),
                               Scalar::floating(0.0, 1.5), ctx),
                       ep_term(pconst(3, Backend::Float), Scalar::floating(-1.0), ctx), ctx);
    Scalar c = Scalar::floating(0.7, -0.3);
    ExpPoly s = ep_shift(f, c, ctx);
    for (auto z : halton_disk(16, 2.0)) {
        CHECK(tutil::close(ep_eval(s, z), ep_eval(f, z + c.to_complex()), 1e-9));
    }
}

TEST_CASE("declaration conflicts and degenerate declarations are rejected") {
    Context ctx(Backend::Exact);
    ctx.declare_exponential(Scalar::exact(2), Scalar::exact(3));
    ctx.declare_exponential(Scalar::exact(2), Scalar::exact(3)); // same fact is fine
    expect_error(ErrorCode::DuplicateExponential, [&] {
        ctx.declare_exponential(Scalar::exact(2), Scalar::exact(5));
    });
    // e^{4} must equal 3^2 once e^{2} = 3 is on the table.
    expect_error(ErrorCode::DuplicateExponential, [&] {
        ctx.declare_exponential(Scalar::exact(4), Scalar::exact(10));
    });
    ctx.declare_exponential(Scalar::exact(4), Scalar::exact(9));
    expect_error(ErrorCode::InvalidArgument, [&] {
        ctx.declare_exponential(Scalar::exact(1), Scalar::exact(0)); // zero value
    });
    expect_error(ErrorCode::DuplicateExponential, [&] {
        ctx.declare_exponential(Scalar::exact(0), Scalar::exact(2)); // e^0 is pinned to 1
    });
    CHECK(ctx.exp_of(Scalar::exact(0)).equals(Scalar::exact(1)));
    CHECK(ctx.exp_of(Scalar::exact(-2)).equals(rat(1, 3)));
}

TEST_CASE("numeric evaluation guards against overflow") {
    Context ctx(Backend::Float);
    ExpPoly f = ep_term(pconst(1, Backend::Float), Scalar::floating(800.0), ctx);
    expect_error(ErrorCode::Overflow, [&] { (void)ep_eval(f, {1.0, 0.0}); });
    CHECK(tutil::close(ep_eval(f, {0.0, 0.0}), {1.0, 0.0}));
}

TEST_CASE("growth order is zero for polynomials and one otherwise") {
    Context ctx(Backend::Exact);
    CHECK(growth_order(ep_zero(), ctx) == 0);
    CHECK(growth_order(ep_from_poly(Poly::z(Backend::Exact), ctx), ctx) == 0);
    CHECK(growth_order(ep_term(pconst(1), Scalar::exact(0, 2), ctx), ctx) == 1);
}

TEST_CASE("float conversion preserves the numeric values") {
    Context ctx(Backend::Exact);
    Context fctx(Backend::Float);
    ExpPoly f = ep_add(ep_term(Poly({rat(1, 3), rat(-2, 7)}), Scalar::exact(1, 1), ctx),
                       ep_const(rat(5, 11), ctx), ctx);
    ExpPoly g = ep_to_float(f, fctx);
    CHECK(g.terms()[0].freq.backend() == Backend::Float);
    for (auto z : halton_disk(8, 1.0)) {
        CHECK(tutil::close(ep_eval(f, z), ep_eval(g, z), 1e-12));
    }
}

TEST_CASE("equality under a loose context absorbs small float noise") {
    Context ctx(Backend::Float);
    ExpPoly f = ep_term(Poly({Scalar::floating(1.0), Scalar::floating(0.5)}),
                        Scalar::floating(0.0, 3.0), ctx);
    ExpPoly g = ep_term(Poly({Scalar::floating(1.0 + 1e-8), Scalar::floating(0.5)}),
                        Scalar::floating(0.0, 3.0), ctx);
    CHECK(!ep_equal(f, g, ctx));
    Context loose = ctx;
    loose.eps_zero = 1e-6;
    CHECK(ep_equal(f, g, loose));
}

TEST_CASE("multiplication distributes over addition") {
    Context ctx(Backend::Exact);
    ExpPoly f = ep_term(Poly::z(Backend::Exact), Scalar::exact(1), ctx);
    ExpPoly g = ep_term(pconst(2), Scalar::exact(-1), ctx);
    ExpPoly h = ep_const(rat(1, 2), ctx);
    ExpPoly lhs = ep_mul(f, ep_add(g, h, ctx), ctx);
    ExpPoly rhs = ep_add(ep_mul(f, g, ctx), ep_mul(f, h, ctx), ctx);
    CHECK(ep_equal(lhs, rhs, ctx));
    // Product of opposite frequencies lands on frequency zero.
    ExpPoly prod = ep_mul(f, g, ctx);
    REQUIRE(prod.size() == 1);
    CHECK(prod.terms()[0].freq.is_zero());
}
