#include <doctest.h>

#include "fermatkit/scalar.hpp"
#include "test_util.hpp"

using namespace fermatkit;
using tutil::expect_error;
using tutil::rat;
using tutil::rat2;

TEST_CASE("exact arithmetic is exact rational arithmetic") {
    Scalar third = rat(1, 3);
    Scalar sixth = rat(1, 6);
    CHECK((third + sixth).equals(rat(1, 2)));
    CHECK((third - sixth).equals(sixth));
    CHECK((third * sixth).equals(rat(1, 18)));
    CHECK((third / sixth).equals(Scalar::exact(2)));
    // Repeated accumulation stays exact: 10 * 1/10 == 1 with no drift.
    Scalar acc = Scalar::exact(0);
    for (int t = 0; t < 10; ++t) acc += rat(1, 10);
    CHECK(acc.equals(Scalar::exact(1)));
}

TEST_CASE("complex multiplication follows the Gaussian product rule") {
    Scalar x = Scalar::exact(2, 3);
    Scalar y = Scalar::exact(4, -5);
    CHECK((x * y).equals(Scalar::exact(23, 2)));
    CHECK((x * x.conj()).equals(Scalar::exact(13)));
    CHECK((-x).equals(Scalar::exact(-2, -3)));
}

TEST_CASE("inverse of -1/(6i) is -6i") {
    Scalar six_i = Scalar::exact(0, 6);
    Scalar s = -(six_i.inv()); // -1/(6i) = i/6
    CHECK(s.equals(rat2(0, 1, 1, 6)));
    CHECK(s.inv().equals(Scalar::exact(0, -6)));
}

TEST_CASE("surd pair (-3+2*sqrt2)(-3-2*sqrt2) multiplies to 1") {
    Scalar root2 = *Scalar::floating(2.0).try_sqrt();
    Scalar two = Scalar::floating(2.0);
    Scalar three = Scalar::floating(3.0);
    Scalar w1 = -three + two * root2;
    Scalar w2 = -three - two * root2;
    CHECK((w1 * w2).equals(Scalar::one(Backend::Float), 1e-12));
}

TEST_CASE("exact square roots succeed only inside Q(i)") {
    CHECK(Scalar::exact(mpq_class(9, 4)).try_sqrt()->equals(rat(3, 2)));
    CHECK(Scalar::exact(-4).try_sqrt()->equals(Scalar::exact(0, 2)));
    CHECK(Scalar::exact(0, 2).try_sqrt()->equals(Scalar::exact(1, 1)));  // sqrt(2i) = 1+i
    CHECK(Scalar::exact(3, 4).try_sqrt()->equals(Scalar::exact(2, 1))); // (2+i)^2 = 3+4i
    CHECK(!Scalar::exact(2).try_sqrt().has_value());
    CHECK(!Scalar::exact(-2).try_sqrt().has_value());
    CHECK(!Scalar::exact(1, 1).try_sqrt().has_value()); // |1+i| irrational
    // Float backend always produces the principal root.
    Scalar r = *Scalar::floating(-1.0).try_sqrt();
    CHECK(tutil::close(r.to_complex(), {0.0, 1.0}));
}

TEST_CASE("square roots square back to the radicand") {
    const Scalar vals[] = {rat(4, 9), Scalar::exact(16), Scalar::exact(0, 2),
                           Scalar::exact(3, 4), Scalar::exact(mpq_class(-25, 4))};
    for (const Scalar& v : vals) {
        auto r = v.try_sqrt();
        REQUIRE(r.has_value());
        CHECK((*r * *r).equals(v));
    }
}

TEST_CASE("lexicographic comparison orders by real then imaginary part") {
    CHECK(Scalar::cmp_lex(Scalar::exact(1), Scalar::exact(2)) < 0);
    CHECK(Scalar::cmp_lex(Scalar::exact(2, -1), Scalar::exact(2, 1)) < 0);
    CHECK(Scalar::cmp_lex(Scalar::exact(2, 1), Scalar::exact(2, 1)) == 0);
    CHECK(Scalar::cmp_lex(Scalar::floating(0.5), Scalar::floating(0.25)) > 0);
    CHECK(Scalar::cmp_lex(Scalar::floating(0.5, -1.0), Scalar::floating(0.5, 2.0)) < 0);
}

TEST_CASE("mixing backends in arithmetic is an error, never a coercion") {
    expect_error(ErrorCode::BackendMismatch,
                 [] { (void)(Scalar::exact(1) + Scalar::floating(1.0)); });
    expect_error(ErrorCode::BackendMismatch,
                 [] { (void)Scalar::exact(1).equals(Scalar::floating(1.0)); });
    expect_error(ErrorCode::BackendMismatch, [] {
        (void)Scalar::cmp_lex(Scalar::floating(1.0), Scalar::exact(1));
    });
    // Explicit conversion is the supported path.
    CHECK(Scalar::exact(1).to_float().equals(Scalar::floating(1.0)));
}

TEST_CASE("inverting zero raises division by zero") {
    expect_error(ErrorCode::DivisionByZero, [] { (void)Scalar::exact(0).inv(); });
    expect_error(ErrorCode::DivisionByZero,
                 [] { (void)Scalar::floating(1e-12).inv(); }); // below default eps
    CHECK(Scalar::floating(1e-12).inv(1e-15).abs() > 1e11);    // tighter eps allows it
}

TEST_CASE("natural powers by binary exponentiation") {
    CHECK(Scalar::exact(1, 1).pow_nat(4).equals(Scalar::exact(-4)));
    CHECK(rat(2, 3).pow_nat(0).equals(Scalar::exact(1)));
    CHECK(rat(2, 3).pow_nat(3).equals(rat(8, 27)));
    CHECK(Scalar::floating(0.0, 1.0).pow_nat(2).equals(Scalar::floating(-1.0), 1e-12));
}

TEST_CASE("float zero tests are tolerance-based, exact ones are decidable") {
    CHECK(Scalar::floating(1e-12).is_zero());
    CHECK(!Scalar::floating(1e-6).is_zero());
    CHECK(Scalar::floating(1e-6).is_zero(1e-3));
    CHECK(!Scalar::exact(mpq_class(1, 1000000000000L)).is_zero()); // tiny but nonzero
    CHECK(Scalar::exact(0).is_zero());
}

TEST_CASE("printing uses rational strings for exact and pairs for float") {
    CHECK(rat(3, 2).str() == "3/2");
    CHECK(rat2(1, 2, 1, 3).str() == "1/2+1/3i");
    CHECK(Scalar::exact(0, -1).str() == "0-1i");
    CHECK(Scalar::floating(0.5, -2.0).str() == "(0.5,-2)");
}

TEST_CASE("backend constructors produce the requested backend") {
    for (Backend be : {Backend::Exact, Backend::Float}) {
        CHECK(Scalar::zero(be).backend() == be);
        CHECK(Scalar::one(be).backend() == be);
        CHECK(Scalar::i(be).backend() == be);
        CHECK(Scalar::integer(-7, be).backend() == be);
        CHECK((Scalar::i(be) * Scalar::i(be)).equals(-Scalar::one(be)));
    }
    CHECK(std::string(backend_name(Backend::Exact)) == "exact");
    CHECK(std::string(backend_name(Backend::Float)) == "float");
}
