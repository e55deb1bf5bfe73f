#include "support.hpp"

#include "qorth/errors.hpp"
#include "qorth/qcore.hpp"

#include <doctest.h>

#include <random>

using namespace qorth;
using qorth::test::below;
using qorth::test::Precision;
using qorth::test::R;

TEST_CASE("precision context") {
    Precision p;
    CHECK(p.ctx.working_digits() == 60);
    CHECK(p.ctx.series_tol() <= pow10_neg(60));
    CHECK(p.ctx.tolerance(25) == pow10_neg(25));
    CHECK(p.ctx.widened(8).working_digits() == 68);
    CHECK(p.ctx.widened(8).digits() == 50);
    CHECK_THROWS_AS(PrecisionContext(10), ValidationError);
    CHECK_THROWS_AS(PrecisionContext(50, 5), ValidationError);
    CHECK_THROWS_AS(PrecisionContext(50, 10, R("1e-40")), ValidationError);
    CHECK_THROWS_AS(QParam(R("1")), ValidationError);
    CHECK_THROWS_AS(QParam(R("0")), ValidationError);
    CHECK_THROWS_AS(QParam(R("-0.5")), ValidationError);
}

TEST_CASE("parse_real rejects junk") {
    Precision p;
    CHECK(parse_real(" 0.25 ") == R("0.25"));
    CHECK_THROWS_AS(parse_real("0.5x"), ValidationError);
    CHECK_THROWS_AS(parse_real(""), ValidationError);
    CHECK_THROWS_AS(parse_real("nan"), ValidationError);
}

TEST_CASE("lattice points") {
    Precision p;
    const QParam q(R("0.5"));
    Lattice lat(q);
    CHECK(lat.point(-1) == 2);
    CHECK(lat.point(0) == 1);
    CHECK(lat.point(10) == R("0.0009765625"));
    CHECK_THROWS_AS(lat.point(-2), IndexOutOfRange);
}

TEST_CASE("finite q-Pochhammer") {
    Precision p;
    const QParam q(R("0.5"));
    CHECK(qpoch_fin(R("0.7"), q, 0) == 1);
    CHECK(qpoch_fin(R("0.5"), q, 2) == R("0.375"));
    CHECK(qpoch_fin(R("1"), q, 3) == 0);
}

TEST_CASE("infinite q-Pochhammer") {
    Precision p;
    const QParam q(R("0.5"));
    const Real tol = p.ctx.series_tol() * 10;
    CHECK(qpoch_inf(R("0"), q, p.ctx) == 1);

    // long finite product
    Real prod = 1;
    Real term = R("0.5");
    for (int k = 0; k < 400; ++k, term *= q.value()) prod *= 1 - term;
    CHECK(below(qpoch_inf(R("0.5"), q, p.ctx) - prod, tol));

    // (q;q)_inf = (1-q)(q^2;q)_inf
    const Real qq = q.value();
    CHECK(below(qpoch_inf(qq, q, p.ctx) - (1 - qq) * qpoch_inf(qq * qq, q, p.ctx), tol));

    // negative argument
    Real prod_neg = 1;
    term = R("-0.3");
    for (int k = 0; k < 400; ++k, term *= q.value()) prod_neg *= 1 - term;
    CHECK(below(qpoch_inf(R("-0.3"), q, p.ctx) - prod_neg, tol));
}

TEST_CASE("Jackson integral of monomials") {
    Precision p;
    const Real tol = p.ctx.series_tol() * 10;
    for (const char* qs : {"0.3", "0.5", "0.8"}) {
        const QParam q(R(qs));
        const Real qq = q.value();
        CHECK(below(qint([](const Real&) { return Real(1); }, 0, 1, q, p.ctx) - 1, tol));
        CHECK(below(qint([](const Real& x) { return x; }, 0, 1, q, p.ctx) - 1 / (1 + qq), tol));
        CHECK(below(qint([](const Real& x) { return x * x; }, 0, 1, q, p.ctx) - 1 / (1 + qq + qq * qq), tol));
    }
    const QParam half(R("0.5"));
    CHECK(below(qint([](const Real& x) { return x * x; }, 0, 1, half, p.ctx) - R("4") / 7, tol));
}

TEST_CASE("Jackson integral between two points") {
    Precision p;
    const QParam q(R("0.5"));
    const Real tol = p.ctx.series_tol() * 10;
    // int_a^b x d_q x = (b^2 - a^2) / (1 + q)
    const Real v = qint([](const Real& x) { return x; }, R("0.25"), R("0.75"), q, p.ctx);
    CHECK(below(v - (R("0.5625") - R("0.0625")) / R("1.5"), tol));
}

TEST_CASE("Jackson integral is linear") {
    Precision p;
    const QParam q(R("0.5"));
    const Real tol = p.ctx.series_tol() * 100;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 5; ++trial) {
        const Real a = coef(rng), b = coef(rng);
        const Real s = Real(coef(rng)) / 10, t = Real(coef(rng)) / 10;
        auto f = [&](const Real& x) { return x * x * x + s * x; };
        auto g = [&](const Real& x) { return 1 / (1 + x * x) + t; };
        auto h = [&](const Real& x) { return a * f(x) + b * g(x); };
        const Real lhs = qint(h, 0, 1, q, p.ctx);
        const Real rhs = a * qint(f, 0, 1, q, p.ctx) + b * qint(g, 0, 1, q, p.ctx);
        CHECK(below(lhs - rhs, tol));
    }
}

TEST_CASE("Jackson integral truncation is converged") {
    Precision p;
    const QParam q(R("0.8"));
    const Real value = qint([](const Real& x) { return exp(x); }, 0, 1, q, p.ctx);
    // explicit partial sums: the tail beyond the stopping point is negligible
    Real sum_n = 0, sum_2n = 0;
    Real x = 1;
    const int n = 1500;
    for (int k = 0; k < 2 * n; ++k, x *= q.value()) {
        const Real term = (1 - q.value()) * x * exp(x);
        if (k < n) sum_n += term;
        sum_2n += term;
    }
    CHECK(below(sum_2n - sum_n, p.ctx.series_tol()));
    CHECK(below(value - sum_2n, p.ctx.series_tol() * 10));
}

TEST_CASE("Jackson integral over lattice indices") {
    Precision p;
    const QParam q(R("0.5"));
    Lattice lat(q);
    const Real v = qint_lattice([&](std::size_t k) { return lat.point(static_cast<long>(k)); }, q, p.ctx);
    CHECK(below(v - 1 / (1 + q.value()), p.ctx.series_tol() * 10));
}

TEST_CASE("q-derivative") {
    Precision p;
    const QParam q(R("0.5"));
    const Real qq = q.value();
    const Real tol = pow10_neg(55);
    CHECK(dq([](const Real&) { return Real(5); }, R("0.3"), q) == 0);
    const Real x = R("0.37");
    CHECK(below(dq([](const Real& y) { return y * y; }, x, q) - (1 + qq) * x, tol));
    const Real x7 = R("0.7");
    CHECK(below(dq([](const Real& y) { return y * y * y; }, x7, q) - (1 + qq + qq * qq) * x7 * x7, tol));
    CHECK_THROWS_AS(dq([](const Real& y) { return y; }, 0, q), ZeroPoint);
}

TEST_CASE("q-derivative of a polynomial matches its q-differentiated form") {
    Precision p;
    const QParam q(R("0.3"));
    const Real qq = q.value();
    // f = 2 - 3x + 5x^3 - x^4 ; D_q x^k = [k]_q x^{k-1}
    auto f = [](const Real& x) { return 2 - 3 * x + 5 * x * x * x - x * x * x * x; };
    auto bracket = [&](int k) {
        Real s = 0, t = 1;
        for (int i = 0; i < k; ++i, t *= qq) s += t;
        return s;
    };
    for (const char* xs : {"0.1", "0.45", "0.9", "1.7"}) {
        const Real x = R(xs);
        const Real expected = -3 + 5 * bracket(3) * x * x - bracket(4) * x * x * x;
        CHECK(below(dq(f, x, q) - expected, pow10_neg(55)));
    }
}

TEST_CASE("2phi1") {
    Precision p;
    const QParam q(R("0.5"));
    const Real qq = q.value();
    const Real tol = p.ctx.series_tol() * 10;
    CHECK(phi21(0, 0, R("0.5"), q, 0, p.ctx) == 1);

    // a1 = b1 leaves sum (a2;q)_l z^l / (q;q)_l
    const Real a2 = R("0.3"), z = R("0.4");
    Real direct = 0, num = 1, den = 1, zl = 1;
    for (int l = 0; l < 400; ++l) {
        direct += num / den * zl;
        num *= 1 - a2 * pow(qq, l);
        den *= 1 - pow(qq, l + 1);
        zl *= z;
    }
    CHECK(below(phi21(qq, a2, qq, q, z, p.ctx) - direct, tol));

    // long summation of 2phi1(0,0;cq;q;q^{a+1}), c = 0.3, a = 1
    const Real b1 = R("0.3") * qq;
    const Real arg = qq * qq;
    Real brute = 0, den2 = 1, zp = 1;
    for (int l = 0; l < 500; ++l) {
        brute += zp / den2;
        den2 *= (1 - b1 * pow(qq, l)) * (1 - pow(qq, l + 1));
        zp *= arg;
    }
    CHECK(below(phi21(0, 0, b1, q, arg, p.ctx) - brute, tol));
}

TEST_CASE("2phi1 failure modes") {
    Precision p;
    const QParam q(R("0.5"));
    CHECK_THROWS_AS(phi21(R("0.5"), R("0.5"), R("4"), q, R("0.5"), p.ctx), PoleInDenominator);
    CHECK_THROWS_AS(phi21(R("0.5"), R("0.5"), R("0.1"), q, R("1.5"), p.ctx), SeriesDiverged);
}
