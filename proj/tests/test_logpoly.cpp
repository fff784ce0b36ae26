#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "volterra/errors.hpp"
#include "volterra/logpoly.hpp"

using namespace volterra;

namespace {

const double kLn2 = std::log(2.0);

// Random small log-power polynomial; degrees bounded for oracle quadrature.
LogPoly random_logpoly(std::mt19937& rng, int max_p = 4, int max_m = 2) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> np(0, max_p), nm(0, max_m), nterms(1, 4);
    std::vector<LogTerm> terms;
    const int count = nterms(rng);
    for (int i = 0; i < count; ++i) terms.push_back({np(rng), nm(rng), coeff(rng)});
    return LogPoly(std::move(terms));
}

BivariatePoly random_kernel(std::mt19937& rng, int max_total = 4) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> expo(0, max_total), nterms(1, 3);
    std::vector<BiTerm> terms;
    const int count = nterms(rng);
    for (int i = 0; i < count; ++i) {
        const int tp = expo(rng);
        std::uniform_int_distribution<int> rest(0, max_total - tp);
        terms.push_back({tp, rest(rng), coeff(rng)});
    }
    return BivariatePoly(std::move(terms));
}

}  // namespace

TEST_CASE("ring operations") {
    const LogPoly t{{1, 0, 1.0}};
    const LogPoly t_lnt{{1, 1, 1.0}};
    const LogPoly sum = t + t_lnt;
    CHECK(sum.coeff(1, 0) == 1.0);
    CHECK(sum.coeff(1, 1) == 1.0);
    CHECK(sum.terms().size() == 2);

    const LogPoly lnt{{0, 1, 1.0}};
    const LogPoly sq = lnt * lnt;
    CHECK(sq.terms().size() == 1);
    CHECK(sq.coeff(0, 2) == 1.0);

    const LogPoly a{{2, 1, 3.5}, {0, 0, -1.25}};
    CHECK((a + (-1.0 * a)).is_zero());
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ts(0.2, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const LogPoly a = random_logpoly(rng), b = random_logpoly(rng), c = random_logpoly(rng);
        const double t = ts(rng);
        const double scale = std::max({1.0, std::abs(a.eval(t)), std::abs(b.eval(t)),
                                       std::abs(c.eval(t))});
        CHECK(std::abs((a + b).eval(t) - (b + a).eval(t)) <= 1e-12 * scale);
        CHECK(std::abs((a * b).eval(t) - (b * a).eval(t)) <= 1e-10 * scale * scale);
        CHECK(std::abs(((a + b) + c).eval(t) - (a + (b + c)).eval(t)) <= 1e-12 * scale);
        CHECK(std::abs(((a * b) * c).eval(t) - (a * (b * c)).eval(t)) <=
              1e-9 * scale * scale * scale);
        CHECK(std::abs((a * (b + c)).eval(t) - (a * b + a * c).eval(t)) <=
              1e-9 * scale * scale);
    }
}

TEST_CASE("antiderivative closed forms") {
    // (p=0, m=0) -> s
    const LogPoly f00 = antiderivative_power_log(0, 0);
    CHECK(f00.terms().size() == 1);
    CHECK(f00.coeff(1, 0) == 1.0);

    // (p=0, m=1) -> s ln s - s
    const LogPoly f01 = antiderivative_power_log(0, 1);
    CHECK(f01.coeff(1, 1) == doctest::Approx(1.0));
    CHECK(f01.coeff(1, 0) == doctest::Approx(-1.0));

    // (p=1, m=1) -> s^2 (ln s / 2 - 1/4)
    const LogPoly f11 = antiderivative_power_log(1, 1);
    CHECK(f11.coeff(2, 1) == doctest::Approx(0.5));
    CHECK(f11.coeff(2, 0) == doctest::Approx(-0.25));
}

TEST_CASE("antiderivative differentiates back to s^p ln^m s") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ss(0.05, 1.0);
    for (int p = 0; p <= 4; ++p) {
        for (int m = 0; m <= 3; ++m) {
            const LogPoly F = antiderivative_power_log(p, m);
            for (int i = 0; i < 100; ++i) {
                const double s = ss(rng);
                const double got = oracles::numeric_derivative(
                    [&](double v) { return F.eval(v); }, s, 1e-3 * std::max(s, 0.2));
                const double want = std::pow(s, p) * std::pow(std::log(s), m);
                CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("integrate_segment simple forms") {
    // kernel 1, x = 1 over [0, 1/2] -> t/2
    const LogPoly r1 = integrate_segment(BivariatePoly::constant(1.0), LogPoly::constant(1.0),
                                         0.0, 0.5);
    CHECK(r1.terms().size() == 1);
    CHECK(r1.coeff(1, 0) == doctest::Approx(0.5));

    // kernel 1, x = ln s over [0, 1] -> t ln t - t
    const LogPoly r2 = integrate_segment(BivariatePoly::constant(1.0), LogPoly{{0, 1, 1.0}},
                                         0.0, 1.0);
    CHECK(r2.coeff(1, 1) == doctest::Approx(1.0));
    CHECK(r2.coeff(1, 0) == doctest::Approx(-1.0));
}

TEST_CASE("piecewise golden kernel integrates the log solution to exactly t") {
    // x = c - ln s / ln 2 with kernel 1 on [0, 1/2] and -1 on [1/2, 1].
    const double c = 2.0;
    const LogPoly x{{0, 0, c}, {0, 1, -1.0 / kLn2}};
    const LogPoly part1 = integrate_segment(BivariatePoly::constant(1.0), x, 0.0, 0.5);
    const LogPoly part2 = integrate_segment(BivariatePoly::constant(-1.0), x, 0.5, 1.0);
    const LogPoly total = part1 + part2;

    // All log terms cancel within 1e-12 of the contributing magnitudes.
    const double scale = std::max(part1.max_abs_coeff(), part2.max_abs_coeff());
    for (const LogTerm& term : total.terms())
        if (term.m > 0) CHECK(std::abs(term.c) <= 1e-12 * scale);

    const LogPoly snapped = snap(total, 1e-12, scale);
    CHECK(snapped.terms().size() == 1);
    CHECK(snapped.coeff(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate_segment agrees with adaptive quadrature") {
    std::mt19937 rng(20240501);
    std::uniform_real_distribution<double> alpha(0.0, 1.0), ts(0.1, 1.0);
    std::bernoulli_distribution from_zero(0.3);
    for (int trial = 0; trial < 40; ++trial) {
        const BivariatePoly kernel = random_kernel(rng);
        const LogPoly x = random_logpoly(rng);
        const double lo = from_zero(rng) ? 0.0 : 0.8 * alpha(rng);
        const double hi = lo + (1.0 - lo) * std::max(0.15, alpha(rng));
        const LogPoly result = integrate_segment(kernel, x, lo, hi);
        for (int i = 0; i < 10; ++i) {
            const double t = ts(rng);
            const double want = oracles::integrate(
                [&](double s) { return kernel.eval(t, s) * x.eval(s); }, lo * t, hi * t);
            CHECK(std::abs(result.eval(t) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("derivative of a segment integral matches the Leibniz expansion") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> alpha(0.2, 1.0), ts(0.2, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const BivariatePoly kernel = random_kernel(rng);
        const LogPoly x = random_logpoly(rng);
        const double a = alpha(rng);
        const LogPoly F = integrate_segment(kernel, x, 0.0, a);
        const LogPoly dF = F.derivative();
        const BivariatePoly dK = kernel.partial_t();
        const double t = ts(rng);
        const double boundary = a * kernel.eval(t, a * t) * x.eval(a * t);
        const double inner =
            dK.is_zero() ? 0.0
                         : oracles::integrate(
                               [&](double s) { return dK.eval(t, s) * x.eval(s); }, 0.0, a * t);
        const double want = boundary + inner;
        CHECK(std::abs(dF.eval(t) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("derivative forms and failure") {
    // t^2 -> 2t
    const LogPoly tsq{{2, 0, 1.0}};
    CHECK(tsq.derivative().coeff(1, 0) == doctest::Approx(2.0));
    // t ln t -> ln t + 1
    const LogPoly t_lnt{{1, 1, 1.0}};
    const LogPoly d = t_lnt.derivative();
    CHECK(d.coeff(0, 1) == doctest::Approx(1.0));
    CHECK(d.coeff(0, 0) == doctest::Approx(1.0));
    // ln t leaves the algebra
    const LogPoly lnt{{0, 1, 1.0}};
    CHECK_THROWS_AS(lnt.derivative(), Error);
    // constants differentiate to zero
    CHECK(LogPoly::constant(3.0).derivative().is_zero());
}

TEST_CASE("evaluation") {
    const LogPoly t_lnt{{1, 1, 1.0}};
    CHECK(t_lnt.eval(1.0) == 0.0);
    const LogPoly x{{0, 0, 2.0}, {0, 1, -1.0 / kLn2}};
    CHECK(x.eval(0.5) == doctest::Approx(3.0));
    CHECK(LogPoly{}.eval(0.7) == 0.0);
    CHECK_THROWS_AS(LogPoly::constant(1.0).eval(0.0), Error);
    CHECK_THROWS_AS(LogPoly::constant(1.0).eval(-1.0), Error);
}

TEST_CASE("scaled argument shifts the logarithm") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ts(0.2, 1.0), as(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const LogPoly x = random_logpoly(rng);
        const double a = as(rng);
        const LogPoly y = x.scaled_argument(a);
        const double t = ts(rng);
        CHECK(y.eval(t) == doctest::Approx(x.eval(a * t)).epsilon(1e-11));
    }
}

TEST_CASE("slices and rendering") {
    const LogPoly x{{2, 0, 3.0}, {2, 2, -1.0}, {1, 0, 5.0}};
    const ZPoly s2 = x.slice(2);
    CHECK(s2.degree() == 2);
    CHECK(s2.coeff(0) == 3.0);
    CHECK(s2.coeff(2) == -1.0);
    CHECK(x.slice(3).is_zero());
    CHECK(x.to_string() == "5 * t^1 * ln(t)^0 + 3 * t^2 * ln(t)^0 + -1 * t^2 * ln(t)^2");
    CHECK(LogPoly{}.to_string() == "0");
}

TEST_CASE("zpoly round trip through times_t_power") {
    const ZPoly z{1.0, 0.0, -2.5};
    const LogPoly lp = z.times_t_power(3);
    CHECK(lp.coeff(3, 0) == 1.0);
    CHECK(lp.coeff(3, 2) == -2.5);
    CHECK(lp.slice(3) == z);
    CHECK(ZPoly{0.0, 0.0}.is_zero());
    CHECK(ZPoly{1.0, 2.0}.eval(3.0) == doctest::Approx(7.0));
}

TEST_CASE("runaway degrees are capped") {
    const LogPoly big{{200, 0, 1.0}};
    const LogPoly alsobig{{100, 0, 1.0}};
    CHECK_THROWS_AS(big * alsobig, Error);
}

TEST_CASE("snap clears relative dust") {
    const LogPoly noisy{{1, 0, 1.0}, {1, 1, 3e-13}, {2, 0, 5e-16}};
    const LogPoly clean = snap(noisy);
    CHECK(clean.terms().size() == 1);
    CHECK(clean.coeff(1, 0) == 1.0);
    // scale hint snaps a pure-roundoff result to zero
    const LogPoly dust{{1, 0, 2e-16}};
    CHECK(snap(dust, 1e-12, 1.0).is_zero());
    CHECK_FALSE(snap(dust, 1e-12).is_zero());
}
