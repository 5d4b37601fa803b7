#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rpr/errors.hpp"
#include "rpr/polynomial.hpp"
#include "support/generators.hpp"

using namespace rpr;

namespace {

RealPolynomial from_linear_factors(const std::vector<double>& roots) {
    RealPolynomial p{1.0};
    for (double r : roots) {
        p = p * RealPolynomial{-r, 1.0};
    }
    return p;
}

bool has_root(const RootSet& rs, double value, int multiplicity, double tol) {
    for (const auto& r : rs.roots) {
        if (std::fabs(r.value - value) <= tol && r.multiplicity == multiplicity) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("evaluate uses nested form and matches hand values") {
    const RealPolynomial p{161.0, -239.0, -239.0, 161.0};
    CHECK(p.evaluate(-1.0) == 0.0);
    CHECK(p.evaluate(0.0) == 161.0);
    // derivative at the known simple root is decisively nonzero
    CHECK(p.derivative().evaluate(-1.0) == 722.0);
}

TEST_CASE("real_roots solves the reference cubic") {
    // independent values: t = -1 checks by substitution; the remaining
    // quadratic 161 t^2 - 400 t + 161 solves to (400 +- sqrt(56316))/322
    const double s = std::sqrt(56316.0);
    const double t_small = (400.0 - s) / 322.0;
    const double t_large = (400.0 + s) / 322.0;

    const RootSet rs = real_roots(RealPolynomial{161.0, -239.0, -239.0, 161.0});
    REQUIRE(rs.roots.size() == 3);
    CHECK(has_root(rs, -1.0, 1, 1e-10));
    CHECK(has_root(rs, t_small, 1, 1e-10));
    CHECK(has_root(rs, t_large, 1, 1e-10));
}

TEST_CASE("real_roots detects multiplicity: t^2 (t - 2)") {
    const RootSet rs = real_roots(RealPolynomial{0.0, 0.0, -2.0, 1.0});
    REQUIRE(rs.roots.size() == 2);
    CHECK(has_root(rs, 0.0, 2, 1e-7));
    CHECK(has_root(rs, 2.0, 1, 1e-10));
    CHECK(rs.total_multiplicity() == 3);
}

TEST_CASE("real_roots on t^2 + 1 finds nothing") {
    CHECK(real_roots(RealPolynomial{1.0, 0.0, 1.0}).roots.empty());
}

TEST_CASE("real_roots rejects the zero polynomial") {
    CHECK_THROWS_AS(real_roots(RealPolynomial{0.0, 0.0}), ZeroPolynomialError);
    CHECK_THROWS_AS(real_roots(RealPolynomial{}), ZeroPolynomialError);
}

TEST_CASE("constant polynomial has no roots") {
    CHECK(real_roots(RealPolynomial{5.0}).roots.empty());
}

TEST_CASE("divide_out exact and inexact cases") {
    const RealPolynomial circle{1.0, 0.0, 1.0};

    SUBCASE("(1+t^2)^2 / (1+t^2)") {
        const auto d = divide_out(RealPolynomial{1.0, 0.0, 2.0, 0.0, 1.0}, circle);
        CHECK(d.remainder_norm == 0.0);
        CHECK(d.quotient.coeff(0) == 1.0);
        CHECK(d.quotient.coeff(1) == 0.0);
        CHECK(d.quotient.coeff(2) == 1.0);
    }
    SUBCASE("lower-degree dividend passes through as remainder") {
        const auto d = divide_out(RealPolynomial{1.0, 1.0}, circle);
        CHECK(d.quotient.effective_degree() < 0);
        CHECK(d.remainder_norm == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("random exact products divide with tiny remainder") {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 50; ++i) {
            const RealPolynomial q{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2),
                                   testing::uniform(rng, 0.5, 2)};
            const RealPolynomial f{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2),
                                   testing::uniform(rng, -2, 2), testing::uniform(rng, 0.5, 2)};
            const auto d = divide_out(f * q, q);
            CHECK(d.remainder_norm < 1e-12 * (f * q).max_abs_coeff());
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(d.quotient.coeff(k) == doctest::Approx(f.coeff(k)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("zero divisor is rejected") {
        CHECK_THROWS_AS(divide_out(circle, RealPolynomial{0.0}), InvalidInputError);
    }
}

TEST_CASE("effective degree trims tiny leading coefficients relative to the scale") {
    const RealPolynomial p{1.0, 2.0, 1e-14};
    CHECK(p.effective_degree() == 1);
    const RealPolynomial q{1e6, 2e6, 1e-5};  // 5e-12 relative: below the trim threshold
    CHECK(q.effective_degree() == 1);
    const RealPolynomial r{1.0, 2.0, 1e-8};
    CHECK(r.effective_degree() == 2);
}

TEST_CASE("property: products of known linear factors are recovered") {
    std::mt19937_64 rng(20240802);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> roots;
        for (int i = 0; i < n; ++i) {
            double r = testing::uniform(rng, -4.0, 4.0);
            // keep simple roots separated so the cluster step cannot merge them
            bool ok = true;
            for (double prev : roots) {
                if (std::fabs(prev - r) < 1e-2) ok = false;
            }
            if (!ok) {
                --i;
                continue;
            }
            roots.push_back(r);
        }
        RealPolynomial p = from_linear_factors(roots);
        if (trial % 3 == 0) {
            p = p * RealPolynomial{1.0, 0.4, 1.0};  // irreducible quadratic factor
        }
        const RootSet rs = real_roots(p, 1e-6);
        REQUIRE(rs.roots.size() == roots.size());
        std::sort(roots.begin(), roots.end());
        const int degree = p.effective_degree();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(rs.roots[i].value == doctest::Approx(roots[i]).epsilon(1e-6));
            CHECK(rs.roots[i].multiplicity == 1);
            // residual bound invariant
            const double bound = 1e-6 * (degree + 1) * p.max_abs_coeff() *
                                 std::pow(std::max(1.0, std::fabs(rs.roots[i].value)), degree);
            CHECK(std::fabs(rs.roots[i].residual) <= bound);
        }
        CHECK(rs.total_multiplicity() <= degree);
    }
}

TEST_CASE("property: planted double roots are reported with multiplicity 2") {
    std::mt19937_64 rng(20240803);
    for (int trial = 0; trial < 60; ++trial) {
        const double a = testing::uniform(rng, -2.0, 2.0);
        double b = testing::uniform(rng, -2.0, 2.0);
        while (std::fabs(b - a) < 0.3) {
            b = testing::uniform(rng, -2.0, 2.0);
        }
        const RealPolynomial p =
            from_linear_factors({a, a, b}) * RealPolynomial{0.7, 0.1, 1.0};
        const RootSet rs = real_roots(p, 1e-6);
        CHECK(rs.total_multiplicity() == 3);
        CHECK(has_root(rs, a, 2, 1e-6 * std::max(1.0, std::fabs(a))));
        CHECK(has_root(rs, b, 1, 1e-7 * std::max(1.0, std::fabs(b))));
    }
}
