#include "gf/numcore.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gf;

namespace {

double radius_d(const Ball& b) { return b.radius().to_double(MPFR_RNDU); }

// the value of x at the identity embedding, summed in long double
long double naive_eval(const CycloElement& x) {
    long double th = 2.0L * std::cos(2.0L * 3.14159265358979323846264338327950288L / x.modulus());
    long double v = 0, p = 1;
    for (const auto& c : x.coeffs()) {
        v += static_cast<long double>(c.get_d()) * p;
        p *= th;
    }
    return v;
}

}  // namespace

TEST_CASE("integer helpers") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(93) == 60);
    CHECK(gcd_l(12, 18) == 6);
    CHECK(lcm_l(31, 3) == 93);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
    // totient by brute force
    for (long n = 1; n <= 300; ++n) {
        long c = 0;
        for (long a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
        CHECK(euler_phi(n) == c);
    }
}

TEST_CASE("ball containment of pi and e") {
    Ball p = Ball::pi(64);
    CHECK(p.contains(BigRational(314159, 100000)) == false);
    CHECK(p.lower().to_double() < M_PI + 1e-15);
    CHECK(p.upper().to_double() > M_PI - 1e-15);
    CHECK(radius_d(p) < std::ldexp(1.0, -60));
    Ball pe = eval_ball(Expr::pi(), 64);
    CHECK(radius_d(pe) < std::ldexp(1.0, -60));
    CHECK(std::fabs(Ball::e(128).mid_double() - M_E) < 1e-15);
}

TEST_CASE("ln 1 is exactly zero") {
    Ball b = eval_ball(ln(Expr(1)), 64);
    CHECK(b.contains(BigRational(0)));
    CHECK(b.is_point());
}

TEST_CASE("ln 2 - ln(3/2) at 128 bits") {
    Expr x = ln(Expr(2)) - ln(Expr(BigRational(3, 2)));
    Ball b = eval_ball(x, 128);
    CHECK(radius_d(b) < std::ldexp(1.0, -120));
    long double oracle = std::log(4.0L / 3.0L);
    CHECK(std::fabs(b.mid_double() - static_cast<double>(oracle)) < 1e-15);
    CHECK(std::fabs(b.mid_double() - 0.28768) < 1e-5);
}

TEST_CASE("certify_compare examples") {
    CHECK(certify_compare(Expr(BigRational(3, 4)), Expr(1)) == Ordering::Less);
    Expr c = ln(Expr(2)) - ln(Expr(31)) / Expr(30) - ln(Expr(3)) / Expr(2);
    CHECK(certify_compare(c, Expr(0)) == Ordering::Greater);
    CHECK(std::fabs(eval_ball(c, 128).mid_double() - 0.02937) < 1e-5);
    Expr s = pow(sin(Expr::pi_times(BigRational(1, 3))), 2);
    CHECK(certify_compare(s, Expr(BigRational(3, 4))) == Ordering::Equal);
}

TEST_CASE("certify_compare gives up at the cap on a hidden zero") {
    // exp(ln 2) − 2 has no exact path, so it cannot be decided
    Expr z = exp(ln(Expr(2))) - Expr(2);
    CHECK(certify_compare(z, Expr(0), 256) == Ordering::Undecided);
}

TEST_CASE("property: balls shrink and nest with precision") {
    std::vector<Expr> xs = {
        ln(Expr(7)) / Expr(3), sqrt(Expr(2)) * Expr::pi(), exp(Expr(BigRational(-5, 3))),
        sin(Expr::pi_times(BigRational(2, 7))) + cos(Expr(BigRational(1, 9))),
        Expr::cyclo(CycloElement::theta(31), 5) * Expr::e()};
    for (const auto& x : xs) {
        Ball lo = eval_ball(x, 64);
        for (int p : {128, 256, 512}) {
            Ball hi = eval_ball(x, p);
            CHECK(lo.contains(hi));
            CHECK(radius_d(hi) <= radius_d(lo));
            lo = hi;
        }
    }
    // known closed form: sqrt(2)^2 = 2
    for (int p : {64, 200, 1000}) CHECK(eval_ball(pow(sqrt(Expr(2)), 2), p).contains(BigRational(2)));
}

TEST_CASE("property: certification is monotone in precision") {
    std::mt19937 rng(7);
    for (int t = 0; t < 60; ++t) {
        long a = 2 + rng() % 50, b = 2 + rng() % 50;
        Expr x = ln(Expr(a)) / Expr(b);
        Expr y = ln(Expr(b)) / Expr(a);
        Ordering first = certify_compare(x, y, 4096, 64);
        if (first == Ordering::Less || first == Ordering::Greater)
            for (int p : {128, 512, 2048}) CHECK(certify_compare(x, y, 4096, p) == first);
    }
}

TEST_CASE("property: cyclotomic arithmetic agrees with numeric evaluation") {
    std::mt19937 rng(11);
    for (int t = 0; t < 80; ++t) {
        long n = 3 + rng() % 58;
        CycloElement x = CycloElement::rational(0, n), y = CycloElement::rational(0, n);
        for (int i = 0; i < 4; ++i) {
            x = x + CycloElement::rational(BigRational(long(rng() % 11) - 5, 1 + rng() % 4), n) *
                        CycloElement::theta(n).pow(rng() % 6);
            y = y + CycloElement::rational(BigRational(long(rng() % 11) - 5, 1 + rng() % 4), n) *
                        CycloElement::theta(n).pow(rng() % 6);
        }
        Ball bx = x.eval(1, 128), by = y.eval(1, 128);
        Ball bp = (x * y).eval(1, 128);
        Ball ref = bx * by;
        CHECK(std::fabs(bp.mid_double() - ref.mid_double()) <= 1e-12 * (1 + std::fabs(ref.mid_double())));
        CHECK(std::fabs(bx.mid_double() - static_cast<double>(naive_eval(x))) <=
              1e-9 * (1 + std::fabs(bx.mid_double())));
        if (!x.is_zero()) CHECK(x * x.inverse() == CycloElement::rational(1, n));
    }
}

TEST_CASE("cyclotomic identities") {
    // cos²(π/l) = (1 + cos 2π/l)/2 and sin² + cos² = 1
    for (long l = 3; l <= 40; ++l) {
        auto c2 = CycloElement::cos2_pi_over(l), s2 = CycloElement::sin2_pi_over(l);
        CHECK(c2 + s2 == CycloElement::rational(1, l));
        double v = std::cos(M_PI / l);
        CHECK(std::fabs(c2.eval(1, 64).mid_double() - v * v) < 1e-14);
    }
    CHECK(CycloElement::sin2_pi_over(3).is_rational());
    CHECK(CycloElement::sin2_pi_over(3).rational_value() == BigRational(3, 4));
    // real cyclotomic minimal polynomial of 2cos(2π/7): x³ + x² − 2x − 1
    CHECK(real_cyclotomic_minpoly(7) == ZPoly{-1, -2, 1, 1});
}

TEST_CASE("algebraic reals") {
    auto roots = AlgebraicReal::real_roots(ZPoly{-2, 0, 1});
    REQUIRE(roots.size() == 2);
    CHECK(roots[1].to_ball(128).mid_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(roots[1].is_integer_monic());
    CHECK(sturm_count_all(ZPoly{-1, -2, 1, 1}) == 3);
    CHECK(AlgebraicReal::from_rational(BigRational(5, 3)).is_rational());
    CHECK_THROWS(AlgebraicReal(ZPoly{-2, 0, 1}, {BigRational(-2), BigRational(2)}));
}

TEST_CASE("certified floor") {
    CHECK(certified_floor(Expr(7)) == 7);
    CHECK(certified_floor(Expr::pi() * Expr(100)) == 314);
    CHECK_THROWS_AS(certified_floor(pow(sqrt(Expr(3)), 2), 512), Undecidable);
}

TEST_CASE("root isolation with a rational root at a bisection point") {
    // x(x² − 5): 0 sits on the first split of the symmetric bound
    auto r = AlgebraicReal::real_roots(ZPoly{0, -5, 0, 1});
    REQUIRE(r.size() == 3);
    CHECK(r[0].to_ball(64).mid_double() == doctest::Approx(-std::sqrt(5.0)));
    CHECK(r[1].to_ball(64).contains(BigRational(0)));
    CHECK(r[2].to_ball(64).mid_double() == doctest::Approx(std::sqrt(5.0)));
}
