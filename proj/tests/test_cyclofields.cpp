#include "gf/cyclofields.hpp"

#include <doctest.h>

#include <cmath>

using namespace gf;

namespace {

// rank over Q of the coefficient vectors of 1, x, x², … (degree of Q(x))
long power_rank(const CycloElement& x, long n) {
    long width = static_cast<long>(real_cyclotomic_minpoly(n).size()) - 1;
    std::vector<std::vector<BigRational>> rows;
    CycloElement p = CycloElement::rational(1, n);
    for (long i = 0; i <= width; ++i) {
        std::vector<BigRational> r(width, BigRational(0));
        QPoly c = p.lift(n).coeffs();
        for (std::size_t j = 0; j < c.size() && j < r.size(); ++j) r[j] = c[j];
        rows.push_back(r);
        p = p * x;
    }
    long rank = 0;
    for (long col = 0; col < width && rank < static_cast<long>(rows.size()); ++col) {
        long piv = -1;
        for (long i = rank; i < static_cast<long>(rows.size()); ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (long i = rank + 1; i < static_cast<long>(rows.size()); ++i) {
            if (rows[i][col] == 0) continue;
            BigRational f = rows[i][col] / rows[rank][col];
            for (long j = col; j < width; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// γ by its definition through prime powers
long gamma_oracle(long l) {
    auto f = factorize(l);
    return f.size() == 1 ? f[0].first : 1;
}

}  // namespace

TEST_CASE("invariants") {
    CHECK(invariants(9).phi == 6);
    CHECK(invariants(9).gamma == 3);
    CHECK(invariants(12).phi == 4);
    CHECK(invariants(12).gamma == 1);
    CHECK(invariants(31).phi == 30);
    CHECK(invariants(31).gamma == 31);
    CHECK_THROWS_AS(invariants(2), InvalidModulus);
}

TEST_CASE("compositum_info") {
    auto a = compositum_info(31, 3);
    CHECK(a.lcm == 93);
    CHECK(a.rho == 2);
    CHECK(a.degree == 15);
    auto b = compositum_info(4, 6);
    CHECK(b.lcm == 12);
    CHECK(b.degree == 1);
    auto c = compositum_info(5, 5);
    CHECK(c.lcm == 5);
    CHECK(c.rho == 1);
    CHECK(c.degree == 2);
    CHECK(RealCyclotomicField::F(31, 3).degree() == 15);
    CHECK(RealCyclotomicField::F(31, 3).moduli() == std::vector<long>{31});
}

TEST_CASE("field norms") {
    auto F5 = RealCyclotomicField::F(5);
    auto x = CycloElement::rational(4, 5) * CycloElement::sin2_pi_over(5);
    CHECK(field_norm(F5, x) == 5);
    CHECK(field_norm(RealCyclotomicField::F(4), CycloElement::rational(4) * CycloElement::sin2_pi_over(4)) == 2);
    CHECK(field_norm(RealCyclotomicField::rationals(), CycloElement::rational(BigRational(7, 3))) ==
          BigRational(7, 3));
    auto F313 = RealCyclotomicField::F(31, 3);
    CHECK(norm_4sin2_closed_form(F313, 31) == 31);
    BigInt three15;
    mpz_pow_ui(three15.get_mpz_t(), BigInt(3).get_mpz_t(), 15);
    CHECK(norm_4sin2_closed_form(F313, 3) == BigRational(three15));
    CHECK(field_norm(F313, CycloElement::rational(4) * CycloElement::sin2_pi_over(3)) == BigRational(three15));
    CHECK(field_norm(F313, CycloElement::rational(4) * CycloElement::sin2_pi_over(31)) == 31);
    CHECK(norm_4sin2_closed_form(F5, 5) == 5);
}

TEST_CASE("property: norm of 4 sin²(π/l) equals γ(l)") {
    for (long l = 3; l <= 200; ++l) {
        auto F = RealCyclotomicField::F(l);
        auto x = CycloElement::rational(4) * CycloElement::sin2_pi_over(l);
        BigRational n = field_norm(F, x);
        CHECK(n == gamma_oracle(l));
        CHECK(n == gamma_of(l));
        CHECK(n == norm_4sin2_closed_form(F, l));
        // floating product over the embeddings as a rough cross-check
        double prod = 1;
        for (long a : F.embedding_reps_at(l)) {
            double s = std::sin(M_PI * a / static_cast<double>(l));
            prod *= 4 * s * s;
        }
        CHECK(std::fabs(prod - n.get_d()) < 1e-6 * n.get_d());
    }
}

TEST_CASE("property: closed-form norm equals the exact norm on composita") {
    for (long l = 3; l <= 24; ++l)
        for (long m = 3; m <= l; ++m) {
            auto F = RealCyclotomicField::F(l, m);
            for (long t : {l, m}) {
                auto x = CycloElement::rational(4) * CycloElement::sin2_pi_over(t);
                BigRational n = field_norm(F, x);
                CHECK(n == norm_4sin2_closed_form(F, t));
                if (F.lcm_modulus() <= 60) CHECK(n == field_norm_by_conjugates(F, x));
            }
        }
}

TEST_CASE("property: degree formula equals primitive-element degree") {
    for (long l = 3; l <= 60; ++l)
        for (long m = 3; m <= 60; ++m) {
            if (lcm_l(l, m) > 60) continue;
            long L = lcm_l(l, m);
            long best = 0;
            for (BigRational lam : {BigRational(3, 7), BigRational(5, 11)}) {
                auto x = CycloElement::theta(l).lift(L) + CycloElement::rational(lam, L) * CycloElement::theta(m).lift(L);
                best = std::max(best, power_rank(x, L));
            }
            CHECK_MESSAGE(compositum_info(l, m).degree == best, "l=" << l << " m=" << m);
            CHECK(RealCyclotomicField::F(l, m).degree() == best);
        }
}

TEST_CASE("discriminants") {
    CHECK(field_discriminant(RealCyclotomicField::rationals()) == 1);
    CHECK(field_discriminant(RealCyclotomicField::F(5)) == 5);
    BigInt d;
    mpz_pow_ui(d.get_mpz_t(), BigInt(31).get_mpz_t(), 14);
    CHECK(field_discriminant(RealCyclotomicField::F(31, 3)) == d);
    for (long p = 5; p <= 50; ++p) {
        if (!is_prime(p)) continue;
        BigInt want;
        mpz_pow_ui(want.get_mpz_t(), BigInt(p).get_mpz_t(), (p - 3) / 2);
        CHECK(field_discriminant(RealCyclotomicField::F(p)) == want);
        // Z[2cos 2π/p] is the maximal order: the polynomial discriminant agrees
        QPoly f = to_q(real_cyclotomic_minpoly(p));
        BigRational r = resultant(f, poly_derivative(f));
        CHECK((r < 0 ? BigRational(-r) : r) == BigRational(want));
    }
}

TEST_CASE("embeddings and containment") {
    auto F = RealCyclotomicField::F(15);
    CHECK(F.embeddings().size() == 4);
    CHECK(F.embeddings().front().is_identity());
    CHECK(F.contains(CycloElement::sin2_pi_over(5).lift(15)));
    CHECK(!RealCyclotomicField::F(5).contains(CycloElement::theta(15)));
    CHECK(F.contains_field(RealCyclotomicField::F(5)));
    CHECK_THROWS_AS(field_norm(RealCyclotomicField::F(5), CycloElement::theta(7)), ElementNotInField);
}
