#include "gf/degreebound.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gf;

namespace {

bool same(const Expr& a, const Expr& b) { return certify_compare(a, b) == Ordering::Equal; }

bool close(const Expr& a, double v) {
    double x = eval_ball(a, 128).mid_double();
    return std::fabs(x - v) <= 1e-12 * std::max(1.0, std::fabs(v));
}

// least N with N ln(1/R) − M ln(2N+2) − ln B ≥ ln S, in long double
long naive_solve(long M, long double B, long double R, long double S) {
    for (long N = 1;; ++N)
        if (N * std::log(1 / R) - M * std::log(2.0L * N + 2) - std::log(B) >= std::log(std::max(S, 1.0L))) return N;
}

}  // namespace

TEST_CASE("assemble over Q") {
    IntervalSystem sys{RealCyclotomicField::rationals(),
                       {{Expr(0), Expr(BigRational(9, 4))}},
                       {{0, {Expr(4), Expr(196)}}}};
    auto p = assemble(sys);
    CHECK(p.M == 1);
    CHECK(same(p.B, Expr(1)));
    CHECK(same(p.R, Expr(BigRational(3, 4))));
    CHECK(close(p.S, 1568 * M_E / 9));
    CHECK(p.m == 1);
}

TEST_CASE("assemble rejects wide intervals") {
    IntervalSystem sys{RealCyclotomicField::rationals(), {{Expr(-2), Expr(2)}}, {{0, {Expr(3), Expr(5)}}}};
    CHECK_THROWS_AS(assemble(sys), HypothesisViolated);
}

TEST_CASE("assemble over Q(sqrt 5)") {
    IntervalSystem sys{RealCyclotomicField::F(5),
                       {{Expr(1), Expr(2)}, {Expr(0), Expr(1)}},
                       {{0, {Expr(2), Expr(14)}}}};
    auto p = assemble(sys);
    CHECK(p.M == 2);
    CHECK(close(p.B, std::sqrt(5.0)));
    CHECK(same(p.R, Expr(BigRational(1, 4))));
    CHECK(close(p.S, 26 * M_E));
}

TEST_CASE("solver examples") {
    BoundProblem a;
    a.R = sqrt(Expr(BigRational(1, 2)));
    a.S = Expr(16) * Expr::e();
    auto ra = solve(a);
    CHECK(ra.N == 22);
    CHECK(ra.degree_bound == 22);

    BoundProblem b;
    b.R = Expr(BigRational(1, 2));
    b.S = Expr(32) * Expr::e();
    CHECK(solve(b).N == 12);

    // Method A data for the pair (31,3)
    BoundProblem c;
    c.M = 15;
    c.B = pow(Expr(31), 7);
    c.R = sqrt(Expr(31) * pow(Expr(3), 15)) / pow(Expr(4), 15);
    Expr s31 = sin(Expr::pi_times(BigRational(1, 31)));
    c.S = Expr(98) * Expr::e() / (s31 * s31 * Expr(BigRational(3, 4)));
    CHECK(solve(c).N == 8);
    CHECK(solve(c).degree_bound == 120);
}

TEST_CASE("S below one is clamped") {
    BoundProblem p;
    p.R = Expr(BigRational(1, 3));
    p.S = Expr(BigRational(1, 3));
    auto r = solve(p);
    CHECK(r.S_clamped);
    BoundProblem q = p;
    q.S = Expr(1);
    CHECK(solve(q).N == r.N);
}

TEST_CASE("divide_by_m reports NM/m") {
    BoundProblem p;
    p.M = 2;
    p.m = 2;
    p.B = sqrt(Expr(5));
    p.R = Expr(BigRational(1, 4));
    p.S = Expr(26) * Expr::e();
    SolveOptions o;
    o.divide_by_m = true;
    auto r = solve(p, o);
    CHECK(r.degree_bound == r.N);
    CHECK(solve(p).degree_bound == 2 * r.N);
}

TEST_CASE("property: minimality of N") {
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        BoundProblem p;
        p.M = 1 + rng() % 6;
        p.B = sqrt(Expr(long(1 + rng() % 500)));
        p.R = Expr(BigRational(long(1 + rng() % 9), 10));
        p.S = Expr(long(1 + rng() % 1000)) * Expr::e();
        auto r = solve(p);
        CHECK(key_inequality(p, r.N) != Ordering::Less);
        if (r.N > 1) CHECK(key_inequality(p, r.N - 1) == Ordering::Less);
        // independent long double scan, skipping near-ties
        long double B = eval_ball(p.B, 128).mid_double(), R = eval_ball(p.R, 128).mid_double(),
                    S = eval_ball(p.S, 128).mid_double();
        double margin = std::fabs(eval_ball(key_inequality_lhs(p, r.N), 128).mid_double());
        if (margin > 1e-9) CHECK(naive_solve(p.M, B, R, S) == r.N);
    }
}

TEST_CASE("property: monotone in S, B and R") {
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        BoundProblem p;
        p.M = 1 + rng() % 4;
        p.B = Expr(long(1 + rng() % 50));
        p.R = Expr(BigRational(long(1 + rng() % 8), 10));
        p.S = Expr(long(2 + rng() % 200));
        long n0 = solve(p).N;
        BoundProblem q = p;
        q.S = p.S * Expr(long(1 + rng() % 10));
        CHECK(solve(q).N >= n0);
        q = p;
        q.B = p.B * Expr(long(1 + rng() % 10));
        CHECK(solve(q).N >= n0);
        q = p;
        q.R = (p.R + Expr(1)) / Expr(2);
        CHECK(solve(q).N >= n0);
    }
}

TEST_CASE("property: N grows like ln S / ln(1/R)") {
    for (BigRational R : {BigRational(1, 2), BigRational(3, 4), BigRational(1, 10)}) {
        for (long lnS : {100, 300, 1000}) {
            BoundProblem p;
            p.R = Expr(R);
            p.S = exp(Expr(lnS));
            long N = solve(p).N;
            double ratio = N / (lnS / std::log(1 / R.get_d()));
            CHECK(ratio > 0.9);
            CHECK(ratio < 1.1);
        }
    }
}

TEST_CASE("describe mentions the instantiated values") {
    BoundProblem a;
    a.R = sqrt(Expr(BigRational(1, 2)));
    a.S = Expr(16) * Expr::e();
    CHECK(!describe(a).empty());
}
