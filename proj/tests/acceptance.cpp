// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are fixed below; exit status is nonzero when any criterion fails.
#include "gf/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace gf;

namespace {

constexpr double kCoefficientTolerance = 1e-6;
constexpr double kCase1Seconds = 1, kCase2Seconds = 1, kCase3Seconds = 2;
constexpr double kSearchSeconds = 600;
constexpr long kSearchKMax = 10000000;
constexpr int kFeketeConfigs = 200;
constexpr int kLagrangeWitnesses = 500;
constexpr long kFeketeMaxN = 12;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

std::string fmt(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// family tables kept for the summary criterion
std::map<int, long> g_family_max;

const CaseBound* find_row(const FamilyTable& t, std::vector<long> params, Variant v, long m = 1) {
    for (const auto& r : t.rows)
        if (r.gcase.params() == params && r.variant == v && r.m == m) return &r;
    return nullptr;
}

void expect_rows(Outcome& o, const FamilyTable& t, const std::vector<std::pair<std::vector<long>, long>>& want,
                 Variant v, long m = 1) {
    for (const auto& [params, value] : want) {
        const CaseBound* r = find_row(t, params, v, m);
        std::ostringstream id;
        id << to_string(t.family) << "(";
        for (std::size_t i = 0; i < params.size(); ++i) id << (i ? "," : "") << params[i];
        id << ") " << to_string(v) << " m=" << m;
        if (!r) {
            o.require(false, id.str() + " missing");
            continue;
        }
        o.require(r->bound == value, id.str() + " got " + std::to_string(r->bound) + " want " + std::to_string(value));
    }
}

// ------------------------------------------------------------ criteria

Outcome c1() {
    Outcome o;
    auto t0 = Clock::now();
    auto t = family_bound(Family::G1);
    double s = since(t0);
    expect_rows(o, t,
                {{{3, 3, 3, 3}, 22}, {{3, 3, 4, 3}, 15}, {{3, 3, 5, 3}, 24}, {{3, 3, 4, 4}, 12}, {{3, 3, 5, 4}, 18},
                 {{3, 3, 5, 5}, 18}, {{3, 4, 4, 3}, 12}, {{3, 4, 5, 3}, 18}, {{3, 5, 5, 3}, 18}},
                Variant::U, 1);
    expect_rows(o, t, {{{3, 4, 4, 3}, 9}, {{3, 5, 5, 3}, 14}}, Variant::U, 2);
    o.require(t.max_bound == 24, "max " + std::to_string(t.max_bound));
    o.require(s < kCase1Seconds, "runtime " + fmt(s));
    g_family_max[1] = t.max_bound;
    o.detail << " max=" << t.max_bound << " time=" << fmt(s) << "s";
    return o;
}

Outcome c2() {
    Outcome o;
    auto t0 = Clock::now();
    auto t = family_bound(Family::G2);
    double s = since(t0);
    expect_rows(o, t,
                {{{3, 3, 3}, 39}, {{3, 4, 3}, 21}, {{3, 5, 3}, 34}, {{4, 4, 3}, 14}, {{4, 5, 3}, 22}, {{5, 5, 3}, 24},
                 {{3, 3, 4}, 22}, {{3, 3, 5}, 32}},
                Variant::U);
    o.require(t.max_bound == 39, "max " + std::to_string(t.max_bound));
    o.require(s < kCase2Seconds, "runtime " + fmt(s));
    g_family_max[2] = t.max_bound;
    o.detail << " max=" << t.max_bound << " convention=M*ln(2N+2) time=" << fmt(s) << "s";
    return o;
}

Outcome c3() {
    Outcome o;
    auto t0 = Clock::now();
    auto t = family_bound(Family::G3);
    double s = since(t0);
    expect_rows(o, t,
                {{{2, 3, 3}, 83}, {{2, 3, 4}, 45}, {{2, 3, 5}, 66}, {{2, 4, 3}, 28}, {{2, 5, 3}, 48}, {{3, 3, 3}, 37},
                 {{3, 4, 3}, 18}, {{3, 5, 3}, 24}, {{4, 4, 3}, 9}, {{4, 5, 3}, 2}, {{5, 5, 3}, 2}, {{3, 3, 4}, 17},
                 {{3, 3, 5}, 2}},
                Variant::U);
    for (auto p : {std::vector<long>{4, 5, 3}, {5, 5, 3}, {3, 3, 5}}) {
        const CaseBound* r = find_row(t, p, Variant::U);
        o.require(r && r->feasibility == Feasibility::ForcesFieldEqualsF, "degree-2 entry not from feasibility");
    }
    expect_rows(o, t, {{{2, 3, 3}, 53}, {{2, 3, 4}, 31}, {{2, 3, 5}, 32}, {{2, 4, 3}, 19}, {{2, 5, 3}, 22}},
                Variant::USquared);
    o.require(t.max_bound == 53, "max " + std::to_string(t.max_bound));
    o.require(s < kCase3Seconds, "runtime " + fmt(s));
    g_family_max[3] = t.max_bound;
    o.detail << " max=" << t.max_bound << " time=" << fmt(s) << "s";
    return o;
}

Outcome c4() {
    Outcome o;
    auto t0 = Clock::now();
    auto small = family_bound(Family::G4, KRange{2, 6});
    o.require(small.max_bound == 31, "small-k max " + std::to_string(small.max_bound));
    o.require(small.argmax.k == 2 && small.argmax.s == 3 && small.argmax.r == 3, "small-k argmax " + small.argmax.label());
    auto g = global_bound(PairKind::Gamma4, kSearchKMax, 1);
    double s = since(t0);
    long total = std::max(g.max, g.small_k_max.value_or(0));
    o.require(total == 120, "global max " + std::to_string(total));
    o.require(g.argmax == Pair{31, 3}, "argmax (" + std::to_string(g.argmax.first) + "," +
                                           std::to_string(g.argmax.second) + ")");
    o.require(s < kSearchSeconds, "runtime " + fmt(s));
    g_family_max[4] = total;
    o.detail << " small-k max=" << small.max_bound << " at " << small.argmax.label() << " global=" << total
             << " at (" << g.argmax.first << "," << g.argmax.second << ") kmax=" << kSearchKMax
             << " time=" << fmt(s) << "s";
    return o;
}

Outcome c5() {
    Outcome o;
    auto t0 = Clock::now();
    auto ex = exceptional_pairs(PairKind::Gamma5);
    std::vector<Pair> want = {{3, 3}, {4, 3}, {5, 3}, {7, 3},  {8, 3},  {9, 3}, {11, 3},
                              {13, 3}, {17, 3}, {19, 3}, {4, 4}, {5, 4}, {5, 5}, {7, 5}};
    std::sort(ex.begin(), ex.end());
    std::sort(want.begin(), want.end());
    o.require(ex == want, "exceptional pairs differ");

    auto mc = min_positive_coefficient(1000);
    double v = eval_ball(mc.value, 128).mid_double();
    o.require(mc.pair == Pair{23, 3}, "min coefficient pair");
    o.require(std::fabs(v - 0.00131857) <= kCoefficientTolerance, "min coefficient " + fmt(v, 8));

    auto r23 = pair_report(23, 3, PairKind::Gamma5);
    o.require(r23.refined_KF == 8 && r23.final_bound == 88, "(23,3) refinement");
    auto r31 = pair_report(31, 3, PairKind::Gamma5);
    o.require(r31.refined_KF == 8 && r31.final_bound == 120, "(31,3) refinement");
    bool reconciled = r31.bound_KF == 11 && r31.bound_K == 165;
    o.require(reconciled || r31.intermediate_divergence(), "(31,3) intermediates neither reconciled nor flagged");

    auto g = global_bound(PairKind::Gamma5, kSearchKMax, 1);
    double s = since(t0);
    o.require(g.max == 120 && g.argmax == Pair{31, 3}, "global bound");
    o.require(s < kSearchSeconds, "runtime " + fmt(s));
    g_family_max[5] = g.max;
    o.detail << " exceptional=" << ex.size() << " min coef=" << fmt(v, 8) << " at (23,3)"
             << " (23,3): KF=" << r23.refined_KF.value_or(0) << " final=" << r23.final_bound
             << " (31,3): KF=" << r31.refined_KF.value_or(0) << " final=" << r31.final_bound
             << " intermediates " << r31.bound_KF.value_or(0) << "/" << r31.bound_K.value_or(0)
             << (reconciled ? " reconciled" : " vs printed 11/165 flagged") << " global=" << g.max
             << " time=" << fmt(s) << "s";
    return o;
}

Outcome c6() {
    Outcome o;
    std::vector<long> got;
    for (int f = 1; f <= 5; ++f) got.push_back(g_family_max.count(f) ? g_family_max[f] : -1);
    o.require(got == std::vector<long>{24, 39, 53, 120, 120}, "family maxima");
    long n14 = *std::max_element(got.begin(), got.end());
    o.require(n14 == 120, "N(14)");
    o.detail << " maxima={" << got[0] << "," << got[1] << "," << got[2] << "," << got[3] << "," << got[4]
             << "} N(14)=" << n14;
    return o;
}

Outcome c7() {
    Outcome o;
    auto e9 = existence_inequality(9), e10 = existence_inequality(10);
    o.require(e9.holds, "n=9 should hold");
    o.require(e10.lhs == 180 && e10.rhs == 180 && !e10.holds, "n=10 tie");
    long bad = 0;
    for (long n = 10; n <= 10000; ++n)
        if (existence_inequality(n).holds) ++bad;
    o.require(bad == 0, std::to_string(bad) + " dimensions >= 10 hold");
    long ident = 0;
    for (long n = 4; n <= 200; ++n) ident += narrow_face_vertex_bound(n) == face_average_bound(0, 2, n - 1);
    o.require(ident == 197, "face identity");
    o.require(max_admissible_dimension(10000) == 9, "max admissible dimension");
    o.detail << " n=9 " << e9.lhs.get_str() << ">" << e9.rhs.get_str() << "; n=10 180=180 fails; 10..10^4 fail;"
             << " identity on 4..200";
    return o;
}

Outcome c8() {
    Outcome o;
    long a = takeuchi_bound(0, 4), b = fuchsian_t_bound(Expr(128) * Expr::pi() / Expr(3)), c = takeuchi_bound(0, 46);
    o.require(a == 11, "takeuchi(0,4)");
    o.require(b == 46, "t bound");
    o.require(c == 44, "takeuchi(0,46)");
    o.detail << " takeuchi(0,4)=" << a << " t(128pi/3)=" << b << " takeuchi(0,46)=" << c;
    return o;
}

// degree of Q(x) as the rank of 1, x, x², … in the power basis at level n
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
    for (long col = 0; col < width; ++col) {
        long piv = -1;
        for (long i = rank; i < static_cast<long>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
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

Outcome c9() {
    Outcome o;
    long norms = 0, degs = 0, discs = 0;
    for (long l = 3; l <= 200; ++l) {
        auto F = RealCyclotomicField::F(l);
        BigRational n = field_norm(F, CycloElement::rational(4) * CycloElement::sin2_pi_over(l));
        bool ok = n == gamma_of(l) && n == norm_4sin2_closed_form(F, l);
        o.require(ok, "norm at l=" + std::to_string(l));
        norms += ok;
    }
    for (long l = 3; l <= 60; ++l)
        for (long m = 3; m <= 60; ++m) {
            long L = lcm_l(l, m);
            if (L > 60) continue;
            long best = 0;
            for (BigRational lam : {BigRational(3, 7), BigRational(5, 11)}) {
                auto x = CycloElement::theta(l).lift(L) + CycloElement::rational(lam, L) * CycloElement::theta(m).lift(L);
                best = std::max(best, power_rank(x, L));
            }
            bool ok = compositum_info(l, m).degree == best;
            o.require(ok, "degree at (" + std::to_string(l) + "," + std::to_string(m) + ")");
            degs += ok;
        }
    for (long p = 5; p <= 50; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d) prime &= p % d != 0;
        if (!prime) continue;
        BigInt want;
        mpz_ui_pow_ui(want.get_mpz_t(), p, (p - 3) / 2);
        bool ok = field_discriminant(RealCyclotomicField::F(p)) == want;
        o.require(ok, "disc at p=" + std::to_string(p));
        discs += ok;
    }
    o.detail << " norms=" << norms << "/198 degree pairs=" << degs << " prime discriminants=" << discs;
    return o;
}

BigRational rnd_rational(std::mt19937& rng, long lo, long hi, long den) {
    BigRational q(lo * den + long(rng() % ((hi - lo) * den + 1)), den);
    q.canonicalize();
    return q;
}

// Chebyshev polynomial of degree n moved to [a,b]: sup exactly 1 there
std::vector<BigRational> moved_chebyshev(long n, const BigRational& a, const BigRational& b) {
    std::vector<BigRational> y = {(-a - b) / (b - a), BigRational(2) / (b - a)};
    std::vector<BigRational> t0 = {1}, t1 = y;
    if (n == 0) return t0;
    for (long k = 1; k < n; ++k) {
        std::vector<BigRational> t2(t1.size() + 1, BigRational(0));
        for (std::size_t i = 0; i < t1.size(); ++i)
            for (std::size_t j = 0; j < 2; ++j) t2[i + j] += 2 * t1[i] * y[j];
        for (std::size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
        t0 = t1, t1 = t2;
    }
    return t1;
}

BigRational horner(const std::vector<BigRational>& p, const BigRational& x) {
    BigRational v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

Outcome c10() {
    Outcome o;
    std::mt19937 rng(20240611);
    long certs = 0, witnesses = 0, identities = 0;
    auto id = RealCyclotomicField::rationals().identity();
    for (int cfg = 0; cfg < kFeketeConfigs; ++cfg) {
        bool quadratic = cfg % 2 == 1;
        RealCyclotomicField F = quadratic ? RealCyclotomicField::F(5) : RealCyclotomicField::rationals();
        auto embs = F.embeddings();
        IntervalMap iv;
        BigRational prod = 1;
        for (std::size_t s = 0; s < embs.size(); ++s) {
            BigRational a = rnd_rational(rng, -3, 3, 8);
            // widths chosen so the product of (b - a)/4 stays below 1
            BigRational cap = BigRational(4) / prod;
            if (cap > 6) cap = 6;
            BigRational w = cap * BigRational(long(1 + rng() % 63), 64);
            w.canonicalize();
            iv.push_back({embs[s], {a, a + w}});
            prod *= w / 4;
        }
        if (!(prod < 1)) {
            o.require(false, "config generator");
            continue;
        }
        long n = rng() % (kFeketeMaxN + 1);
        try {
            auto c = find_small_polynomial(F, iv, n);
            auto basis = integral_basis(F);
            bool nonzero = false, integral = true, bounded = true;
            for (long i = 0; i <= n; ++i) {
                CycloElement rebuilt = CycloElement::rational(0);
                for (std::size_t j = 0; j < basis.size(); ++j)
                    rebuilt = rebuilt + basis[j] * CycloElement::rational(BigRational(c.alpha[i][j]));
                integral &= rebuilt == c.poly[i];
                nonzero |= !c.poly[i].is_zero();
            }
            for (const auto& [e, r] : iv) {
                auto sup = certify_sup_norm(c.poly, e, r);
                bounded &= certify_compare(sup.bound, fekete_bound(F, iv, n)) != Ordering::Greater;
            }
            o.require(nonzero && integral && bounded, "certificate " + std::to_string(cfg));
            certs += nonzero && integral && bounded;
        } catch (const std::exception& e) {
            std::ostringstream what;
            what << "search " << cfg << " n=" << n;
            for (const auto& [e2, r] : iv) what << " [" << r.lo.get_str() << "," << r.hi.get_str() << "]";
            o.require(false, what.str() + ": " + e.what());
        }

        // growth outside the first interval
        const auto& [a, b] = iv[0].second;
        long dn = std::max(1L, n);
        bool dominated = true;
        for (int w = 0; w < kLagrangeWitnesses; ++w) {
            std::vector<BigRational> q;
            BigRational M0;
            if (w == 0) {
                q = moved_chebyshev(dn, a, b);
                M0 = 1;
            } else {
                long deg = 1 + rng() % dn;
                std::vector<CycloElement> P;
                for (long i = 0; i <= deg; ++i) {
                    q.push_back(rnd_rational(rng, -5, 5, 1 + rng() % 6));
                    P.push_back(CycloElement::rational(q.back()));
                }
                M0 = exact_value(certify_sup_norm(P, id, {a, b}).bound)->rational_value();
                if (M0 == 0) continue;
            }
            BigRational x = b + (b - a) * rnd_rational(rng, 0, 3, 16);
            BigRational v = horner(q, x);
            if (v < 0) v = -v;
            dominated &= v <= lagrange_growth_bound(M0, a, b, dn, x).exact;
            ++witnesses;
        }
        o.require(dominated, "lagrange " + std::to_string(cfg));

        if (cfg < 20) {
            bool same = true;
            for (long k = 0; k <= 6; ++k) {
                auto f = chebyshev_linear_forms(F, iv, k);
                same &= forms_determinant(f) == forms_determinant_closed(f, iv);
            }
            o.require(same, "determinant " + std::to_string(cfg));
            identities += same;
        }
    }
    o.detail << " certificates=" << certs << "/" << kFeketeConfigs << " lagrange witnesses=" << witnesses
             << " determinant configs=" << identities << "/20 (n=0..6)";
    return o;
}

Outcome c11() {
    Outcome o;
    auto t0 = Clock::now();
    Report one = reproduce_all(kSearchKMax, 1, kDefaultPrecisionCap);
    Report many = reproduce_all(kSearchKMax, 3, kDefaultPrecisionCap);
    bool same = true;
    for (Format f : {Format::Text, Format::Json, Format::Csv})
        same &= format_report(one, f, true) == format_report(many, f, true);
    o.require(same, "reports differ");
    o.detail << " jobs 1 vs 3, text/json/csv identical=" << (same ? "yes" : "no") << " time=" << fmt(since(t0)) << "s";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"G1 solver table", c1},       {"G2 bounds", c2},        {"G3 bounds", c3},
        {"G4 bounds", c4},             {"G5 pairs", c5},         {"five maxima", c6},
        {"polytope elimination", c7},  {"Takeuchi and area", c8}, {"cyclotomic oracles", c9},
        {"Fekete certificates", c10},  {"determinism", c11}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first << ":" << o.detail.str()
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
