#include "gf/pairsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <thread>

namespace gf {

const char* to_string(PairKind k) { return k == PairKind::Gamma5 ? "GAMMA5" : "GAMMA4"; }
long pair_constant(PairKind k) { return k == PairKind::Gamma5 ? 7 : 8; }
long method_a_constant(PairKind k) { return k == PairKind::Gamma5 ? 196 : 256; }

namespace {

constexpr long kRefineThreshold = 120;

Expr log_gamma_over_phi(long l) {
    auto inv = invariants(l);
    if (inv.gamma == 1) return Expr(0);
    return ln(Expr(inv.gamma)) / Expr(inv.phi);
}

Expr sin_pi_over(long l) { return sin(Expr::pi_times(BigRational(1, l))); }

void check_pair(long k, long s, PairKind kind) {
    if (s < 3 || k < s) throw std::invalid_argument("pair needs k >= s >= 3");
    if (kind == PairKind::Gamma4 && (s > 5 || k < 7))
        throw std::invalid_argument("GAMMA4 pairs need r in {3,4,5} and k >= 7");
}

Pair normalized(long k, long s) { return k >= s ? Pair{k, s} : Pair{s, k}; }

std::optional<std::pair<long, long>> paper_intermediates(long k, long s, PairKind kind) {
    if (kind != PairKind::Gamma5 || s != 3) return std::nullopt;
    if (k == 23) return std::pair<long, long>{281, 3091};
    if (k == 31) return std::pair<long, long>{11, 165};
    return std::nullopt;
}

}  // namespace

Expr pair_coefficient(long k, long s) {
    return ln(Expr(2)) - log_gamma_over_phi(k) - log_gamma_over_phi(s);
}

int coefficient_sign(long k, long s) {
    auto ik = invariants(k), is = invariants(s);
    if (ik.phi * is.phi > 4096) {
        // exponents too large for the exact comparison; a zero coefficient
        // needs both γ ≠ 1 and small totients, so the ball decides
        switch (certify_sign(pair_coefficient(k, s))) {
            case Ordering::Greater: return 1;
            case Ordering::Less: return -1;
            default: throw Undecidable("coefficient sign undecided");
        }
    }
    BigInt lhs, gk, gs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, static_cast<unsigned long>(ik.phi * is.phi));
    mpz_ui_pow_ui(gk.get_mpz_t(), static_cast<unsigned long>(ik.gamma), static_cast<unsigned long>(is.phi));
    mpz_ui_pow_ui(gs.get_mpz_t(), static_cast<unsigned long>(is.gamma), static_cast<unsigned long>(ik.phi));
    rhs = gk * gs;
    return lhs > rhs ? 1 : (lhs == rhs ? 0 : -1);
}

Expr pair_numerator(long k, long s, PairKind kind) {
    return ln(Expr(pair_constant(kind))) - ln(sin_pi_over(k)) - ln(sin_pi_over(s));
}

std::vector<Pair> exceptional_pairs(PairKind kind) {
    // ln γ(l)/φ(l) ≤ ln 3/2 for every l ≥ 3, so a nonpositive coefficient needs
    // ln γ(k)/φ(k) ≥ ln 2 − ln 3/2. Only prime powers p^t with p ≤ 19 and
    // small t qualify, all below 32.
    std::vector<Pair> out;
    for (long k = 3; k <= 64; ++k) {
        if (kind == PairKind::Gamma4) {
            if (k < 7) continue;
            for (long r = 3; r <= 5; ++r)
                if (coefficient_sign(k, r) <= 0) out.push_back({k, r});
        } else {
            for (long s = 3; s <= k; ++s)
                if (coefficient_sign(k, s) <= 0) out.push_back({k, s});
        }
    }
    std::sort(out.begin(), out.end(), [](const Pair& a, const Pair& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    return out;
}

BoundProblem refine_problem(long k0, long s0, PairKind kind) {
    auto [k, s] = normalized(k0, s0);
    check_pair(k, s, kind);
    RealCyclotomicField F = RealCyclotomicField::F(k, s);
    BoundProblem p;
    p.M = F.degree();
    p.B = sqrt(Expr(BigRational(field_discriminant(F))));
    BigRational sixteen_M = 1;
    for (long i = 0; i < p.M; ++i) sixteen_M *= 16;
    // N(sin²(π/k) sin²(π/s)) from the closed norms of 4sin²
    BigRational nrm = norm_4sin2_closed_form(F, k) * norm_4sin2_closed_form(F, s) / sixteen_M;
    p.R = sqrt(Expr(nrm));
    Expr X = Expr::cyclo(CycloElement::sin2_pi_over(k)) * Expr::cyclo(CycloElement::sin2_pi_over(s));
    p.S = Expr(method_a_constant(kind)) * Expr::e() / (Expr(2) * X);
    p.m = 1;
    return p;
}

long refine(long k, long s, PairKind kind, int cap) {
    SolveOptions opt;
    opt.precision_cap = cap;
    return solve(refine_problem(k, s, kind), opt).N;
}

bool pair_inequality_holds(long k0, long s0, PairKind kind, int cap) {
    auto [k, s] = normalized(k0, s0);
    check_pair(k, s, kind);
    if (coefficient_sign(k, s) <= 0) throw ExceptionalPair("pair has nonpositive coefficient");
    auto ci = compositum_info(k, s);
    Ordering o = certify_compare(pair_numerator(k, s, kind), pair_coefficient(k, s) * Expr(ci.degree), cap);
    if (o == Ordering::Undecided || o == Ordering::Equal) throw Undecidable("pair inequality undecided");
    return o == Ordering::Greater;
}

PairReport pair_report(long k0, long s0, PairKind kind, int cap) {
    auto [k, s] = normalized(k0, s0);
    check_pair(k, s, kind);
    PairReport r;
    r.k = k, r.s = s, r.kind = kind;
    auto ci = compositum_info(k, s);
    r.field_degree = ci.degree;
    Expr c = pair_coefficient(k, s);
    r.coefficient = eval_ball(c, 128).center().to_string(12);
    if (coefficient_sign(k, s) <= 0) {
        r.exceptional = true;
        r.refined_KF = refine(k, s, kind, cap);
        r.final_bound = *r.refined_KF * ci.degree;
        return r;
    }
    r.survives = pair_inequality_holds(k, s, kind, cap);
    Expr ratio = pair_numerator(k, s, kind) / c;
    long kf = static_cast<long>(certified_floor(ratio / Expr(ci.degree), cap).get_si());
    r.bound_KF = kf;
    r.bound_K = kf * ci.degree;
    r.final_bound = *r.bound_K;
    if (*r.bound_K > kRefineThreshold) {
        r.refined_KF = refine(k, s, kind, cap);
        r.final_bound = std::min(*r.bound_K, *r.refined_KF * ci.degree);
    }
    if (auto pi = paper_intermediates(k, s, kind)) r.paper_KF = pi->first, r.paper_K = pi->second;
    return r;
}

// ------------------------------------------------------------------ search

namespace {

// double with an absolute error bound
struct Approx {
    double v, err;
};
constexpr double kUlps = 16 * DBL_EPSILON;

Approx mk(double v) { return {v, std::fabs(v) * kUlps + 1e-300}; }
Approx sub(Approx a, Approx b) {
    double v = a.v - b.v;
    return {v, a.err + b.err + std::fabs(v) * DBL_EPSILON};
}
Approx mul(Approx a, double exact) {
    double v = a.v * exact;
    return {v, a.err * std::fabs(exact) * (1 + DBL_EPSILON) + std::fabs(v) * DBL_EPSILON};
}

struct Sieve {
    std::vector<std::int32_t> phi, spf;
    explicit Sieve(long n) : phi(n + 1), spf(n + 1, 0) {
        std::vector<std::int32_t> primes;
        if (n >= 1) phi[1] = 1;
        for (long i = 2; i <= n; ++i) {
            if (spf[i] == 0) spf[i] = static_cast<std::int32_t>(i), phi[i] = static_cast<std::int32_t>(i - 1),
                primes.push_back(static_cast<std::int32_t>(i));
            for (std::int32_t p : primes) {
                long ip = i * p;
                if (p > spf[i] || ip > n) break;
                spf[ip] = p;
                phi[ip] = static_cast<std::int32_t>(phi[i] * (p == spf[i] ? p : p - 1));
            }
        }
    }
    long gamma(long l) const {
        long p = spf[l];
        while (l % p == 0) l /= p;
        return l == 1 ? p : 1;
    }
};

struct PairTester {
    static constexpr long kTable = 1 << 16;
    const Sieve& sv;
    PairKind kind;
    double lnC;
    std::vector<Approx> g_tab, ls_tab;

    PairTester(const Sieve& s, PairKind k, long n)
        : sv(s), kind(k), lnC(std::log(static_cast<double>(pair_constant(k)))) {
        long m = std::min(n, kTable);
        g_tab.resize(m + 1), ls_tab.resize(m + 1);
        for (long l = 3; l <= m; ++l) g_tab[l] = g_calc(l), ls_tab[l] = ls_calc(l);
    }
    // ln γ(l)/φ(l)
    Approx g_calc(long l) const {
        long gm = sv.gamma(l);
        return gm == 1 ? Approx{0, 0} : mk(std::log(double(gm)) / sv.phi[l]);
    }
    // −ln sin(π/l)
    static Approx ls_calc(long l) { return mk(-std::log(std::sin(M_PI / double(l)))); }
    Approx g(long l) const { return l < long(g_tab.size()) ? g_tab[l] : g_calc(l); }
    Approx ls(long l) const { return l < long(ls_tab.size()) ? ls_tab[l] : ls_calc(l); }

    long degree(long k, long s) const {
        long gd = std::gcd(k, s);
        long L_phi = long(sv.phi[k]) * sv.phi[s] / sv.phi[gd];
        return L_phi / (gd <= 2 ? 4 : 2);
    }

    // 1 survives, 0 fails, −1 undecided in double
    int test(long k, long s) const {
        Approx c = sub(sub(mk(M_LN2), g(k)), g(s));
        Approx lhs = mul(c, double(degree(k, s)));
        Approx lk = ls(k), lsv = ls(s);
        Approx rhs = sub(sub(mk(lnC), Approx{-lk.v, lk.err}), Approx{-lsv.v, lsv.err});
        if (lhs.v - lhs.err > rhs.v + rhs.err) return 0;
        if (lhs.v + lhs.err < rhs.v - rhs.err) return 1;
        return -1;
    }

    // no s ≤ k can survive: c ≥ ln2 − g(k) − ln3/2 and d ≥ φ(k)/4,
    // while the numerator is at most ln C + 2 ln(k/2)
    bool k_pruned(long k) const {
        Approx cl = sub(sub(mk(M_LN2), g(k)), mk(std::log(3.0) / 2));
        if (cl.v - cl.err <= 0) return false;
        Approx lhs = mul(cl, sv.phi[k] / 4.0);
        Approx rhs = mk(lnC + 2 * std::log(k / 2.0));
        rhs.err += 4 * kUlps * std::fabs(rhs.v);
        return lhs.v - lhs.err > rhs.v + rhs.err;
    }
};

}  // namespace

SearchResult search(PairKind kind, long k_max, int jobs, int cap) {
    if (k_max < 7) throw std::invalid_argument("k_max must be at least 7");
    if (jobs < 1) jobs = 1;
    Sieve sv(k_max);
    PairTester t(sv, kind, k_max);
    auto excl = exceptional_pairs(kind);
    std::set<Pair> exceptional(excl.begin(), excl.end());

    struct Local {
        std::vector<Pair> hits;
        SearchStats st;
    };
    std::vector<Local> locals(jobs);
    long first_k = kind == PairKind::Gamma4 ? 7 : 3;
    constexpr long kChunk = 4096;
    std::atomic<long> next{first_k};

    auto work = [&](int id) {
        Local& L = locals[id];
        for (;;) {
            long k0 = next.fetch_add(kChunk);
            if (k0 > k_max) break;
            long k1 = std::min(k_max, k0 + kChunk - 1);
            for (long k = k0; k <= k1; ++k) {
                long s_lo = 3, s_hi = kind == PairKind::Gamma4 ? 5 : k;
                if (kind == PairKind::Gamma5 && t.k_pruned(k)) {
                    ++L.st.pruned_k;
                    continue;
                }
                for (long s = s_lo; s <= s_hi; ++s) {
                    if (exceptional.count({k, s})) continue;
                    ++L.st.pairs_checked;
                    int r = t.test(k, s);
                    if (r < 0) {
                        ++L.st.pairs_fallback;
                        r = pair_inequality_holds(k, s, kind, cap) ? 1 : 0;
                    }
                    if (r == 1) L.hits.push_back({k, s});
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(work, i);
    work(0);
    for (auto& th : pool) th.join();

    SearchResult res;
    res.stats.k_max = k_max;
    std::vector<Pair> hits;
    for (auto& L : locals) {
        hits.insert(hits.end(), L.hits.begin(), L.hits.end());
        res.stats.pruned_k += L.st.pruned_k;
        res.stats.pairs_checked += L.st.pairs_checked;
        res.stats.pairs_fallback += L.st.pairs_fallback;
    }
    std::sort(hits.begin(), hits.end());
    for (const auto& [k, s] : hits) res.survivors.push_back(pair_report(k, s, kind, cap));
    return res;
}

MinCoefficient min_positive_coefficient(long k_limit) {
    // candidates by double value, then certified against the runner-up
    std::vector<std::pair<double, Pair>> vals;
    for (long k = 3; k <= k_limit; ++k)
        for (long s = 3; s <= k; ++s) {
            if (coefficient_sign(k, s) <= 0) continue;
            vals.push_back({eval_ball(pair_coefficient(k, s), 64).mid_double(), {k, s}});
        }
    if (vals.empty()) throw std::invalid_argument("no pairs in range");
    std::sort(vals.begin(), vals.end());
    MinCoefficient best{vals[0].second, pair_coefficient(vals[0].second.first, vals[0].second.second)};
    for (std::size_t i = 1; i < vals.size() && vals[i].first < vals[0].first * 2 + 1e-3; ++i) {
        Expr other = pair_coefficient(vals[i].second.first, vals[i].second.second);
        Ordering o = certify_compare(best.value, other);
        if (o == Ordering::Greater) best = {vals[i].second, other};
        else if (o != Ordering::Less) throw Undecidable("tie in minimum coefficient");
    }
    return best;
}

GlobalBound global_bound(PairKind kind, long k_max, int jobs, int cap) {
    GlobalBound g;
    g.kind = kind;
    auto consider = [&](long b, Pair p) {
        if (b > g.max || (b == g.max && p < g.argmax)) g.max = b, g.argmax = p;
    };
    for (const auto& [k, s] : exceptional_pairs(kind)) {
        g.exceptional.push_back(pair_report(k, s, kind, cap));
        consider(g.exceptional.back().final_bound, {k, s});
    }
    auto sr = search(kind, k_max, jobs, cap);
    g.stats = sr.stats;
    g.survivors = std::move(sr.survivors);
    for (const auto& r : g.survivors) consider(r.final_bound, {r.k, r.s});
    if (kind == PairKind::Gamma4) {
        auto fam = family_bound(Family::G4, KRange{2, 6}, cap);
        g.small_k_max = fam.max_bound;
        if (fam.max_bound > g.max) g.max = fam.max_bound, g.argmax = {fam.argmax.k, fam.argmax.r};
    }
    return g;
}

}  // namespace gf
