#include "gf/edgegraphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gf {

const char* to_string(Family f) {
    switch (f) {
        case Family::G1: return "G1";
        case Family::G2: return "G2";
        case Family::G3: return "G3";
        case Family::G4: return "G4";
        case Family::G5: return "G5";
    }
    return "?";
}

const char* to_string(Variant v) {
    switch (v) {
        case Variant::U: return "u";
        case Variant::USquared: return "u_squared";
        case Variant::UTilde: return "u_tilde";
    }
    return "?";
}

const char* to_string(Feasibility f) {
    switch (f) {
        case Feasibility::Feasible: return "FEASIBLE";
        case Feasibility::ForcesFieldEqualsF: return "FORCES_FIELD_EQUALS_F";
        case Feasibility::Impossible: return "IMPOSSIBLE";
    }
    return "?";
}

// ------------------------------------------------------------------ cases

namespace {

using Q = BigRational;
using CE = CycloElement;

CE rat(const Q& q) { return CE::rational(q); }
CE cos1(long l) { return CE::cos_pi(Q(1, l)); }  // cos(π/l)
CE cos2(long l) { return CE::cos2_pi_over(l); }
CE sin2(long l) { return CE::sin2_pi_over(l); }
CE cos2pi(long l) { return CE::theta(l) * rat(Q(1, 2)); }  // cos(2π/l)
CE two_cos(long l) { return CE::two_cos_2pi(1, 2 * l); }  // 2cos(π/l)

const std::vector<std::vector<long>> kG1 = {{3, 3, 3, 3}, {3, 3, 4, 3}, {3, 3, 5, 3}, {3, 3, 4, 4}, {3, 3, 5, 4},
                                            {3, 3, 5, 5}, {3, 4, 4, 3}, {3, 4, 5, 3}, {3, 5, 5, 3}};
const std::vector<std::vector<long>> kG2 = {{3, 3, 3}, {3, 4, 3}, {3, 5, 3}, {4, 4, 3},
                                            {4, 5, 3}, {5, 5, 3}, {3, 3, 4}, {3, 3, 5}};
const std::vector<std::vector<long>> kG3 = {{2, 3, 3}, {2, 3, 4}, {2, 3, 5}, {2, 4, 3}, {2, 5, 3},
                                            {3, 3, 3}, {3, 4, 3}, {3, 5, 3}, {4, 4, 3}, {4, 5, 3},
                                            {5, 5, 3}, {3, 3, 4}, {3, 3, 5}};
const std::vector<std::pair<long, long>> kG4sr = {{3, 3}, {3, 4}, {3, 5}, {4, 3}, {5, 3}};

}  // namespace

std::vector<long> EdgeGraphCase::params() const {
    switch (family) {
        case Family::G1: return {s, k, r, p};
        case Family::G2: return {s, k, p};
        case Family::G3: return {s, k, r};
        case Family::G4: return {s, r, k};
        case Family::G5: return {k, s};
    }
    return {};
}

std::string EdgeGraphCase::label() const {
    static const char* names[5][4] = {
        {"s", "k", "r", "p"}, {"s", "k", "p", ""}, {"s", "k", "r", ""}, {"s", "r", "k", ""}, {"k", "s", "", ""}};
    auto ps = params();
    std::ostringstream os;
    os << to_string(family) << "(";
    for (std::size_t i = 0; i < ps.size(); ++i)
        os << (i ? "," : "") << names[static_cast<int>(family) - 1][i] << "=" << ps[i];
    os << ")";
    return os.str();
}

EdgeGraphCase make_case(Family f, const std::vector<long>& ps) {
    EdgeGraphCase c;
    c.family = f;
    auto need = [&](std::size_t n) {
        if (ps.size() != n)
            throw std::invalid_argument(std::string(to_string(f)) + " takes " + std::to_string(n) + " parameters");
    };
    auto listed = [&](const std::vector<std::vector<long>>& table) {
        if (std::find(table.begin(), table.end(), ps) == table.end())
            throw std::invalid_argument("parameters are not admissible for " + std::string(to_string(f)));
    };
    switch (f) {
        case Family::G1:
            need(4);
            listed(kG1);
            c.s = ps[0], c.k = ps[1], c.r = ps[2], c.p = ps[3];
            break;
        case Family::G2:
            need(3);
            listed(kG2);
            c.s = ps[0], c.k = ps[1], c.p = ps[2];
            break;
        case Family::G3:
            need(3);
            listed(kG3);
            c.s = ps[0], c.k = ps[1], c.r = ps[2];
            break;
        case Family::G4:
            need(3);
            if (std::find(kG4sr.begin(), kG4sr.end(), std::make_pair(ps[0], ps[1])) == kG4sr.end() || ps[2] < 2)
                throw std::invalid_argument("G4 needs (s,r) in {(3,3),(3,4),(3,5),(4,3),(5,3)} and k >= 2");
            c.s = ps[0], c.r = ps[1], c.k = ps[2];
            break;
        case Family::G5:
            need(2);
            if (ps[1] < 3 || ps[0] < ps[1]) throw std::invalid_argument("G5 needs k >= s >= 3");
            c.k = ps[0], c.s = ps[1];
            break;
    }
    return c;
}

std::vector<EdgeGraphCase> enumerate_cases(Family f, std::optional<KRange> kr) {
    std::vector<EdgeGraphCase> out;
    auto from = [&](const std::vector<std::vector<long>>& t) {
        for (const auto& ps : t) out.push_back(make_case(f, ps));
    };
    switch (f) {
        case Family::G1: from(kG1); break;
        case Family::G2: from(kG2); break;
        case Family::G3: from(kG3); break;
        case Family::G4:
            if (!kr) throw MissingRange("G4 needs a k range");
            for (long k = std::max(2L, kr->lo); k <= kr->hi; ++k)
                for (auto [s, r] : kG4sr) out.push_back(make_case(f, {s, r, k}));
            break;
        case Family::G5:
            if (!kr) throw MissingRange("G5 needs a k range");
            for (long k = std::max(3L, kr->lo); k <= kr->hi; ++k)
                for (long s = 3; s <= k; ++s) out.push_back(make_case(f, {k, s}));
            break;
    }
    return out;
}

// ------------------------------------------------------------------ UPoly

namespace {

void utrim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace

UPoly upoly_add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] + b[i];
    }
    utrim(r);
    return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    utrim(r);
    return r;
}

CycloElement upoly_eval(const UPoly& p, const CycloElement& u) {
    CE r;
    for (std::size_t i = p.size(); i-- > 0;) r = r * u + p[i];
    return r;
}

bool upoly_equal(const UPoly& a, const UPoly& b) {
    UPoly d = upoly_add(a, upoly_mul(b, {rat(-1)}));
    return d.empty();
}

bool FundamentalMatrix::symmetric() const {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!upoly_equal(a[i][j], a[j][i])) return false;
    return true;
}

bool FundamentalMatrix::has_minimality(const BigRational& t, const AlgebraicReal& u) const {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Expr v(0), upow(1);
            for (const auto& c : a[i][j]) {
                v = v + Expr::cyclo(c) * upow;
                upow = upow * Expr::alg(u);
            }
            Ordering o = certify_compare(v, Expr(t));
            if (o == Ordering::Undecided) throw Undecidable("minimality comparison undecided");
            if (o != Ordering::Less) return false;
        }
    return true;
}

FundamentalMatrix FundamentalMatrix::substitute(const CycloElement& u) const {
    FundamentalMatrix m = *this;
    for (auto& row : m.a)
        for (auto& e : row) {
            CE v = upoly_eval(e, u);
            e = v.is_zero() ? UPoly{} : UPoly{v};
        }
    return m;
}

FundamentalMatrix gram_matrix(const EdgeGraphCase& c) {
    FundamentalMatrix m;
    m.a.assign(4, std::vector<UPoly>(4));
    for (int i = 0; i < 4; ++i) m.a[i][i] = {rat(-2)};
    auto set = [&](int i, int j, UPoly v) {
        utrim(v);
        m.a[i - 1][j - 1] = v;
        m.a[j - 1][i - 1] = v;
    };
    set(1, 2, {CE(), rat(1)});
    switch (c.family) {
        case Family::G1:
            set(1, 3, {two_cos(c.s)});
            set(1, 4, {two_cos(c.r)});
            set(2, 3, {two_cos(c.k)});
            set(2, 4, {two_cos(c.p)});
            break;
        case Family::G2:
            set(1, 3, {two_cos(c.s)});
            set(2, 3, {two_cos(c.k)});
            set(3, 4, {two_cos(c.p)});
            break;
        case Family::G3:
            set(1, 3, {two_cos(c.s)});
            set(2, 4, {two_cos(c.k)});
            set(3, 4, {two_cos(c.r)});
            break;
        case Family::G4:
            set(1, 3, {two_cos(c.s)});
            set(1, 4, {two_cos(c.r)});
            set(2, 3, {two_cos(c.k)});
            break;
        case Family::G5:
            set(1, 3, {two_cos(c.s)});
            set(2, 4, {two_cos(c.k)});
            break;
    }
    return m;
}

UPoly determinant(const FundamentalMatrix& m) {
    std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    UPoly det;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        UPoly term{rat(inv % 2 ? -1 : 1)};
        for (std::size_t i = 0; i < n && !term.empty(); ++i) term = upoly_mul(term, m.a[i][perm[i]]);
        det = upoly_add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Quadratic printed_quadratic(const EdgeGraphCase& c) {
    const CE four = rat(4), one = rat(1);
    switch (c.family) {
        case Family::G1: {
            CE L = cos1(c.r) * cos1(c.p) + cos1(c.k) * cos1(c.s);
            CE X = (cos2pi(c.k) + cos2pi(c.p)) * (cos2pi(c.r) + cos2pi(c.s));
            return {one, four * L, four * L * L - X};
        }
        case Family::G2:
            return {sin2(c.p), four * cos1(c.s) * cos1(c.k), four * (cos2(c.s) + cos2(c.k) + cos2(c.p) - one)};
        case Family::G3:
            return {sin2(c.r), rat(2) * cos1(c.s) * cos1(c.k) * cos1(c.r),
                    four * cos2(c.r) - four * sin2(c.s) * sin2(c.k)};
        case Family::G4:
            return {one, four * cos1(c.s) * cos1(c.k), four * cos2(c.s) - four * sin2(c.k) * sin2(c.r)};
        case Family::G5: return {one, CE(), rat(-4) * sin2(c.k) * sin2(c.s)};
    }
    throw std::logic_error("unknown family");
}

CycloElement determinant_value(const EdgeGraphCase& c, const CycloElement& u) {
    return upoly_eval(determinant(gram_matrix(c)), u);
}

CycloElement determinant_closed_form(const EdgeGraphCase& c, const CycloElement& u) {
    return rat(-4) * upoly_eval(printed_quadratic(c).as_upoly(), u);
}

RealCyclotomicField base_field(const EdgeGraphCase& c) {
    std::vector<long> mods;
    for (long l : c.params())
        if (l >= 3) mods.push_back(l);
    return RealCyclotomicField(mods);
}

RealCyclotomicField cosine_field(const EdgeGraphCase& c) {
    if (c.family == Family::G5) return base_field(c);
    std::vector<long> mods;
    for (long l : c.params()) mods.push_back(2 * l);
    return RealCyclotomicField(mods);
}

CycloElement printed_discriminant(const EdgeGraphCase& c) {
    const CE one = rat(1);
    switch (c.family) {
        case Family::G1: return rat(4) * (cos2pi(c.k) + cos2pi(c.p)) * (cos2pi(c.r) + cos2pi(c.s));
        case Family::G2:
            return rat(16) * cos2(c.s) * cos2(c.k) +
                   rat(16) * sin2(c.p) * (one - cos2(c.s) - cos2(c.k) - cos2(c.p));
        case Family::G3:
            return rat(4) * cos2(c.s) * cos2(c.k) * cos2(c.r) + rat(16) * sin2(c.s) * sin2(c.k) * sin2(c.r) -
                   rat(16) * sin2(c.r) * cos2(c.r);
        case Family::G4: return rat(16) * sin2(c.k) * (sin2(c.r) - cos2(c.s));
        case Family::G5: return rat(16) * sin2(c.k) * sin2(c.s);
    }
    throw std::logic_error("unknown family");
}

std::vector<Variant> variants(const EdgeGraphCase& c) {
    switch (c.family) {
        case Family::G1:
        case Family::G2: return {Variant::U};
        case Family::G3:
            if (c.s == 2) return {Variant::U, Variant::USquared};
            return {Variant::U};
        case Family::G4: return {Variant::UTilde};
        case Family::G5: return {Variant::USquared};
    }
    return {};
}

std::pair<BigRational, BigRational> geometric_range(Variant v) {
    switch (v) {
        case Variant::U: return {2, 14};
        case Variant::USquared: return {4, 196};
        case Variant::UTilde: return {4, 256};
    }
    return {0, 0};
}

// ------------------------------------------------------------- embeddings

namespace {

// representative of the embedding rep (mod N) at level M, N | M
long lift_rep(long rep, long N, long M) {
    for (long cand = rep;; cand += N)
        if (gcd_l(cand, M) == 1) return cand;
}

// x under the embedding of a field of modulus N with representative rep
Expr at(const CE& x, long rep, long N) {
    if (x.is_rational()) return Expr(x.rational_value());
    long M = lcm_l(N, x.modulus());
    return Expr::cyclo(x.lift(M), lift_rep(rep, N, M));
}

CE conj(const CE& x, long rep, long N) {
    if (x.is_rational()) return x;
    long M = lcm_l(N, x.modulus());
    return x.lift(M).conjugate(lift_rep(rep, N, M));
}

Ordering sign_of(const Expr& e, int cap) {
    Ordering o = certify_sign(e, cap);
    if (o == Ordering::Undecided) throw Undecidable("sign undecided: " + e.str());
    return o;
}

}  // namespace

std::optional<AdmissibleInterval> admissible_interval(const EdgeGraphCase& c, long rep, Variant v, int cap) {
    RealCyclotomicField E = cosine_field(c);
    long N = E.lcm_modulus();
    if (gcd_l(rep, N) != 1) throw std::invalid_argument("embedding representative must be a unit");
    Quadratic q = printed_quadratic(c);
    AdmissibleInterval iv;
    switch (v) {
        case Variant::U: {
            CE D = printed_discriminant(c);
            if (sign_of(at(D, rep, N), cap) != Ordering::Greater) return std::nullopt;
            Expr a = at(q.a, rep, N), b = at(q.b, rep, N);
            Expr half = sqrt(at(D, rep, N)) / (Expr(2) * a);
            Expr mid = -b / (Expr(2) * a);
            iv.lo = mid - half;
            iv.hi = mid + half;
            CE ta = conj(q.a, rep, N);
            iv.length_squared = conj(D, rep, N) * (ta * ta).inverse();
            return iv;
        }
        case Variant::USquared: {
            if (!q.b.is_zero()) throw Unsupported("u_squared interval needs a quadratic without linear term");
            CE hi = -q.c * q.a.inverse();
            if (sign_of(at(hi, rep, N), cap) != Ordering::Greater) return std::nullopt;
            iv.lo = Expr(0);
            iv.hi = at(hi, rep, N);
            CE th = conj(hi, rep, N);
            iv.length_squared = th * th;
            return iv;
        }
        case Variant::UTilde: {
            if (c.family != Family::G4) throw Unsupported("u_tilde is defined for G4 only");
            CE lo = rat(4) * cos2(c.s) * sin2(c.k);
            CE hi = rat(4) * sin2(c.r) * sin2(c.k);
            if (sign_of(at(hi - lo, rep, N), cap) != Ordering::Greater) return std::nullopt;
            iv.lo = at(lo, rep, N);
            iv.hi = at(hi, rep, N);
            iv.lo_closed = true;
            CE len = conj(hi - lo, rep, N);
            iv.length_squared = len * len;
            return iv;
        }
    }
    return std::nullopt;
}

Feasibility feasibility(const EdgeGraphCase& c, int cap) {
    RealCyclotomicField F = base_field(c);
    CE D = printed_discriminant(c);
    if (sign_of(at(D, 1, F.lcm_modulus()), cap) == Ordering::Less) return Feasibility::ForcesFieldEqualsF;
    for (const auto& e : F.embeddings()) {
        if (e.is_identity()) continue;
        if (sign_of(at(D, e.rep, e.modulus), cap) == Ordering::Less) return Feasibility::Impossible;
    }
    return Feasibility::Feasible;
}

// --------------------------------------------------------- V-arithmeticity

namespace {

bool same_root(const ZPoly& f, const AlgebraicReal& x, const AlgebraicReal& y) {
    Q lo = std::max(x.interval().lo, y.interval().lo);
    Q hi = std::min(x.interval().hi, y.interval().hi);
    if (lo > hi) return false;
    if (lo == hi) return sign_at(f, lo) == 0;
    return sturm_count(f, lo, hi) + (sign_at(f, lo) == 0 ? 1 : 0) >= 1;
}

// nearest integer to a ball, if the ball pins it down
std::optional<BigInt> pinned_integer(const Ball& b) {
    Mpfr c = b.center();
    mpfr_t r;
    mpfr_init2(r, c.prec());
    mpfr_round(r, c.get());
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), r, MPFR_RNDN);
    mpfr_clear(r);
    if (!b.contains(Q(z))) return std::nullopt;
    Ball w = b - Ball::exact(Q(z), b.precision());
    // the ball must be narrower than 1/4 so only one integer fits
    if (mpfr_cmp_d(w.upper().get(), 0.25) >= 0 || mpfr_cmp_d(w.lower().get(), -0.25) <= 0) return std::nullopt;
    return z;
}

// Splits f into g·ḡ over the real quadratic field of modulus N, if possible.
// Returns, for each root, the set of embedding reps it pairs with.
std::optional<std::vector<int>> quadratic_split(const ZPoly& f, const std::vector<AlgebraicReal>& roots,
                                                const RealCyclotomicField& E) {
    long D = static_cast<long>(roots.size());
    if (D % 2) return std::nullopt;
    long N = E.lcm_modulus();
    auto reps = E.embedding_reps_at(N);
    const ZPoly& psi = real_cyclotomic_minpoly(N);
    // θ² + αθ + β = 0
    Q alpha = Q(psi[1]), beta = Q(psi[0]);
    Q disc = alpha * alpha - 4 * beta;
    CE theta = CE::theta(N);
    CE sqrt_disc = rat(2) * theta + rat(alpha);  // θ − θ'
    long half = D / 2;
    std::vector<int> pick(D, 0);
    std::fill(pick.begin(), pick.begin() + half, 1);
    const int prec = 512;
    std::vector<Ball> rb;
    for (const auto& r : roots) rb.push_back(r.to_ball(prec));
    do {
        if (!pick[0]) continue;  // the identity factor contains the geometric root
        auto coeffs = [&](int side) {
            std::vector<Ball> g{Ball::exact(1, prec)};
            for (long i = 0; i < D; ++i) {
                if (pick[i] != side) continue;
                std::vector<Ball> ng(g.size() + 1, Ball::exact(0, prec));
                for (std::size_t j = 0; j < g.size(); ++j) {
                    ng[j + 1] = ng[j + 1] + g[j];
                    ng[j] = ng[j] - g[j] * rb[i];
                }
                g = std::move(ng);
            }
            return g;
        };
        auto g1 = coeffs(1), g2 = coeffs(0);
        std::vector<CE> g(half + 1);
        bool ok = true;
        for (long j = 0; j <= half && ok; ++j) {
            auto t = pinned_integer(g1[j] + g2[j]);
            auto n = pinned_integer(g1[j] * g2[j]);
            if (!t || !n) {
                ok = false;
                break;
            }
            Q rad = Q(*t) * Q(*t) - 4 * Q(*n);
            if (rad == 0) {
                g[j] = rat(Q(*t) / 2);
                continue;
            }
            Q ratio = rad / disc;
            if (ratio < 0 || !mpz_perfect_square_p(ratio.get_num_mpz_t()) ||
                !mpz_perfect_square_p(ratio.get_den_mpz_t())) {
                ok = false;
                break;
            }
            Q sq(sqrt(ratio.get_num()), sqrt(ratio.get_den()));
            CE cand = (rat(Q(*t)) + rat(sq) * sqrt_disc) * rat(Q(1, 2));
            // choose the sign matching the identity factor
            Ball val = cand.eval(1, prec);
            if (!(val - g1[j]).contains(Q(0))) cand = (rat(Q(*t)) - rat(sq) * sqrt_disc) * rat(Q(1, 2));
            g[j] = cand;
        }
        if (!ok) continue;
        // exact check g · ḡ = f
        UPoly gp(g.begin(), g.end()), gc;
        for (const auto& x : g) gc.push_back(x.conjugate(reps[1]));
        UPoly prod = upoly_mul(gp, gc);
        UPoly fp;
        for (const auto& x : f) fp.push_back(rat(Q(x)));
        utrim(fp);
        if (!upoly_equal(prod, fp)) continue;
        std::vector<int> side(D);
        for (long i = 0; i < D; ++i) side[i] = pick[i] ? 0 : 1;
        return side;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return std::nullopt;
}

bool in_fixing_group(long a, const std::vector<long>& moduli) {
    for (long m : moduli) {
        long r = ((a % m) + m) % m;
        if (r != 1 % m && r != (m - 1) % m) return false;
    }
    return true;
}

}  // namespace

VArithmeticCertificate is_varithmetic(const EdgeGraphCase& c, Variant v, int cap) {
    VArithmeticCertificate cert;
    if (!c.u) throw std::invalid_argument("case carries no u");
    const AlgebraicReal& u = *c.u;
    if (!u.is_integer_monic()) {
        cert.reason = "u is not an algebraic integer";
        return cert;
    }
    const ZPoly& f = u.minpoly();
    auto roots = AlgebraicReal::real_roots(f);
    if (static_cast<long>(roots.size()) != u.degree()) {
        cert.reason = "u is not totally real";
        return cert;
    }
    std::size_t i0 = roots.size();
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (same_root(f, roots[i], u)) i0 = i;
    if (i0 == roots.size()) throw std::logic_error("geometric root not found among the roots");

    Expr u0 = Expr::alg(roots[i0]);
    if (certify_compare(u0, Expr(2), cap) != Ordering::Greater ||
        certify_compare(u0, Expr(14), cap) != Ordering::Less) {
        cert.reason = "geometric value of u is outside (2, 14)";
        return cert;
    }

    RealCyclotomicField E = cosine_field(c), F = base_field(c);
    long N = E.lcm_modulus();
    if (E.degree() > 2) throw Unsupported("coefficient field of degree > 2: " + E.name());
    auto reps = E.embedding_reps_at(N);
    // compatible (root, embedding) pairs
    std::vector<std::vector<long>> pairs(roots.size());
    if (E.degree() == 1) {
        for (auto& p : pairs) p = {1};
    } else {
        auto split = quadratic_split(f, roots, E);
        for (std::size_t i = 0; i < roots.size(); ++i)
            pairs[i] = split ? std::vector<long>{reps[(*split)[i]]} : reps;
    }

    // −u₀ is a conjugate iff f(−x) = ±f(x)
    std::optional<std::size_t> ineg;
    {
        bool odd = true, even = true;
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (j % 2 == 0 && f[j] != 0) odd = false;
            if (j % 2 == 1 && f[j] != 0) even = false;
        }
        if (odd || even) {
            AlgebraicReal neg(ZPoly(f), {-roots[i0].interval().hi, -roots[i0].interval().lo});
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (i != i0 && same_root(f, roots[i], neg)) ineg = i;
        }
    }

    Quadratic q = printed_quadratic(c);
    cert.ok = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (long rep : pairs[i]) {
            ConjugateCheck chk;
            chk.root = roots[i].str();
            chk.rep = rep;
            bool id_F = in_fixing_group(rep, F.moduli());
            if (id_F && (i == i0 || (ineg && i == *ineg))) {
                CE tb = conj(q.b, rep, N);
                bool b_same = (tb == q.b), b_flip = (tb == -q.b);
                chk.identity_on_K = (i == i0) ? b_same : b_flip;
            }
            if (!chk.identity_on_K) {
                auto iv = admissible_interval(c, rep, v, cap);
                if (!iv) {
                    chk.inside = false;
                } else {
                    Expr rho = Expr::alg(roots[i]);
                    Expr val = rho;
                    if (v == Variant::USquared) val = rho * rho;
                    if (v == Variant::UTilde)
                        val = rho * rho + at(q.b, rep, N) * rho + at(rat(4) * cos2(c.s), rep, N);
                    Ordering lo = certify_compare(val, iv->lo, cap);
                    Ordering hi = certify_compare(val, iv->hi, cap);
                    if (lo == Ordering::Undecided || hi == Ordering::Undecided)
                        throw Undecidable("conjugate position undecided");
                    bool lo_ok = lo == Ordering::Greater || (iv->lo_closed && lo == Ordering::Equal);
                    chk.inside = lo_ok && hi == Ordering::Less;
                }
                if (!chk.inside) cert.ok = false;
            }
            cert.checks.push_back(chk);
        }
    if (!cert.ok) cert.reason = "a conjugate lies outside its admissible interval";
    return cert;
}

std::vector<CyclicProduct> cyclic_products(const FundamentalMatrix& m) {
    int n = static_cast<int>(m.size());
    if (n > 6) throw SizeExceeded("cyclic products are enumerated for at most 6 vertices");
    std::vector<CyclicProduct> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({{i + 1, j + 1}, upoly_mul(m.a[i][j], m.a[j][i])});
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<bool> used(n, false);
    std::function<void(int)> dfs = [&](int v) {
        for (int w = path[0] + 1; w < n; ++w) {
            if (used[w]) continue;
            path.push_back(w);
            used[w] = true;
            if (path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
            dfs(w);
            used[w] = false;
            path.pop_back();
        }
        (void)v;
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        used.assign(n, false);
        used[s] = true;
        dfs(s);
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    for (const auto& cy : cycles) {
        UPoly v{rat(1)};
        for (std::size_t i = 0; i < cy.size(); ++i) v = upoly_mul(v, m.a[cy[i]][cy[(i + 1) % cy.size()]]);
        std::vector<int> named;
        for (int x : cy) named.push_back(x + 1);
        out.push_back({named, v});
    }
    return out;
}

// --------------------------------------------------------------- Method A

BoundProblem bound_problem(const EdgeGraphCase& c, Variant v, long m, int cap) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    Feasibility fz = feasibility(c, cap);
    if (fz != Feasibility::Feasible) throw InfeasibleCase(c.label() + " is " + to_string(fz));
    RealCyclotomicField F = base_field(c);
    BoundProblem p;
    p.M = F.degree();
    p.B = sqrt(Expr(Q(field_discriminant(F))));
    p.m = m;
    const Expr e = Expr::e();
    Q two_M = 1, four_M = 1;
    for (long i = 0; i < p.M; ++i) two_M *= 2, four_M *= 4;
    auto id = [&](const CE& x) { return at(x, 1, F.lcm_modulus()); };
    auto nrm = [&](const CE& x) { return Expr(field_norm(F, x)); };
    Expr S(1);
    switch (c.family) {
        case Family::G1: {
            if (v != Variant::U) break;
            CE X = (cos2pi(c.k) + cos2pi(c.p)) * (cos2pi(c.r) + cos2pi(c.s));
            p.R = sqrt(sqrt(nrm(X))) / sqrt(Expr(two_M));
            S = Expr(16) * e / sqrt(id(X));
            p.S = pow(S, m);
            return p;
        }
        case Family::G2:
        case Family::G3: {
            CE a = c.family == Family::G2 ? sin2(c.p) : sin2(c.r);
            CE D = printed_discriminant(c);
            if (v == Variant::U) {
                p.R = sqrt(sqrt(nrm(D))) / (sqrt(nrm(a)) * Expr(two_M));
                S = Expr(32) * e * id(a) / sqrt(id(D));
            } else if (v == Variant::USquared && c.family == Family::G3 && c.s == 2) {
                p.R = sqrt(nrm(D)) / (nrm(a) * Expr(four_M));
                S = Expr(2) * e * Expr(196) * Expr(4) * id(a) * id(a) / id(D);
            } else {
                break;
            }
            p.S = pow(S, m);
            return p;
        }
        case Family::G4: {
            if (v != Variant::UTilde) break;
            CE X = (sin2(c.r) - cos2(c.s)) * sin2(c.k);
            p.R = sqrt(nrm(X));
            S = Expr(2 * 256) * e / (Expr(4) * id(X));
            p.S = pow(S, m);
            return p;
        }
        case Family::G5: {
            if (v != Variant::USquared) break;
            CE X = sin2(c.k) * sin2(c.s);
            p.R = sqrt(nrm(X));
            S = Expr(196) * e / (Expr(2) * id(X));
            p.S = pow(S, m);
            return p;
        }
    }
    throw Unsupported(std::string("variant ") + to_string(v) + " has no Method A setup for " + c.label());
}

std::optional<long> paper_bound(const EdgeGraphCase& c, Variant v, long m) {
    static const std::map<std::vector<long>, long> g1m1 = {
        {{3, 3, 3, 3}, 22}, {{3, 3, 4, 3}, 15}, {{3, 3, 5, 3}, 24}, {{3, 3, 4, 4}, 12}, {{3, 3, 5, 4}, 18},
        {{3, 3, 5, 5}, 18}, {{3, 4, 4, 3}, 12}, {{3, 4, 5, 3}, 18}, {{3, 5, 5, 3}, 18}};
    static const std::map<std::vector<long>, long> g1m2 = {{{3, 4, 4, 3}, 9}, {{3, 5, 5, 3}, 14}};
    static const std::map<std::vector<long>, long> g2 = {{{3, 3, 3}, 39}, {{3, 4, 3}, 21}, {{3, 5, 3}, 34},
                                                         {{4, 4, 3}, 14}, {{4, 5, 3}, 22}, {{5, 5, 3}, 24},
                                                         {{3, 3, 4}, 22}, {{3, 3, 5}, 32}};
    static const std::map<std::vector<long>, long> g3 = {
        {{2, 3, 3}, 83}, {{2, 3, 4}, 45}, {{2, 3, 5}, 66}, {{2, 4, 3}, 28}, {{2, 5, 3}, 48},
        {{3, 3, 3}, 37}, {{3, 4, 3}, 18}, {{3, 5, 3}, 24}, {{4, 4, 3}, 9},  {{4, 5, 3}, 2},
        {{5, 5, 3}, 2},  {{3, 3, 4}, 17}, {{3, 3, 5}, 2}};
    static const std::map<std::vector<long>, long> g3sq = {
        {{2, 3, 3}, 53}, {{2, 3, 4}, 31}, {{2, 3, 5}, 32}, {{2, 4, 3}, 19}, {{2, 5, 3}, 22}};
    static const std::map<std::vector<long>, long> g4 = {{{3, 3, 2}, 31}};
    const std::map<std::vector<long>, long>* t = nullptr;
    switch (c.family) {
        case Family::G1:
            if (v == Variant::U) t = (m == 1) ? &g1m1 : (m == 2 ? &g1m2 : nullptr);
            break;
        case Family::G2:
            if (v == Variant::U && m == 1) t = &g2;
            break;
        case Family::G3:
            if (m == 1) t = (v == Variant::U) ? &g3 : (v == Variant::USquared ? &g3sq : nullptr);
            break;
        case Family::G4:
            if (v == Variant::UTilde && m == 1) t = &g4;
            break;
        case Family::G5: break;
    }
    if (!t) return std::nullopt;
    auto it = t->find(c.params());
    if (it == t->end()) return std::nullopt;
    return it->second;
}

CaseBound case_bound(const EdgeGraphCase& c, Variant v, long m, int cap) {
    CaseBound row;
    row.gcase = c;
    row.variant = v;
    row.m = m;
    row.paper_bound = paper_bound(c, v, m);
    row.feasibility = feasibility(c, cap);
    switch (row.feasibility) {
        case Feasibility::ForcesFieldEqualsF: row.bound = base_field(c).degree(); break;
        case Feasibility::Impossible: row.bound = 0; break;
        case Feasibility::Feasible: {
            row.problem = bound_problem(c, v, m, cap);
            SolveOptions opt;
            opt.divide_by_m = true;
            opt.precision_cap = cap;
            auto res = solve(*row.problem, opt);
            row.N = res.N;
            row.bound = res.degree_bound;
            break;
        }
    }
    return row;
}

FamilyTable family_bound(Family f, std::optional<KRange> kr, int cap) {
    if (f == Family::G4 && !kr) kr = KRange{2, 6};
    FamilyTable t;
    t.family = f;
    bool first = true;
    for (const auto& c : enumerate_cases(f, kr)) {
        std::size_t begin = t.rows.size();
        for (Variant v : variants(c)) {
            t.rows.push_back(case_bound(c, v, 1, cap));
            if (f == Family::G1 && paper_bound(c, v, 2)) t.rows.push_back(case_bound(c, v, 2, cap));
        }
        // m is not known in advance, so a variant's value is its worst row over
        // m; different variants are independent bounds, so the best one counts
        std::size_t best = t.rows.size();
        for (std::size_t i = begin; i < t.rows.size(); ++i) {
            t.rows[i].selected = false;
            std::size_t worst = i;
            for (std::size_t j = begin; j < t.rows.size(); ++j)
                if (t.rows[j].variant == t.rows[i].variant && t.rows[j].bound > t.rows[worst].bound) worst = j;
            if (worst != i) continue;
            if (best == t.rows.size() || t.rows[i].bound < t.rows[best].bound) best = i;
        }
        t.rows[best].selected = true;
        if (first || t.rows[best].bound > t.max_bound) {
            t.max_bound = t.rows[best].bound;
            t.argmax = c;
            first = false;
        }
    }
    return t;
}

}  // namespace gf
