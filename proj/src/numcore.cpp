#include "gf/numcore.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace gf {

// ---------------------------------------------------------------- integers

long gcd_l(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int mobius(long n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

std::vector<long> divisors(long n) {
    std::vector<long> d{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = d.size();
        long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// ------------------------------------------------------------------- mpfr

Mpfr::Mpfr(int prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}
Mpfr::Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}
Mpfr::Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}
Mpfr& Mpfr::operator=(const Mpfr& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}
Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}
Mpfr::~Mpfr() { mpfr_clear(v_); }

std::string Mpfr::to_string(int digits) const {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return buf;
}

// ------------------------------------------------------------------- Ball

Ball::Ball(int prec) : prec_(prec), lo_(prec), hi_(prec) {}

Ball Ball::exact(const BigRational& q, int prec) {
    Ball b(prec);
    mpfr_set_q(b.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return b;
}

Ball Ball::exact(long v, int prec) { return exact(BigRational(v), prec); }

Ball Ball::from_bounds(const Mpfr& lo, const Mpfr& hi) {
    Ball b(std::max(lo.prec(), hi.prec()));
    mpfr_set(b.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(b.hi_.get(), hi.get(), MPFR_RNDU);
    return b;
}

Ball Ball::pi(int prec) {
    Ball b(prec);
    mpfr_const_pi(b.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(b.hi_.get(), MPFR_RNDU);
    return b;
}

Ball Ball::e(int prec) { return exact(1, prec).exp(); }

Mpfr Ball::center() const {
    Mpfr c(prec_ + 2);
    mpfr_add(c.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(c.get(), c.get(), 1, MPFR_RNDN);
    return c;
}

Mpfr Ball::radius() const {
    Mpfr c = center();
    Mpfr r1(prec_), r2(prec_);
    mpfr_sub(r1.get(), hi_.get(), c.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), c.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(r1.get(), r1.get(), r2.get(), MPFR_RNDU);
    return r1;
}

double Ball::mid_double() const { return center().to_double(); }

bool Ball::contains(const BigRational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Ball::contains(const Ball& in) const {
    return mpfr_cmp(lo_.get(), in.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), in.hi_.get()) >= 0;
}

bool Ball::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Ball::certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool Ball::certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
bool Ball::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }

Ball Ball::operator-() const {
    Ball r(prec_);
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
}

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

void corner_hull(BinOp f, const Mpfr& al, const Mpfr& ah, const Mpfr& bl, const Mpfr& bh,
                 Mpfr& lo, Mpfr& hi) {
    const Mpfr* as[2] = {&al, &ah};
    const Mpfr* bs[2] = {&bl, &bh};
    Mpfr t(lo.prec());
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            f(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            f(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
}

}  // namespace

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    corner_hull(mpfr_mul, a.lo_, a.hi_, b.lo_, b.hi_, r.lo_, r.hi_);
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
        if (mpfr_zero_p(b.lo_.get()) && mpfr_zero_p(b.hi_.get())) throw DomainError("division by zero");
        throw Imprecise("divisor ball contains zero");
    }
    Ball r(std::max(a.prec_, b.prec_));
    corner_hull(mpfr_div, a.lo_, a.hi_, b.lo_, b.hi_, r.lo_, r.hi_);
    return r;
}

Ball Ball::sqrt() const {
    if (mpfr_sgn(hi_.get()) < 0) throw DomainError("sqrt of a negative value");
    Ball r(prec_);
    if (mpfr_sgn(lo_.get()) < 0)
        mpfr_set_zero(r.lo_.get(), 1);
    else
        mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::log() const {
    if (mpfr_sgn(hi_.get()) <= 0) throw DomainError("log of a nonpositive value");
    if (mpfr_sgn(lo_.get()) <= 0) throw Imprecise("log argument ball touches zero");
    Ball r(prec_);
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::exp() const {
    Ball r(prec_);
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

namespace {

// sin or cos over an interval; extrema sit where (x - offset)/π is an integer
Ball trig(const Ball& x, bool is_sin) {
    int prec = x.precision();
    Ball out(prec);
    Mpfr lo(prec), hi(prec), t(prec);
    auto f = is_sin ? mpfr_sin : mpfr_cos;
    f(lo.get(), x.lower().get(), MPFR_RNDD);
    f(t.get(), x.upper().get(), MPFR_RNDD);
    mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    f(hi.get(), x.lower().get(), MPFR_RNDU);
    f(t.get(), x.upper().get(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);

    Ball p = Ball::pi(prec);
    Ball shifted = is_sin ? x - p / Ball::exact(2, prec) : x;
    Ball q = shifted / p;
    mpz_class jl, jh;
    mpfr_get_z(jl.get_mpz_t(), q.lower().get(), MPFR_RNDD);
    mpfr_get_z(jh.get_mpz_t(), q.upper().get(), MPFR_RNDD);
    if (jl != jh) {
        // critical points j in (jl, jh]; value there is (-1)^j for both sin and cos
        mpz_class j = jl + 1;
        bool has_even = false, has_odd = false;
        for (int i = 0; i < 2 && j <= jh; ++i, ++j) {
            if (mpz_even_p(j.get_mpz_t()))
                has_even = true;
            else
                has_odd = true;
        }
        if (has_even) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
        if (has_odd) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    }
    if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    return Ball::from_bounds(lo, hi);
}

}  // namespace

Ball Ball::sin() const { return trig(*this, true); }
Ball Ball::cos() const { return trig(*this, false); }

Ball Ball::abs() const {
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return -*this;
    Ball r(prec_);
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::pow(long k) const {
    if (k < 0) return Ball::exact(1, prec_) / pow(-k);
    Ball base = (k % 2 == 0) ? abs() : *this;
    Ball r = Ball::exact(1, prec_);
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Ball Ball::max(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::min(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Ball Ball::hull(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

std::optional<BigInt> Ball::floor_if_decided() const {
    BigInt a, b;
    mpfr_get_z(a.get_mpz_t(), lo_.get(), MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDD);
    if (a == b) return a;
    return std::nullopt;
}

std::string Ball::str(int digits) const {
    return "[" + center().to_string(digits) + " +/- " + radius().to_string(3) + "]";
}

// ------------------------------------------------------------ polynomials

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const ZPoly& p) {
    QPoly q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i];
    return q;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    QPoly bb = b;
    trim(bb);
    if (bb.empty()) throw DomainError("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, 0);
    const BigRational& lc = bb.back();
    while (r.size() >= bb.size()) {
        std::size_t shift = r.size() - bb.size();
        BigRational c = r.back() / lc;
        q[shift] = c;
        for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
        trim(r);
    }
}

QPoly poly_mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        QPoly r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        BigRational lc = x.back();
        for (auto& c : x) c /= lc;
    }
    return x;
}

QPoly poly_derivative(const QPoly& a) {
    QPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * BigRational(static_cast<long>(i)));
    trim(d);
    return d;
}

BigRational poly_eval(const QPoly& p, const BigRational& x) {
    BigRational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

namespace {

BigRational qpow(const BigRational& b, long e) {
    BigRational r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

BigRational resultant(const QPoly& a0, const QPoly& b0) {
    QPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    BigRational acc = 1;
    while (true) {
        long m = static_cast<long>(a.size()) - 1;
        long k = static_cast<long>(b.size()) - 1;
        if (k == 0) return acc * qpow(b[0], m);
        if (m == 0) return acc * qpow(a[0], k);
        if (m < k) {
            if ((m * k) % 2) acc = -acc;
            std::swap(a, b);
            continue;
        }
        QPoly r = poly_mod(a, b);
        if (r.empty()) return 0;
        long dr = static_cast<long>(r.size()) - 1;
        // res(A,B) = (-1)^{mk} lc(B)^{m-deg R} res(B,R)
        if ((m * k) % 2) acc = -acc;
        acc *= qpow(b.back(), m - dr);
        a = std::move(b);
        b = std::move(r);
    }
}

int sign_at(const ZPoly& p, const BigRational& x) {
    BigRational v = poly_eval(to_q(p), x);
    return sgn(v);
}

namespace {

std::mutex g_poly_mutex;

ZPoly zmul_xd_minus_1(const ZPoly& p, long d) {
    ZPoly r(p.size() + d, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + d] += p[i];
        r[i] -= p[i];
    }
    return r;
}

// exact division by x^d - 1
ZPoly zdiv_xd_minus_1(const ZPoly& p, long d) {
    // p = q (x^d - 1): p_i = q_{i-d} - q_i
    std::size_t qn = p.size() - d;
    ZPoly q(qn, 0);
    for (std::size_t i = 0; i < qn; ++i) {
        BigInt prev = (i >= static_cast<std::size_t>(d)) ? q[i - d] : BigInt(0);
        q[i] = prev - p[i];
    }
    return q;
}

}  // namespace

const ZPoly& cyclotomic_poly(long n) {
    static std::map<long, ZPoly> cache;
    std::lock_guard<std::mutex> lk(g_poly_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    ZPoly p{1};
    std::vector<long> dens;
    for (long d : divisors(n)) {
        int mu = mobius(n / d);
        if (mu == 1)
            p = zmul_xd_minus_1(p, d);
        else if (mu == -1)
            dens.push_back(d);
    }
    for (long d : dens) p = zdiv_xd_minus_1(p, d);
    trim(p);
    // normalize sign so that the leading coefficient is +1
    if (p.back() < 0)
        for (auto& c : p) c = -c;
    return cache.emplace(n, std::move(p)).first->second;
}

ZPoly dickson(long a) {
    if (a < 0) a = -a;
    ZPoly d0{2}, d1{0, 1};
    if (a == 0) return d0;
    for (long j = 2; j <= a; ++j) {
        ZPoly d2(d1.size() + 1, 0);
        for (std::size_t i = 0; i < d1.size(); ++i) d2[i + 1] += d1[i];
        for (std::size_t i = 0; i < d0.size(); ++i) d2[i] -= d0[i];
        d0 = std::move(d1);
        d1 = std::move(d2);
    }
    return d1;
}

const ZPoly& real_cyclotomic_minpoly(long n) {
    static std::map<long, ZPoly> cache;
    {
        std::lock_guard<std::mutex> lk(g_poly_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    ZPoly psi;
    if (n == 1)
        psi = {-2, 1};
    else if (n == 2)
        psi = {2, 1};
    else {
        const ZPoly& phi = cyclotomic_poly(n);
        long m = static_cast<long>(phi.size() - 1) / 2;
        psi = {phi[m]};
        ZPoly dprev{2}, dcur{0, 1};
        for (long j = 1; j <= m; ++j) {
            if (j > 1) {
                ZPoly dn(dcur.size() + 1, 0);
                for (std::size_t i = 0; i < dcur.size(); ++i) dn[i + 1] += dcur[i];
                for (std::size_t i = 0; i < dprev.size(); ++i) dn[i] -= dprev[i];
                dprev = std::move(dcur);
                dcur = std::move(dn);
            }
            if (psi.size() < dcur.size()) psi.resize(dcur.size(), 0);
            for (std::size_t i = 0; i < dcur.size(); ++i) psi[i] += phi[m + j] * dcur[i];
        }
        trim(psi);
    }
    std::lock_guard<std::mutex> lk(g_poly_mutex);
    return cache.emplace(n, std::move(psi)).first->second;
}

// ---------------------------------------------------------- CycloElement

namespace {

long cyclo_degree(long n) { return n <= 2 ? 1 : std::max(1L, euler_phi(n) / 2); }

// reduce modulo the monic integer polynomial psi
void reduce_mod(QPoly& c, const ZPoly& psi) {
    std::size_t d = psi.size() - 1;
    trim(c);
    while (c.size() > d) {
        std::size_t shift = c.size() - 1 - d;
        BigRational lead = c.back();
        for (std::size_t i = 0; i <= d; ++i) c[shift + i] -= lead * psi[i];
        trim(c);
    }
}

// Horner substitution of an element of modulus n for the variable of c
QPoly substitute(const QPoly& c, const QPoly& value, const ZPoly& psi) {
    QPoly r;
    for (std::size_t i = c.size(); i-- > 0;) {
        r = poly_mul(r, value);
        if (r.empty()) r = {c[i]};
        else r[0] += c[i];
        trim(r);
        reduce_mod(r, psi);
    }
    return r;
}

// 2cos(2πa/n) as a reduced polynomial in θ_n
QPoly two_cos_poly(long a, long n) {
    a %= n;
    if (a < 0) a += n;
    if (2 * a > n) a = n - a;
    const ZPoly& psi = real_cyclotomic_minpoly(n);
    QPoly theta{0, 1};
    reduce_mod(theta, psi);
    if (a == 0) return {2};
    QPoly d0{2}, d1 = theta;
    for (long j = 2; j <= a; ++j) {
        QPoly d2 = poly_sub(poly_mul(theta, d1), d0);
        reduce_mod(d2, psi);
        d0 = std::move(d1);
        d1 = std::move(d2);
    }
    return d1;
}

}  // namespace

CycloElement::CycloElement() : n_(1), c_() {}

CycloElement::CycloElement(long n, QPoly coeffs) : n_(n), c_(std::move(coeffs)) {
    if (n < 1) throw std::invalid_argument("cyclotomic modulus must be positive");
    for (auto& c : c_) c.canonicalize();  // callers may pass unreduced fractions
    reduce();
}

void CycloElement::reduce() {
    reduce_mod(c_, real_cyclotomic_minpoly(n_));
}

long CycloElement::degree() const { return cyclo_degree(n_); }

CycloElement CycloElement::rational(const BigRational& q, long n) { return CycloElement(n, {q}); }

CycloElement CycloElement::theta(long n) { return CycloElement(n, {0, 1}); }

CycloElement CycloElement::two_cos_2pi(long a, long n) { return CycloElement(n, two_cos_poly(a, n)); }

CycloElement CycloElement::cos_pi(const BigRational& q) {
    // cos(π a/b) = 2cos(2π a/(2b)) / 2
    BigRational qq = q;
    qq.canonicalize();
    long a = qq.get_num().get_si();
    long b = qq.get_den().get_si();
    CycloElement c = two_cos_2pi(a, 2 * b);
    return c * rational(BigRational(1, 2));
}

CycloElement CycloElement::sin_pi(const BigRational& q) { return cos_pi(BigRational(1, 2) - q); }

CycloElement CycloElement::cos2_pi_over(long l) {
    return (rational(2, l) + theta(l)) * rational(BigRational(1, 4));
}

CycloElement CycloElement::sin2_pi_over(long l) {
    return (rational(2, l) - theta(l)) * rational(BigRational(1, 4));
}

CycloElement CycloElement::lift(long m) const {
    if (m == n_) return *this;
    if (m % n_) throw std::invalid_argument("lift target must be a multiple of the modulus");
    QPoly value = two_cos_poly(m / n_, m);
    return CycloElement(m, substitute(c_, value, real_cyclotomic_minpoly(m)));
}

CycloElement CycloElement::conjugate(long a) const {
    if (gcd_l(a, n_) != 1) throw std::invalid_argument("conjugation index must be a unit");
    long am = ((a % n_) + n_) % n_;
    if (am == 1 || n_ <= 2) return *this;
    QPoly value = two_cos_poly(am, n_);
    return CycloElement(n_, substitute(c_, value, real_cyclotomic_minpoly(n_)));
}

CycloElement CycloElement::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    // extended Euclid: s*c + t*psi = g, g constant
    QPoly r0 = to_q(real_cyclotomic_minpoly(n_)), r1 = c_;
    QPoly s0{}, s1{1};
    while (r1.size() > 1) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw DomainError("element is a zero divisor");
    for (auto& x : s1) x /= r1[0];
    return CycloElement(n_, s1);
}

bool CycloElement::is_zero() const { return c_.empty(); }
bool CycloElement::is_rational() const { return c_.size() <= 1; }
BigRational CycloElement::rational_value() const {
    if (!is_rational()) throw std::logic_error("element is not rational");
    return c_.empty() ? BigRational(0) : c_[0];
}

Ball CycloElement::eval(long a, int prec) const {
    Ball theta = (Ball::pi(prec) * Ball::exact(BigRational(2 * a, n_), prec)).cos() * Ball::exact(2, prec);
    Ball r = Ball::exact(0, prec);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * theta + Ball::exact(c_[i], prec);
    return r;
}

namespace {

std::pair<CycloElement, CycloElement> common(const CycloElement& a, const CycloElement& b) {
    long m = lcm_l(a.modulus(), b.modulus());
    return {a.lift(m), b.lift(m)};
}

}  // namespace

CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    if (a.n_ != b.n_) {
        auto [x, y] = common(a, b);
        return x + y;
    }
    return CycloElement(a.n_, poly_add(a.c_, b.c_));
}

CycloElement operator-(const CycloElement& a, const CycloElement& b) {
    if (a.n_ != b.n_) {
        auto [x, y] = common(a, b);
        return x - y;
    }
    return CycloElement(a.n_, poly_sub(a.c_, b.c_));
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    if (a.n_ != b.n_) {
        // rationals multiply without lifting
        if (a.is_rational()) return CycloElement(b.n_, poly_mul({a.rational_value()}, b.c_));
        if (b.is_rational()) return CycloElement(a.n_, poly_mul(a.c_, {b.rational_value()}));
        auto [x, y] = common(a, b);
        return x * y;
    }
    return CycloElement(a.n_, poly_mul(a.c_, b.c_));
}

CycloElement CycloElement::operator-() const {
    QPoly c = c_;
    for (auto& x : c) x = -x;
    return CycloElement(n_, c);
}

bool operator==(const CycloElement& a, const CycloElement& b) {
    if (a.n_ != b.n_) {
        if (a.is_rational() && b.is_rational()) return a.rational_value() == b.rational_value();
        auto [x, y] = common(a, b);
        return x.c_ == y.c_;
    }
    return a.c_ == b.c_;
}

CycloElement CycloElement::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycloElement r = rational(1, n_), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

std::string CycloElement::str() const {
    std::ostringstream os;
    os << "[n=" << n_ << "]";
    if (c_.empty()) return os.str() + " 0";
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        os << (first ? " " : " + ") << c_[i];
        if (i) os << "*t^" << i;
        first = false;
    }
    return os.str();
}

// -------------------------------------------------------- AlgebraicReal

ZPoly primitive_part(const QPoly& p0) {
    QPoly p = p0;
    trim(p);
    BigInt l = 1;
    for (auto& c : p) l = lcm(l, BigInt(c.get_den()));
    ZPoly z(p.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        z[i] = BigInt(p[i] * l);
        g = gcd(g, z[i]);
    }
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

namespace {

std::vector<QPoly> sturm_sequence(const ZPoly& p) {
    std::vector<QPoly> s{to_q(p), poly_derivative(to_q(p))};
    while (!s.back().empty() && s.back().size() > 1) {
        QPoly r = poly_mod(s[s.size() - 2], s.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        s.push_back(r);
    }
    return s;
}

long sign_changes(const std::vector<QPoly>& s, const BigRational& x) {
    long ch = 0;
    int prev = 0;
    for (const auto& q : s) {
        int v = sgn(poly_eval(q, x));
        if (v == 0) continue;
        if (prev && v != prev) ++ch;
        prev = v;
    }
    return ch;
}

long sign_changes_inf(const std::vector<QPoly>& s, bool positive) {
    long ch = 0;
    int prev = 0;
    for (const auto& q : s) {
        if (q.empty()) continue;
        int v = sgn(q.back());
        if (!positive && (q.size() - 1) % 2) v = -v;
        if (prev && v != prev) ++ch;
        prev = v;
    }
    return ch;
}

BigRational cauchy_bound(const ZPoly& p) {
    BigRational m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        BigRational v = abs(BigRational(p[i]) / BigRational(p.back()));
        if (v > m) m = v;
    }
    return m + 1;
}

}  // namespace

long sturm_count(const ZPoly& p, const BigRational& lo, const BigRational& hi) {
    auto s = sturm_sequence(p);
    return sign_changes(s, lo) - sign_changes(s, hi);
}

long sturm_count_all(const ZPoly& p) {
    auto s = sturm_sequence(p);
    return sign_changes_inf(s, false) - sign_changes_inf(s, true);
}

AlgebraicReal::AlgebraicReal(ZPoly minpoly, RationalInterval iv) : p_(std::move(minpoly)), iv_(std::move(iv)) {
    trim(p_);
    if (p_.size() < 2) throw std::invalid_argument("minimal polynomial must have positive degree");
    if (p_.back() < 0)
        for (auto& c : p_) c = -c;
    if (iv_.lo > iv_.hi) throw std::invalid_argument("empty isolating interval");
    QPoly g = poly_gcd(to_q(p_), poly_derivative(to_q(p_)));
    if (g.size() > 1) throw std::invalid_argument("minimal polynomial is not squarefree");
    long cnt = sturm_count(p_, iv_.lo, iv_.hi) + (sign_at(p_, iv_.lo) == 0 ? 1 : 0);
    if (cnt != 1) throw std::invalid_argument("interval does not isolate exactly one root");
}

AlgebraicReal AlgebraicReal::from_rational(const BigRational& q) {
    return AlgebraicReal(primitive_part({-q, 1}), {q, q});
}

std::vector<AlgebraicReal> AlgebraicReal::real_roots(const ZPoly& p) {
    std::vector<AlgebraicReal> out;
    auto s = sturm_sequence(p);
    BigRational b = cauchy_bound(p);
    std::vector<RationalInterval> stack{{-b, b}};
    std::vector<RationalInterval> found;
    while (!stack.empty()) {
        RationalInterval iv = stack.back();
        stack.pop_back();
        long c = sign_changes(s, iv.lo) - sign_changes(s, iv.hi);
        if (c == 0) continue;
        if (c == 1) {
            found.push_back(iv);
            continue;
        }
        BigRational mid = (iv.lo + iv.hi) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    std::sort(found.begin(), found.end(), [](auto& x, auto& y) { return x.lo < y.lo; });
    for (auto& iv : found) {
        // root lies in (lo, hi]; shift to a closed isolating interval
        if (sign_at(p, iv.hi) == 0) {
            out.emplace_back(p, RationalInterval{iv.hi, iv.hi});
            continue;
        }
        // lo may be the neighbouring root; move it inside
        while (sign_at(p, iv.lo) == 0) {
            BigRational mid = (iv.lo + iv.hi) / 2;
            if (sign_changes(s, mid) - sign_changes(s, iv.hi) == 1)
                iv.lo = mid;
            else
                iv.hi = mid;
        }
        out.emplace_back(p, iv);
    }
    return out;
}

bool AlgebraicReal::is_integer_monic() const { return p_.back() == 1; }

bool AlgebraicReal::is_rational() const { return p_.size() == 2 || iv_.lo == iv_.hi; }

void AlgebraicReal::refine(int bits) {
    BigRational target(1);
    target /= BigRational(BigInt(1) << bits);
    if (p_.size() == 2) {
        BigRational r = BigRational(-p_[0]) / BigRational(p_[1]);
        iv_ = {r, r};
        return;
    }
    int slo = sign_at(p_, iv_.lo);
    if (slo == 0) {
        iv_.hi = iv_.lo;
        return;
    }
    if (sign_at(p_, iv_.hi) == 0) {
        iv_.lo = iv_.hi;
        return;
    }
    while (iv_.hi - iv_.lo > target) {
        BigRational mid = (iv_.lo + iv_.hi) / 2;
        int sm = sign_at(p_, mid);
        if (sm == 0) {
            iv_ = {mid, mid};
            return;
        }
        if (sm == slo)
            iv_.lo = mid;
        else
            iv_.hi = mid;
    }
}

AlgebraicReal AlgebraicReal::refined(int bits) const {
    AlgebraicReal c = *this;
    c.refine(bits);
    return c;
}

Ball AlgebraicReal::to_ball(int prec) const {
    AlgebraicReal c = refined(prec + 8);
    Ball lo = Ball::exact(c.iv_.lo, prec), hi = Ball::exact(c.iv_.hi, prec);
    return Ball::hull(lo, hi);
}

std::string AlgebraicReal::str() const {
    std::ostringstream os;
    os << "root of [";
    for (std::size_t i = 0; i < p_.size(); ++i) os << (i ? "," : "") << p_[i];
    os << "] in [" << iv_.lo << ", " << iv_.hi << "]";
    return os.str();
}

// --------------------------------------------------------------- Expr

namespace {

Expr make(Expr::Op op, std::vector<Expr> kids) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->kids = std::move(kids);
    return Expr(n);
}

}  // namespace

Expr::Expr() : Expr(BigRational(0)) {}
Expr::Expr(long v) : Expr(BigRational(v)) {}
Expr::Expr(const BigRational& q) {
    auto n = std::make_shared<Node>();
    n->op = Op::Rat;
    n->q = q;
    n->q.canonicalize();
    n_ = n;
}

Expr Expr::pi() { return make(Op::Pi, {}); }
Expr Expr::e() { return make(Op::E, {}); }

Expr Expr::cyclo(const CycloElement& x, long a) {
    auto n = std::make_shared<Node>();
    n->op = Op::Cyclo;
    n->cyclo = x;
    n->a = a;
    return Expr(n);
}

Expr Expr::alg(const AlgebraicReal& x) {
    auto n = std::make_shared<Node>();
    n->op = Op::Alg;
    n->alg = x;
    return Expr(n);
}

Expr Expr::pi_times(const BigRational& q) { return Expr(q) * pi(); }

Expr::Op Expr::op() const { return n_->op; }

Expr operator+(const Expr& a, const Expr& b) { return make(Expr::Op::Add, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make(Expr::Op::Sub, {a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return make(Expr::Op::Mul, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make(Expr::Op::Div, {a, b}); }
Expr Expr::operator-() const { return make(Op::Neg, {*this}); }

Expr ln(const Expr& x) { return make(Expr::Op::Ln, {x}); }
Expr exp(const Expr& x) { return make(Expr::Op::Exp, {x}); }
Expr sqrt(const Expr& x) { return make(Expr::Op::Sqrt, {x}); }
Expr sin(const Expr& x) { return make(Expr::Op::Sin, {x}); }
Expr cos(const Expr& x) { return make(Expr::Op::Cos, {x}); }
Expr abs(const Expr& x) { return make(Expr::Op::Abs, {x}); }
Expr max(const Expr& a, const Expr& b) { return make(Expr::Op::Max, {a, b}); }
Expr min(const Expr& a, const Expr& b) { return make(Expr::Op::Min, {a, b}); }
Expr pow(const Expr& x, long k) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Expr::Op::PowInt;
    n->kids = {x};
    n->a = k;
    return Expr(n);
}
Expr rpow(const Expr& x, const BigRational& q) { return exp(Expr(q) * ln(x)); }

std::string Expr::str() const {
    const Node& n = *n_;
    auto k = [&](int i) { return n.kids[i].str(); };
    switch (n.op) {
        case Op::Rat: return n.q.get_str();
        case Op::Pi: return "pi";
        case Op::E: return "e";
        case Op::Cyclo: return "sigma_" + std::to_string(n.a) + "(" + n.cyclo->str() + ")";
        case Op::Alg: return "(" + n.alg->str() + ")";
        case Op::Add: return "(" + k(0) + " + " + k(1) + ")";
        case Op::Sub: return "(" + k(0) + " - " + k(1) + ")";
        case Op::Mul: return k(0) + "*" + k(1);
        case Op::Div: return k(0) + "/" + k(1);
        case Op::Neg: return "-" + k(0);
        case Op::Ln: return "ln(" + k(0) + ")";
        case Op::Exp: return "exp(" + k(0) + ")";
        case Op::Sqrt: return "sqrt(" + k(0) + ")";
        case Op::Sin: return "sin(" + k(0) + ")";
        case Op::Cos: return "cos(" + k(0) + ")";
        case Op::PowInt: return k(0) + "^" + std::to_string(n.a);
        case Op::Abs: return "|" + k(0) + "|";
        case Op::Max: return "max(" + k(0) + ", " + k(1) + ")";
        case Op::Min: return "min(" + k(0) + ", " + k(1) + ")";
    }
    return "?";
}

Ball eval_ball(const Expr& e, int p) {
    using Op = Expr::Op;
    const auto& n = e.node();
    auto k = [&](int i) { return eval_ball(n.kids[i], p); };
    switch (n.op) {
        case Op::Rat: return Ball::exact(n.q, p);
        case Op::Pi: return Ball::pi(p);
        case Op::E: return Ball::e(p);
        case Op::Cyclo: return n.cyclo->eval(n.a, p);
        case Op::Alg: return n.alg->to_ball(p);
        case Op::Add: return k(0) + k(1);
        case Op::Sub: return k(0) - k(1);
        case Op::Mul: return k(0) * k(1);
        case Op::Div: return k(0) / k(1);
        case Op::Neg: return -k(0);
        case Op::Ln: return k(0).log();
        case Op::Exp: return k(0).exp();
        case Op::Sqrt: return k(0).sqrt();
        case Op::Sin: return k(0).sin();
        case Op::Cos: return k(0).cos();
        case Op::PowInt: return k(0).pow(n.a);
        case Op::Abs: return k(0).abs();
        case Op::Max: return Ball::max(k(0), k(1));
        case Op::Min: return Ball::min(k(0), k(1));
    }
    throw std::logic_error("unknown expression node");
}

std::optional<BigRational> pi_multiple(const Expr& e) {
    using Op = Expr::Op;
    const auto& n = e.node();
    auto rat = [](const Expr& x) -> std::optional<BigRational> {
        if (x.op() == Op::Rat) return x.node().q;
        return std::nullopt;
    };
    switch (n.op) {
        case Op::Pi: return BigRational(1);
        case Op::Neg: {
            auto a = pi_multiple(n.kids[0]);
            if (a) return BigRational(-*a);
            return std::nullopt;
        }
        case Op::Mul: {
            auto ra = rat(n.kids[0]), rb = rat(n.kids[1]);
            if (ra) {
                auto b = pi_multiple(n.kids[1]);
                if (b) return BigRational(*ra * *b);
            }
            if (rb) {
                auto a = pi_multiple(n.kids[0]);
                if (a) return BigRational(*a * *rb);
            }
            return std::nullopt;
        }
        case Op::Div: {
            auto rb = rat(n.kids[1]);
            if (!rb || *rb == 0) return std::nullopt;
            auto a = pi_multiple(n.kids[0]);
            if (a) return BigRational(*a / *rb);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

namespace {
constexpr unsigned long kExactModulusLimit = 1024;
}

std::optional<CycloElement> exact_value(const Expr& e) {
    using Op = Expr::Op;
    const auto& n = e.node();
    auto k = [&](int i) { return exact_value(n.kids[i]); };
    switch (n.op) {
        case Op::Rat: return CycloElement::rational(n.q);
        case Op::Cyclo: return n.cyclo->conjugate(n.a);
        case Op::Alg:
            if (n.alg->is_rational()) {
                auto r = n.alg->refined(1);
                if (r.interval().lo == r.interval().hi) return CycloElement::rational(r.interval().lo);
                return CycloElement::rational(BigRational(-n.alg->minpoly()[0]) / BigRational(n.alg->minpoly()[1]));
            }
            return std::nullopt;
        case Op::Add: {
            auto a = k(0), b = k(1);
            if (a && b) return *a + *b;
            return std::nullopt;
        }
        case Op::Sub: {
            auto a = k(0), b = k(1);
            if (a && b) return *a - *b;
            return std::nullopt;
        }
        case Op::Mul: {
            auto a = k(0), b = k(1);
            if (a && b) return *a * *b;
            return std::nullopt;
        }
        case Op::Div: {
            auto a = k(0), b = k(1);
            if (a && b && !b->is_zero()) return *a * b->inverse();
            return std::nullopt;
        }
        case Op::Neg: {
            auto a = k(0);
            if (a) return -*a;
            return std::nullopt;
        }
        case Op::PowInt: {
            auto a = k(0);
            if (a && (n.a >= 0 || !a->is_zero())) return a->pow(n.a);
            return std::nullopt;
        }
        case Op::Sin:
        case Op::Cos: {
            auto q = pi_multiple(n.kids[0]);
            // large moduli make the exact route far costlier than balls
            if (!q || q->get_den() > kExactModulusLimit) return std::nullopt;
            return n.op == Op::Sin ? CycloElement::sin_pi(*q) : CycloElement::cos_pi(*q);
        }
        case Op::Ln: {
            auto a = k(0);
            if (a && a->is_rational() && a->rational_value() == 1) return CycloElement::rational(0);
            return std::nullopt;
        }
        case Op::Exp: {
            auto a = k(0);
            if (a && a->is_zero()) return CycloElement::rational(1);
            return std::nullopt;
        }
        case Op::Sqrt: {
            auto a = k(0);
            if (a && a->is_rational()) {
                BigRational v = a->rational_value();
                if (v < 0) return std::nullopt;
                BigInt nu = v.get_num(), de = v.get_den();
                if (mpz_perfect_square_p(nu.get_mpz_t()) && mpz_perfect_square_p(de.get_mpz_t()))
                    return CycloElement::rational(BigRational(sqrt(nu), sqrt(de)));
            }
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "LESS";
        case Ordering::Greater: return "GREATER";
        case Ordering::Equal: return "EQUAL";
        case Ordering::Undecided: return "UNDECIDED";
    }
    return "?";
}

Ordering certify_compare(const Expr& a, const Expr& b, int cap, int start) {
    auto separate = [&](int p) {
        try {
            Ball x = eval_ball(a, p);
            Ball y = eval_ball(b, p);
            if (mpfr_cmp(x.upper().get(), y.lower().get()) < 0) return Ordering::Less;
            if (mpfr_cmp(x.lower().get(), y.upper().get()) > 0) return Ordering::Greater;
        } catch (const Imprecise&) {
        }
        return Ordering::Undecided;
    };
    Ordering o = separate(start);
    if (o != Ordering::Undecided) return o;
    // the first ball did not separate: look for an exact tie before refining
    auto ea = exact_value(a);
    auto eb = exact_value(b);
    if (ea && eb && (*ea - *eb).is_zero()) return Ordering::Equal;
    for (int p = start * 2; p <= cap; p *= 2)
        if ((o = separate(p)) != Ordering::Undecided) return o;
    return Ordering::Undecided;
}

Ordering certify_sign(const Expr& x, int cap) { return certify_compare(x, Expr(0), cap); }

BigInt certified_floor(const Expr& x, int cap) {
    auto ex = exact_value(x);
    if (ex && ex->is_rational()) {
        BigRational v = ex->rational_value();
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return f;
    }
    for (int p = kStartPrecision; p <= cap; p *= 2) {
        try {
            auto f = eval_ball(x, p).floor_if_decided();
            if (f) return *f;
        } catch (const Imprecise&) {
        }
    }
    throw Undecidable("floor undecided at precision cap: " + x.str());
}

}  // namespace gf
