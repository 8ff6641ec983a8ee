#include "gf/fekete.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <functional>

namespace gf {

using CE = CycloElement;
using ld = long double;

std::vector<std::vector<BigRational>> shifted_power_chebyshev(const RationalInterval& iv, long n) {
    if (n < 0) throw std::invalid_argument("degree must be nonnegative");
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("interval must have a < b");
    BigRational m = (iv.lo + iv.hi) / 2, h = (iv.hi - iv.lo) / 2;
    std::vector<std::vector<BigRational>> e(n + 1, std::vector<BigRational>(n + 1));
    e[0][0] = 1;
    for (long i = 1; i <= n; ++i) {
        const auto& v = e[i - 1];
        auto& w = e[i];
        for (long k = 0; k < i; ++k) {
            if (v[k] == 0) continue;
            w[k] += m * v[k];
            // cos z · cos kz = (cos(k+1)z + cos(k−1)z)/2, and cos z · 1 = cos z
            if (k == 0) {
                w[1] += h * v[0];
            } else {
                w[k + 1] += h * v[k] / 2;
                w[k - 1] += h * v[k] / 2;
            }
        }
    }
    return e;
}

std::vector<CE> integral_basis(const RealCyclotomicField& F) {
    long N = F.degree();
    if (N == 1) return {CE::rational(1)};
    long gen = 0;
    for (long m : F.moduli())
        if (euler_phi(m) / 2 == N) gen = m;
    if (gen == 0) throw std::invalid_argument("field has no single generating modulus; only degree <= 2 is supported");
    std::vector<CE> b;
    CE th = CE::theta(gen).lift(F.lcm_modulus()), p = CE::rational(1);
    for (long j = 0; j < N; ++j) b.push_back(p), p = p * th;
    return b;
}

namespace {

void check_intervals(const RealCyclotomicField& F, const IntervalMap& iv) {
    auto embs = F.embeddings();
    if (iv.size() != embs.size()) throw std::invalid_argument("need one interval per embedding");
    for (std::size_t s = 0; s < embs.size(); ++s) {
        if (!(iv[s].first == embs[s])) throw std::invalid_argument("intervals must follow the embedding order");
        if (!(iv[s].second.lo < iv[s].second.hi)) throw std::invalid_argument("interval must have a < b");
    }
}

CE image(const CE& x, const Embedding& e) { return x.lift(lcm_l(x.modulus(), e.modulus)).conjugate(e.rep); }

CE det_gauss(std::vector<std::vector<CE>> a) {
    std::size_t d = a.size();
    CE det = CE::rational(1);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && a[piv][col].is_zero()) ++piv;
        if (piv == d) return CE::rational(0);
        if (piv != col) std::swap(a[piv], a[col]), det = -det;
        det = det * a[col][col];
        CE inv = a[col][col].inverse();
        for (std::size_t r = col + 1; r < d; ++r) {
            if (a[r][col].is_zero()) continue;
            CE f = a[r][col] * inv;
            for (std::size_t c = col; c < d; ++c) a[r][c] = a[r][c] - f * a[col][c];
        }
    }
    return det;
}

}  // namespace

ChebyshevForms chebyshev_linear_forms(const RealCyclotomicField& F, const IntervalMap& intervals, long n) {
    check_intervals(F, intervals);
    ChebyshevForms f;
    f.n = n;
    f.N = F.degree();
    f.basis = integral_basis(F);
    for (const auto& [e, iv] : intervals) f.embeddings.push_back(e);
    long d = f.N * (n + 1);
    f.c.assign(d, std::vector<CE>(d, CE::rational(0)));
    for (long s = 0; s < f.N; ++s) {
        auto e = shifted_power_chebyshev(intervals[s].second, n);
        for (long j = 0; j < f.N; ++j) {
            CE g = image(f.basis[j], f.embeddings[s]);
            for (long i = 0; i <= n; ++i)
                for (long k = 0; k <= i; ++k)
                    if (e[i][k] != 0) f.c[k * f.N + s][i * f.N + j] = g * CE::rational(e[i][k]);
        }
    }
    return f;
}

CE forms_determinant(const ChebyshevForms& f) { return det_gauss(f.c); }

CE forms_determinant_closed(const ChebyshevForms& f, const IntervalMap& intervals) {
    std::vector<std::vector<CE>> g(f.N, std::vector<CE>(f.N));
    for (long s = 0; s < f.N; ++s)
        for (long j = 0; j < f.N; ++j) g[s][j] = image(f.basis[j], f.embeddings[s]);
    BigRational prod = 1;
    for (const auto& [e, iv] : intervals) prod *= (iv.hi - iv.lo) / 4;
    CE r = det_gauss(g).pow(f.n + 1);
    BigRational tail = 1;
    for (long i = 0; i < f.N * f.n; ++i) tail *= 2;
    for (long i = 0; i < f.n * (f.n + 1) / 2; ++i) tail *= prod;
    return r * CE::rational(tail);
}

Expr fekete_bound(const RealCyclotomicField& F, const IntervalMap& intervals, long n) {
    check_intervals(F, intervals);
    long N = F.degree();
    BigRational prod = 1;
    for (const auto& [e, iv] : intervals) prod *= (iv.hi - iv.lo) / 4;
    BigRational disc(abs(field_discriminant(F)));
    // trivial factors stay exact so the n = 0 bound compares equal to 1
    auto power = [](const BigRational& x, const BigRational& q) {
        return (q == 0 || x == 1) ? Expr(1) : rpow(Expr(x), q);
    };
    return power(disc, BigRational(1, 2 * N)) * power(2, BigRational(n, n + 1)) * Expr(n + 1) *
           power(prod, BigRational(n, 2 * N));
}

SupNormBound certify_sup_norm(const std::vector<CE>& P, const Embedding& sigma, const RationalInterval& iv) {
    long n = P.empty() ? 0 : static_cast<long>(P.size()) - 1;
    auto e = shifted_power_chebyshev(iv, n);
    SupNormBound r;
    r.A.assign(n + 1, CE::rational(0));
    for (long i = 0; i < static_cast<long>(P.size()); ++i) {
        if (P[i].is_zero()) continue;
        CE p = image(P[i], sigma);
        for (long k = 0; k <= i; ++k)
            if (e[i][k] != 0) r.A[k] = r.A[k] + p * CE::rational(e[i][k]);
    }
    // Σ|A_k| exactly: fix each sign, then sum in the field
    CE sum = CE::rational(0);
    for (const auto& a : r.A) {
        if (a.is_zero()) continue;
        Ordering o = certify_sign(Expr::cyclo(a));
        if (o == Ordering::Undecided) throw Undecidable("sign of a Chebyshev coefficient");
        sum = o == Ordering::Less ? sum - a : sum + a;
    }
    r.bound = Expr::cyclo(sum);
    return r;
}

// ------------------------------------------------------------ lattice

namespace {

// LLL runs at high precision because the unimodular transform can reach
// 1e15 on skewed intervals; enumeration then uses long double copies of the
// reduced basis, whose entries are small.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>>;

struct Lattice {
    std::vector<std::vector<Real>> hb;   // basis vectors
    std::vector<std::vector<BigInt>> U;  // hb[r] = Σ U[r][c] · column c
    std::vector<std::vector<Real>> hmu;
    std::vector<Real> hB;  // |b*_i|²
    std::vector<std::vector<ld>> b, mu;
    std::vector<ld> B;

    void gram_schmidt() {
        std::size_t d = hb.size();
        std::vector<std::vector<Real>> bs(d);
        hmu.assign(d, std::vector<Real>(d, Real(0)));
        hB.assign(d, Real(0));
        for (std::size_t i = 0; i < d; ++i) {
            bs[i] = hb[i];
            for (std::size_t j = 0; j < i; ++j) {
                Real dot = 0;
                for (std::size_t t = 0; t < hb[i].size(); ++t) dot += hb[i][t] * bs[j][t];
                hmu[i][j] = hB[j] > 0 ? Real(dot / hB[j]) : Real(0);
                for (std::size_t t = 0; t < hb[i].size(); ++t) bs[i][t] -= hmu[i][j] * bs[j][t];
            }
            for (const Real& x : bs[i]) hB[i] += x * x;
        }
    }

    void lll(const Real& delta = Real(0.99)) {
        std::size_t d = hb.size();
        gram_schmidt();
        std::size_t k = 1;
        long guard = 0;
        while (k < d) {
            if (++guard > 1000000) throw SearchExhausted("LLL did not terminate");
            for (std::size_t jj = k; jj-- > 0;) {
                Real q = round(hmu[k][jj]);
                if (q == 0) continue;
                BigInt qi;
                mpfr_get_z(qi.get_mpz_t(), q.backend().data(), MPFR_RNDN);
                for (std::size_t t = 0; t < hb[k].size(); ++t) hb[k][t] -= q * hb[jj][t];
                for (std::size_t t = 0; t < d; ++t) U[k][t] -= qi * U[jj][t];
                for (std::size_t i = 0; i < jj; ++i) hmu[k][i] -= q * hmu[jj][i];
                hmu[k][jj] -= q;
            }
            if (hB[k] >= (delta - hmu[k][k - 1] * hmu[k][k - 1]) * hB[k - 1]) {
                ++k;
            } else {
                std::swap(hb[k], hb[k - 1]);
                std::swap(U[k], U[k - 1]);
                gram_schmidt();
                k = std::max<std::size_t>(k - 1, 1);
            }
        }
        b.assign(d, std::vector<ld>(d));
        mu.assign(d, std::vector<ld>(d));
        B.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            B[i] = static_cast<ld>(hB[i]);
            for (std::size_t j = 0; j < d; ++j) {
                b[i][j] = static_cast<ld>(hb[i][j]);
                mu[i][j] = static_cast<ld>(hmu[i][j]);
            }
        }
    }

    // Schnorr–Euchner style enumeration of nonzero x with |Σ x_i b_i|² ≤ R2.
    // visit returns the new radius (it may shrink it) or a negative value to stop.
    void enumerate(ld R2, const std::function<ld(const std::vector<long long>&, ld)>& visit, long max_nodes) {
        std::size_t d = b.size();
        std::vector<long long> x(d, 0);
        long nodes = 0;
        bool stop = false;
        std::function<void(long, ld)> rec = [&](long i, ld partial) {
            if (stop) return;
            ld c = 0;
            for (std::size_t j = i + 1; j < d; ++j) c -= x[j] * mu[j][i];
            long long x0 = std::llround(c);
            for (int dir = 0; dir < 2 && !stop; ++dir) {
                for (long long xi = dir == 0 ? x0 : x0 - 1;; xi += dir == 0 ? 1 : -1) {
                    if (++nodes > max_nodes) throw SearchExhausted("enumeration node budget exhausted");
                    ld l = partial + (xi - c) * (xi - c) * B[i];
                    if (l > R2) break;
                    x[i] = xi;
                    if (i == 0) {
                        bool nz = false;
                        for (auto v : x) nz = nz || v != 0;
                        if (nz) {
                            ld r = visit(x, l);
                            if (r < 0) {
                                stop = true;
                                break;
                            }
                            R2 = r;
                        }
                    } else {
                        rec(i - 1, l);
                    }
                    if (stop) break;
                }
            }
            x[i] = 0;
        };
        rec(static_cast<long>(d) - 1, 0);
    }
};

}  // namespace

FeketeCertificate find_small_polynomial(const RealCyclotomicField& F, const IntervalMap& intervals, long n, int cap) {
    if (F.degree() > 2) throw std::invalid_argument("field degree must be at most 2");
    if (n < 0 || n > 30) throw std::invalid_argument("degree must be in 0..30");
    check_intervals(F, intervals);
    FeketeCertificate cert;
    cert.field = F;
    cert.n = n;
    cert.theoretical_bound = fekete_bound(F, intervals, n);
    const long N = F.degree(), d = N * (n + 1);
    auto basis = integral_basis(F);

    auto try_alpha = [&](const std::vector<std::vector<BigInt>>& alpha) -> bool {
        ++cert.candidates_tried;
        std::vector<CE> P(n + 1, CE::rational(0));
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j < N; ++j)
                if (alpha[i][j] != 0) P[i] = P[i] + basis[j] * CE::rational(BigRational(alpha[i][j]));
        std::vector<std::pair<Embedding, Expr>> sups;
        for (const auto& [e, iv] : intervals) {
            auto s = certify_sup_norm(P, e, iv);
            Ordering o = certify_compare(s.bound, cert.theoretical_bound, cap);
            if (o == Ordering::Greater || o == Ordering::Undecided) return false;
            sups.push_back({e, s.bound});
        }
        cert.alpha = alpha, cert.poly = P, cert.sup_bound = sups;
        return true;
    };

    if (n == 0) {
        // P = 1: sup 1 against |disc|^{1/(2N)} ≥ 1
        std::vector<std::vector<BigInt>> alpha(1, std::vector<BigInt>(N, 0));
        alpha[0][0] = 1;
        if (!try_alpha(alpha)) throw SearchExhausted("constant polynomial failed");
        return cert;
    }

    auto forms = chebyshev_linear_forms(F, intervals, n);
    Lattice L;
    L.hb.assign(d, std::vector<Real>(d, Real(0)));
    L.U.assign(d, std::vector<BigInt>(d, 0));
    for (long col = 0; col < d; ++col) {
        L.U[col][col] = 1;
        for (long row = 0; row < d; ++row)
            if (!forms.c[row][col].is_zero()) L.hb[col][row] = Real(forms.c[row][col].eval(1, 400).center().get());
    }
    L.lll();

    auto to_alpha = [&](const std::vector<long long>& x) {
        std::vector<std::vector<BigInt>> alpha(n + 1, std::vector<BigInt>(N, 0));
        for (long r = 0; r < d; ++r) {
            if (x[r] == 0) continue;
            for (long c = 0; c < d; ++c)
                if (L.U[r][c] != 0) alpha[c / N][c % N] += BigInt(std::to_string(x[r])) * L.U[r][c];
        }
        return alpha;
    };

    // Minkowski gives a nonzero vector with every |A_kσ| ≤ |Δ|^{1/d}, so the
    // ball of radius² d·|Δ|^{2/d} holds one that meets the bound
    ld logdet = 0;
    for (ld v : L.B) logdet += std::log(v) / 2;
    ld guaranteed = static_cast<ld>(d) * std::exp(2 * logdet / d) * (1 + 1e-9L);

    // shortest vector first
    std::vector<long long> best;
    ld R0 = 0;
    for (ld v : L.b[0]) R0 += v * v;
    L.enumerate(std::min(R0, guaranteed) * (1 + 1e-12L),
                [&](const std::vector<long long>& x, ld norm) {
                    best = x;
                    return norm * (1 + 1e-12L);
                },
                50'000'000);
    if (!best.empty() && try_alpha(to_alpha(best))) return cert;

    // walk every candidate up to the box guarantee; the lattice coordinates
    // are the A_kσ, so a long double L1 test per embedding screens them first
    const ld target = static_cast<ld>(eval_ball(cert.theoretical_bound, 128).mid_double()) * (1 + 1e-9L);
    bool found = false;
    long screened = 0;
    std::vector<ld> v(d), l1(N);
    L.enumerate(guaranteed,
                [&](const std::vector<long long>& x, ld) -> ld {
                    std::fill(v.begin(), v.end(), 0);
                    for (long r = 0; r < d; ++r)
                        if (x[r] != 0)
                            for (long c = 0; c < d; ++c) v[c] += x[r] * L.b[r][c];
                    std::fill(l1.begin(), l1.end(), 0);
                    for (long c = 0; c < d; ++c) l1[c % N] += std::fabs(v[c]);
                    for (long s = 0; s < N; ++s)
                        if (l1[s] > target) return ++screened > 20'000'000 ? -1 : guaranteed;
                    if (try_alpha(to_alpha(x))) {
                        found = true;
                        return -1;
                    }
                    return guaranteed;
                },
                200'000'000);
    if (!found) throw SearchExhausted("no certified polynomial within the search radius");
    return cert;
}

LagrangeBound lagrange_growth_bound(const BigRational& M0, const BigRational& a, const BigRational& b, long n,
                                    const BigRational& x) {
    if (!(a < b) || x < b || n < 1 || M0 <= 0) throw std::invalid_argument("need a < b <= x, n >= 1, M0 > 0");
    BigRational half = (b - a) / 2, num = M0, den = 1;
    for (long i = 1; i <= n; ++i) num *= (x - a) * n, den *= half * i;
    LagrangeBound r;
    r.exact = num / den;
    r.exact.canonicalize();
    BigRational q = (x - a) / (b - a);
    r.weak = Expr(M0) * pow(Expr(2) * Expr::e() * Expr(q), n);
    return r;
}

}  // namespace gf
