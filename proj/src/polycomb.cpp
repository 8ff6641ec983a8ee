#include "gf/polycomb.hpp"

namespace gf {

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigRational face_average_bound(long i, long k, long m) {
    if (i < 0 || i > k || k < 2 || 2 * k - 1 > m)
        throw InadmissibleQuery("need 0 <= i <= k, k >= 2 and 2k-1 <= m");
    long h = m / 2;
    BigInt num = binomial(m - i, k - i) * (binomial(h, i) + binomial(m - h, i));
    BigInt den = binomial(h, k) + binomial(m - h, k);
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational narrow_face_vertex_bound(long n) {
    if (n < 4) throw InadmissibleQuery("need n >= 4");
    BigRational q(4, n % 2 == 0 ? n - 2 : n - 3);
    q.canonicalize();
    return 4 + q;
}

ExistenceCheck existence_inequality(long n) {
    if (n < 4) throw InadmissibleQuery("need n >= 4");
    ExistenceCheck r;
    r.n = n;
    r.alpha = narrow_face_vertex_bound(n);
    BigRational tri(BigInt(n - 1) * (n - 2), 2);
    tri.canonicalize();
    long half = (n - 1) / 2;  // (n−2)/2 for even n, (n−1)/2 for odd n
    r.lhs = r.alpha * (tri + half);
    r.rhs = 5 * tri;
    r.holds = r.lhs > r.rhs;
    auto s = [](const BigRational& q) { return q.get_str(); };
    r.chain = {
        "alpha = alpha_{n-1}^{(0,2)} < " + s(r.alpha),
        "A <= [(n-1)/2] alpha0 = " + std::to_string(half) + " alpha0",
        "A >= (5 - alpha) alpha2",
        "alpha0 (n-1)(n-2)/2 = alpha2 alpha, (n-1)(n-2)/2 = " + s(tri),
        "alpha ((n-1)(n-2)/2 + [(n-1)/2]) >= 5 (n-1)(n-2)/2",
        "lhs = " + s(r.lhs) + ", rhs = " + s(r.rhs) + (r.holds ? ", lhs > rhs" : ", lhs <= rhs"),
    };
    return r;
}

long max_admissible_dimension(long n_max) {
    if (n_max < 10) throw InadmissibleQuery("need n_max >= 10");
    long best = 0;
    for (long n = 4; n <= n_max; ++n)
        if (existence_inequality(n).holds) best = n;
    return best;
}

Expr takeuchi_log_c(long g, long t) {
    if (g < 0 || t < 1) throw InadmissibleSignature("need g >= 0 and t >= 1");
    long e = 2 * g + t - 2;
    if (e < 1) throw InadmissibleSignature("need 2g + t - 2 >= 1");
    return Expr(e) * ln(Expr(2)) + Expr(BigRational(2, 3)) * ln(Expr(e));
}

Expr takeuchi_expression(long g, long t) {
    Expr denom = ln(Expr(kTakeuchiA)) - Expr(BigRational(4, 3)) * ln(Expr(2) * Expr::pi());
    return (Expr(kTakeuchiB) + takeuchi_log_c(g, t)) / denom;
}

long takeuchi_bound(long g, long t, int cap) {
    return static_cast<long>(certified_floor(takeuchi_expression(g, t), cap).get_si());
}

long fuchsian_t_bound(const Expr& area, int cap) {
    if (auto q = pi_multiple(area)) return fuchsian_t_bound_pi(*q);
    if (certify_sign(area, cap) != Ordering::Greater) throw std::invalid_argument("area must be positive");
    // t/2 − 2 ≤ area/(2π)  ⇔  t ≤ area/π + 4
    return static_cast<long>(certified_floor(area / Expr::pi() + Expr(4), cap).get_si());
}

long fuchsian_t_bound_pi(const BigRational& q) {
    if (q <= 0) throw std::invalid_argument("area must be positive");
    BigRational v = q + 4;
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return f.get_si();
}

}  // namespace gf
