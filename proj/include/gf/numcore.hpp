// Exact and certified arithmetic: rationals, real cyclotomic elements,
// algebraic reals, MPFR interval balls and real expression trees.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gf {

using BigInt = mpz_class;
using BigRational = mpq_class;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Undecidable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// thrown when a ball is too wide to decide a branch; callers raise precision
struct Imprecise : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kDefaultPrecisionCap = 4096;
constexpr int kStartPrecision = 64;

// ---------------------------------------------------------------- integers

long euler_phi(long n);
long gcd_l(long a, long b);
long lcm_l(long a, long b);
int mobius(long n);
std::vector<long> divisors(long n);
// prime factorization as (p, e) pairs, ascending
std::vector<std::pair<long, int>> factorize(long n);

// ------------------------------------------------------------------- mpfr

class Mpfr {
public:
    explicit Mpfr(int prec = 64);
    Mpfr(const Mpfr& o);
    Mpfr(Mpfr&& o) noexcept;
    Mpfr& operator=(const Mpfr& o);
    Mpfr& operator=(Mpfr&& o) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    int prec() const { return static_cast<int>(mpfr_get_prec(v_)); }
    double to_double(mpfr_rnd_t r = MPFR_RNDN) const { return mpfr_get_d(v_, r); }
    std::string to_string(int digits = 20) const;

private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding. Exposed as a ball
// through center() and radius().
class Ball {
public:
    explicit Ball(int prec = 64);
    static Ball exact(const BigRational& q, int prec);
    static Ball exact(long v, int prec);
    static Ball from_bounds(const Mpfr& lo, const Mpfr& hi);
    static Ball pi(int prec);
    static Ball e(int prec);

    int precision() const { return prec_; }
    const Mpfr& lower() const { return lo_; }
    const Mpfr& upper() const { return hi_; }
    Mpfr center() const;
    Mpfr radius() const;  // rounded up
    double mid_double() const;

    bool contains(const BigRational& q) const;
    bool contains(const Ball& inner) const;
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_nonnegative() const;
    bool is_point() const;

    Ball operator-() const;
    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);

    Ball sqrt() const;
    Ball log() const;
    Ball exp() const;
    Ball sin() const;
    Ball cos() const;
    Ball abs() const;
    Ball pow(long k) const;
    static Ball max(const Ball& a, const Ball& b);
    static Ball min(const Ball& a, const Ball& b);
    // union hull
    static Ball hull(const Ball& a, const Ball& b);

    // floor of the value when both endpoints agree
    std::optional<BigInt> floor_if_decided() const;
    std::string str(int digits = 17) const;

private:
    int prec_;
    Mpfr lo_, hi_;
};

// ------------------------------------------------------------ polynomials

using ZPoly = std::vector<BigInt>;       // ascending coefficients
using QPoly = std::vector<BigRational>;  // ascending coefficients

void trim(QPoly& p);
void trim(ZPoly& p);
QPoly to_q(const ZPoly& p);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
// remainder of a modulo monic-or-not b
QPoly poly_mod(const QPoly& a, const QPoly& b);
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly poly_gcd(const QPoly& a, const QPoly& b);
QPoly poly_derivative(const QPoly& a);
BigRational poly_eval(const QPoly& p, const BigRational& x);
BigRational resultant(const QPoly& a, const QPoly& b);
int sign_at(const ZPoly& p, const BigRational& x);

// Φ_n as an integer polynomial (cached)
const ZPoly& cyclotomic_poly(long n);
// minimal polynomial of 2cos(2π/n), degree max(1, φ(n)/2) (cached)
const ZPoly& real_cyclotomic_minpoly(long n);
// Dickson polynomial D_a with D_a(x + 1/x) = x^a + x^{-a}
ZPoly dickson(long a);

// ---------------------------------------------------------- CycloElement

// Element of Q(ζ_n)^+ written in the power basis of θ = 2cos(2π/n).
class CycloElement {
public:
    CycloElement();  // zero in modulus 1
    CycloElement(long n, QPoly coeffs);
    static CycloElement rational(const BigRational& q, long n = 1);
    static CycloElement theta(long n);            // 2cos(2π/n)
    static CycloElement two_cos_2pi(long a, long n);  // 2cos(2πa/n)
    static CycloElement cos_pi(const BigRational& q);  // cos(πq)
    static CycloElement sin_pi(const BigRational& q);  // sin(πq)
    static CycloElement cos2_pi_over(long l);  // cos²(π/l), modulus l
    static CycloElement sin2_pi_over(long l);  // sin²(π/l), modulus l

    long modulus() const { return n_; }
    long degree() const;
    const QPoly& coeffs() const { return c_; }

    CycloElement lift(long m) const;  // n | m
    CycloElement conjugate(long a) const;  // θ ↦ 2cos(2πa/n), gcd(a,n)=1
    CycloElement inverse() const;

    bool is_zero() const;
    bool is_rational() const;
    BigRational rational_value() const;  // requires is_rational()

    // value under the embedding θ ↦ 2cos(2πa/n)
    Ball eval(long a, int prec) const;

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    CycloElement operator-() const;
    friend bool operator==(const CycloElement& a, const CycloElement& b);
    friend bool operator!=(const CycloElement& a, const CycloElement& b) { return !(a == b); }
    CycloElement pow(long k) const;
    std::string str() const;

private:
    long n_;
    QPoly c_;
    void reduce();
};

// -------------------------------------------------------- AlgebraicReal

struct RationalInterval {
    BigRational lo, hi;
};

class AlgebraicReal {
public:
    // validates squarefreeness and that the interval isolates one root
    AlgebraicReal(ZPoly minpoly, RationalInterval iv);
    static AlgebraicReal from_rational(const BigRational& q);
    // all real roots of a squarefree polynomial, ascending
    static std::vector<AlgebraicReal> real_roots(const ZPoly& p);

    const ZPoly& minpoly() const { return p_; }
    const RationalInterval& interval() const { return iv_; }
    long degree() const { return static_cast<long>(p_.size()) - 1; }
    bool is_integer_monic() const;

    // bisect until width < 2^-bits
    void refine(int bits);
    AlgebraicReal refined(int bits) const;
    Ball to_ball(int prec) const;
    bool is_rational() const;
    std::string str() const;

private:
    ZPoly p_;
    RationalInterval iv_;
};

// number of distinct real roots of a squarefree p in (lo, hi] via Sturm
long sturm_count(const ZPoly& p, const BigRational& lo, const BigRational& hi);
long sturm_count_all(const ZPoly& p);
ZPoly primitive_part(const QPoly& p);

// --------------------------------------------------------------- Expr

class Expr {
public:
    enum class Op {
        Rat, Pi, E, Cyclo, Alg, Add, Sub, Mul, Div, Neg,
        Ln, Exp, Sqrt, Sin, Cos, PowInt, Abs, Max, Min
    };
    struct Node;

    Expr();  // zero
    Expr(long v);
    Expr(const BigRational& q);
    static Expr rational(const BigRational& q) { return Expr(q); }
    static Expr pi();
    static Expr e();
    // value of x under the embedding with representative a
    static Expr cyclo(const CycloElement& x, long a = 1);
    static Expr alg(const AlgebraicReal& x);
    static Expr pi_times(const BigRational& q);

    Op op() const;
    const Node& node() const { return *n_; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    std::string str() const;

    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

private:
    std::shared_ptr<const Node> n_;
};

struct Expr::Node {
    Op op;
    BigRational q;
    long a = 1;
    std::optional<CycloElement> cyclo;
    std::optional<AlgebraicReal> alg;
    std::vector<Expr> kids;
};

Expr ln(const Expr& x);
Expr exp(const Expr& x);
Expr sqrt(const Expr& x);
Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr pow(const Expr& x, long k);
Expr abs(const Expr& x);
Expr max(const Expr& a, const Expr& b);
Expr min(const Expr& a, const Expr& b);
// x^q for x > 0, through exp(q ln x)
Expr rpow(const Expr& x, const BigRational& q);

Ball eval_ball(const Expr& e, int precision_bits);
// exact value when the expression is built from rationals, cyclotomic
// leaves, sin/cos of rational multiples of π and field operations
std::optional<CycloElement> exact_value(const Expr& e);

// q when the expression is literally a rational multiple qπ
std::optional<BigRational> pi_multiple(const Expr& e);

enum class Ordering { Less, Greater, Equal, Undecided };
const char* to_string(Ordering o);

Ordering certify_compare(const Expr& a, const Expr& b, int precision_cap = kDefaultPrecisionCap,
                         int start_precision = kStartPrecision);
// sign of x against 0 with the same policy
Ordering certify_sign(const Expr& x, int precision_cap = kDefaultPrecisionCap);
// floor of a positive expression; raises precision while the ball straddles
// an integer and uses the exact path for integer values
BigInt certified_floor(const Expr& x, int precision_cap = kDefaultPrecisionCap);

}  // namespace gf
