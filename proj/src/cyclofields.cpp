#include "gf/cyclofields.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gf {

namespace {

bool rational_cosine(long m) { return m == 1 || m == 2 || m == 3 || m == 4 || m == 6; }

bool in_H(long a, const std::vector<long>& moduli) {
    for (long m : moduli) {
        long r = ((a % m) + m) % m;
        if (r != 1 % m && r != (m - 1) % m) return false;
    }
    return true;
}

std::vector<long> units(long N) {
    std::vector<long> u;
    if (N == 1) return {1};
    for (long a = 1; a < N; ++a)
        if (gcd_l(a, N) == 1) u.push_back(a);
    return u;
}

// a small generating set of a subgroup of (Z/N)*
std::vector<long> generators(const std::vector<long>& group, long N) {
    std::set<long> span{1 % N};
    std::vector<long> gens;
    for (long g : group) {
        if (span.count(g % N)) continue;
        gens.push_back(g);
        std::vector<long> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<long> next;
            for (long x : frontier)
                for (long h : gens) {
                    long y = (x * h) % N;
                    if (span.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

}  // namespace

RealCyclotomicField::RealCyclotomicField(std::vector<long> moduli) {
    for (long m : moduli) {
        if (m < 1) throw InvalidModulus("modulus must be positive");
        if (!rational_cosine(m)) moduli_.push_back(m);
    }
    std::sort(moduli_.begin(), moduli_.end());
    moduli_.erase(std::unique(moduli_.begin(), moduli_.end()), moduli_.end());
    n_ = 1;
    for (long m : moduli_) n_ = lcm_l(n_, m);
    H_ = fixing_group_at(n_);
    degree_ = (n_ == 1) ? 1 : euler_phi(n_) / static_cast<long>(H_.size());
}

RealCyclotomicField RealCyclotomicField::F(long l) {
    if (l < 3) throw InvalidModulus("modulus must be at least 3");
    return RealCyclotomicField({l});
}

RealCyclotomicField RealCyclotomicField::F(long l, long m) {
    if (l < 3 || m < 3) throw InvalidModulus("moduli must be at least 3");
    return RealCyclotomicField({l, m});
}

std::vector<long> RealCyclotomicField::fixing_group_at(long N) const {
    if (N % n_) throw std::invalid_argument("level must be a multiple of the field modulus");
    std::vector<long> H;
    for (long a : units(N))
        if (in_H(a, moduli_)) H.push_back(a);
    return H;
}

std::vector<long> RealCyclotomicField::embedding_reps_at(long N) const {
    if (N == 1) return {1};
    std::vector<long> H = fixing_group_at(N);
    std::vector<long> reps;
    std::set<long> seen;
    for (long a : units(N)) {
        if (seen.count(a)) continue;
        reps.push_back(a);
        for (long h : H) seen.insert((a * h) % N);
    }
    return reps;
}

std::vector<Embedding> RealCyclotomicField::embeddings() const {
    std::vector<Embedding> out;
    for (long a : embedding_reps_at(n_)) out.push_back({n_, a});
    return out;
}

Embedding RealCyclotomicField::embedding_of(long a) const {
    if (n_ == 1) return {1, 1};
    long am = ((a % n_) + n_) % n_;
    if (gcd_l(am, n_) != 1) throw std::invalid_argument("embedding index must be a unit");
    long best = n_;
    for (long h : H_) best = std::min(best, (am * h) % n_);
    return {n_, best};
}

bool RealCyclotomicField::contains(const CycloElement& x) const {
    if (x.is_rational()) return true;
    long N = lcm_l(n_, x.modulus());
    CycloElement xl = x.lift(N);
    for (long h : generators(fixing_group_at(N), N))
        if (xl.conjugate(h) != xl) return false;
    return true;
}

bool RealCyclotomicField::contains_field(const RealCyclotomicField& sub) const {
    for (long m : sub.moduli())
        if (!contains(CycloElement::theta(m))) return false;
    return true;
}

std::string RealCyclotomicField::name() const {
    if (moduli_.empty()) return "Q";
    std::ostringstream os;
    os << "Q(";
    for (std::size_t i = 0; i < moduli_.size(); ++i) os << (i ? ", " : "") << "cos 2pi/" << moduli_[i];
    os << ")";
    return os.str();
}

long gamma_of(long l) {
    if (l < 3) throw InvalidModulus("modulus must be at least 3");
    auto f = factorize(l);
    return f.size() == 1 ? f[0].first : 1;
}

Invariants invariants(long l) {
    if (l < 3) throw InvalidModulus("modulus must be at least 3");
    return {euler_phi(l), gamma_of(l)};
}

CompositumInfo compositum_info(long l, long m) {
    if (l < 3 || m < 3) throw InvalidModulus("moduli must be at least 3");
    long L = lcm_l(l, m);
    int rho = (2 % gcd_l(l, m) == 0) ? 2 : 1;
    return {L, rho, euler_phi(L) / (2 * rho)};
}

namespace {

// exact e-th root of a rational, throws if not exact
BigRational exact_root(const BigRational& v, long e) {
    BigInt num = abs(v.get_num()), den = v.get_den();
    BigInt rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), e) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), e))
        throw std::logic_error("norm is not an exact power");
    return BigRational(rn, rd);
}

}  // namespace

BigRational field_norm(const RealCyclotomicField& F, const CycloElement& x) {
    if (x.is_rational()) {
        BigRational r = 1, v = x.rational_value();
        for (long i = 0; i < F.degree(); ++i) r *= v;
        return r;
    }
    if (!F.contains(x)) throw ElementNotInField("element does not lie in " + F.name());
    RealCyclotomicField K({x.modulus()});
    if (K.degree() < F.degree() && F.contains_field(K)) {
        // tower: N_F(x) = N_K(x)^[F:K], with the resultant taken in the smaller field
        BigRational nk = field_norm(K, x), r = 1;
        for (long i = 0; i < F.degree() / K.degree(); ++i) r *= nk;
        return r;
    }
    long N = lcm_l(F.lcm_modulus(), x.modulus());
    CycloElement xl = x.lift(N);
    BigRational total = resultant(to_q(real_cyclotomic_minpoly(N)), xl.coeffs());
    long e = xl.degree() / F.degree();
    if (total == 0) return 0;
    BigRational r = exact_root(total, e);
    int sign;
    if (e % 2)
        sign = sgn(total);
    else {
        // sign of the product over the embeddings of F
        Expr prod(1);
        for (long a : F.embedding_reps_at(N)) prod = prod * Expr::cyclo(xl, a);
        Ordering o = certify_sign(prod);
        if (o == Ordering::Undecided || o == Ordering::Equal) throw Undecidable("sign of norm undecided");
        sign = (o == Ordering::Greater) ? 1 : -1;
    }
    return sign > 0 ? r : BigRational(-r);
}

BigRational field_norm_by_conjugates(const RealCyclotomicField& F, const CycloElement& x) {
    if (x.is_rational()) return field_norm(F, x);
    if (!F.contains(x)) throw ElementNotInField("element does not lie in " + F.name());
    long N = lcm_l(F.lcm_modulus(), x.modulus());
    CycloElement xl = x.lift(N);
    CycloElement p = CycloElement::rational(1, N);
    for (long a : F.embedding_reps_at(N)) p = p * xl.conjugate(a);
    if (!p.is_rational()) throw std::logic_error("conjugate product is not rational");
    return p.rational_value();
}

BigRational norm_4sin2_closed_form(const RealCyclotomicField& F, long l) {
    if (l < 3) throw InvalidModulus("modulus must be at least 3");
    long half = euler_phi(l) / 2;
    if (F.degree() % half != 0 || !F.contains(CycloElement::theta(l)))
        throw InvalidModulus("field does not contain cos(2pi/" + std::to_string(l) + ")");
    BigInt g = gamma_of(l);
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(F.degree() / half));
    return BigRational(r);
}

BigInt field_discriminant(const RealCyclotomicField& F) {
    long n = F.lcm_modulus();
    if (n == 1) return 1;
    const auto& H = F.fixing_group();
    auto divs = divisors(n);
    // g(d): characters of (Z/d)* trivial on H mod d = [(Z/d)* : H mod d]
    std::vector<long> g(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i) {
        long d = divs[i];
        if (d == 1) {
            g[i] = 1;
            continue;
        }
        std::set<long> img;
        for (long h : H) img.insert(h % d);
        g[i] = euler_phi(d) / static_cast<long>(img.size());
    }
    BigInt disc = 1;
    for (std::size_t i = 0; i < divs.size(); ++i) {
        long d = divs[i];
        if (d == 1) continue;
        // characters with conductor exactly d
        long f = 0;
        for (std::size_t j = 0; j <= i; ++j)
            if (d % divs[j] == 0) f += mobius(d / divs[j]) * g[j];
        if (f <= 0) continue;
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(f));
        disc *= p;
    }
    return disc;
}

}  // namespace gf
