// Integer polynomials that are small on an interval at every embedding of a
// totally real field: Chebyshev linear forms, lattice search with exact
// sup-norm certificates, and the Lagrange growth bound.
#pragma once

#include "gf/cyclofields.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gf {

struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one closed interval per embedding, in the order of field.embeddings()
using IntervalMap = std::vector<std::pair<Embedding, RationalInterval>>;

// Chebyshev coefficients of ((b+a)/2 + ((b−a)/2) cos z)^i, i = 0..n:
// e[i][k] is the coefficient of cos kz
std::vector<std::vector<BigRational>> shifted_power_chebyshev(const RationalInterval& iv, long n);

struct ChebyshevForms {
    long n = 0;
    long N = 1;  // field degree
    // rows (k, σ) and columns (i, j) in lexicographic order;
    // row index k*N + σ, column index i*N + j
    std::vector<std::vector<CycloElement>> c;
    std::vector<Embedding> embeddings;
    std::vector<CycloElement> basis;  // γ_1..γ_N of the ring of integers

    const CycloElement& at(long k, long sigma, long i, long j) const { return c[k * N + sigma][i * N + j]; }
};

// integral basis 1, θ, …, θ^{N−1} with θ = 2cos(2π/m) for the generating modulus m
std::vector<CycloElement> integral_basis(const RealCyclotomicField& F);
ChebyshevForms chebyshev_linear_forms(const RealCyclotomicField& F, const IntervalMap& intervals, long n);

// exact determinant over the field (Gaussian elimination)
CycloElement forms_determinant(const ChebyshevForms& f);
// det(γ_j^σ)^{n+1} 2^{Nn} (∏(b_σ − a_σ)/4)^{n(n+1)/2}
CycloElement forms_determinant_closed(const ChebyshevForms& f, const IntervalMap& intervals);

// |disc F|^{1/(2N)} 2^{n/(n+1)} (n+1) (∏(b−a)/4)^{n/(2N)}
Expr fekete_bound(const RealCyclotomicField& F, const IntervalMap& intervals, long n);

struct SupNormBound {
    std::vector<CycloElement> A;  // Chebyshev coefficients A_k of P^σ on the interval
    Expr bound;                   // Σ|A_k|
};
// P given by its coefficients in the field, ascending in T
SupNormBound certify_sup_norm(const std::vector<CycloElement>& P, const Embedding& sigma,
                              const RationalInterval& iv);

struct FeketeCertificate {
    RealCyclotomicField field;
    long n = 0;
    std::vector<std::vector<BigInt>> alpha;  // alpha[i][j]: coefficient of γ_j T^i
    std::vector<CycloElement> poly;          // coefficients of P, ascending
    std::vector<std::pair<Embedding, Expr>> sup_bound;
    Expr theoretical_bound;
    long candidates_tried = 0;
};
FeketeCertificate find_small_polynomial(const RealCyclotomicField& F, const IntervalMap& intervals, long n,
                                        int precision_cap = kDefaultPrecisionCap);

struct LagrangeBound {
    BigRational exact;  // M0 (x−a)^n n^n / (((b−a)/2)^n n!)
    Expr weak;          // M0 (2e(x−a)/(b−a))^n
};
LagrangeBound lagrange_growth_bound(const BigRational& M0, const BigRational& a, const BigRational& b, long n,
                                    const BigRational& x);

}  // namespace gf
