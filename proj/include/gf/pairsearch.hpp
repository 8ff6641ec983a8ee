// Method B over pairs (k,s): exceptional pairs, the global pair inequality
// search, the two floor bounds, and Method A refinement of poor bounds.
#pragma once

#include "gf/edgegraphs.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gf {

struct ExceptionalPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// GAMMA5: constant 7, all k ≥ s ≥ 3. GAMMA4: constant 8, s = r ∈ {3,4,5}, k ≥ 7.
enum class PairKind { Gamma5, Gamma4 };
const char* to_string(PairKind k);
long pair_constant(PairKind k);
// Method A uses 14² (GAMMA5) or 16² (GAMMA4) for the geometric bound
long method_a_constant(PairKind k);

using Pair = std::pair<long, long>;  // (k, s), k ≥ s

// ln 2 − ln γ(k)/φ(k) − ln γ(s)/φ(s)
Expr pair_coefficient(long k, long s);
// exact sign of the coefficient: compares 2^{φkφs} with γ(k)^{φs} γ(s)^{φk}
int coefficient_sign(long k, long s);
// ln C − ln sin(π/k) − ln sin(π/s)
Expr pair_numerator(long k, long s, PairKind kind);

std::vector<Pair> exceptional_pairs(PairKind kind);

struct PairReport {
    long k = 0, s = 0;
    PairKind kind = PairKind::Gamma5;
    bool exceptional = false;
    std::string coefficient;  // decimal
    long field_degree = 0;    // [F_{k,s}:Q]
    bool survives = false;    // the pair inequality holds
    std::optional<long> bound_KF, bound_K;
    std::optional<long> refined_KF;
    long final_bound = 0;
    // intermediates the paper prints for this pair, when it does
    std::optional<long> paper_KF, paper_K;
    bool intermediate_divergence() const {
        return (paper_KF && bound_KF && *paper_KF != *bound_KF) || (paper_K && bound_K && *paper_K != *bound_K);
    }
};

// Bounds from the pair inequality and, when bound_K > 120, Method A.
// Exceptional pairs get Method A only.
PairReport pair_report(long k, long s, PairKind kind, int precision_cap = kDefaultPrecisionCap);
// Method A bound for [K : F_{k,s}]
long refine(long k, long s, PairKind kind, int precision_cap = kDefaultPrecisionCap);
BoundProblem refine_problem(long k, long s, PairKind kind);
// certified test of the pair inequality
bool pair_inequality_holds(long k, long s, PairKind kind, int precision_cap = kDefaultPrecisionCap);

struct SearchStats {
    long k_max = 0;
    long pruned_k = 0;         // whole k discarded by the per-k bound
    long pairs_checked = 0;    // pairs tested individually
    long pairs_fallback = 0;   // pairs decided with MPFR
};
struct SearchResult {
    std::vector<PairReport> survivors;  // ordered by (k, s)
    SearchStats stats;
};
SearchResult search(PairKind kind, long k_max, int jobs = 1, int precision_cap = kDefaultPrecisionCap);

struct MinCoefficient {
    Pair pair;
    Expr value;
};
// smallest positive coefficient over k ≥ s ≥ 3, k ≤ k_limit
MinCoefficient min_positive_coefficient(long k_limit);

struct GlobalBound {
    PairKind kind;
    long max = 0;
    Pair argmax{0, 0};
    std::vector<PairReport> exceptional;
    std::vector<PairReport> survivors;
    std::optional<long> small_k_max;  // GAMMA4 only: Method A over 2 ≤ k ≤ 6
    SearchStats stats;
};
GlobalBound global_bound(PairKind kind, long k_max, int jobs = 1, int precision_cap = kDefaultPrecisionCap);

}  // namespace gf
