// Degree bounds for totally real algebraic integers confined to intervals:
// assembly of (M, B, R, S) and the least-N solver.
#pragma once

#include "gf/cyclofields.hpp"

#include <string>
#include <vector>

namespace gf {

struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExprInterval {
    Expr lo, hi;
};

struct ExceptionalInterval {
    std::size_t embedding_index;  // index into field.embeddings()
    ExprInterval iv;
};

struct IntervalSystem {
    RealCyclotomicField field;
    std::vector<ExprInterval> base;  // one per embedding, in field.embeddings() order
    std::vector<ExceptionalInterval> exceptional;
};

struct BoundProblem {
    long M = 1;
    Expr B = Expr(1);
    Expr R = Expr(BigRational(1, 2));
    Expr S = Expr(1);
    long m = 1;
};

struct BoundResult {
    long N = 0;
    long degree_bound = 0;
    bool S_clamped = false;
};

struct SolveOptions {
    bool divide_by_m = false;  // report floor(N·M/m) instead of N·M
    int precision_cap = kDefaultPrecisionCap;
    long n_limit = 1000000;
};

BoundProblem assemble(const IntervalSystem& system, int precision_cap = kDefaultPrecisionCap);

// N ln(1/R) − M ln(2N+2) − ln B − ln S as an expression in N
Expr key_inequality_lhs(const BoundProblem& p, long N);
// certified truth of the key inequality at N (S clamped to ≥ 1)
Ordering key_inequality(const BoundProblem& p, long N, int precision_cap = kDefaultPrecisionCap);

BoundResult solve(const BoundProblem& problem, const SolveOptions& opt = {});

std::string describe(const BoundProblem& p);

}  // namespace gf
