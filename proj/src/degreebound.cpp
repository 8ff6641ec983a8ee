#include "gf/degreebound.hpp"

#include <sstream>

namespace gf {

BoundProblem assemble(const IntervalSystem& sys, int cap) {
    auto embs = sys.field.embeddings();
    if (sys.base.size() != embs.size())
        throw std::invalid_argument("interval system needs exactly one base interval per embedding");
    if (sys.exceptional.empty()) throw std::invalid_argument("interval system needs m >= 1 exceptional intervals");

    Expr prod(1);
    for (const auto& iv : sys.base) prod = prod * (iv.hi - iv.lo) / Expr(4);
    switch (certify_compare(prod, Expr(1), cap)) {
        case Ordering::Less: break;
        case Ordering::Undecided: throw Undecidable("cannot certify prod (b-a)/4 < 1");
        default: throw HypothesisViolated("prod (b-a)/4 >= 1");
    }

    BoundProblem p;
    p.M = sys.field.degree();
    p.B = sqrt(Expr(BigRational(field_discriminant(sys.field))));
    p.R = sqrt(prod);
    Expr S(1);
    for (const auto& ex : sys.exceptional) {
        if (ex.embedding_index >= embs.size()) throw std::out_of_range("exceptional embedding index");
        const auto& b = sys.base[ex.embedding_index];
        Expr r = max(abs(ex.iv.hi - b.lo), abs(b.hi - ex.iv.lo));
        S = S * Expr(2) * Expr::e() * r / (b.hi - b.lo);
    }
    p.S = S;
    p.m = static_cast<long>(sys.exceptional.size());
    return p;
}

Expr key_inequality_lhs(const BoundProblem& p, long N) {
    return Expr(N) * ln(Expr(1) / p.R) - Expr(p.M) * ln(Expr(2 * N + 2)) - ln(p.B) - ln(p.S);
}

namespace {

Expr clamped_S(const BoundProblem& p, int cap, bool* clamped) {
    Ordering o = certify_compare(p.S, Expr(1), cap);
    if (o == Ordering::Undecided) throw Undecidable("cannot compare S with 1");
    if (clamped) *clamped = (o != Ordering::Greater);
    return o == Ordering::Greater ? p.S : Expr(1);
}

}  // namespace

Ordering key_inequality(const BoundProblem& p0, long N, int cap) {
    BoundProblem p = p0;
    p.S = clamped_S(p0, cap, nullptr);
    Ordering o = certify_sign(key_inequality_lhs(p, N), cap);
    return o;
}

BoundResult solve(const BoundProblem& p, const SolveOptions& opt) {
    if (p.M < 1 || p.m < 1) throw std::invalid_argument("M and m must be positive");
    switch (certify_compare(p.R, Expr(1), opt.precision_cap)) {
        case Ordering::Less: break;
        case Ordering::Undecided: throw Undecidable("cannot certify R < 1");
        default: throw HypothesisViolated("R >= 1");
    }
    BoundResult res;
    Expr S = clamped_S(p, opt.precision_cap, &res.S_clamped);

    long N = 1;
    for (int prec = kStartPrecision; prec <= opt.precision_cap; prec *= 2) {
        Ball L1(prec), LB(prec), LS(prec);
        try {
            L1 = eval_ball(ln(Expr(1) / p.R), prec);
            LB = eval_ball(ln(p.B), prec);
            LS = eval_ball(ln(S), prec);
        } catch (const Imprecise&) {
            continue;
        }
        Ball M = Ball::exact(p.M, prec);
        for (; N <= opt.n_limit; ++N) {
            Ball v = Ball::exact(N, prec) * L1 - M * Ball::exact(2 * N + 2, prec).log() - LB - LS;
            if (v.certainly_nonnegative()) {
                res.N = N;
                res.degree_bound = opt.divide_by_m ? (N * p.M) / p.m : N * p.M;
                return res;
            }
            if (!v.certainly_negative()) break;  // undecided: raise precision
        }
        if (N > opt.n_limit) throw Undecidable("no solution below the configured N limit");
    }
    throw Undecidable("solver undecided at precision cap");
}

std::string describe(const BoundProblem& p) {
    std::ostringstream os;
    auto d = [](const Expr& e) {
        try {
            return eval_ball(e, 128).center().to_string(12);
        } catch (const std::exception&) {
            return std::string("?");
        }
    };
    os << "M=" << p.M << " B=" << d(p.B) << " R=" << d(p.R) << " S=" << d(p.S) << " m=" << p.m;
    return os.str();
}

}  // namespace gf
