// Face-number averages of simple polytopes, the dimension elimination for
// narrow faces, the Takeuchi degree bound and the genus-0 period bound.
#pragma once

#include "gf/numcore.hpp"

#include <string>
#include <vector>

namespace gf {

struct InadmissibleQuery : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InadmissibleSignature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

BigInt binomial(long n, long k);

// upper bound for the average number of i-faces in k-faces of a simple
// m-polytope; needs 0 ≤ i ≤ k, 2 ≤ k, 2k − 1 ≤ m
BigRational face_average_bound(long i, long k, long m);
// 4 + 4/(n−2) for even n, 4 + 4/(n−3) for odd n; n ≥ 4
BigRational narrow_face_vertex_bound(long n);

struct ExistenceCheck {
    long n = 0;
    BigRational alpha;  // narrow-face vertex bound
    BigRational lhs, rhs;
    bool holds = false;  // lhs > rhs strictly
    std::vector<std::string> chain;  // intermediate relations, for verbose output
};
ExistenceCheck existence_inequality(long n);
// largest n ≤ n_max where the inequality still holds; n_max ≥ 10
long max_admissible_dimension(long n_max);

inline const BigRational kTakeuchiA{29099, 1000};
inline const BigRational kTakeuchiB{83185, 10000};
// ln C(g,t) with C = 2^{2g+t−2} (2g+t−2)^{2/3}
Expr takeuchi_log_c(long g, long t);
Expr takeuchi_expression(long g, long t);
long takeuchi_bound(long g, long t, int precision_cap = kDefaultPrecisionCap);

// largest t with 2π(t − 2 − t/2) ≤ area
long fuchsian_t_bound(const Expr& area, int precision_cap = kDefaultPrecisionCap);
// same, for area = q·π, exactly
long fuchsian_t_bound_pi(const BigRational& q);

}  // namespace gf
