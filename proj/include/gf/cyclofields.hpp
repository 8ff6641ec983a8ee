// Real cyclotomic compositums Q(cos 2π/m : m in moduli): degrees,
// embeddings, exact norms and discriminants.
#pragma once

#include "gf/numcore.hpp"

#include <string>
#include <vector>

namespace gf {

struct InvalidModulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ElementNotInField : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// embedding θ_n ↦ 2cos(2π rep/n); rep is the canonical class representative
struct Embedding {
    long modulus = 1;
    long rep = 1;
    bool is_identity() const { return rep == 1; }
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

class RealCyclotomicField {
public:
    // Q(cos 2π/m : m in moduli). Moduli with rational cosine are dropped.
    explicit RealCyclotomicField(std::vector<long> moduli = {});
    // 𝔽_l = Q(cos²(π/l)) = Q(cos 2π/l)
    static RealCyclotomicField F(long l);
    static RealCyclotomicField F(long l, long m);
    static RealCyclotomicField rationals() { return RealCyclotomicField(); }

    const std::vector<long>& moduli() const { return moduli_; }
    long lcm_modulus() const { return n_; }
    long degree() const { return degree_; }
    bool is_rational() const { return degree_ == 1; }
    // residues a mod n with a ≡ ±1 modulo every modulus
    const std::vector<long>& fixing_group() const { return H_; }

    std::vector<Embedding> embeddings() const;
    Embedding identity() const { return {n_, 1}; }
    Embedding embedding_of(long a) const;

    // fixing group lifted to a multiple N of n
    std::vector<long> fixing_group_at(long N) const;
    // class representatives of embeddings at level N (ascending, 1 first)
    std::vector<long> embedding_reps_at(long N) const;
    bool contains(const CycloElement& x) const;
    bool contains_field(const RealCyclotomicField& sub) const;
    std::string name() const;

private:
    std::vector<long> moduli_;
    long n_ = 1;
    long degree_ = 1;
    std::vector<long> H_;
};

struct Invariants {
    long phi;
    long gamma;
};
Invariants invariants(long l);
long gamma_of(long l);

struct CompositumInfo {
    long lcm;
    int rho;
    long degree;
};
CompositumInfo compositum_info(long l, long m);

// exact norm through the resultant with the minimal polynomial of θ_N
BigRational field_norm(const RealCyclotomicField& F, const CycloElement& x);
// oracle: product of the conjugates over the embedding set
BigRational field_norm_by_conjugates(const RealCyclotomicField& F, const CycloElement& x);
BigRational norm_4sin2_closed_form(const RealCyclotomicField& F, long l);
BigInt field_discriminant(const RealCyclotomicField& F);

}  // namespace gf
