// The five connected 4-vertex edge graphs with one broken edge u > 2:
// Gram matrices, determinants, admissible intervals for conjugates,
// Method A problems and per-family tables. Also the static field lists.
#pragma once

#include "gf/degreebound.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gf {

struct MissingRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InfeasibleCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { G1 = 1, G2, G3, G4, G5 };
enum class Variant { U, USquared, UTilde };
enum class Feasibility { Feasible, ForcesFieldEqualsF, Impossible };

const char* to_string(Family f);
const char* to_string(Variant v);
const char* to_string(Feasibility f);

struct KRange {
    long lo, hi;  // inclusive
};

// Parameter slots that a family does not use are 0.
//   G1 (s,k,r,p)  G2 (s,k,p)  G3 (s,k,r)  G4 (s,r,k)  G5 (k,s)
struct EdgeGraphCase {
    Family family = Family::G1;
    long s = 0, k = 0, r = 0, p = 0;
    std::optional<AlgebraicReal> u;

    std::vector<long> params() const;  // in the family's order
    std::string label() const;
};

EdgeGraphCase make_case(Family f, const std::vector<long>& params);
std::vector<EdgeGraphCase> enumerate_cases(Family f, std::optional<KRange> k_range = std::nullopt);

// polynomial in u with real cyclotomic coefficients, ascending
using UPoly = std::vector<CycloElement>;
UPoly upoly_add(const UPoly& a, const UPoly& b);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
CycloElement upoly_eval(const UPoly& p, const CycloElement& u);
bool upoly_equal(const UPoly& a, const UPoly& b);

struct FundamentalMatrix {
    std::vector<std::vector<UPoly>> a;

    std::size_t size() const { return a.size(); }
    bool symmetric() const;
    // every off-diagonal entry is < t at the identity embedding for the given u
    bool has_minimality(const BigRational& t, const AlgebraicReal& u) const;
    FundamentalMatrix substitute(const CycloElement& u) const;
};

FundamentalMatrix gram_matrix(const EdgeGraphCase& c);
UPoly determinant(const FundamentalMatrix& m);

// −d(u)/4 = a u² + b u + c as printed for the family; D = b² − 4ac
struct Quadratic {
    CycloElement a, b, c;
    CycloElement discriminant() const { return b * b - CycloElement::rational(4) * a * c; }
    UPoly as_upoly() const { return {c, b, a}; }
};
Quadratic printed_quadratic(const EdgeGraphCase& c);
// direct determinant of the Gram matrix at u
CycloElement determinant_value(const EdgeGraphCase& c, const CycloElement& u);
// the family's closed form, −4·(a u² + b u + c)
CycloElement determinant_closed_form(const EdgeGraphCase& c, const CycloElement& u);

// F: generated by the squared cosines. E: additionally by cos(π/l).
RealCyclotomicField base_field(const EdgeGraphCase& c);
RealCyclotomicField cosine_field(const EdgeGraphCase& c);
CycloElement printed_discriminant(const EdgeGraphCase& c);
std::vector<Variant> variants(const EdgeGraphCase& c);
// geometric range of the variant at the identity embedding
std::pair<BigRational, BigRational> geometric_range(Variant v);

struct AdmissibleInterval {
    Expr lo, hi;
    bool lo_closed = false;
    CycloElement length_squared;  // exact (hi − lo)²
};
// Interval for τ(u), τ(u²) or τ(ũ) where τ restricts to the embedding of
// cosine_field(c) with representative rep. Empty when D or the bracket is
// certified nonpositive.
std::optional<AdmissibleInterval> admissible_interval(const EdgeGraphCase& c, long rep, Variant v,
                                                      int precision_cap = kDefaultPrecisionCap);

Feasibility feasibility(const EdgeGraphCase& c, int precision_cap = kDefaultPrecisionCap);

struct ConjugateCheck {
    std::string root;  // isolating interval of the conjugate of u
    long rep = 1;      // embedding of the coefficient field
    bool identity_on_K = false;
    bool inside = true;
};
struct VArithmeticCertificate {
    bool ok = false;
    std::string reason;
    std::vector<ConjugateCheck> checks;
};
VArithmeticCertificate is_varithmetic(const EdgeGraphCase& c, Variant v,
                                      int precision_cap = kDefaultPrecisionCap);

struct CyclicProduct {
    std::vector<int> cycle;  // vertex numbers 1..n, starting at the smallest
    UPoly value;
};
std::vector<CyclicProduct> cyclic_products(const FundamentalMatrix& m);

BoundProblem bound_problem(const EdgeGraphCase& c, Variant v, long m = 1,
                           int precision_cap = kDefaultPrecisionCap);

struct CaseBound {
    EdgeGraphCase gcase;
    Variant variant = Variant::U;
    long m = 1;
    Feasibility feasibility = Feasibility::Feasible;
    std::optional<BoundProblem> problem;
    long N = 0;
    long bound = 0;
    std::optional<long> paper_bound;
    bool selected = true;  // row enters the family maximum
    bool match() const { return !paper_bound || *paper_bound == bound; }
};
struct FamilyTable {
    Family family;
    std::vector<CaseBound> rows;
    long max_bound = 0;
    EdgeGraphCase argmax;
};
std::optional<long> paper_bound(const EdgeGraphCase& c, Variant v, long m);
CaseBound case_bound(const EdgeGraphCase& c, Variant v, long m = 1, int precision_cap = kDefaultPrecisionCap);
FamilyTable family_bound(Family f, std::optional<KRange> k_range = std::nullopt,
                         int precision_cap = kDefaultPrecisionCap);

// ---------------------------------------------------------------- datasets

struct FieldRecord {
    std::string name;
    ZPoly minpoly;  // of a primitive element
    long degree() const { return static_cast<long>(minpoly.size()) - 1; }
};
struct KnownFieldSets {
    std::vector<FieldRecord> lanner4;
    std::vector<FieldRecord> takeuchi_fields;
    std::vector<std::array<long, 3>> triangle_triples;
};
const KnownFieldSets& known_field_sets();
std::string render_fields(const std::vector<FieldRecord>& fields);
std::string render_triples(const std::vector<std::array<long, 3>>& triples);
// contents of a shipped table under the data directory
std::string read_data_file(const std::string& name);

}  // namespace gf
