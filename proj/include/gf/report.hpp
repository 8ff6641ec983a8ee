// Records, report formatting and the reproduction suite behind the CLI.
#pragma once

#include "gf/fekete.hpp"
#include "gf/pairsearch.hpp"
#include "gf/polycomb.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gf {

enum class Format { Text, Json, Csv };
Format parse_format(const std::string& s);

using Fields = std::vector<std::pair<std::string, std::string>>;

struct Record {
    std::string pipeline;
    std::string id;
    Fields inputs;  // decimal strings
    Fields exact;   // exact-value sidecars
    std::optional<long> result;
    std::optional<long> paper_expected;
    std::string formula;  // the instantiated formula
    Fields csv;           // row for CSV output
    bool match() const { return !paper_expected || (result && *result == *paper_expected); }
};

struct Report {
    std::string title;
    std::vector<Record> records;
    std::vector<std::string> notes;
    bool mismatch() const;
    void add(Record r) { records.push_back(std::move(r)); }
    void append(const Report& o);
};

std::string format_report(const Report& r, Format f, bool verbose);

// decimal string with 15 significant digits, "?" when evaluation fails
std::string decimal(const Expr& e);

// parses numbers, rationals, e, pi, + - * / ^, sqrt, ln, exp
Expr parse_expr(const std::string& text);

Record bound_solve_record(const BoundProblem& p, int precision_cap);
Record case_record(const CaseBound& row);
Report family_report(Family f, std::optional<KRange> kr, int precision_cap);
Record pair_record(const PairReport& r);
Report pair_search_report(PairKind kind, long k_max, int jobs, int precision_cap);
Report polytope_report(long n_max, bool verbose);
Report takeuchi_report(int precision_cap);
Report fekete_report(const FeketeCertificate& c, const IntervalMap& intervals);
Report datasets_report();

// every pipeline with the paper's expectations; worker count never changes output
Report reproduce_all(long k_max, int jobs, int precision_cap);

}  // namespace gf
