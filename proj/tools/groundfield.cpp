// groundfield: command-line front end for the bound pipelines.
// Exit status: 0 ok, 1 reproduction mismatch, 2 undecidable, 3 usage error.
#include "gf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gf;

namespace {

struct Config {
    int precision_cap = kDefaultPrecisionCap;
    long k_max = 10000000;
    std::string format = "text";
    std::string out;
    int jobs = 1;
    bool verbose = false;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Family parse_family(const std::string& s) {
    std::string t = s;
    if (!t.empty() && (t[0] == 'g' || t[0] == 'G')) t = t.substr(1);
    if (t.size() == 1 && t[0] >= '1' && t[0] <= '5') return static_cast<Family>(t[0] - '0');
    throw UsageError("unknown family '" + s + "' (use G1..G5)");
}

Variant parse_variant(const std::string& s) {
    if (s == "u") return Variant::U;
    if (s == "u_squared") return Variant::USquared;
    if (s == "u_tilde") return Variant::UTilde;
    throw UsageError("unknown variant '" + s + "' (use u, u_squared or u_tilde)");
}

PairKind parse_kind(const std::string& s) {
    if (s == "gamma5" || s == "GAMMA5") return PairKind::Gamma5;
    if (s == "gamma4" || s == "GAMMA4") return PairKind::Gamma4;
    throw UsageError("unknown pair kind '" + s + "' (use gamma5 or gamma4)");
}

std::vector<long> parse_list(const std::string& s) {
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return v;
}

BigRational parse_rational(const std::string& s) {
    auto ev = exact_value(parse_expr(s));
    if (!ev || !ev->is_rational()) throw UsageError("expected a rational number, got '" + s + "'");
    return ev->rational_value();
}

KRange parse_range(const std::string& s) {
    auto p = s.find("..");
    if (p == std::string::npos) throw UsageError("expected a range lo..hi, got '" + s + "'");
    try {
        return {std::stol(s.substr(0, p)), std::stol(s.substr(p + 2))};
    } catch (const std::exception&) {
        throw UsageError("expected a range lo..hi, got '" + s + "'");
    }
}

int emit(const Report& rep, const Config& cfg) {
    std::string text = format_report(rep, parse_format(cfg.format), cfg.verbose);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + cfg.out);
        f << text;
    }
    return rep.mismatch() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified degree bounds for ground fields of arithmetic hyperbolic reflection groups"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Config cfg;
    app.add_option("--precision-cap", cfg.precision_cap, "MPFR precision cap in bits")->check(CLI::Range(64, 1 << 20));
    app.add_option("--kmax", cfg.k_max, "search bound for pair searches")->check(CLI::Range(31L, 100000000L));
    app.add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", cfg.out, "write the report to this file");
    app.add_option("--jobs", cfg.jobs, "worker threads for search-pairs")->check(CLI::Range(1, 256));
    app.add_flag("--verbose", cfg.verbose, "print exact sidecars and intermediate chains");

    std::function<Report()> action;

    auto* bs = app.add_subcommand("bound-solve", "least N for given M, B, R, S");
    long bM = 1, bm = 1;
    std::string bB = "1", bR, bS = "1";
    bs->add_option("--M", bM, "field degree")->required();
    bs->add_option("--B", bB, "sqrt of the discriminant (expression)");
    bs->add_option("--R", bR, "expression, 0 < R < 1")->required();
    bs->add_option("--S", bS, "expression");
    bs->add_option("--m", bm, "number of exceptional intervals");
    bs->callback([&] {
        action = [&] {
            BoundProblem p;
            p.M = bM, p.m = bm, p.B = parse_expr(bB), p.R = parse_expr(bR), p.S = parse_expr(bS);
            Report r;
            r.title = "bound-solve";
            r.add(bound_solve_record(p, cfg.precision_cap));
            return r;
        };
    });

    auto* fk = app.add_subcommand("fekete", "certified small integer polynomial");
    std::string fk_field = "1";
    std::vector<std::string> fk_iv;
    long fk_n = 2;
    fk->add_option("--field", fk_field, "comma-separated moduli, 1 for Q (e.g. 5 for Q(sqrt5))");
    fk->add_option("--interval", fk_iv, "a,b per embedding in embedding order")->required();
    fk->add_option("--n", fk_n, "polynomial degree");
    fk->callback([&] {
        action = [&] {
            auto mods = parse_list(fk_field);
            RealCyclotomicField F(mods);
            auto embs = F.embeddings();
            if (fk_iv.size() != embs.size())
                throw UsageError("field has " + std::to_string(embs.size()) + " embedding(s); pass one --interval each");
            IntervalMap iv;
            for (std::size_t i = 0; i < embs.size(); ++i) {
                auto c = fk_iv[i].find(',');
                if (c == std::string::npos) throw UsageError("interval must be a,b");
                iv.push_back({embs[i], {parse_rational(fk_iv[i].substr(0, c)), parse_rational(fk_iv[i].substr(c + 1))}});
            }
            return fekete_report(find_small_polynomial(F, iv, fk_n, cfg.precision_cap), iv);
        };
    });

    auto* gc = app.add_subcommand("graph-case", "Method A bound for one edge-graph case");
    std::string gc_family, gc_params, gc_variant;
    long gc_m = 1;
    gc->add_option("--family", gc_family, "G1..G5")->required();
    gc->add_option("--params", gc_params, "parameters in the family's order, comma-separated")->required();
    gc->add_option("--variant", gc_variant, "u, u_squared or u_tilde (default: all)");
    gc->add_option("--m", gc_m, "number of exceptional conjugates");
    gc->callback([&] {
        action = [&] {
            auto c = make_case(parse_family(gc_family), parse_list(gc_params));
            Report r;
            r.title = "graph-case " + c.label();
            auto vs = gc_variant.empty() ? variants(c) : std::vector<Variant>{parse_variant(gc_variant)};
            for (Variant v : vs) r.add(case_record(case_bound(c, v, gc_m, cfg.precision_cap)));
            return r;
        };
    });

    auto* gf_ = app.add_subcommand("graph-family", "per-case table and maximum for a family");
    std::string gf_family, gf_range;
    gf_->add_option("--family", gf_family, "G1..G5")->required();
    gf_->add_option("--krange", gf_range, "lo..hi (G4, G5)");
    gf_->callback([&] {
        action = [&] {
            std::optional<KRange> kr;
            if (!gf_range.empty()) kr = parse_range(gf_range);
            return family_report(parse_family(gf_family), kr, cfg.precision_cap);
        };
    });

    auto* sp = app.add_subcommand("search-pairs", "pair inequality search with refinement");
    std::string sp_kind = "gamma5";
    sp->add_option("--kind", sp_kind, "gamma5 or gamma4");
    sp->callback([&] {
        action = [&] { return pair_search_report(parse_kind(sp_kind), cfg.k_max, cfg.jobs, cfg.precision_cap); };
    });

    auto* rp = app.add_subcommand("refine-pair", "bounds for one pair (k, s)");
    std::string rp_kind = "gamma5";
    long rp_k = 0, rp_s = 0;
    rp->add_option("--kind", rp_kind, "gamma5 or gamma4");
    rp->add_option("--k", rp_k)->required();
    rp->add_option("--s", rp_s)->required();
    rp->callback([&] {
        action = [&] {
            Report r;
            r.title = "refine-pair";
            r.add(pair_record(pair_report(rp_k, rp_s, parse_kind(rp_kind), cfg.precision_cap)));
            return r;
        };
    });

    auto* pt = app.add_subcommand("polytope", "narrow-face elimination, Takeuchi and period bounds");
    long pt_nmax = 100;
    pt->add_option("--nmax", pt_nmax, "largest dimension to check")->check(CLI::Range(10L, 10000000L));
    pt->callback([&] {
        action = [&] {
            Report r = polytope_report(pt_nmax, cfg.verbose);
            r.append(takeuchi_report(cfg.precision_cap));
            return r;
        };
    });

    auto* ds = app.add_subcommand("datasets", "shipped field lists and triangle triples");
    ds->callback([&] { action = [&] { return datasets_report(); }; });

    auto* ra = app.add_subcommand("reproduce-all", "every pipeline against the printed values");
    ra->callback([&] { action = [&] { return reproduce_all(cfg.k_max, cfg.jobs, cfg.precision_cap); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "run with --help for usage\n";
        return 3;
    }
    try {
        return emit(action(), cfg);
    } catch (const Undecidable& e) {
        std::cerr << "undecidable: " << e.what() << " (try a larger --precision-cap)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
