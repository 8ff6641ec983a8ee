#include "gf/edgegraphs.hpp"

#include <fstream>
#include <sstream>

#ifndef GF_DATA_DIR
#define GF_DATA_DIR "data"
#endif

namespace gf {

namespace {

FieldRecord quadratic(long a) { return {"Q(sqrt" + std::to_string(a) + ")", {-a, 0, 1}}; }

FieldRecord cosine(long b) {
    return {"Q(cos 2pi/" + std::to_string(b) + ")", real_cyclotomic_minpoly(b)};
}

std::vector<std::array<long, 3>> triples() {
    std::vector<std::array<long, 3>> t;
    auto add = [&](long a, long b, long c) { t.push_back({a, b, c}); };
    auto run = [&](long a, long b, long c0, long c1) {
        for (long c = c0; c <= c1; ++c) add(a, b, c);
    };
    run(2, 3, 7, 12);
    for (long c : {14, 16, 18, 24, 30}) add(2, 3, c);
    run(2, 4, 5, 8);
    for (long c : {10, 12, 18}) add(2, 4, c);
    for (long c : {5, 6, 8, 10, 20, 30}) add(2, 5, c);
    for (long c : {6, 8, 12}) add(2, 6, c);
    add(2, 7, 7), add(2, 7, 14), add(2, 8, 8), add(2, 8, 16), add(2, 9, 18), add(2, 10, 10);
    add(2, 12, 12), add(2, 12, 24), add(2, 15, 30), add(2, 18, 18);
    run(3, 3, 4, 9);
    add(3, 3, 12), add(3, 3, 15), add(3, 4, 4), add(3, 4, 6), add(3, 4, 12), add(3, 5, 5), add(3, 6, 6);
    add(3, 6, 18), add(3, 8, 8), add(3, 8, 24), add(3, 10, 30), add(3, 12, 12);
    run(4, 4, 4, 6);
    add(4, 4, 9), add(4, 5, 5), add(4, 6, 6), add(4, 8, 8), add(4, 16, 16);
    add(5, 5, 5), add(5, 5, 10), add(5, 5, 15), add(5, 10, 10), add(6, 6, 6), add(6, 12, 12);
    add(6, 24, 24), add(7, 7, 7), add(8, 8, 8), add(9, 9, 9), add(9, 18, 18), add(12, 12, 12);
    add(15, 15, 15);
    return t;
}

std::string poly_str(const ZPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        BigInt c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        BigInt a = abs(c);
        if (a != 1 || i == 0) os << a;
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace

const KnownFieldSets& known_field_sets() {
    static const KnownFieldSets sets = [] {
        KnownFieldSets s;
        FieldRecord q{"Q", {0, 1}};
        s.lanner4 = {q, quadratic(2), quadratic(5)};
        s.takeuchi_fields = {q, quadratic(2), quadratic(3), quadratic(5), quadratic(6)};
        // √2+√3 and √2+√5
        s.takeuchi_fields.push_back({"Q(sqrt2, sqrt3)", {1, 0, -10, 0, 1}});
        s.takeuchi_fields.push_back({"Q(sqrt2, sqrt5)", {9, 0, -14, 0, 1}});
        for (long b : {7, 9, 11, 15, 16, 20}) s.takeuchi_fields.push_back(cosine(b));
        s.triangle_triples = triples();
        return s;
    }();
    return sets;
}

std::string render_fields(const std::vector<FieldRecord>& fields) {
    std::ostringstream os;
    for (const auto& f : fields) os << f.name << "\t" << f.degree() << "\t" << poly_str(f.minpoly) << "\n";
    return os.str();
}

std::string render_triples(const std::vector<std::array<long, 3>>& triples) {
    std::ostringstream os;
    for (const auto& t : triples) os << t[0] << " " << t[1] << " " << t[2] << "\n";
    return os.str();
}

std::string read_data_file(const std::string& name) {
    std::string path = std::string(GF_DATA_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open data file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace gf
