#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(GF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("bound-solve") {
    auto r = run("bound-solve --M 1 --B 1 --R '1/sqrt(2)' --S '16*e'");
    CHECK(r.status == 0);
    CHECK(has(r.out, "result=22"));
    auto j = run("bound-solve --M 1 --R '1/sqrt(2)' --S '16*e' --format json");
    CHECK(j.status == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["records"][0]["result"] == 22);
    CHECK(doc["records"][0]["match"] == true);
    CHECK(doc["records"][0]["paper_expected"].is_null());
}

TEST_CASE("exit codes") {
    CHECK(run("").status == 3);
    CHECK(run("no-such-command").status == 3);
    CHECK(run("bound-solve --M 1 --R 1/2 --format yaml").status == 3);
    CHECK(run("graph-case --family G9 --params 3,3").status == 3);
    CHECK(run("bound-solve --M 1 --R 2").status == 3);
    // N ln 2 = ln(2N+2) exactly at N = 3
    CHECK(run("bound-solve --M 1 --R 1/2 --S 1").status == 2);
}

TEST_CASE("polytope") {
    auto r = run("polytope --nmax 100");
    CHECK(r.status == 0);
    CHECK(has(r.out, "max admissible dimension 9"));
    CHECK(run("polytope --nmax 9").status == 3);
}

TEST_CASE("refine-pair") {
    auto r = run("refine-pair --kind gamma5 --k 31 --s 3 --format json");
    CHECK(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["records"][0]["result"] == 120);
    CHECK(doc["records"][0]["paper_expected"] == 120);
}

TEST_CASE("graph-family csv columns") {
    auto r = run("graph-family --family G1 --format csv");
    CHECK(r.status == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "family,s,k,r,p,variant,M,B,R,S,N,bound,paper_bound,match");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line.rfind("G1,", 0) == 0) ++rows;
    CHECK(rows >= 9);
}

TEST_CASE("fekete subcommand") {
    auto r = run("fekete --field 5 --interval=-1/4,1/4 --interval=-1/4,1/4 --n 2");
    CHECK(r.status == 0);
    CHECK(run("fekete --field 5 --interval 0,1 --n 2").status == 3);
}

TEST_CASE("datasets match the shipped files") {
    auto r = run("datasets");
    CHECK(r.status == 0);
}

TEST_CASE("--out writes the report") {
    std::string path = "cli_test_out.json";
    auto r = run("bound-solve --M 1 --R 1/2 --S '32*e' --format json --out " + path);
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(nlohmann::json::parse(ss.str())["records"][0]["result"] == 12);
    std::remove(path.c_str());
}

TEST_CASE("search output does not depend on the worker count") {
    auto a = run("search-pairs --kind gamma5 --kmax 100000 --jobs 1 --format json");
    auto b = run("search-pairs --kind gamma5 --kmax 100000 --jobs 3 --format json");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}
