#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + LIECURV_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json read(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
}

} // namespace

TEST_CASE("construct writes tensor files and sidecars") {
    CHECK(run("construct --family A --rank 2 -o cli_a2.json").code == 0);
    const json a2 = read("cli_a2.json");
    CHECK(a2["dim"] == 8);
    CHECK(a2["kind"] == "structure-constants");
    CHECK(a2["scalar"] == "rational");

    CHECK(run("construct --family A --rank 1 --realify -o cli_sl2c.json").code == 0);
    CHECK(std::filesystem::exists("cli_sl2c.J.json"));
    CHECK(read("cli_sl2c.J.json")["metadata"]["role"] == "complex-structure");

    CHECK(run("construct --family su --p 2 --q 1 --emit three-form -o cli_su21_c3.json").code == 0);
    const json c3 = read("cli_su21_c3.json");
    CHECK(c3["degree"] == 3);
    CHECK(c3["metadata"] == json{{"role", "cartan-three-form"}});

    CHECK(run("construct --family su2 -o cli_su2.json").code == 0);
    CHECK(run("construct --family sl-real --n 2 -o cli_sl2r.json").code == 0);
    CHECK(run("construct --sum cli_su2.json cli_sl2r.json -o cli_sum.json").code == 0);
    CHECK(read("cli_sum.json")["dim"] == 6);

    const Run f = run("construct --family G --rank 2 --scalar float64");
    CHECK(f.code == 0);
    CHECK(json::parse(f.out)["scalar"] == "float64");
}

TEST_CASE("construct usage errors exit with 2") {
    CHECK(run("construct --family Q --rank 2").code == 2);
    CHECK(run("construct --family A").code == 2);
    CHECK(run("construct --family su --p 2").code == 2);
    CHECK(run("construct --family A --rank 1 --realify --sum cli_su2.json").code == 2);
    CHECK(run("construct --bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("spectrum verifies closed-form tables in every format") {
    const Run table = run("spectrum --input cli_a2.json");
    CHECK(table.code == 0);
    CHECK(table.out.find("-2/3") != std::string::npos);
    const Run js = run("spectrum --input cli_a2.json --format json");
    CHECK(js.code == 0);
    const json rep = json::parse(js.out);
    CHECK(rep["check"].is_string());
    CHECK(rep["status"] == "pass");
    CHECK(rep.contains("residual"));
    CHECK(rep.contains("details"));
    const Run csv = run("spectrum --input cli_a2.json --format csv --mode matrix-free");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("eigenvalue,expected,verified,status", 0) == 0);
    CHECK(run("spectrum --input cli_sl2c.json --mode exact").code == 0);

    std::ofstream("cli_wrong.json") << R"([{"eigenvalue":"2","multiplicity":1},{"eigenvalue":"1","multiplicity":9},
                                          {"eigenvalue":"-2/3","multiplicity":26}])";
    CHECK(run("spectrum --input cli_a2.json --expect cli_wrong.json").code == 1);
    CHECK(run("spectrum --input cli_sum.json").code == 2);  // no closed form for sums
    CHECK(run("spectrum --input cli_a2.json --mode fast").code == 2);
}

TEST_CASE("verify runs the identity checks") {
    const Run r = run("verify --input cli_a2.json --format json");
    CHECK(r.code == 0);
    const json reps = json::parse(r.out);
    CHECK(reps.size() == 6);
    for (const auto& rep : reps) CHECK(rep["status"] == "pass");
    const Run t = run("verify --input cli_su21_c3.json");
    CHECK(t.code == 2);
    CHECK(run("verify --input cli_a2.json --checks jacobi,nonsense").code == 2);
    CHECK(run("verify --input cli_a2.json --checks identity-32", "LIE_CURV_CAPS=identity32_dim=4").code == 3);
    CHECK(run("verify --input cli_a2.json", "LIE_CURV_CAPS=bogus=1").code == 2);
    const Run e = run("verify --input cli_a2.json --checks theorem-a --format csv");
    CHECK(e.out.find("exact-zero") != std::string::npos);
}

TEST_CASE("ker-lambda classifies the structural cases") {
    CHECK(run("ker-lambda --input cli_a2.json --classify").out.find("dim 1, spanned by Killing form") != std::string::npos);
    CHECK(run("ker-lambda --input cli_sl2c.json --classify").out.find("dim 12, dim-6 special case") != std::string::npos);
    CHECK(run("ker-lambda --input cli_su2.json --classify").out.find("dim 6") != std::string::npos);
    CHECK(run("ker-lambda --input cli_sum.json --classify").out.find("direct sum") != std::string::npos);
    CHECK(run("construct --family A --rank 2 --realify -o cli_sl3c.json").code == 0);
    const json j = json::parse(run("ker-lambda --input cli_sl3c.json --classify --format json").out);
    CHECK(j["details"]["dimension"] == 2);
    CHECK(j["details"]["classification"] == "dim 2, pencil Re/Im beta^h");
}

TEST_CASE("decompose recovers summands and rejects non-Cartan forms") {
    CHECK(run("construct --sum cli_su2.json cli_sl2r.json --scramble-seed 4 --emit three-form -o cli_c3.json").code == 0);
    CHECK(run("construct --sum cli_su2.json cli_sl2r.json --scramble-seed 4 --emit killing -o cli_k.json").code == 0);
    const Run r = run("decompose --three-form cli_c3.json --killing cli_k.json --format json");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["dims"] == json::array({3, 3}));
    CHECK(j["certified"] == true);
    CHECK(j["reconstruction"]["jacobi"] == "pass");
    CHECK(j["reconstruction"]["killing_matches"] == true);

    CHECK(run("construct --family A --rank 1 --realify --emit three-form --scramble-seed 2 -o cli_c3c.json").code == 0);
    const json c = json::parse(run("decompose --three-form cli_c3c.json --format json").out);
    CHECK(c["summands"][0]["has_complex_structure"] == true);
    CHECK(c["summands"][0]["complex_structure"]["exact"] == true);

    json bad = {{"name", "random"}, {"dim", 7}, {"scalar", "rational"}, {"kind", "form"}, {"degree", 3}};
    bad["entries"] = json::array();
    int v = 1;
    for (int i = 0; i < 7; ++i)
        for (int jj = i + 1; jj < 7; ++jj)
            for (int k = jj + 1; k < 7; ++k) bad["entries"].push_back({i, jj, k, std::to_string((v = (v * 5 + 3) % 7) - 3)});
    std::ofstream("cli_bad.json") << bad.dump();
    CHECK(run("decompose --three-form cli_bad.json").code == 4);
    CHECK(run("decompose --three-form cli_a2.json").code == 2);
}
