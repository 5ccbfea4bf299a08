#include "catch_amalgamated.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "srrlab/caps.hpp"
#include "srrlab/report.hpp"
#include "srrlab/version.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_shell(const std::string& cmd) {
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = ::pclose(pipe);
    CliResult res;
    if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
    res.out = std::move(out);
    return res;
}

// stdout only; stderr is dropped so goldens stay byte-exact
CliResult cli(const std::string& args) {
    return run_shell(std::string(SRRLAB_CLI_PATH) + " " + args + " 2>/dev/null");
}

// stdout+stderr combined, for error-message checks
CliResult cli_all(const std::string& args) {
    return run_shell(std::string(SRRLAB_CLI_PATH) + " " + args + " 2>&1");
}

// run with an environment prefix such as "SRRLAB_CAPS='dual=4'"
CliResult cli_env(const std::string& env, const std::string& args) {
    return run_shell(env + " " + std::string(SRRLAB_CLI_PATH) + " " + args + " 2>/dev/null");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
    f.flush();
    REQUIRE(f.good());
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return text;
}

const std::string kSpc3 = "3 2\n101\n011\n";
const std::string kHamming3 = "7 4\n1000011\n0100101\n0010110\n0001111\n";

} // namespace

TEST_CASE("cli reports its version") {
    CliResult r = cli("--version");
    CHECK(r.code == 0);
    CHECK(r.out == std::string("srrlab ") + srrlab::kVersion + "\n");
}

TEST_CASE("cli requires a subcommand and rejects unknown flags") {
    CHECK(cli_all("").code == 1);
    CHECK(cli_all("--bogus").code == 1);
    CHECK(cli_all("analyze").code == 1); // missing required path
}

TEST_CASE("family subcommand emits generator files") {
    CliResult h = cli("family --name hamming --param 3");
    CHECK(h.code == 0);
    CHECK(h.out == kHamming3);

    CliResult rep = cli("family --name repetition --param 3");
    CHECK(rep.code == 0);
    CHECK(rep.out == "3 1\n111\n");

    CliResult s = cli("family --name spc --param 3");
    CHECK(s.code == 0);
    CHECK(s.out == kSpc3);

    CliResult sx = cli("family --name simplex --param 3");
    CHECK(sx.code == 0);
    CHECK(sx.out == "7 3\n0001111\n0110011\n1010101\n");

    CliResult rm = cli("family --name reed-muller --param 1 --param 3");
    CHECK(rm.code == 0);
    CHECK(rm.out == "8 4\n11111111\n00001111\n00110011\n01010101\n");
}

TEST_CASE("family random is deterministic per seed and requires one") {
    CliResult a = cli("family --name random --param 10 --param 6 --seed 7");
    CliResult b = cli("family --name random --param 10 --param 6 --seed 7");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.substr(0, 5) == "10 6\n");
    CliResult c = cli("family --name random --param 10 --param 6 --seed 8");
    CHECK(c.out != a.out);
    CHECK(cli_all("family --name random --param 10 --param 6").code == 1);
}

TEST_CASE("family flag validation") {
    CHECK(cli_all("family --name nosuch --param 3").code == 1);
    CHECK(cli_all("family --name hamming --param 3 --param 4").code == 1);
    CHECK(cli_all("family --name hamming --param 3 --form systematic").code == 1);
    CHECK(cli_all("family --name hamming --param 3 --seed 1").code == 1);
    CHECK(cli_all("family --name simplex --param 3 --form sideways").code == 1);
}

TEST_CASE("family --form systematic changes the simplex layout") {
    CliResult ev = cli("family --name simplex --param 4");
    CliResult sy = cli("family --name simplex --param 4 --form systematic");
    CHECK(ev.code == 0);
    CHECK(sy.code == 0);
    CHECK(ev.out != sy.out);
    CHECK(sy.out.substr(0, 5) == "15 4\n");
}

TEST_CASE("family --out writes the same bytes to a file") {
    CliResult direct = cli("family --name hamming --param 4");
    CliResult piped = cli("family --name hamming --param 4 --out cli_h4.gm");
    CHECK(piped.code == 0);
    CHECK(piped.out.empty());
    CHECK(read_file("cli_h4.gm") == direct.out);
}

TEST_CASE("analyze renders table, csv, and json") {
    write_file("cli_spc3.gm", kSpc3);
    CliResult csv = cli("analyze cli_spc3.gm --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out ==
          "object,a,J,J_exact,lower,upper_refined,upper_loose,lambda_max,lambda_source,"
          "design_status,direct_column,blocks,block_weight\n"
          "1,1,1,true,2,2,2,2,design,1-design,1,1,1\n"
          "2,1,1,true,2,2,2,2,design,1-design,2,1,1\n");

    CliResult rep2 = cli("family --name repetition --param 2 --out cli_rep2.gm");
    REQUIRE(rep2.code == 0);
    CliResult table = cli("analyze cli_rep2.gm");
    CHECK(table.code == 0);
    std::string expect;
    expect += "srrlab ";
    expect += srrlab::kVersion;
    expect += "\ncode: n=2 k=1 d_min=2 d_dual=2\n";
    expect += "caps: dual=" + std::to_string(srrlab::Caps{}.dual_enum) +
              " clique-nodes=" + std::to_string(srrlab::Caps{}.clique_nodes) + "\n";
    expect += "exact-lp: no\n\n";
    expect += "object  a  J  lower  upper_ref  upper_loose  lambda_max  design    allocation\n";
    expect += "1       1  1  2      2          2            2           1-design  {1}=1 + 1 x 1\n";
    CHECK(table.out == expect);

    CliResult json = cli("analyze cli_spc3.gm --format json");
    CHECK(json.code == 0);
    srrlab::AnalysisReport parsed = srrlab::from_json(json.out);
    CHECK(srrlab::to_json(parsed) == json.out);
    CHECK(parsed.n == 3);
    REQUIRE(parsed.rows.size() == 2);
    CHECK(parsed.rows[0].lambda_max == srrlab::Rational(2));
}

TEST_CASE("analyze options: object filter, exact lp, jobs, out") {
    CliResult h4 = cli("family --name hamming --param 4 --out cli_h4b.gm");
    REQUIRE(h4.code == 0);

    CliResult one = cli("analyze cli_h4b.gm --object 11 --exact-lp --format json");
    CHECK(one.code == 0);
    srrlab::AnalysisReport rep = srrlab::from_json(one.out);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].object == 11);
    CHECK(rep.rows[0].lambda_max == srrlab::Rational(3));
    CHECK(rep.rows[0].lambda_source == "lp");
    CHECK(rep.rows[0].direct_column == 12);

    CliResult seq = cli("analyze cli_h4b.gm --format csv");
    CliResult par = cli("analyze cli_h4b.gm --format csv --jobs 4");
    CHECK(par.code == 0);
    CHECK(par.out == seq.out);

    CliResult to_file = cli("analyze cli_h4b.gm --format csv --out cli_h4b.csv");
    CHECK(to_file.code == 0);
    CHECK(read_file("cli_h4b.csv") == seq.out);

    CHECK(cli_all("analyze cli_h4b.gm --object 12").code == 1);
    CHECK(cli_all("analyze cli_h4b.gm --format yaml").code == 1);
    CHECK(cli_all("analyze cli_h4b.gm --jobs 0").code == 1);
}

TEST_CASE("feasible reports allocations and certificates") {
    write_file("cli_two.gm", "3 2\n101\n011\n");
    CliResult ok = cli("feasible cli_two.gm 1,1");
    CHECK(ok.code == 0);
    REQUIRE(ok.out.size() >= 9);
    CHECK(ok.out.substr(0, 9) == "feasible\n");
    CHECK(ok.out.find("object 1:") != std::string::npos);
    CHECK(ok.out.find("object 2:") != std::string::npos);

    CliResult bad = cli("feasible cli_two.gm 3/2,3/2");
    CHECK(bad.code == 0);
    CHECK(bad.out.substr(0, 11) == "infeasible\n");
    CHECK(bad.out.find("certificate:") != std::string::npos);
    CHECK(bad.out.find("y_demand:") != std::string::npos);
    CHECK(bad.out.find("y_server:") != std::string::npos);
    CHECK(bad.out.find("(negative certifies infeasibility)") != std::string::npos);

    CHECK(cli_all("feasible cli_two.gm 1,1,1").code == 1);   // wrong length
    CHECK(cli_all("feasible cli_two.gm 1,,1").code == 2);    // empty entry
    CHECK(cli_all("feasible cli_two.gm abc").code == 2);     // not a rational
}

TEST_CASE("mld verifies majority decoding from the command line") {
    CliResult sx = cli("family --name simplex --param 4 --out cli_sx4.gm");
    REQUIRE(sx.code == 0);

    CliResult pass = cli("mld cli_sx4.gm --object 4 --t 3");
    CHECK(pass.code == 0);
    CHECK(pass.out ==
          "votes: direct {1}; checks {2,3} {4,5} {6,7} {8,9} {10,11} {12,13} {14,15}\n"
          "PASS: 575 error patterns of weight <= 3 all decode object 4 correctly\n");

    CliResult fail = cli("mld cli_sx4.gm --object 4 --t 4");
    CHECK(fail.code == 0);
    CHECK(fail.out.find("FAIL: pattern {1,2,4,6} defeats the vote majority for object 4\n") !=
          std::string::npos);

    CliResult sampled = cli("mld cli_sx4.gm --object 4 --t 3 --mode sampled --samples 200 --seed 5");
    CHECK(sampled.code == 0);
    CHECK(sampled.out.find("PASS: 200 error patterns of weight <= 3") != std::string::npos);

    CHECK(cli_all("mld cli_sx4.gm --object 4 --t -1").code == 1);
    CHECK(cli_all("mld cli_sx4.gm --object 4").code == 1); // --t required
    CHECK(cli_all("mld cli_sx4.gm --t 1").code == 1);      // --object required
}

TEST_CASE("design classifies codeword supports") {
    CliResult h4 = cli("family --name hamming --param 4 --out cli_h4c.gm");
    REQUIRE(h4.code == 0);
    CliResult steiner = cli("design cli_h4c.gm --t 2");
    CHECK(steiner.code == 0);
    CHECK(steiner.out ==
          "blocks: 35 (weight-3 codeword supports)\n"
          "2-(15,3,1) design: YES (Steiner)\n");

    CliResult sx = cli("family --name simplex --param 4 --out cli_sx4b.gm");
    REQUIRE(sx.code == 0);
    CliResult plain = cli("design cli_sx4b.gm --t 2");
    CHECK(plain.code == 0);
    CHECK(plain.out ==
          "blocks: 15 (weight-8 codeword supports)\n"
          "2-(15,8,4) design: YES\n");

    CliResult punct = cli("design cli_h4c.gm --t 2 --puncture 1");
    CHECK(punct.code == 0);
    CHECK(punct.out ==
          "blocks: 7 (weight-3 codeword supports, punctured at 1)\n"
          "1-(14,2,1) design: YES (Steiner)\n");

    write_file("cli_no.gm", "4 2\n1011\n0101\n");
    CliResult no = cli("design cli_no.gm --t 1");
    CHECK(no.code == 0);
    CHECK(no.out ==
          "blocks: 1 (weight-2 codeword supports)\n"
          "1-design on 4 points: NO (coverage is not constant)\n");

    CliResult w4 = cli("design cli_h4c.gm --t 2 --weight 4");
    CHECK(w4.code == 0);
    CHECK(w4.out.find("design: YES") != std::string::npos);

    CHECK(cli_all("design cli_h4c.gm --t 1 --puncture 1").code == 1); // needs t >= 2
    CHECK(cli_all("design cli_h4c.gm --t 2 --weight abc").code == 1);
    CHECK(cli_all("design cli_h4c.gm --t 2 --weight 0").code == 1);
}

TEST_CASE("exit codes distinguish usage, parse, and cap failures") {
    write_file("cli_exit_spc3.gm", kSpc3);
    REQUIRE(cli("family --name hamming --param 4 --out cli_exit_h4.gm").code == 0);
    REQUIRE(cli("family --name simplex --param 4 --out cli_exit_sx4.gm").code == 0);

    write_file("cli_bad.gm", "not a generator\n");
    CliResult parse = cli_all("analyze cli_bad.gm");
    CHECK(parse.code == 2);
    CHECK(parse.out.find("error:") != std::string::npos);

    CHECK(cli_all("analyze cli_missing_file.gm").code == 2);

    CliResult capped = cli_env("SRRLAB_CAPS='dual=4'", "analyze cli_exit_h4.gm");
    CHECK(capped.code == 3);

    // flags override the environment
    CliResult flag_wins =
        cli_env("SRRLAB_CAPS='dual=4'", "analyze cli_exit_spc3.gm --cap-dual 1000000 --format csv");
    CHECK(flag_wins.code == 0);

    CliResult flag_caps = cli_all("mld cli_exit_sx4.gm --object 4 --t 3 --cap-dual 100");
    CHECK(flag_caps.code == 3);

    CHECK(cli_all("analyze cli_exit_spc3.gm --cap-dual 0").code == 1);
    CHECK(cli_env("SRRLAB_CAPS='bogus=1'", "analyze cli_exit_spc3.gm").code == 1);
}
