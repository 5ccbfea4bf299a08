#include "catch_amalgamated.hpp"

#include <string>
#include <vector>

#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/report.hpp"

using namespace srrlab;

TEST_CASE("analysis rows for the hamming(4) generator") {
    AnalysisReport rep = analyze(hamming(4), std::nullopt, false);
    CHECK(rep.version == kVersion);
    CHECK(rep.n == 15);
    CHECK(rep.k == 11);
    CHECK(rep.d_min == 3);
    CHECK(rep.d_dual == 8);
    CHECK_FALSE(rep.exact_lp);
    REQUIRE(rep.rows.size() == 11);
    for (const auto& row : rep.rows) {
        CHECK(row.a == 1);
        CHECK(row.J == 1);
        CHECK(row.j_exact);
        CHECK(row.lower == Rational(2));
        CHECK(row.upper_refined == Rational(3));
        CHECK(row.upper_loose == Rational(3));
        CHECK(row.lambda_max == Rational(3));
        CHECK(row.lambda_source == "design");
        CHECK(row.design_status == "1-design");
        CHECK(row.blocks == std::uint64_t(8));
        CHECK(row.block_weight == Rational(1, 4));
        // object 11's unit column sits at position 12; all others at themselves
        CHECK(row.direct_column == (row.object == 11 ? 12 : row.object));
    }
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].object == static_cast<int>(i) + 1);
}

TEST_CASE("single-object analysis and input validation") {
    AnalysisReport rep = analyze(hamming(4), 7, false);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].object == 7);
    CHECK_THROWS_AS(analyze(hamming(4), 12, false), UsageError);
    CHECK_THROWS_AS(analyze(hamming(4), 0, false), UsageError);
    CHECK_THROWS_AS(analyze(hamming(4), std::nullopt, false, Caps{}, 0), UsageError);
}

TEST_CASE("parallel analysis renders byte-identically") {
    AnalysisReport seq = analyze(hamming(4), std::nullopt, false, Caps{}, 1);
    AnalysisReport par = analyze(hamming(4), std::nullopt, false, Caps{}, 4);
    CHECK(render_table(seq) == render_table(par));
    CHECK(to_json(seq) == to_json(par));
    CHECK(render_csv(seq) == render_csv(par));
}

TEST_CASE("exact-lp analysis overrides the lambda source") {
    AnalysisReport rep = analyze(reed_muller(1, 3), std::nullopt, true);
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.exact_lp);

    const ReportRow& r1 = rep.rows[0];
    CHECK(r1.a == 1);
    CHECK(r1.J == 1);
    CHECK(r1.lower == Rational(2));
    CHECK(r1.upper_refined == Rational(10, 3));
    CHECK(r1.upper_loose == Rational(10, 3));
    CHECK(r1.lambda_max == Rational(10, 3));
    CHECK(r1.lambda_source == "lp"); // confirmed against the design rate internally
    CHECK(r1.design_status == "1-design");
    CHECK(r1.blocks == std::uint64_t(7));
    CHECK(r1.block_weight == Rational(1, 3));

    for (int i = 1; i < 4; ++i) {
        const ReportRow& r = rep.rows[static_cast<std::size_t>(i)];
        CHECK(r.a == 2);
        CHECK(r.J == 3);
        CHECK(r.lower == Rational(4));
        CHECK(r.upper_refined == Rational(4));
        CHECK(r.lambda_max == Rational(4));
        CHECK(r.design_status == "n/a"); // no unit column for these objects
        CHECK_FALSE(r.direct_column.has_value());
    }
}

TEST_CASE("systematic object without a usable design reports none") {
    LinearCode c = LinearCode::from_generator(BinaryMatrix::from_strings({"1011", "0101"}));
    AnalysisReport rep = analyze(c, 1, false);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].design_status == "none");
    CHECK_FALSE(rep.rows[0].lambda_max.has_value());
    CHECK(rep.rows[0].lambda_source.empty());
}

TEST_CASE("table rendering golden") {
    AnalysisReport rep = analyze(repetition(2), std::nullopt, false);
    std::string expect;
    expect += "srrlab ";
    expect += kVersion;
    expect += "\ncode: n=2 k=1 d_min=2 d_dual=2\n";
    expect += "caps: dual=" + std::to_string(Caps{}.dual_enum) +
              " clique-nodes=" + std::to_string(Caps{}.clique_nodes) + "\n";
    expect += "exact-lp: no\n\n";
    expect += "object  a  J  lower  upper_ref  upper_loose  lambda_max  design    allocation\n";
    expect += "1       1  1  2      2          2            2           1-design  {1}=1 + 1 x 1\n";
    CHECK(render_table(rep) == expect);
    CHECK(render(rep, ReportFormat::table) == expect);
}

TEST_CASE("csv rendering golden") {
    AnalysisReport rep = analyze(spc(3), std::nullopt, false);
    std::string expect =
        "object,a,J,J_exact,lower,upper_refined,upper_loose,lambda_max,lambda_source,"
        "design_status,direct_column,blocks,block_weight\n"
        "1,1,1,true,2,2,2,2,design,1-design,1,1,1\n"
        "2,1,1,true,2,2,2,2,design,1-design,2,1,1\n";
    CHECK(render_csv(rep) == expect);
    CHECK(render(rep, ReportFormat::csv) == expect);
}

TEST_CASE("json round trip is lossless") {
    for (bool exact_lp : {false, true}) {
        AnalysisReport rep = analyze(reed_muller(1, 3), std::nullopt, exact_lp);
        std::string text = to_json(rep);
        AnalysisReport back = from_json(text);
        CHECK(to_json(back) == text);
        CHECK(render_csv(back) == render_csv(rep));
        CHECK(render_table(back) == render_table(rep));
    }
    // absent d_dual serializes as null and comes back absent
    AnalysisReport full = analyze(LinearCode::from_generator(BinaryMatrix::identity(2)),
                                  std::nullopt, false);
    CHECK_FALSE(full.d_dual.has_value());
    AnalysisReport back = from_json(to_json(full));
    CHECK_FALSE(back.d_dual.has_value());
    CHECK(to_json(back) == to_json(full));
}

TEST_CASE("json shape basics") {
    AnalysisReport rep = analyze(spc(3), std::nullopt, false);
    std::string text = to_json(rep);
    CHECK(text.find("\"tool\": \"srrlab\"") != std::string::npos);
    CHECK(text.find("\"rows\"") != std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(render(rep, ReportFormat::json) == text);
}

TEST_CASE("report parsing rejects foreign or broken input") {
    CHECK_THROWS_AS(from_json("{"), ParseError);
    CHECK_THROWS_AS(from_json("{}"), ParseError);
    CHECK_THROWS_AS(from_json(R"({"tool":"other","version":"1"})"), ParseError);
    // valid header, missing rows
    CHECK_THROWS_AS(
        from_json(R"({"tool":"srrlab","version":"1","code":{"n":2,"k":1,"d_min":2,"d_dual":2},)"
                  R"("caps":{"dual":1,"clique_nodes":1},"exact_lp":false})"),
        ParseError);
}
