#include "catch_amalgamated.hpp"

#include <algorithm>
#include <string>

#include "oracles.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"

using namespace srrlab;

namespace {

bool is_codeword(const LinearCode& c, const BinaryVector& v) {
    for (const auto& h : c.dual_basis())
        if (v.dot(h) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("simplex evaluation matrix: column j spells j in binary, top bit first") {
    BinaryMatrix g3 = simplex_eval_matrix(3);
    CHECK(g3 == BinaryMatrix::from_strings({"0001111", "0110011", "1010101"}));
    BinaryMatrix g4 = simplex_eval_matrix(4);
    CHECK(g4 == BinaryMatrix::from_strings({"000000011111111", "000111100001111",
                                            "011001100110011", "101010101010101"}));
    CHECK_THROWS_AS(simplex_eval_matrix(1), UsageError);
}

TEST_CASE("simplex code, both forms") {
    LinearCode ev = simplex(4);
    CHECK(ev.n() == 15);
    CHECK(ev.k() == 4);
    // every nonzero codeword has weight 8
    const auto& we = ev.weight_enumerator();
    CHECK(we.A[0] == 1);
    CHECK(we.A[8] == 15);
    CHECK(ev.min_distance() == 8);
    CHECK(ev.dual_distance() == 3);

    LinearCode sys = simplex(4, SimplexForm::systematic);
    CHECK(sys.n() == 15);
    CHECK(sys.k() == 4);
    for (int obj = 1; obj <= 4; ++obj) {
        REQUIRE(sys.systematic_column(obj).has_value());
        CHECK(*sys.systematic_column(obj) == obj);
    }
    // same code up to coordinate permutation: identical weight distribution
    CHECK(sys.weight_enumerator().A == we.A);

    SystematicForm sf = systematic_form(ev);
    CHECK(sf.code.generator() == sys.generator());
    // pivots of the evaluation matrix come first (the power-of-two columns
    // read left to right), then the remaining columns in ascending order
    CHECK(sf.perm == std::vector<int>{1, 2, 4, 8, 3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15});
}

TEST_CASE("evaluation simplex objects map to power-of-two columns") {
    LinearCode ev = simplex(4);
    // column j = binary of j, so unit columns sit at j = 8, 4, 2, 1 for
    // objects 1..4 (top row is the most significant bit)
    CHECK(ev.systematic_map() == std::map<int, int>{{1, 8}, {2, 4}, {3, 2}, {4, 1}});
}

TEST_CASE("hamming codes") {
    LinearCode h3 = hamming(3);
    CHECK(h3.n() == 7);
    CHECK(h3.k() == 4);
    CHECK(h3.min_distance() == 3);
    CHECK(h3.dual_distance() == 4);
    const auto& we = h3.weight_enumerator();
    CHECK(we.A == std::vector<BigInt>{1, 0, 0, 7, 7, 0, 0, 1});
    // r = 3 happens to come out with the identity in front
    for (int obj = 1; obj <= 4; ++obj) CHECK(*h3.systematic_column(obj) == obj);

    LinearCode h4 = hamming(4);
    CHECK(h4.n() == 15);
    CHECK(h4.k() == 11);
    CHECK(h4.min_distance() == 3);
    CHECK(h4.dual_distance() == 8);
    CHECK(h4.weight_enumerator().A[3] == 35);
    // the generator is the reduced basis of the evaluation-simplex nullspace;
    // columns 1..10 are unit columns for objects 1..10, object 11 lands on 12
    std::map<int, int> expect;
    for (int i = 1; i <= 10; ++i) expect[i] = i;
    expect[11] = 12;
    CHECK(h4.systematic_map() == expect);
    // all generator rows really are orthogonal to the simplex rows
    BinaryMatrix gs = simplex_eval_matrix(4);
    for (int r = 0; r < h4.k(); ++r) CHECK(gs.mul_vec(h4.generator().row(r)).is_zero());
}

TEST_CASE("repetition and single parity check") {
    LinearCode rep = repetition(5);
    CHECK(rep.n() == 5);
    CHECK(rep.k() == 1);
    CHECK(rep.min_distance() == 5);
    CHECK(rep.dual_distance() == 2);

    LinearCode p = spc(4);
    CHECK(p.n() == 4);
    CHECK(p.k() == 3);
    CHECK(p.weight_enumerator().A == std::vector<BigInt>{1, 0, 6, 0, 1});
    CHECK(p.min_distance() == 2);
    CHECK(p.dual_distance() == 4); // dual is the repetition code

    CHECK_THROWS_AS(repetition(0), UsageError);
    CHECK_THROWS_AS(spc(1), UsageError);
}

TEST_CASE("reed-muller") {
    LinearCode rm = reed_muller(1, 3);
    CHECK(rm.n() == 8);
    CHECK(rm.k() == 4);
    CHECK(rm.generator() == BinaryMatrix::from_strings({"11111111", "00001111", "00110011",
                                                        "01010101"}));
    const auto& we = rm.weight_enumerator();
    CHECK(we.A[0] == 1);
    CHECK(we.A[4] == 14);
    CHECK(we.A[8] == 1);
    CHECK(rm.min_distance() == 4);
    CHECK(rm.dual_distance() == 4); // self-dual

    CHECK(reed_muller(0, 3).generator() == repetition(8).generator());
    CHECK(reed_muller(3, 3).k() == 8);
    CHECK(reed_muller(2, 3).k() == 7); // 1 + 3 + 3
    CHECK_THROWS_AS(reed_muller(3, 2), UsageError);
    CHECK_THROWS_AS(reed_muller(-1, 2), UsageError);
}

TEST_CASE("random codes are deterministic per seed and full rank") {
    LinearCode a = random_code(14, 7, 42);
    LinearCode b = random_code(14, 7, 42);
    CHECK(a.generator() == b.generator());
    CHECK(rank(a.generator()) == 7);
    LinearCode c = random_code(14, 7, 43);
    CHECK(a.generator() != c.generator());
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        CHECK(rank(random_code(10, 6, seed).generator()) == 6);
}

TEST_CASE("from_generator rejects dependent rows by name") {
    BinaryMatrix bad = BinaryMatrix::from_strings({"110", "011", "101"});
    try {
        LinearCode::from_generator(bad);
        FAIL("expected a rank error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("weight enumerator agrees with direct enumeration") {
    // k > n-k here, so the library computes the distribution through the
    // dual side; the oracle walks all codewords directly.
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        LinearCode c = random_code(10, 7, seed);
        auto counts = oracle::weight_distribution_bf(c);
        const auto& we = c.weight_enumerator();
        REQUIRE(we.A.size() == counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) CHECK(we.A[i] == counts[i]);
    }
}

TEST_CASE("dual code and membership") {
    LinearCode h4 = hamming(4);
    LinearCode d = h4.dual();
    CHECK(d.n() == 15);
    CHECK(d.k() == 4);
    const auto& we = d.weight_enumerator();
    CHECK(we.A[0] == 1);
    CHECK(we.A[8] == 15);
    for (const auto& h : d.dual_basis()) CHECK(is_codeword(h4, h)); // dual of dual
    CHECK(h4.is_dual_codeword(d.generator().row(0)));
    CHECK_FALSE(h4.is_dual_codeword(BinaryVector::from_support(15, {1})));
    CHECK_THROWS_AS(LinearCode::from_generator(BinaryMatrix::identity(3)).dual(), UsageError);
}

TEST_CASE("codewords of a fixed weight") {
    LinearCode h4 = hamming(4);
    auto all3 = h4.min_weight_codewords(3);
    CHECK(all3.size() == 35);
    for (const auto& s : all3) {
        CHECK(s.size() == 3);
        CHECK(is_codeword(h4, BinaryVector::from_support(15, s)));
    }
    CHECK(std::is_sorted(all3.begin(), all3.end()));

    auto through1 = h4.min_weight_codewords(3, 1);
    CHECK(through1.size() == 7); // replication of the weight-3 layer at point 1
    for (const auto& s : through1) CHECK(s.front() == 1);

    CHECK(h4.min_weight_codewords(0).empty());
    CHECK(h4.min_weight_codewords(1).empty());
    CHECK_THROWS_AS(h4.min_weight_codewords(3, 16), UsageError);
    CHECK_THROWS_AS(h4.min_weight_codewords(3, std::nullopt, 100), CapError); // 2^11 > 100
}

TEST_CASE("enumeration caps refuse oversized work") {
    LinearCode c = random_code(20, 16, 7);
    CHECK_THROWS_AS(c.weight_enumerator(8), CapError); // smaller side 2^4 = 16 > 8
    CHECK(c.weight_enumerator(16).A[0] == 1);
}
