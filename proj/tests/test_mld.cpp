#include "catch_amalgamated.hpp"

#include <vector>

#include "oracles.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/mld.hpp"

using namespace srrlab;

namespace {

BinaryVector codeword_of(const LinearCode& c, unsigned message) {
    BinaryVector w(c.n());
    for (int r = 0; r < c.k(); ++r)
        if ((message >> r) & 1) w ^= c.generator().row(r);
    return w;
}

} // namespace

TEST_CASE("vote construction from the best family") {
    VoteSet v = build_votes(simplex(4), 4);
    CHECK(v.object == 4);
    CHECK(v.direct == std::vector<int>{1});
    CHECK(v.check_sums == std::vector<std::vector<int>>{{2, 3}, {4, 5}, {6, 7}, {8, 9},
                                                        {10, 11}, {12, 13}, {14, 15}});

    VoteSet h = build_votes(hamming(4), 1);
    CHECK(h.direct == std::vector<int>{1});
    CHECK(h.check_sums == std::vector<std::vector<int>>{{2, 4, 7, 8, 11, 13, 14}});
}

TEST_CASE("vote construction from an explicit family validates it") {
    LinearCode ev = simplex(4);
    OrthogonalFamily fam{{1}, {{1, 2, 3}, {1, 4, 5}, {1, 12, 13}, {1, 14, 15}}, 4, true};
    VoteSet v = build_votes(ev, 4, fam);
    CHECK(v.check_sums == std::vector<std::vector<int>>{{2, 3}, {4, 5}, {12, 13}, {14, 15}});

    // the family is sound for object 4 (column 1), not for object 3
    CHECK_THROWS_AS(build_votes(ev, 3, fam), InternalError);
}

TEST_CASE("clean codewords decode correctly for every object") {
    LinearCode ev = simplex(4);
    for (int obj = 1; obj <= 4; ++obj) {
        VoteSet v = build_votes(ev, obj);
        for (unsigned m = 0; m < 16; ++m) {
            BinaryVector y = codeword_of(ev, m);
            CHECK(decode_symbol(v, y) == static_cast<int>((m >> (obj - 1)) & 1));
        }
    }
}

TEST_CASE("single errors never fool eight votes") {
    LinearCode ev = simplex(4);
    VoteSet v = build_votes(ev, 4);
    for (unsigned m = 0; m < 16; ++m) {
        for (int epos = 1; epos <= 15; ++epos) {
            BinaryVector y = codeword_of(ev, m);
            y.set(epos - 1, !y.get(epos - 1));
            CHECK(decode_symbol(v, y) == static_cast<int>((m >> 3) & 1));
        }
    }
}

TEST_CASE("specific heavier patterns still leave a 3-of-5 majority") {
    // four checks orthogonal on {1}: five votes in total, so these two
    // patterns each corrupt only two votes and every codeword still decodes
    LinearCode ev = simplex(4);
    OrthogonalFamily fam{{1}, {{1, 2, 3}, {1, 4, 5}, {1, 12, 13}, {1, 14, 15}}, 4, true};
    VoteSet v = build_votes(ev, 4, fam);
    for (const auto& pattern : std::vector<std::vector<int>>{{2, 4}, {2, 3, 4, 14}}) {
        BinaryVector e = BinaryVector::from_support(15, pattern);
        for (unsigned m = 0; m < 16; ++m) {
            BinaryVector y = codeword_of(ev, m) ^ e;
            CHECK(decode_symbol(v, y) == static_cast<int>((m >> 3) & 1));
        }
    }
}

TEST_CASE("exhaustive capability: the floor(J/2) guarantee and its edge") {
    // eight votes: all patterns up to weight 3 decode, weight 4 first fails
    CapabilityReport ok3 = verify_capability(simplex(4), 4, 3);
    CHECK(ok3.ok);
    CHECK(ok3.patterns_checked == 575); // C(15,1)+C(15,2)+C(15,3)
    CHECK_FALSE(ok3.counterexample.has_value());

    CapabilityReport bad4 = verify_capability(simplex(4), 4, 4);
    CHECK_FALSE(bad4.ok);
    REQUIRE(bad4.counterexample.has_value());
    CHECK(*bad4.counterexample == std::vector<int>{1, 2, 4, 6});

    // two votes tie on a single direct-column error
    CapabilityReport tie = verify_capability(hamming(4), 1, 1);
    CHECK_FALSE(tie.ok);
    CHECK(*tie.counterexample == std::vector<int>{1});
    CHECK(tie.patterns_checked == 1);

    // five votes from replication: two errors fine, three sink the majority
    CHECK(verify_capability(repetition(5), 1, 2).ok);
    CapabilityReport rep3 = verify_capability(repetition(5), 1, 3);
    CHECK_FALSE(rep3.ok);
    CHECK(*rep3.counterexample == std::vector<int>{1, 2, 3});
    CHECK(rep3.patterns_checked == 16); // 5 + 10 + 1

    // t = 0 checks nothing and passes
    CapabilityReport t0 = verify_capability(spc(6), 1, 0);
    CHECK(t0.ok);
    CHECK(t0.patterns_checked == 0);
}

TEST_CASE("exhaustive capability with an explicit vote set") {
    LinearCode ev = simplex(4);
    OrthogonalFamily fam{{1}, {{1, 2, 3}, {1, 4, 5}, {1, 12, 13}, {1, 14, 15}}, 4, true};
    VoteSet v = build_votes(ev, 4, fam);
    CHECK(verify_capability_with(v, 15, 2).ok);
    CapabilityReport r = verify_capability_with(v, 15, 3);
    CHECK_FALSE(r.ok);
    CHECK(*r.counterexample == std::vector<int>{1, 2, 4});
    CHECK(r.patterns_checked == 122); // 15 + 105 + 2

    CHECK_THROWS_AS(verify_capability_with(v, 15, -1), UsageError);
    CHECK_THROWS_AS(verify_capability_with(v, 15, 3, 100), CapError); // 575 > 100
}

TEST_CASE("sampled capability is deterministic per seed") {
    LinearCode ev = simplex(4);
    VoteSet v = build_votes(ev, 4);
    CapabilityReport a = verify_capability_sampled(v, 15, 4, 1000, 7);
    CapabilityReport b = verify_capability_sampled(v, 15, 4, 1000, 7);
    CHECK(a.ok == b.ok);
    CHECK(a.patterns_checked == b.patterns_checked);
    CHECK(a.counterexample == b.counterexample);
    // weight-4 defeats are dense enough that 1000 draws find one
    CHECK_FALSE(a.ok);
    REQUIRE(a.counterexample.has_value());
    CHECK(a.counterexample->size() <= 4);
    CHECK(detail::pattern_defeats(v, *a.counterexample));

    // within the guarantee, sampling checks everything it draws and passes
    CapabilityReport safe = verify_capability_sampled(v, 15, 3, 500, 7);
    CHECK(safe.ok);
    CHECK(safe.patterns_checked == 500);

    CHECK_THROWS_AS(verify_capability_sampled(v, 15, 0, 10, 1), UsageError);
}

TEST_CASE("whole-message decode") {
    LinearCode ev = simplex(4);
    BinaryVector y = codeword_of(ev, 0b1011);
    CHECK(decode_message(ev, y) == std::vector<int>{1, 1, 0, 1});
    // flip one position: all four objects still decode
    y.set(6, !y.get(6));
    CHECK(decode_message(ev, y) == std::vector<int>{1, 1, 0, 1});

    CHECK_THROWS_AS(decode_message(ev, BinaryVector(8)), UsageError);
}

TEST_CASE("short received word is rejected") {
    VoteSet v = build_votes(simplex(4), 4);
    CHECK_THROWS_AS(decode_symbol(v, BinaryVector(8)), UsageError);
}
