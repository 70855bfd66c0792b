#include <doctest.h>

#include "ordtype/canon.hpp"
#include "ordtype/classify.hpp"
#include "ordtype/oracle.hpp"
#include "ordtype/profile.hpp"
#include "ordtype/textio.hpp"
#include "support.hpp"

using namespace ordtype;

namespace {

std::vector<std::string> with_empty(std::vector<std::string> pool) {
    pool.push_back("0");
    return pool;
}

OrderTerm sum3(const std::string& a, const std::string& b, const std::string& c) {
    return parse("(" + a + ") + (" + b + ") + (" + c + ")");
}

}  // namespace

TEST_CASE("random terms survive print and parse") {
    testing::TermGen gen(5);
    for (int i = 0; i < 500; ++i) {
        const auto t = gen(5);
        const auto s = print(t);
        CAPTURE(s);
        CHECK(parse(s) == t);
        CHECK(print(parse(s)) == s);
    }
}

TEST_CASE("canonicalization is idempotent and profile preserving") {
    testing::TermGen gen(6);
    int done = 0;
    for (int i = 0; i < 500; ++i) {
        const auto t = gen(4);
        const auto c = try_canonicalize(t);
        if (!c) continue;
        ++done;
        CAPTURE(print(t));
        CHECK(canonicalize(to_term(*c)) == *c);
        CHECK(profile(to_term(*c)) == profile(t));
        CHECK(mirror(mirror(*c)) == *c);
        if (const auto m = try_canonicalize(OrderTerm::reverse(t))) CHECK(*m == mirror(*c));
    }
    CHECK(done > 300);
}

TEST_CASE("absorption laws") {
    const auto pool = with_empty(testing::absorbed_candidates());
    int triples = 0;
    for (const auto& xs : testing::classified_corpus()) {
        const auto x = parse(xs);
        CAPTURE(xs);
        CHECK(absorbs(parse("1"), x));
        for (const auto& a : pool) {
            for (const auto& b : pool) {
                CAPTURE(a);
                CAPTURE(b);
                ++triples;
                if (absorbs(parse(a), x) && absorbs(parse(b), x))
                    CHECK(absorbs(parse("(" + a + ")*(" + b + ")"), x));
                const bool whole = absorbs(sum3(a, "1", b), x);
                const bool split = absorbs(parse("(" + a + ") + 1"), x) && absorbs(parse("1 + (" + b + ")"), x);
                CHECK(whole == split);
            }
        }
    }
    CHECK(triples >= 200);
}

TEST_CASE("shuffles with segment ends are self-similar") {
    for (const char* s : {"Q", "Q[Z]", "Q[N,Z]", "Q[1,Z]", "Q[N~,2]"}) {
        const auto sh = canonicalize(parse(s));
        std::vector<CanonicalForm> lefts, rights;
        for (const auto& b : sh.components.at(0).blocks) {
            for (auto& f : final_segments(b, 3)) lefts.push_back(f);
            for (auto& f : initial_segments(b, 3)) rights.push_back(f);
        }
        lefts.push_back(CanonicalForm{});
        rights.push_back(CanonicalForm{});
        for (const auto& l : lefts)
            for (const auto& r : rights) {
                const auto t = OrderTerm::sum(OrderTerm::sum(to_term(l), parse(s)), to_term(r));
                CAPTURE(print(t));
                CHECK(is_self_similar(t).value);
            }
    }
}

TEST_CASE("decider and normalizer agree") {
    int compared = 0;
    for (const auto& as : testing::absorbed_candidates())
        for (const auto& xs : testing::classified_corpus()) {
            const auto c = try_canonicalize(parse("(" + as + ")*(" + xs + ")"));
            if (!c) continue;
            CAPTURE(as);
            CAPTURE(xs);
            ++compared;
            const bool eq = cf_equal(*c, canonicalize(parse(xs))) == CfVerdict::Equal;
            CHECK(eq == absorbs(parse(as), parse(xs)));
        }
    CHECK(compared >= 100);
}

TEST_CASE("cross checks on random terms find no contradiction") {
    testing::TermGen gen(8);
    for (int i = 0; i < 60; ++i) {
        const auto t = gen(3);
        CAPTURE(print(t));
        const auto r = cross_check(t, 150);
        CHECK_FALSE(r.failed());
    }
}
