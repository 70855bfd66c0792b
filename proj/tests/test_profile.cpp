#include <doctest.h>

#include "ordtype/oracle.hpp"
#include "ordtype/profile.hpp"
#include "ordtype/textio.hpp"
#include "support.hpp"

using namespace ordtype;

TEST_CASE("atoms") {
    const auto one = profile(parse("1"));
    CHECK(one.size == 1);
    CHECK(one.has_left_endpoint);
    CHECK(one.has_right_endpoint);
    CHECK(one.succ_pair_free);
    CHECK(one.dense_class == DenseClass::None);

    const auto n = profile(parse("N"));
    CHECK(n.is_infinite());
    CHECK(n.has_left_endpoint);
    CHECK_FALSE(n.has_right_endpoint);
    CHECK_FALSE(n.succ_pair_free);
    CHECK(n.succ_complete);
    CHECK(n.pred_complete);

    const auto e = profile(parse("0"));
    CHECK(e.is_empty);
    CHECK(e.size == 0);
    CHECK_FALSE(e.has_left_endpoint);
    CHECK_FALSE(e.has_right_endpoint);
}

TEST_CASE("dense classes") {
    CHECK(profile(parse("Q")).dense_class == DenseClass::Q);
    CHECK(profile(parse("1 + Q")).dense_class == DenseClass::OneQ);
    CHECK(profile(parse("Q + 1")).dense_class == DenseClass::QOne);
    const auto p = profile(parse("1 + Q + 1"));
    CHECK(p.dense_class == DenseClass::OneQOne);
    CHECK(p.has_left_endpoint);
    CHECK(p.has_right_endpoint);
    CHECK(profile(parse("Q[1, 1+Q]")).dense_class == DenseClass::Q);
    CHECK(profile(parse("Q[Z]")).dense_class == DenseClass::None);
    CHECK(profile(parse("1 + 1")).dense_class == DenseClass::None);
}

TEST_CASE("the doubly pointed example") {
    const auto p = profile(parse("N + Q[Z] + N~"));
    CHECK(p.has_left_endpoint);
    CHECK(p.has_right_endpoint);
    CHECK(p.succ_complete);
    CHECK(p.pred_complete);
    CHECK_FALSE(p.succ_pair_free);
}

TEST_CASE("Q[N,Z] has successors everywhere but not predecessors") {
    const auto p = profile(parse("Q[N,Z]"));
    CHECK_FALSE(p.has_left_endpoint);
    CHECK_FALSE(p.has_right_endpoint);
    CHECK(p.succ_complete);
    CHECK_FALSE(p.pred_complete);

    // Point-level ground truth over the first 500 enumerated points.
    const Realization r(parse("Q[N,Z]"));
    bool all_have_successors = true;
    bool some_lacks_predecessor = false;
    for (const auto& c : r.enumerate(500)) {
        const auto f = r.point_profile(c);
        all_have_successors = all_have_successors && f.has_successor;
        some_lacks_predecessor = some_lacks_predecessor || !f.has_predecessor;
    }
    CHECK(all_have_successors);
    CHECK(some_lacks_predecessor);
}

TEST_CASE("a one-point fiber leaves the index profile unchanged") {
    testing::TermGen gen(31);
    for (int i = 0; i < 300; ++i) {
        const auto x = gen.nonempty(3);
        CAPTURE(print(x));
        CHECK(profile(OrderTerm::product(x, OrderTerm::single())) == profile(x));
        CHECK(profile(OrderTerm::product(OrderTerm::single(), x)) == profile(x));
    }
}

TEST_CASE("profile invariants hold on random terms") {
    testing::TermGen gen(32);
    for (int i = 0; i < 500; ++i) {
        const auto t = gen(4);
        const auto p = profile(t);
        CAPTURE(print(t));
        const bool dense = p.succ_pair_free && !p.is_empty && !p.is_singleton();
        CHECK((p.dense_class != DenseClass::None) == dense);
        if (p.is_empty) {
            CHECK(p.size == 0);
            CHECK_FALSE(p.has_left_endpoint);
            CHECK_FALSE(p.has_right_endpoint);
        }
        CHECK(profile(OrderTerm::reverse(t)) == mirror(p));
        CHECK(mirror(mirror(p)) == p);
    }
}

TEST_CASE("sizes multiply and saturate") {
    CHECK(profile(parse("3*4 + 2")).size == 14);
    CHECK(profile(parse("2147483647*2147483647*2147483647")).is_infinite());
    CHECK(profile(parse("2*N")).is_infinite());
    CHECK(profile(parse("0*N")).size == 0);
}
