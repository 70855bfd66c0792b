// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "ordtype/canon.hpp"
#include "ordtype/classify.hpp"
#include "ordtype/oracle.hpp"
#include "ordtype/profile.hpp"
#include "ordtype/textio.hpp"
#include "run_cli.hpp"
#include "support.hpp"

using namespace ordtype;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTermLimitMs = 1000.0;
constexpr double kSuiteLimitMs = 60000.0;

struct Tally {
    int checks = 0;
    std::vector<std::string> failures;
    double slowest_ms = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 5) failures.push_back(what);
        else if (!ok) failures.push_back({});
    }

    template <class F>
    void timed(const std::string& label, F&& f) {
        const auto t0 = Clock::now();
        try {
            f();
        } catch (const std::exception& e) {
            expect(false, label + ": " + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        slowest_ms = std::max(slowest_ms, ms);
        expect(ms < kTermLimitMs, label + " took " + std::to_string(ms) + " ms");
    }
};

std::string norm(const std::string& s) { return to_string(canonicalize(parse(s))); }

int case_of(const std::string& s) {
    const auto c = classify_absorption(parse(s));
    return c.kind == AbsorptionClass::Kind::Case ? c.case_number : 0;
}

void golden_collapses(Tally& t) {
    t.timed("Q[1, 1+Q]", [&] { t.expect(norm("Q[1, 1+Q]") == "Q", "norm Q[1, 1+Q]"); });
    t.timed("Q[N, Z + Q[N, Z]]",
            [&] { t.expect(norm("Q[N, Z + Q[N, Z]]") == "Q[N,Z]", "norm Q[N, Z + Q[N, Z]]"); });
    t.timed("Q[1 + Q[Z]]", [&] {
        const auto c = canonicalize(parse("Q[1 + Q[Z]]"));
        const bool one = c.components.size() == 1 && c.components[0].is_shuffle() &&
                         c.components[0].blocks.size() == 1 && to_string(c.components[0].blocks[0]) == "1 + Q[Z]";
        t.expect(one, "Q[1 + Q[Z]] keeps one composite block, got " + to_string(c));
    });
}

void classification_table(Tally& t) {
    const std::vector<std::pair<std::string, int>> table = {
        {"Q[Z]", 1}, {"Z + Q[Z]", 2}, {"N + Q[Z,N]", 2}, {"Q[Z] + Z", 3}, {"Z + Q[Z] + Z", 4}, {"N + Q[Z] + N~", 5},
    };
    for (const auto& [s, n] : table)
        t.timed(s, [&, s = s, n = n] { t.expect(case_of(s) == n, s + " is case " + std::to_string(n)); });
    t.timed("N + Q[Z]", [&] {
        t.expect(classify_absorption(parse("N + Q[Z]")).kind == AbsorptionClass::Kind::SelfSimilarNotAbsorbing,
                 "N + Q[Z] is self-similar and not absorbing");
        t.expect(is_self_similar(parse("N + Q[Z]")).value, "N + Q[Z] is self-similar");
    });
}

void absorption_spots(Tally& t) {
    const std::vector<std::tuple<std::string, std::string, bool>> spots = {
        {"1+Q", "Z+Q[Z]", true},          {"Q", "Q[Z]", true},         {"2", "N+Q[Z]+N~", true},
        {"1+Q+1", "Z+Q[Z]+Z", true},      {"N+N~", "N+Q[Z]+N~", true}, {"Q", "Z+Q[Z]", false},
        {"2", "N+Q[Z]", false},           {"2", "Z+Q[Z]+Z", false},    {"1+Q+1", "N+Q[Z]+N~", false},
    };
    for (const auto& [a, x, want] : spots) {
        const std::string label = a + " absorbed by " + x;
        t.timed(label, [&, a = a, x = x, want = want, label] {
            t.expect(absorbs(parse(a), parse(x)) == want, label);
            const auto r = testing::run_cli({"absorbs", a, x});
            t.expect(r.code == 0, label + ": cli exit " + std::to_string(r.code));
            t.expect(r.out == (want ? "true\n" : "false\n"), label + ": cli printed " + r.out);
        });
    }
}

void squares(Tally& t) {
    for (const char* s : {"Q", "Q[Z]", "1+Q+1", "N + Q[Z] + N~"})
        t.timed(s, [&, s] { t.expect(is_square(parse(s)), std::string(s) + " is a square"); });
    for (const char* s : {"N + Q[Z]", "Z"})
        t.timed(s, [&, s] { t.expect(!is_square(parse(s)), std::string(s) + " is not a square"); });

    std::vector<std::string> corpus = testing::golden_corpus();
    for (const auto& s : testing::classified_corpus()) corpus.push_back(s);
    for (const char* s : {"1 + Q[Z] + 1", "2 + Q + 3", "N + Q[N~,Z] + N~", "N + Q[Z,N] + N~ + 1", "1 + Q[2] + 1"})
        corpus.push_back(s);
    int both = 0;
    for (const auto& s : corpus)
        t.timed(s, [&, s] {
            const auto x = parse(s);
            const auto p = profile(x);
            if (!p.has_left_endpoint || !p.has_right_endpoint) return;
            ++both;
            t.expect(is_square(x) == (square_two_endpoints(x).verdict == SquareVerdict::True),
                     "square checkers disagree on " + s);
        });
    t.expect(both >= 5, "too few two-endpoint terms");
}

void normalizer_vs_decider(Tally& t) {
    int pairs = 0, compared = 0;
    for (const auto& a : testing::absorbed_candidates())
        for (const auto& x : testing::classified_corpus()) {
            ++pairs;
            t.timed(a + " * " + x, [&, a = a, x = x] {
                const auto c = try_canonicalize(parse("(" + a + ")*(" + x + ")"));
                if (!c) return;
                ++compared;
                const bool eq = cf_equal(*c, canonicalize(parse(x))) == CfVerdict::Equal;
                t.expect(eq == absorbs(parse(a), parse(x)), "disagreement on (" + a + ", " + x + ")");
            });
        }
    t.expect(pairs >= 100, "fewer than 100 pairs");
    t.expect(compared > 0, "every product was stuck");
}

void absorption_laws(Tally& t) {
    auto pool = testing::absorbed_candidates();
    pool.push_back("0");
    int triples = 0;
    for (const auto& x : testing::classified_corpus()) {
        const auto xt = parse(x);
        t.expect(absorbs(parse("1"), xt), "1 not absorbed by " + x);
        for (const auto& a : pool)
            for (const auto& b : pool) {
                ++triples;
                t.timed(a + ", " + b + ", " + x, [&, a = a, b = b] {
                    if (absorbs(parse(a), xt) && absorbs(parse(b), xt))
                        t.expect(absorbs(parse("(" + a + ")*(" + b + ")"), xt), "product law on " + a + ", " + b + ", " + x);
                    const bool whole = absorbs(parse("(" + a + ") + 1 + (" + b + ")"), xt);
                    const bool split = absorbs(parse("(" + a + ") + 1"), xt) && absorbs(parse("1 + (" + b + ")"), xt);
                    t.expect(whole == split, "split law on " + a + ", " + b + ", " + x);
                });
            }
    }
    t.expect(triples >= 200, "fewer than 200 triples");
}

void shuffle_self_similarity(Tally& t) {
    for (const char* s : {"Q", "Q[Z]", "Q[N,Z]", "Q[1,Z]"}) {
        const auto sh = canonicalize(parse(s));
        std::vector<CanonicalForm> lefts{CanonicalForm{}}, rights{CanonicalForm{}};
        for (const auto& b : sh.components.at(0).blocks) {
            for (auto& f : final_segments(b, 3)) lefts.push_back(f);
            for (auto& f : initial_segments(b, 3)) rights.push_back(f);
        }
        for (const auto& l : lefts)
            for (const auto& r : rights) {
                if (l.empty() && r.empty()) continue;
                const auto term = OrderTerm::sum(OrderTerm::sum(to_term(l), parse(s)), to_term(r));
                const auto label = print(term);
                t.timed(label, [&] { t.expect(is_self_similar(term).value, label + " not self-similar"); });
            }
    }
}

void oracle_consistency(Tally& t) {
    for (const auto& s : testing::golden_corpus())
        t.timed("cross_check " + s, [&, s] {
            const auto r = cross_check(parse(s), 500);
            t.expect(!r.failed(), "cross_check contradiction on " + s);
            t.expect(r.all_witnesses_found(), "missing witness on " + s);
        });
    t.timed("back_and_forth", [&] {
        const auto b = back_and_forth(parse("Q[1,1+Q]"), parse("Q"), 8);
        t.expect(b.ok && b.pairs.size() == 8, "back_and_forth Q[1,1+Q] vs Q");
        t.expect(is_partial_isomorphism(parse("Q[1,1+Q]"), parse("Q"), b.pairs), "pairs are not order preserving");
    });
    for (const auto& s : testing::golden_corpus())
        t.timed("codes " + s, [&, s] {
            const Realization r(parse(s));
            std::mt19937 rng(2024);
            bool ok = true;
            for (int i = 0; i < 1000 && ok; ++i) {
                const auto a = testing::random_code(r.term(), rng);
                const auto b = testing::random_code(r.term(), rng);
                const auto c = testing::random_code(r.term(), rng);
                const auto ab = r.compare(a, b);
                ok = ok && ((ab == 0) == (a == b)) && r.compare(b, a) == (0 <=> ab);
                if (ab < 0 && r.compare(b, c) < 0) ok = ok && r.compare(a, c) < 0;
                const auto succ = r.successor(a);
                ok = ok && r.point_profile(a).has_successor == succ.has_value();
                if (succ) ok = ok && r.compare(a, *succ) < 0 && !r.between(a, *succ) && r.predecessor(*succ) == a;
                if (ab < 0) {
                    const auto m = r.between(a, b);
                    if (m) ok = ok && r.compare(a, *m) < 0 && r.compare(*m, b) < 0;
                    ok = ok && m.has_value() != (succ && *succ == b);
                }
            }
            t.expect(ok, "code properties fail on " + s);
            const auto shorter = r.enumerate(100);
            const auto longer = r.enumerate(300);
            t.expect(shorter.size() <= longer.size() && std::equal(shorter.begin(), shorter.end(), longer.begin()),
                     "enumeration is not prefix stable on " + s);
        });
}

void round_trip_and_determinism(Tally& t) {
    std::vector<std::string> corpus = testing::golden_corpus();
    for (const auto& s : testing::classified_corpus()) corpus.push_back(s);
    for (const auto& s : corpus)
        t.timed("round trip " + s, [&, s] {
            const auto p = parse(s);
            t.expect(parse(print(p)) == p && print(parse(print(p))) == print(p), "round trip " + s);
            const auto c = canonicalize(p);
            t.expect(canonicalize(parse(to_string(c))) == c, "canonical round trip " + s);
        });
    const std::vector<std::vector<std::string>> runs = {
        {"norm", "Q[N, Z + Q[N, Z]]"},        {"--json", "classify", "N + Q[Z,N] + N~"},
        {"check", "Z + Q[Z] + Z", "-n", "300"}, {"bnf", "Q[1, 1+Q]", "Q", "-r", "8"},
        {"enum", "Q[N,Z]", "-n", "40"},       {"--json", "square2", "N + Q[Z,N~] + N~"},
        {"dot", "Q[1 + Q[Z]]"},
    };
    for (const auto& args : runs)
        t.timed("cli " + args.front(), [&] {
            const auto a = testing::run_cli(args, true);
            const auto b = testing::run_cli(args, true);
            t.expect(a.code == b.code && a.out == b.out && !a.out.empty(), "cli output differs for " + args.front());
        });
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria = {
        {"golden collapses", golden_collapses},
        {"classification table", classification_table},
        {"absorption spot checks", absorption_spots},
        {"squares", squares},
        {"normalizer and decider agree", normalizer_vs_decider},
        {"absorption laws", absorption_laws},
        {"shuffles with segment ends are self-similar", shuffle_self_similarity},
        {"oracle consistency", oracle_consistency},
        {"round trip and determinism", round_trip_and_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        const auto t0 = Clock::now();
        criteria[i].second(t);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        t.expect(ms < kSuiteLimitMs, "suite took " + std::to_string(ms) + " ms");
        const bool ok = t.failures.empty();
        if (!ok) ++failed;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
             << t.checks << " checks, " << ms << " ms, slowest " << t.slowest_ms << " ms)";
        std::cout << line.str() << "\n";
        for (const auto& f : t.failures)
            if (!f.empty()) std::cout << "    " << f << "\n";
        if (t.failures.size() > 5) std::cout << "    ... " << t.failures.size() - 5 << " more\n";
    }
    std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << "\n";
    return failed ? 1 : 0;
}
