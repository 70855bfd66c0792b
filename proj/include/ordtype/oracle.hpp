#pragma once

// A concrete realization of a term as a countable order.
//
// Points are PointCodes that mirror the term tree.  Shuffle positions are
// Stern-Brocot tree nodes written as strings over {L, R}; the node at depth d
// carries block d mod k, and every residue class of depths is dense in the
// tree order.  All queries are answered by structural recursion, so they are
// exact; only enumeration is lazy.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordtype/profile.hpp"
#include "ordtype/term.hpp"

namespace ordtype {

struct PointCode {
    std::int64_t value = 0;          // atom value, or Sum side
    std::string path;                // Shuffle position
    std::vector<PointCode> children; // Sum: inner; Product: index, fiber; Shuffle: inner

    friend bool operator==(const PointCode&, const PointCode&) = default;
};

class InvalidCode : public std::invalid_argument {
public:
    explicit InvalidCode(const std::string& what) : std::invalid_argument(what) {}
};

// Compares Stern-Brocot positions: at the first divergence or at the end of
// the shorter string, L < (end) < R.
std::strong_ordering compare_positions(const std::string& a, const std::string& b);

struct PointFacts {
    bool is_min = false;
    bool is_max = false;
    bool has_successor = false;
    bool has_predecessor = false;

    friend bool operator==(const PointFacts&, const PointFacts&) = default;
};

class Realization {
public:
    // Realizes the desugared form of t.
    explicit Realization(const OrderTerm& t);

    const OrderTerm& term() const { return term_; }
    bool empty() const { return term_.is(TermKind::Empty); }

    // Throws InvalidCode if the code does not denote a point.
    void check(const PointCode& a) const;

    std::strong_ordering compare(const PointCode& a, const PointCode& b) const;
    // Order of first appearance in enumerate().
    std::strong_ordering enumeration_order(const PointCode& a, const PointCode& b) const;
    std::uint64_t weight(const PointCode& a) const;

    PointFacts point_profile(const PointCode& a) const;
    std::optional<PointCode> successor(const PointCode& a) const;
    std::optional<PointCode> predecessor(const PointCode& a) const;
    std::optional<PointCode> min_point() const;
    std::optional<PointCode> max_point() const;

    // The first point in enumeration order strictly between the bounds; an
    // absent bound is unbounded on that side.
    std::optional<PointCode> first_between(const std::optional<PointCode>& lo,
                                           const std::optional<PointCode>& hi) const;
    // Requires a < b.  None exactly when b is the successor of a.
    std::optional<PointCode> between(const PointCode& a, const PointCode& b) const;

    // The first n points by weight, ties broken structurally.  Prefix-stable.
    std::vector<PointCode> enumerate(std::size_t n) const;

    // Text form: () for the one point, numbers for atoms, {side|inner} for
    // sums, (index,fiber) for products, [path:inner] for shuffles.
    std::string format(const PointCode& a) const;

private:
    const std::vector<PointCode>& level(const OrderTerm& t, std::uint64_t w) const;

    OrderTerm term_;
    std::optional<std::uint64_t> size_;
    mutable std::map<std::pair<const void*, std::uint64_t>, std::vector<PointCode>> levels_;
};

// Convenience wrappers over a fresh realization of t.
std::strong_ordering compare(const OrderTerm& t, const PointCode& a, const PointCode& b);
PointFacts point_profile(const OrderTerm& t, const PointCode& a);
std::optional<PointCode> between(const OrderTerm& t, const PointCode& a, const PointCode& b);
std::vector<PointCode> enumerate(const OrderTerm& t, std::size_t n);

struct BackAndForth {
    bool ok = false;
    std::vector<std::pair<PointCode, PointCode>> pairs;
    int failed_round = 0;            // 1-based, when !ok
    std::string reason;
};

// Cantor-style construction for r rounds: odd rounds extend by the least
// enumerated unmatched point of x, even rounds by that of y.
BackAndForth back_and_forth(const OrderTerm& x, const OrderTerm& y, int rounds);

// Skolem-style construction between two shuffles whose blocks correspond
// under block_map (x block i to y block block_map[i]).  Corresponding blocks
// must be identical terms; points inside a block are matched identically and
// positions are matched color-respectingly.  Throws std::invalid_argument when
// the inputs do not have this shape.
BackAndForth back_and_forth_colored(const OrderTerm& x, const OrderTerm& y,
                                    const std::vector<std::size_t>& block_map, int rounds);

// Confirms a transcript is an order-preserving injection.
bool is_partial_isomorphism(const OrderTerm& x, const OrderTerm& y,
                            const std::vector<std::pair<PointCode, PointCode>>& pairs);

enum class CheckStatus { Consistent, Counterexample, WitnessFound, WitnessNotFound };
const char* to_string(CheckStatus s);

struct CheckOutcome {
    std::string predicate;
    CheckStatus status = CheckStatus::Consistent;
    std::optional<std::string> witness;  // counterexample or witness point, formatted
    std::string detail;
};

struct CheckReport {
    std::string term;
    std::size_t budget = 0;
    std::size_t sampled = 0;
    double elapsed_ms = 0;
    std::vector<CheckOutcome> outcomes;

    // A contradiction between the profile and the points.
    bool failed() const;
    bool all_witnesses_found() const;

    // Both serializations omit elapsed_ms so that output is reproducible.
    std::string to_text() const;
    // {term, budget, outcomes:[{predicate, status, witness?}], failed}
    std::string to_json() const;
};

// Samples budget points and checks every profile claim against them.
CheckReport cross_check(const OrderTerm& t, std::size_t budget);

}  // namespace ordtype
