#include "ordtype/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ordtype/errors.hpp"
#include "ordtype/textio.hpp"

namespace ordtype {

namespace {

using Code = PointCode;
using MaybeCode = std::optional<PointCode>;

Code atom_code(std::int64_t v) { return Code{v, {}, {}}; }
Code sum_code(std::int64_t side, Code inner) { return Code{side, {}, {std::move(inner)}}; }
Code product_code(Code x, Code y) { return Code{0, {}, {std::move(x), std::move(y)}}; }
Code shuffle_code(std::string path, Code inner) { return Code{0, std::move(path), {std::move(inner)}}; }

const OrderTerm& block_at(const OrderTerm& t, std::size_t depth) {
    return t.blocks()[depth % t.blocks().size()];
}

// ---- Stern-Brocot positions ------------------------------------------------

// The shallowest node strictly between the bounds; it is unique.
std::string shortest_position_between(const std::optional<std::string>& lo, const std::optional<std::string>& hi) {
    std::string u;
    for (;;) {
        if (lo && compare_positions(u, *lo) <= 0) {
            u.push_back('R');
        } else if (hi && compare_positions(u, *hi) >= 0) {
            u.push_back('L');
        } else {
            return u;
        }
    }
}

// The lexicographically least string of length len that lies above a.
std::optional<std::string> least_of_length_above(const std::string& a, std::size_t len) {
    if (len > a.size()) return a + "R" + std::string(len - a.size() - 1, 'L');
    std::string p = a.substr(0, len);
    if (len < a.size() && a[len] == 'L') return p;
    const auto i = p.rfind('L');
    if (i == std::string::npos) return std::nullopt;
    p[i] = 'R';
    std::fill(p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end(), 'L');
    return p;
}

// The first position in enumeration order (length, then L < R) strictly
// between the bounds whose depth is congruent to residue modulo k.
std::string first_position_between(const std::optional<std::string>& lo, const std::optional<std::string>& hi,
                                   std::size_t residue, std::size_t k) {
    const auto u = shortest_position_between(lo, hi);
    const std::size_t limit =
        u.size() + (lo ? lo->size() : 0) + (hi ? hi->size() : 0) + 2 * k + 4;
    for (std::size_t len = u.size(); len <= limit; ++len) {
        if (len % k != residue) continue;
        std::optional<std::string> s = lo ? least_of_length_above(*lo, len) : std::string(len, 'L');
        if (s && (!hi || compare_positions(*s, *hi) < 0)) return *s;
    }
    throw InternalInvariantViolation("no Stern-Brocot position of the requested depth class in an open interval");
}

// ---- structural queries ----------------------------------------------------

std::strong_ordering cmp(const OrderTerm& t, const Code& a, const Code& b) {
    switch (t.kind()) {
        case TermKind::Empty:
        case TermKind::Single: return std::strong_ordering::equal;
        case TermKind::Finite:
        case TermKind::Omega:
        case TermKind::Zeta: return a.value <=> b.value;
        case TermKind::OmegaStar: return b.value <=> a.value;
        case TermKind::Sum:
            if (a.value != b.value) return a.value <=> b.value;
            return cmp(t.children()[static_cast<std::size_t>(a.value)], a.children[0], b.children[0]);
        case TermKind::Product:
            if (auto c = cmp(t.index(), a.children[0], b.children[0]); c != 0) return c;
            return cmp(t.fiber(), a.children[1], b.children[1]);
        case TermKind::Shuffle:
            if (auto c = compare_positions(a.path, b.path); c != 0) return c;
            return cmp(block_at(t, a.path.size()), a.children[0], b.children[0]);
        case TermKind::Reverse: break;
    }
    throw InternalInvariantViolation("reversal node in a realization");
}

std::uint64_t weight_of(const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Empty:
        case TermKind::Single: return 0;
        case TermKind::Finite:
        case TermKind::Omega:
        case TermKind::OmegaStar: return static_cast<std::uint64_t>(a.value);
        case TermKind::Zeta:
            return a.value < 0 ? static_cast<std::uint64_t>(-(a.value + 1)) + 1 : static_cast<std::uint64_t>(a.value);
        case TermKind::Sum: return weight_of(t.children()[static_cast<std::size_t>(a.value)], a.children[0]);
        case TermKind::Product: return weight_of(t.index(), a.children[0]) + weight_of(t.fiber(), a.children[1]);
        case TermKind::Shuffle: return a.path.size() + weight_of(block_at(t, a.path.size()), a.children[0]);
        case TermKind::Reverse: break;
    }
    throw InternalInvariantViolation("reversal node in a realization");
}

std::strong_ordering enum_cmp(const OrderTerm& t, const Code& a, const Code& b) {
    if (auto c = weight_of(t, a) <=> weight_of(t, b); c != 0) return c;
    switch (t.kind()) {
        case TermKind::Zeta: return (a.value > 0) <=> (b.value > 0);
        case TermKind::Sum:
            if (a.value != b.value) return a.value <=> b.value;
            return enum_cmp(t.children()[static_cast<std::size_t>(a.value)], a.children[0], b.children[0]);
        case TermKind::Product:
            if (auto c = enum_cmp(t.index(), a.children[0], b.children[0]); c != 0) return c;
            return enum_cmp(t.fiber(), a.children[1], b.children[1]);
        case TermKind::Shuffle:
            if (a.path.size() != b.path.size()) return a.path.size() <=> b.path.size();
            if (auto c = a.path <=> b.path; c != 0) return c;
            return enum_cmp(block_at(t, a.path.size()), a.children[0], b.children[0]);
        default: return std::strong_ordering::equal;
    }
}

void check_code(const OrderTerm& t, const Code& a) {
    auto fail = [&](const std::string& why) { throw InvalidCode(why + " for " + print(t)); };
    auto expect_children = [&](std::size_t n) {
        if (a.children.size() != n) fail("wrong number of code components");
    };
    switch (t.kind()) {
        case TermKind::Empty: throw InvalidCode("the empty order has no points for " + print(t));
        case TermKind::Single:
            expect_children(0);
            if (a.value != 0) fail("bad point");
            return;
        case TermKind::Finite:
            expect_children(0);
            if (a.value < 0 || a.value >= t.count()) fail("index out of range");
            return;
        case TermKind::Omega:
        case TermKind::OmegaStar:
            expect_children(0);
            if (a.value < 0) fail("negative natural");
            return;
        case TermKind::Zeta: expect_children(0); return;
        case TermKind::Sum:
            expect_children(1);
            if (a.value != 0 && a.value != 1) fail("bad sum side");
            check_code(t.children()[static_cast<std::size_t>(a.value)], a.children[0]);
            return;
        case TermKind::Product:
            expect_children(2);
            check_code(t.index(), a.children[0]);
            check_code(t.fiber(), a.children[1]);
            return;
        case TermKind::Shuffle:
            expect_children(1);
            if (a.path.find_first_not_of("LR") != std::string::npos) fail("bad position");
            check_code(block_at(t, a.path.size()), a.children[0]);
            return;
        case TermKind::Reverse: break;
    }
    fail("reversal node");
}

bool is_min(const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Single: return true;
        case TermKind::Finite:
        case TermKind::Omega: return a.value == 0;
        case TermKind::Sum: return a.value == 0 && is_min(t.left(), a.children[0]);
        case TermKind::Product: return is_min(t.index(), a.children[0]) && is_min(t.fiber(), a.children[1]);
        default: return false;
    }
}

bool is_max(const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Single: return true;
        case TermKind::Finite: return a.value == t.count() - 1;
        case TermKind::OmegaStar: return a.value == 0;
        case TermKind::Sum: return a.value == 1 && is_max(t.right(), a.children[0]);
        case TermKind::Product: return is_max(t.index(), a.children[0]) && is_max(t.fiber(), a.children[1]);
        default: return false;
    }
}

MaybeCode min_of(const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Single:
        case TermKind::Finite:
        case TermKind::Omega: return atom_code(0);
        case TermKind::Sum:
            if (auto m = min_of(t.left())) return sum_code(0, *m);
            return std::nullopt;
        case TermKind::Product: {
            auto x = min_of(t.index());
            auto y = min_of(t.fiber());
            if (x && y) return product_code(*x, *y);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

MaybeCode max_of(const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Single: return atom_code(0);
        case TermKind::Finite: return atom_code(t.count() - 1);
        case TermKind::OmegaStar: return atom_code(0);
        case TermKind::Sum:
            if (auto m = max_of(t.right())) return sum_code(1, *m);
            return std::nullopt;
        case TermKind::Product: {
            auto x = max_of(t.index());
            auto y = max_of(t.fiber());
            if (x && y) return product_code(*x, *y);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

MaybeCode succ(const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Finite:
            if (a.value + 1 < t.count()) return atom_code(a.value + 1);
            return std::nullopt;
        case TermKind::Omega:
        case TermKind::Zeta:
            if (a.value == std::numeric_limits<std::int64_t>::max()) throw Unsupported("point code out of range");
            return atom_code(a.value + 1);
        case TermKind::OmegaStar:
            if (a.value > 0) return atom_code(a.value - 1);
            return std::nullopt;
        case TermKind::Sum: {
            const auto& side = t.children()[static_cast<std::size_t>(a.value)];
            if (auto s = succ(side, a.children[0])) return sum_code(a.value, *s);
            if (a.value == 0 && is_max(side, a.children[0]))
                if (auto m = min_of(t.right())) return sum_code(1, *m);
            return std::nullopt;
        }
        case TermKind::Product: {
            if (auto s = succ(t.fiber(), a.children[1])) return product_code(a.children[0], *s);
            if (is_max(t.fiber(), a.children[1])) {
                auto x = succ(t.index(), a.children[0]);
                auto y = min_of(t.fiber());
                if (x && y) return product_code(*x, *y);
            }
            return std::nullopt;
        }
        case TermKind::Shuffle:
            if (auto s = succ(block_at(t, a.path.size()), a.children[0])) return shuffle_code(a.path, *s);
            return std::nullopt;
        default: return std::nullopt;
    }
}

MaybeCode pred(const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Finite:
        case TermKind::Omega:
            if (a.value > 0) return atom_code(a.value - 1);
            return std::nullopt;
        case TermKind::Zeta:
            if (a.value == std::numeric_limits<std::int64_t>::min()) throw Unsupported("point code out of range");
            return atom_code(a.value - 1);
        case TermKind::OmegaStar:
            if (a.value == std::numeric_limits<std::int64_t>::max()) throw Unsupported("point code out of range");
            return atom_code(a.value + 1);
        case TermKind::Sum: {
            const auto& side = t.children()[static_cast<std::size_t>(a.value)];
            if (auto s = pred(side, a.children[0])) return sum_code(a.value, *s);
            if (a.value == 1 && is_min(side, a.children[0]))
                if (auto m = max_of(t.left())) return sum_code(0, *m);
            return std::nullopt;
        }
        case TermKind::Product: {
            if (auto s = pred(t.fiber(), a.children[1])) return product_code(a.children[0], *s);
            if (is_min(t.fiber(), a.children[1])) {
                auto x = pred(t.index(), a.children[0]);
                auto y = max_of(t.fiber());
                if (x && y) return product_code(*x, *y);
            }
            return std::nullopt;
        }
        case TermKind::Shuffle:
            if (auto s = pred(block_at(t, a.path.size()), a.children[0])) return shuffle_code(a.path, *s);
            return std::nullopt;
        default: return std::nullopt;
    }
}

MaybeCode enum_min(const OrderTerm& t, MaybeCode a, MaybeCode b) {
    if (!a) return b;
    if (!b) return a;
    return enum_cmp(t, *a, *b) <= 0 ? a : b;
}

MaybeCode child_of(const MaybeCode& c, std::size_t i) {
    if (!c) return std::nullopt;
    return c->children[i];
}

// The first point in enumeration order strictly inside (lo, hi).
MaybeCode first_in(const OrderTerm& t, const MaybeCode& lo, const MaybeCode& hi) {
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    switch (t.kind()) {
        case TermKind::Empty: return std::nullopt;
        case TermKind::Single:
            if (lo || hi) return std::nullopt;
            return atom_code(0);
        case TermKind::Finite: {
            const std::int64_t low = lo ? lo->value + 1 : 0;
            const std::int64_t high = hi ? hi->value - 1 : t.count() - 1;
            if (low > high) return std::nullopt;
            return atom_code(low);
        }
        case TermKind::Omega: {
            const std::int64_t low = lo ? lo->value + 1 : 0;
            if (hi && low >= hi->value) return std::nullopt;
            return atom_code(low);
        }
        case TermKind::OmegaStar: {
            // The order runs against the numbers: lo bounds values from above.
            const std::int64_t low = hi ? hi->value + 1 : 0;
            if (lo && low >= lo->value) return std::nullopt;
            return atom_code(low);
        }
        case TermKind::Zeta: {
            const std::int64_t low = lo ? lo->value + 1 : -kMax;
            const std::int64_t high = hi ? hi->value - 1 : kMax;
            if (low > high) return std::nullopt;
            if (low <= 0 && high >= 0) return atom_code(0);
            return atom_code(low > 0 ? low : high);
        }
        case TermKind::Sum: {
            MaybeCode best;
            if (!(lo && lo->value == 1)) {
                MaybeCode l = lo ? child_of(lo, 0) : std::nullopt;
                MaybeCode h = (hi && hi->value == 0) ? child_of(hi, 0) : std::nullopt;
                if (auto c = first_in(t.left(), l, h)) best = sum_code(0, *c);
            }
            if (!(hi && hi->value == 0)) {
                MaybeCode l = (lo && lo->value == 1) ? child_of(lo, 0) : std::nullopt;
                MaybeCode h = hi ? child_of(hi, 0) : std::nullopt;
                if (auto c = first_in(t.right(), l, h)) best = enum_min(t, best, sum_code(1, *c));
            }
            return best;
        }
        case TermKind::Product: {
            const auto& X = t.index();
            const auto& Y = t.fiber();
            if (lo && hi && lo->children[0] == hi->children[0]) {
                if (auto y = first_in(Y, lo->children[1], hi->children[1])) return product_code(lo->children[0], *y);
                return std::nullopt;
            }
            MaybeCode best;
            if (lo)
                if (auto y = first_in(Y, lo->children[1], std::nullopt)) best = product_code(lo->children[0], *y);
            if (auto x = first_in(X, child_of(lo, 0), child_of(hi, 0)))
                if (auto y = first_in(Y, std::nullopt, std::nullopt)) best = enum_min(t, best, product_code(*x, *y));
            if (hi)
                if (auto y = first_in(Y, std::nullopt, hi->children[1]))
                    best = enum_min(t, best, product_code(hi->children[0], *y));
            return best;
        }
        case TermKind::Shuffle: {
            if (lo && hi && lo->path == hi->path) {
                if (auto c = first_in(block_at(t, lo->path.size()), lo->children[0], hi->children[0]))
                    return shuffle_code(lo->path, *c);
                return std::nullopt;
            }
            MaybeCode best;
            if (lo)
                if (auto c = first_in(block_at(t, lo->path.size()), lo->children[0], std::nullopt))
                    best = shuffle_code(lo->path, *c);
            {
                std::optional<std::string> pl = lo ? std::optional<std::string>(lo->path) : std::nullopt;
                std::optional<std::string> ph = hi ? std::optional<std::string>(hi->path) : std::nullopt;
                const auto u = shortest_position_between(pl, ph);
                if (auto c = first_in(block_at(t, u.size()), std::nullopt, std::nullopt))
                    best = enum_min(t, best, shuffle_code(u, *c));
            }
            if (hi)
                if (auto c = first_in(block_at(t, hi->path.size()), std::nullopt, hi->children[0]))
                    best = enum_min(t, best, shuffle_code(hi->path, *c));
            return best;
        }
        case TermKind::Reverse: break;
    }
    throw InternalInvariantViolation("reversal node in a realization");
}

void format_into(std::string& out, const OrderTerm& t, const Code& a) {
    switch (t.kind()) {
        case TermKind::Single: out += "()"; return;
        case TermKind::Sum:
            out += "{" + std::to_string(a.value) + "|";
            format_into(out, t.children()[static_cast<std::size_t>(a.value)], a.children[0]);
            out += "}";
            return;
        case TermKind::Product:
            out += "(";
            format_into(out, t.index(), a.children[0]);
            out += ",";
            format_into(out, t.fiber(), a.children[1]);
            out += ")";
            return;
        case TermKind::Shuffle:
            out += "[" + a.path + ":";
            format_into(out, block_at(t, a.path.size()), a.children[0]);
            out += "]";
            return;
        default: out += std::to_string(a.value); return;
    }
}

}  // namespace

std::strong_ordering compare_positions(const std::string& a, const std::string& b) {
    // With an end marker M between them, L < M < R is plain character order.
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
    const char ca = a.size() > n ? a[n] : 'M';
    const char cb = b.size() > n ? b[n] : 'M';
    return ca <=> cb;
}

// ---- Realization -------------------------------------------------------------

Realization::Realization(const OrderTerm& t) : term_(desugar(t)), size_(profile(term_).size) {}

void Realization::check(const PointCode& a) const { check_code(term_, a); }

std::strong_ordering Realization::compare(const PointCode& a, const PointCode& b) const {
    check(a);
    check(b);
    return cmp(term_, a, b);
}

std::strong_ordering Realization::enumeration_order(const PointCode& a, const PointCode& b) const {
    return enum_cmp(term_, a, b);
}

std::uint64_t Realization::weight(const PointCode& a) const { return weight_of(term_, a); }

PointFacts Realization::point_profile(const PointCode& a) const {
    check(a);
    return {is_min(term_, a), is_max(term_, a), succ(term_, a).has_value(), pred(term_, a).has_value()};
}

std::optional<PointCode> Realization::successor(const PointCode& a) const {
    check(a);
    return succ(term_, a);
}

std::optional<PointCode> Realization::predecessor(const PointCode& a) const {
    check(a);
    return pred(term_, a);
}

std::optional<PointCode> Realization::min_point() const { return min_of(term_); }
std::optional<PointCode> Realization::max_point() const { return max_of(term_); }

std::optional<PointCode> Realization::first_between(const std::optional<PointCode>& lo,
                                                    const std::optional<PointCode>& hi) const {
    if (lo) check(*lo);
    if (hi) check(*hi);
    if (lo && hi && cmp(term_, *lo, *hi) >= 0) return std::nullopt;
    return first_in(term_, lo, hi);
}

std::optional<PointCode> Realization::between(const PointCode& a, const PointCode& b) const {
    if (compare(a, b) >= 0) throw std::invalid_argument("between requires a < b");
    return first_in(term_, a, b);
}

const std::vector<PointCode>& Realization::level(const OrderTerm& t, std::uint64_t w) const {
    const auto key = std::make_pair(t.node_id(), w);
    if (auto it = levels_.find(key); it != levels_.end()) return it->second;

    std::vector<PointCode> out;
    const auto sw = static_cast<std::int64_t>(w);
    switch (t.kind()) {
        case TermKind::Empty: break;
        case TermKind::Single:
            if (w == 0) out.push_back(atom_code(0));
            break;
        case TermKind::Finite:
            if (sw < t.count()) out.push_back(atom_code(sw));
            break;
        case TermKind::Omega:
        case TermKind::OmegaStar: out.push_back(atom_code(sw)); break;
        case TermKind::Zeta:
            if (w == 0) {
                out.push_back(atom_code(0));
            } else {
                out.push_back(atom_code(-sw));
                out.push_back(atom_code(sw));
            }
            break;
        case TermKind::Sum:
            for (std::int64_t side = 0; side < 2; ++side)
                for (const auto& c : level(t.children()[static_cast<std::size_t>(side)], w))
                    out.push_back(sum_code(side, c));
            break;
        case TermKind::Product:
            for (std::uint64_t wi = 0; wi <= w; ++wi) {
                const auto& xs = level(t.index(), wi);
                if (xs.empty()) continue;
                const auto& ys = level(t.fiber(), w - wi);
                for (const auto& x : xs)
                    for (const auto& y : ys) out.push_back(product_code(x, y));
            }
            break;
        case TermKind::Shuffle:
            for (std::uint64_t len = 0; len <= w; ++len) {
                const auto& inner = level(block_at(t, len), w - len);
                if (inner.empty()) continue;
                if (len >= 62) throw Unsupported("enumeration depth exceeds supported range");
                const std::uint64_t count = std::uint64_t{1} << len;
                for (std::uint64_t bits = 0; bits < count; ++bits) {
                    std::string path(len, 'L');
                    for (std::uint64_t i = 0; i < len; ++i)
                        if (bits & (std::uint64_t{1} << (len - 1 - i))) path[i] = 'R';
                    for (const auto& c : inner) out.push_back(shuffle_code(path, c));
                }
            }
            break;
        case TermKind::Reverse: throw InternalInvariantViolation("reversal node in a realization");
    }
    return levels_.emplace(key, std::move(out)).first->second;
}

std::vector<PointCode> Realization::enumerate(std::size_t n) const {
    std::vector<PointCode> out;
    if (empty()) return out;
    const std::size_t cap = size_ ? static_cast<std::size_t>(std::min<std::uint64_t>(*size_, n)) : n;
    for (std::uint64_t w = 0; out.size() < cap; ++w) {
        for (const auto& c : level(term_, w)) {
            if (out.size() == cap) break;
            out.push_back(c);
        }
    }
    return out;
}

std::string Realization::format(const PointCode& a) const {
    std::string out;
    format_into(out, term_, a);
    return out;
}

std::strong_ordering compare(const OrderTerm& t, const PointCode& a, const PointCode& b) {
    return Realization(t).compare(a, b);
}

PointFacts point_profile(const OrderTerm& t, const PointCode& a) { return Realization(t).point_profile(a); }

std::optional<PointCode> between(const OrderTerm& t, const PointCode& a, const PointCode& b) {
    return Realization(t).between(a, b);
}

std::vector<PointCode> enumerate(const OrderTerm& t, std::size_t n) { return Realization(t).enumerate(n); }

// ---- back and forth ----------------------------------------------------------

namespace {

using Pairs = std::vector<std::pair<PointCode, PointCode>>;

// Lazily grown enumeration of one side.
class Stream {
public:
    explicit Stream(const Realization& r) : r_(r) {}

    // The first enumerated point not yet matched, if any.
    MaybeCode next_unmatched(const Pairs& pairs, bool first_side) {
        for (std::size_t i = 0;; ++i) {
            if (i == points_.size()) {
                const std::size_t want = points_.size() * 2 + 16;
                points_ = r_.enumerate(want);
                if (i == points_.size()) return std::nullopt;
            }
            const auto& p = points_[i];
            const bool matched = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
                return (first_side ? pr.first : pr.second) == p;
            });
            if (!matched) return p;
        }
    }

private:
    const Realization& r_;
    std::vector<PointCode> points_;
};

struct Neighbors {
    MaybeCode lo;   // image of the greatest matched point below
    MaybeCode hi;   // image of the least matched point above
};

Neighbors neighbors(const Realization& from, const PointCode& p, const Pairs& pairs, bool forward) {
    Neighbors n;
    MaybeCode lo_src, hi_src;
    for (const auto& pr : pairs) {
        const auto& src = forward ? pr.first : pr.second;
        const auto& dst = forward ? pr.second : pr.first;
        if (from.compare(src, p) < 0) {
            if (!lo_src || from.compare(src, *lo_src) > 0) {
                lo_src = src;
                n.lo = dst;
            }
        } else if (!hi_src || from.compare(src, *hi_src) < 0) {
            hi_src = src;
            n.hi = dst;
        }
    }
    return n;
}

// Chooses the image of p in `to`, preserving endpoints.
MaybeCode plain_image(const Realization& from, const Realization& to, const PointCode& p, const Neighbors& n,
                      std::string& why) {
    const auto facts = from.point_profile(p);
    auto inside = [&](const PointCode& c) {
        return (!n.lo || to.compare(*n.lo, c) < 0) && (!n.hi || to.compare(c, *n.hi) < 0);
    };
    if (facts.is_min || facts.is_max) {
        auto e = facts.is_min ? to.min_point() : to.max_point();
        if (!e || !inside(*e)) {
            why = std::string("the ") + (facts.is_min ? "minimum" : "maximum") + " has no admissible image";
            return std::nullopt;
        }
        return e;
    }
    auto c = to.first_between(n.lo, n.hi);
    for (int i = 0; i < 4 && c; ++i) {
        const auto f = to.point_profile(*c);
        if (f.is_min) {
            c = to.first_between(c, n.hi);
        } else if (f.is_max) {
            c = to.first_between(n.lo, c);
        } else {
            return c;
        }
    }
    why = "no interior point lies in the matching interval";
    return std::nullopt;
}

void insert_pair(Pairs& pairs, PointCode a, PointCode b) { pairs.emplace_back(std::move(a), std::move(b)); }

}  // namespace

BackAndForth back_and_forth(const OrderTerm& x, const OrderTerm& y, int rounds) {
    const Realization rx(x), ry(y);
    Stream sx(rx), sy(ry);
    BackAndForth out;
    for (int round = 1; round <= rounds; ++round) {
        bool forward = round % 2 == 1;
        auto p = forward ? sx.next_unmatched(out.pairs, true) : sy.next_unmatched(out.pairs, false);
        if (!p) {
            forward = !forward;
            p = forward ? sx.next_unmatched(out.pairs, true) : sy.next_unmatched(out.pairs, false);
            if (!p) break;  // both orders are finite and fully matched
        }
        const auto& from = forward ? rx : ry;
        const auto& to = forward ? ry : rx;
        std::string why;
        auto img = plain_image(from, to, *p, neighbors(from, *p, out.pairs, forward), why);
        if (!img) {
            out.failed_round = round;
            out.reason = (forward ? "x point " : "y point ") + from.format(*p) + ": " + why;
            return out;
        }
        if (forward) insert_pair(out.pairs, *p, *img);
        else insert_pair(out.pairs, *img, *p);
    }
    out.ok = true;
    return out;
}

BackAndForth back_and_forth_colored(const OrderTerm& x, const OrderTerm& y,
                                    const std::vector<std::size_t>& block_map, int rounds) {
    const Realization rx(x), ry(y);
    const auto& tx = rx.term();
    const auto& ty = ry.term();
    if (!tx.is(TermKind::Shuffle) || !ty.is(TermKind::Shuffle))
        throw std::invalid_argument("colored back-and-forth needs two shuffles");
    const std::size_t kx = tx.blocks().size();
    const std::size_t ky = ty.blocks().size();
    if (block_map.size() != kx || kx != ky) throw std::invalid_argument("block map is not a bijection");
    std::vector<std::size_t> inverse(ky, ky);
    for (std::size_t i = 0; i < kx; ++i) {
        if (block_map[i] >= ky || inverse[block_map[i]] != ky)
            throw std::invalid_argument("block map is not a bijection");
        inverse[block_map[i]] = i;
        if (!(tx.blocks()[i] == ty.blocks()[block_map[i]]))
            throw std::invalid_argument("corresponding blocks differ");
    }

    Stream sx(rx), sy(ry);
    BackAndForth out;
    std::vector<std::pair<std::string, std::string>> positions;

    for (int round = 1; round <= rounds; ++round) {
        const bool forward = round % 2 == 1;
        auto p = forward ? sx.next_unmatched(out.pairs, true) : sy.next_unmatched(out.pairs, false);
        if (!p) break;
        const auto& src_path = p->path;
        std::optional<std::string> image_path;
        std::optional<std::string> lo_src, hi_src, lo_img, hi_img;
        for (const auto& [px, py] : positions) {
            const auto& src = forward ? px : py;
            const auto& dst = forward ? py : px;
            const auto c = compare_positions(src, src_path);
            if (c == 0) {
                image_path = dst;
                break;
            }
            if (c < 0) {
                if (!lo_src || compare_positions(src, *lo_src) > 0) lo_src = src, lo_img = dst;
            } else if (!hi_src || compare_positions(src, *hi_src) < 0) {
                hi_src = src, hi_img = dst;
            }
        }
        if (!image_path) {
            const std::size_t color = src_path.size() % kx;
            const std::size_t target = forward ? block_map[color] : inverse[color];
            image_path = first_position_between(lo_img, hi_img, target, ky);
            if (forward) positions.emplace_back(src_path, *image_path);
            else positions.emplace_back(*image_path, src_path);
        }
        PointCode img = shuffle_code(*image_path, p->children[0]);
        if (forward) insert_pair(out.pairs, *p, std::move(img));
        else insert_pair(out.pairs, std::move(img), *p);
    }
    out.ok = true;
    return out;
}

bool is_partial_isomorphism(const OrderTerm& x, const OrderTerm& y,
                            const std::vector<std::pair<PointCode, PointCode>>& pairs) {
    const Realization rx(x), ry(y);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (rx.compare(pairs[i].first, pairs[j].first) != ry.compare(pairs[i].second, pairs[j].second))
                return false;
    return true;
}

// ---- cross check -------------------------------------------------------------

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Consistent: return "consistent";
        case CheckStatus::Counterexample: return "counterexample";
        case CheckStatus::WitnessFound: return "witness found";
        case CheckStatus::WitnessNotFound: return "witness not found";
    }
    return "?";
}

bool CheckReport::failed() const {
    return std::any_of(outcomes.begin(), outcomes.end(),
                       [](const CheckOutcome& o) { return o.status == CheckStatus::Counterexample; });
}

bool CheckReport::all_witnesses_found() const {
    return std::none_of(outcomes.begin(), outcomes.end(),
                        [](const CheckOutcome& o) { return o.status == CheckStatus::WitnessNotFound; });
}

std::string CheckReport::to_text() const {
    std::ostringstream os;
    os << "term: " << term << "\n";
    os << "budget: " << budget << "\n";
    os << "sampled: " << sampled << "\n";
    for (const auto& o : outcomes) {
        os << o.predicate << ": " << to_string(o.status);
        if (o.witness) os << " at " << *o.witness;
        if (!o.detail.empty()) os << " (" << o.detail << ")";
        os << "\n";
    }
    os << "result: " << (failed() ? "failed" : "consistent") << "\n";
    return os.str();
}

std::string CheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["term"] = term;
    j["budget"] = budget;
    j["sampled"] = sampled;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& o : outcomes) {
        nlohmann::ordered_json e;
        e["predicate"] = o.predicate;
        e["status"] = to_string(o.status);
        if (o.witness) e["witness"] = *o.witness;
        if (!o.detail.empty()) e["detail"] = o.detail;
        arr.push_back(std::move(e));
    }
    j["outcomes"] = std::move(arr);
    j["failed"] = failed();
    return j.dump();
}

CheckReport cross_check(const OrderTerm& t, std::size_t budget) {
    const auto start = std::chrono::steady_clock::now();
    const Realization r(t);
    const auto p = profile(t);
    const auto points = r.enumerate(budget);

    CheckReport rep;
    rep.term = print(t);
    rep.budget = budget;
    rep.sampled = points.size();

    std::vector<PointFacts> facts;
    facts.reserve(points.size());
    for (const auto& c : points) facts.push_back(r.point_profile(c));

    auto outcome = [&](std::string name, CheckStatus s, std::optional<std::size_t> at = std::nullopt,
                       std::string detail = "") {
        CheckOutcome o{std::move(name), s, std::nullopt, std::move(detail)};
        if (at) o.witness = r.format(points[*at]);
        rep.outcomes.push_back(std::move(o));
    };
    auto find = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (pred(facts[i])) return i;
        return std::nullopt;
    };
    // A claim that every point satisfies `holds`; its negation needs a witness.
    auto universal = [&](const std::string& name, bool claimed, auto holds) {
        auto bad = find([&](const PointFacts& f) { return !holds(f); });
        if (claimed) outcome(name, bad ? CheckStatus::Counterexample : CheckStatus::Consistent, bad);
        else outcome(name, bad ? CheckStatus::WitnessFound : CheckStatus::WitnessNotFound, bad);
    };

    {
        const std::size_t expected = p.size ? static_cast<std::size_t>(std::min<std::uint64_t>(*p.size, budget)) : budget;
        outcome("size", points.size() == expected ? CheckStatus::Consistent : CheckStatus::Counterexample,
                std::nullopt, std::to_string(points.size()) + " of " + std::to_string(expected) + " points");
    }
    auto endpoint = [&](const std::string& name, bool claimed, bool PointFacts::*flag) {
        const auto n = static_cast<std::size_t>(
            std::count_if(facts.begin(), facts.end(), [&](const PointFacts& f) { return f.*flag; }));
        const auto at = find([&](const PointFacts& f) { return f.*flag; });
        if (n > 1) outcome(name, CheckStatus::Counterexample, at, "more than one endpoint");
        else if (claimed) outcome(name, at ? CheckStatus::WitnessFound : CheckStatus::WitnessNotFound, at);
        else outcome(name, at ? CheckStatus::Counterexample : CheckStatus::Consistent, at);
    };
    endpoint("left_endpoint", p.has_left_endpoint, &PointFacts::is_min);
    endpoint("right_endpoint", p.has_right_endpoint, &PointFacts::is_max);
    universal("succ_pair_free", p.succ_pair_free, [](const PointFacts& f) { return !f.has_successor; });
    universal("succ_complete", p.succ_complete, [](const PointFacts& f) { return f.is_max || f.has_successor; });
    universal("pred_complete", p.pred_complete, [](const PointFacts& f) { return f.is_min || f.has_predecessor; });

    // Order-level checks on the sorted sample.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return r.compare(points[a], points[b]) < 0; });

    std::optional<std::size_t> order_bad, succ_bad, dense_bad;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const auto& a = points[order[k]];
        const auto& b = points[order[k + 1]];
        if (r.compare(a, b) >= 0) {
            if (!order_bad) order_bad = order[k];
            continue;
        }
        const auto mid = r.between(a, b);
        const auto s = r.successor(a);
        const bool mid_ok = !mid || (r.compare(a, *mid) < 0 && r.compare(*mid, b) < 0);
        const bool agree = mid_ok && (mid.has_value() != (s && *s == b));
        const bool succ_ok = !s || (r.compare(a, *s) < 0 && r.predecessor(*s) == a);
        if ((!agree || !succ_ok) && !succ_bad) succ_bad = order[k];
        if (p.dense_class != DenseClass::None && !mid && !dense_bad) dense_bad = order[k];
    }
    outcome("strict_total_order", order_bad ? CheckStatus::Counterexample : CheckStatus::Consistent, order_bad);
    outcome("between_matches_successor", succ_bad ? CheckStatus::Counterexample : CheckStatus::Consistent, succ_bad);
    if (p.dense_class != DenseClass::None)
        outcome(std::string("dense ") + to_string(p.dense_class),
                dense_bad ? CheckStatus::Counterexample : CheckStatus::Consistent, dense_bad);

    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace ordtype
