#include "ordtype/profile.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ordtype {

namespace {

using Size = std::optional<std::uint64_t>;

Size add_sizes(Size a, Size b) {
    if (!a || !b) return std::nullopt;
    if (*a > std::numeric_limits<std::uint64_t>::max() - *b) return std::nullopt;
    return *a + *b;
}

Size mul_sizes(Size a, Size b) {
    if ((a && *a == 0) || (b && *b == 0)) return 0;
    if (!a || !b) return std::nullopt;
    if (*a > std::numeric_limits<std::uint64_t>::max() / *b) return std::nullopt;
    return *a * *b;
}

void set_dense_class(StructProfile& p) {
    const bool dense = p.succ_pair_free && !p.is_empty && !p.is_singleton();
    if (!dense) {
        p.dense_class = DenseClass::None;
    } else if (p.has_left_endpoint && p.has_right_endpoint) {
        p.dense_class = DenseClass::OneQOne;
    } else if (p.has_left_endpoint) {
        p.dense_class = DenseClass::OneQ;
    } else if (p.has_right_endpoint) {
        p.dense_class = DenseClass::QOne;
    } else {
        p.dense_class = DenseClass::Q;
    }
}

StructProfile atom(std::optional<std::uint64_t> size, bool left, bool right, bool pair_free) {
    StructProfile p;
    p.is_empty = false;
    p.size = size;
    p.has_left_endpoint = left;
    p.has_right_endpoint = right;
    p.succ_pair_free = pair_free;
    p.succ_complete = true;
    p.pred_complete = true;
    return p;
}

// Operands are nonempty: desugar has removed every empty part.
StructProfile compute(const OrderTerm& t) {
    StructProfile p;
    switch (t.kind()) {
        case TermKind::Empty:
            break;
        case TermKind::Single:
            p = atom(1, true, true, true);
            break;
        case TermKind::Finite:
            p = atom(static_cast<std::uint64_t>(t.count()), true, true, false);
            break;
        case TermKind::Omega:
            p = atom(std::nullopt, true, false, false);
            break;
        case TermKind::OmegaStar:
            p = atom(std::nullopt, false, true, false);
            break;
        case TermKind::Zeta:
            p = atom(std::nullopt, false, false, false);
            break;
        case TermKind::Sum: {
            const auto a = compute(t.left());
            const auto b = compute(t.right());
            p.is_empty = false;
            p.size = add_sizes(a.size, b.size);
            p.has_left_endpoint = a.has_left_endpoint;
            p.has_right_endpoint = b.has_right_endpoint;
            p.succ_pair_free =
                a.succ_pair_free && b.succ_pair_free && !(a.has_right_endpoint && b.has_left_endpoint);
            p.succ_complete =
                a.succ_complete && b.succ_complete && (!a.has_right_endpoint || b.has_left_endpoint);
            p.pred_complete =
                a.pred_complete && b.pred_complete && (!b.has_left_endpoint || a.has_right_endpoint);
            break;
        }
        case TermKind::Product: {
            const auto x = compute(t.index());
            const auto y = compute(t.fiber());
            p.is_empty = false;
            p.size = mul_sizes(x.size, y.size);
            p.has_left_endpoint = x.has_left_endpoint && y.has_left_endpoint;
            p.has_right_endpoint = x.has_right_endpoint && y.has_right_endpoint;
            p.succ_pair_free = y.succ_pair_free &&
                               (!y.has_right_endpoint || !y.has_left_endpoint || x.succ_pair_free);
            // A copy's endpoint is excused only when the index has one point.
            p.succ_complete = y.succ_complete && (!y.has_right_endpoint || x.is_singleton() ||
                                                  (y.has_left_endpoint && x.succ_complete));
            p.pred_complete = y.pred_complete && (!y.has_left_endpoint || x.is_singleton() ||
                                                  (y.has_right_endpoint && x.pred_complete));
            break;
        }
        case TermKind::Shuffle: {
            p.is_empty = false;
            p.size = std::nullopt;
            p.has_left_endpoint = false;
            p.has_right_endpoint = false;
            p.succ_pair_free = true;
            p.succ_complete = true;
            p.pred_complete = true;
            for (const auto& block : t.blocks()) {
                const auto b = compute(block);
                p.succ_pair_free = p.succ_pair_free && b.succ_pair_free;
                p.succ_complete = p.succ_complete && b.succ_complete && !b.has_right_endpoint;
                p.pred_complete = p.pred_complete && b.pred_complete && !b.has_left_endpoint;
            }
            break;
        }
        case TermKind::Reverse:
            // Unreachable after desugar; kept total for direct callers.
            p = mirror(compute(t.body()));
            break;
    }
    set_dense_class(p);
    return p;
}

}  // namespace

const char* to_string(DenseClass d) {
    switch (d) {
        case DenseClass::None: return "None";
        case DenseClass::Q: return "Q";
        case DenseClass::OneQ: return "1+Q";
        case DenseClass::QOne: return "Q+1";
        case DenseClass::OneQOne: return "1+Q+1";
    }
    return "?";
}

StructProfile profile(const OrderTerm& t) { return compute(desugar(t)); }

StructProfile mirror(const StructProfile& p) {
    StructProfile m = p;
    std::swap(m.has_left_endpoint, m.has_right_endpoint);
    std::swap(m.succ_complete, m.pred_complete);
    set_dense_class(m);
    return m;
}

std::string describe(const StructProfile& p) {
    std::ostringstream os;
    os << "empty=" << p.is_empty << " size=";
    if (p.size) os << *p.size; else os << "inf";
    os << " left=" << p.has_left_endpoint << " right=" << p.has_right_endpoint
       << " pair_free=" << p.succ_pair_free << " succ_complete=" << p.succ_complete
       << " pred_complete=" << p.pred_complete << " dense=" << to_string(p.dense_class);
    return os.str();
}

}  // namespace ordtype
