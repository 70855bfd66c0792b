#include "ordtype/term.hpp"

#include <algorithm>
#include <sstream>

namespace ordtype {

namespace {

std::shared_ptr<const detail::TermNode> make_node(TermKind kind, std::int64_t count = 0,
                                                  std::vector<OrderTerm> children = {}) {
    auto n = std::make_shared<detail::TermNode>();
    n->kind = kind;
    n->count = count;
    n->children = std::move(children);
    return n;
}

// Atoms are interned; everything else is allocated on construction.
const std::shared_ptr<const detail::TermNode>& atom_node(TermKind kind) {
    static const std::shared_ptr<const detail::TermNode> nodes[] = {
        make_node(TermKind::Empty),  make_node(TermKind::Single),    make_node(TermKind::Finite),
        make_node(TermKind::Omega),  make_node(TermKind::OmegaStar), make_node(TermKind::Zeta),
    };
    return nodes[static_cast<int>(kind)];
}

}  // namespace

OrderTerm::OrderTerm() : node_(atom_node(TermKind::Empty)) {}

OrderTerm::OrderTerm(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}

OrderTerm OrderTerm::empty() { return OrderTerm(atom_node(TermKind::Empty)); }
OrderTerm OrderTerm::single() { return OrderTerm(atom_node(TermKind::Single)); }
OrderTerm OrderTerm::finite(std::int64_t n) { return OrderTerm(make_node(TermKind::Finite, n)); }
OrderTerm OrderTerm::omega() { return OrderTerm(atom_node(TermKind::Omega)); }
OrderTerm OrderTerm::omega_star() { return OrderTerm(atom_node(TermKind::OmegaStar)); }
OrderTerm OrderTerm::zeta() { return OrderTerm(atom_node(TermKind::Zeta)); }

OrderTerm OrderTerm::sum(OrderTerm left, OrderTerm right) {
    return OrderTerm(make_node(TermKind::Sum, 0, {std::move(left), std::move(right)}));
}

OrderTerm OrderTerm::product(OrderTerm index, OrderTerm fiber) {
    return OrderTerm(make_node(TermKind::Product, 0, {std::move(index), std::move(fiber)}));
}

OrderTerm OrderTerm::shuffle(std::vector<OrderTerm> blocks) {
    return OrderTerm(make_node(TermKind::Shuffle, 0, std::move(blocks)));
}

OrderTerm OrderTerm::reverse(OrderTerm body) {
    // N~ has a single tree so that printing it is reversible.
    if (body.kind() == TermKind::Omega) return omega_star();
    return OrderTerm(make_node(TermKind::Reverse, 0, {std::move(body)}));
}

OrderTerm OrderTerm::rationals() { return shuffle({single()}); }

TermKind OrderTerm::kind() const { return node_->kind; }
std::int64_t OrderTerm::count() const { return node_->count; }
const OrderTerm& OrderTerm::left() const { return node_->children.at(0); }
const OrderTerm& OrderTerm::right() const { return node_->children.at(1); }
const OrderTerm& OrderTerm::index() const { return node_->children.at(0); }
const OrderTerm& OrderTerm::fiber() const { return node_->children.at(1); }
const OrderTerm& OrderTerm::body() const { return node_->children.at(0); }
const std::vector<OrderTerm>& OrderTerm::blocks() const { return node_->children; }
const std::vector<OrderTerm>& OrderTerm::children() const { return node_->children; }

bool operator==(const OrderTerm& a, const OrderTerm& b) {
    if (a.node_ == b.node_) return true;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const OrderTerm& a, const OrderTerm& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (auto c = a.count() <=> b.count(); c != 0) return c;
    const auto& x = a.node_->children;
    const auto& y = b.node_->children;
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

ValidationError::ValidationError(ValidationErrorKind kind, OrderTerm offending, const std::string& what)
    : std::runtime_error(what), kind_(kind), offending_(std::move(offending)) {}

const char* to_string(ValidationErrorKind kind) {
    switch (kind) {
        case ValidationErrorKind::EmptyShuffleBlock: return "EmptyShuffleBlock";
        case ValidationErrorKind::EmptyBlockList: return "EmptyBlockList";
        case ValidationErrorKind::BadFinite: return "BadFinite";
    }
    return "?";
}

void validate(const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Finite:
            if (t.count() < 2)
                throw ValidationError(ValidationErrorKind::BadFinite, t,
                                      "finite order " + std::to_string(t.count()) +
                                          " must use the 0 or 1 constructor");
            return;
        case TermKind::Shuffle:
            if (t.blocks().empty())
                throw ValidationError(ValidationErrorKind::EmptyBlockList, t, "shuffle with no blocks");
            for (const auto& b : t.blocks()) {
                if (b.is(TermKind::Empty))
                    throw ValidationError(ValidationErrorKind::EmptyShuffleBlock, t,
                                          "shuffle block is the empty order");
                validate(b);
            }
            return;
        case TermKind::Sum:
            validate(t.left());
            validate(t.right());
            return;
        case TermKind::Product:
            validate(t.index());
            validate(t.fiber());
            return;
        case TermKind::Reverse:
            validate(t.body());
            return;
        default:
            return;
    }
}

namespace {

OrderTerm desugar_impl(const OrderTerm& t, bool reversed) {
    switch (t.kind()) {
        case TermKind::Empty:
        case TermKind::Single:
        case TermKind::Finite:
        case TermKind::Zeta:
            return t;
        case TermKind::Omega:
            return reversed ? OrderTerm::omega_star() : t;
        case TermKind::OmegaStar:
            return reversed ? OrderTerm::omega() : t;
        case TermKind::Reverse:
            return desugar_impl(t.body(), !reversed);
        case TermKind::Sum: {
            auto a = desugar_impl(t.left(), reversed);
            auto b = desugar_impl(t.right(), reversed);
            if (reversed) std::swap(a, b);
            if (a.is(TermKind::Empty)) return b;
            if (b.is(TermKind::Empty)) return a;
            return OrderTerm::sum(std::move(a), std::move(b));
        }
        case TermKind::Product: {
            auto x = desugar_impl(t.index(), reversed);
            auto y = desugar_impl(t.fiber(), reversed);
            if (x.is(TermKind::Empty) || y.is(TermKind::Empty)) return OrderTerm::empty();
            return OrderTerm::product(std::move(x), std::move(y));
        }
        case TermKind::Shuffle: {
            std::vector<OrderTerm> blocks;
            blocks.reserve(t.blocks().size());
            for (const auto& b : t.blocks()) {
                auto d = desugar_impl(b, reversed);
                if (!d.is(TermKind::Empty)) blocks.push_back(std::move(d));
            }
            if (blocks.empty()) return OrderTerm::empty();
            return OrderTerm::shuffle(std::move(blocks));
        }
    }
    return t;
}

bool any_node(const OrderTerm& t, TermKind kind) {
    if (t.is(kind)) return true;
    const auto& cs = t.children();
    return std::any_of(cs.begin(), cs.end(), [kind](const OrderTerm& c) { return any_node(c, kind); });
}

void debug_into(std::ostringstream& os, const OrderTerm& t) {
    switch (t.kind()) {
        case TermKind::Empty: os << "Empty"; return;
        case TermKind::Single: os << "Single"; return;
        case TermKind::Finite: os << "Finite(" << t.count() << ")"; return;
        case TermKind::Omega: os << "Omega"; return;
        case TermKind::OmegaStar: os << "OmegaStar"; return;
        case TermKind::Zeta: os << "Zeta"; return;
        case TermKind::Sum:
            os << "Sum(";
            debug_into(os, t.left());
            os << ", ";
            debug_into(os, t.right());
            os << ")";
            return;
        case TermKind::Product:
            os << "Product(";
            debug_into(os, t.index());
            os << ", ";
            debug_into(os, t.fiber());
            os << ")";
            return;
        case TermKind::Shuffle:
            os << "Shuffle([";
            for (std::size_t i = 0; i < t.blocks().size(); ++i) {
                if (i) os << ", ";
                debug_into(os, t.blocks()[i]);
            }
            os << "])";
            return;
        case TermKind::Reverse:
            os << "Reverse(";
            debug_into(os, t.body());
            os << ")";
            return;
    }
}

}  // namespace

OrderTerm desugar(const OrderTerm& t) { return desugar_impl(t, false); }

bool contains_shuffle(const OrderTerm& t) { return any_node(t, TermKind::Shuffle); }
bool contains_reverse(const OrderTerm& t) { return any_node(t, TermKind::Reverse); }

std::string debug_string(const OrderTerm& t) {
    std::ostringstream os;
    debug_into(os, t);
    return os.str();
}

}  // namespace ordtype
