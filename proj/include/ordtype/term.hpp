#pragma once

// Order-type term algebra.
//
// An OrderTerm is an immutable expression tree denoting a countable linear
// order: the atoms 0, 1, n, N, N~, Z and the constructors sum, lexicographic
// product (index-many copies of the fiber), shuffle and reversal.  Nodes are
// shared; copying a term is cheap.

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordtype {

enum class TermKind : std::uint8_t {
    Empty,
    Single,
    Finite,
    Omega,
    OmegaStar,
    Zeta,
    Sum,
    Product,
    Shuffle,
    Reverse,
};

class OrderTerm;

namespace detail {
struct TermNode;
}

class OrderTerm {
public:
    // Defaults to the empty order.
    OrderTerm();

    static OrderTerm empty();
    static OrderTerm single();
    // n >= 2; smaller values are representable only through empty()/single().
    static OrderTerm finite(std::int64_t n);
    static OrderTerm omega();
    static OrderTerm omega_star();
    static OrderTerm zeta();
    static OrderTerm sum(OrderTerm left, OrderTerm right);
    // index-many consecutive copies of fiber.
    static OrderTerm product(OrderTerm index, OrderTerm fiber);
    static OrderTerm shuffle(std::vector<OrderTerm> blocks);
    static OrderTerm reverse(OrderTerm body);
    // Q, i.e. the shuffle of the one-point order.
    static OrderTerm rationals();

    TermKind kind() const;
    std::int64_t count() const;   // Finite only
    const OrderTerm& left() const;   // Sum
    const OrderTerm& right() const;  // Sum
    const OrderTerm& index() const;  // Product
    const OrderTerm& fiber() const;  // Product
    const OrderTerm& body() const;   // Reverse
    const std::vector<OrderTerm>& blocks() const;  // Shuffle
    // Operands of any composite node, in order.
    const std::vector<OrderTerm>& children() const;

    bool is(TermKind k) const { return kind() == k; }

    // Identity of the shared node; usable as a memo key.
    const void* node_id() const { return node_.get(); }

    friend bool operator==(const OrderTerm& a, const OrderTerm& b);
    friend std::strong_ordering operator<=>(const OrderTerm& a, const OrderTerm& b);

private:
    explicit OrderTerm(std::shared_ptr<const detail::TermNode> node);
    std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
    TermKind kind = TermKind::Empty;
    std::int64_t count = 0;
    std::vector<OrderTerm> children;
};
}  // namespace detail

enum class ValidationErrorKind { EmptyShuffleBlock, EmptyBlockList, BadFinite };

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationErrorKind kind, OrderTerm offending, const std::string& what);
    ValidationErrorKind kind() const { return kind_; }
    const OrderTerm& offending() const { return offending_; }

private:
    ValidationErrorKind kind_;
    OrderTerm offending_;
};

const char* to_string(ValidationErrorKind kind);

// Throws ValidationError identifying the first offending subterm in preorder.
void validate(const OrderTerm& t);

// Pushes reversal down to the atoms and removes the empty order everywhere
// except as the whole result.  Shuffle blocks that denote the empty order are
// dropped (the remaining classes stay dense); a shuffle with no remaining
// block is empty.
OrderTerm desugar(const OrderTerm& t);

bool contains_shuffle(const OrderTerm& t);
bool contains_reverse(const OrderTerm& t);

// Constructor-style rendering, e.g. Sum(Omega, Shuffle([Zeta])).
std::string debug_string(const OrderTerm& t);

}  // namespace ordtype
