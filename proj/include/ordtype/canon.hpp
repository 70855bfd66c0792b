#pragma once

// Canonical forms for order-type terms.
//
// A canonical form is a sequence of components, each either a scattered part
// (a normalized sum of finite, N, N~, Z and power atoms) or a shuffle node
// whose block set is the unique minimal representation of that shuffle.  On
// the tame fragment (no power atoms) structural equality of canonical forms
// is isomorphism.  Products that no rule can rewrite raise Stuck; a wrong
// form is never produced.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordtype/errors.hpp"
#include "ordtype/term.hpp"

namespace ordtype {

enum class PowKind : std::uint8_t { Omega, OmegaStar, Zeta };

// One finite-condensation class of a scattered part, or an irreducible
// N-, N~- or Z-indexed power of a scattered body.
struct ScatAtom {
    enum class Kind : std::uint8_t { Fin, W, Wstar, Zat, Pow };

    Kind kind = Kind::Fin;
    std::uint64_t count = 0;               // Fin
    PowKind pow = PowKind::Omega;          // Pow
    std::vector<ScatAtom> body;            // Pow

    static ScatAtom fin(std::uint64_t k) { return {Kind::Fin, k, PowKind::Omega, {}}; }
    static ScatAtom w() { return {Kind::W, 0, PowKind::Omega, {}}; }
    static ScatAtom wstar() { return {Kind::Wstar, 0, PowKind::Omega, {}}; }
    static ScatAtom zat() { return {Kind::Zat, 0, PowKind::Omega, {}}; }
    static ScatAtom power(PowKind k, std::vector<ScatAtom> b) { return {Kind::Pow, 0, k, std::move(b)}; }

    friend bool operator==(const ScatAtom& a, const ScatAtom& b);
    friend std::strong_ordering operator<=>(const ScatAtom& a, const ScatAtom& b);
};

struct ScatNF {
    std::vector<ScatAtom> atoms;

    bool empty() const { return atoms.empty(); }
    bool tame() const;

    friend bool operator==(const ScatNF&, const ScatNF&) = default;
    friend std::strong_ordering operator<=>(const ScatNF& a, const ScatNF& b);
};

struct CanonicalForm;

struct Component {
    bool shuffle = false;
    ScatNF scat;                           // scattered part
    std::vector<CanonicalForm> blocks;     // shuffle: sorted, duplicate-free

    bool is_shuffle() const { return shuffle; }
    static Component scattered(ScatNF s);
    static Component shuffled(std::vector<CanonicalForm> blocks);

    friend bool operator==(const Component& a, const Component& b);
    friend std::strong_ordering operator<=>(const Component& a, const Component& b);
};

struct CanonicalForm {
    std::vector<Component> components;
    bool tame = true;                      // no power atom anywhere

    bool empty() const { return components.empty(); }
    std::size_t shuffle_count() const;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b);
    friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b);
};

class Stuck : public std::runtime_error {
public:
    Stuck(OrderTerm subterm, const std::string& what);
    const OrderTerm& subterm() const { return subterm_; }

private:
    OrderTerm subterm_;
};

// Normal form of a shuffle-free term; nullopt when the term contains a
// shuffle after desugaring.
std::optional<ScatNF> scat_normalize(const OrderTerm& t);

// Applies the atom merge rules (k+l, k+N, N~+k, N~+N) to a flat atom list.
ScatNF normalize_scat(std::vector<ScatAtom> atoms);

// Throws Stuck or InternalInvariantViolation.
CanonicalForm canonicalize(const OrderTerm& t);
std::optional<CanonicalForm> try_canonicalize(const OrderTerm& t);

// Normalized concatenation (order sum) of two canonical forms.
CanonicalForm concat(const CanonicalForm& a, const CanonicalForm& b);
CanonicalForm from_scat(ScatNF s);

// Canonical lexicographic product: index-many copies of fiber.
CanonicalForm product(const CanonicalForm& index, const CanonicalForm& fiber);

// Canonical shuffle of the given blocks (empty blocks are dropped).
CanonicalForm make_shuffle(std::vector<CanonicalForm> blocks);

// The block set that results from flattening one composite block, if the
// flatten rule applies to the given (sorted, duplicate-free) block set.
std::optional<std::vector<CanonicalForm>> flatten_step(const std::vector<CanonicalForm>& blocks);

bool has_block(const std::vector<CanonicalForm>& blocks, const CanonicalForm& x);

enum class CfVerdict { Equal, NotEqual, StructuralOnly };
const char* to_string(CfVerdict v);

// Structural equality, widened on non-tame forms by up to two unrollings of
// N-, N~- and Z-indexed powers.  A non-tame mismatch is StructuralOnly.
CfVerdict cf_equal(const CanonicalForm& a, const CanonicalForm& b);

// Canonical form of the reversed order.
CanonicalForm mirror(const CanonicalForm& cf);

// Segment families of a tame form.  The finite initial segments of N are
// enumerated up to finite_bound.  Both throw Unsupported on non-tame input.
std::vector<CanonicalForm> initial_segments(const CanonicalForm& t, std::uint64_t finite_bound);
std::vector<CanonicalForm> final_segments(const CanonicalForm& t, std::uint64_t finite_bound);

bool is_initial_segment(const CanonicalForm& s, const CanonicalForm& t);
bool is_final_segment(const CanonicalForm& s, const CanonicalForm& t);

OrderTerm to_term(const ScatNF& s);
OrderTerm to_term(const CanonicalForm& cf);
std::string to_string(const CanonicalForm& cf);

}  // namespace ordtype
