#pragma once

// Decision procedures for self-similarity, left absorption and squares.
// Every verdict is computed from the canonical L + Q[blocks] + R shape and
// from structural profiles; the canonicalizer's Stuck outcome surfaces here
// as Unsupported.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordtype/canon.hpp"
#include "ordtype/errors.hpp"
#include "ordtype/term.hpp"

namespace ordtype {

struct Decomposition {
    CanonicalForm left;
    std::vector<CanonicalForm> blocks;
    CanonicalForm right;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct NotShape {
    std::string reason;
};

// NotShape when the canonical form is not [scat?, shuffle, scat?].
// Throws Unsupported when canonicalization is stuck or the form is not tame.
std::variant<Decomposition, NotShape> decompose(const OrderTerm& t);

struct SelfSimilarity {
    bool value = false;
    std::optional<Decomposition> witness;
    std::string reason;
};

SelfSimilarity is_self_similar(const OrderTerm& t);

struct AbsorptionClass {
    enum class Kind { NotSelfSimilar, SelfSimilarNotAbsorbing, Case };

    Kind kind = Kind::NotSelfSimilar;
    int case_number = 0;               // 1..8 when kind == Case
    std::optional<Decomposition> witness;
    std::string reason;
};

AbsorptionClass classify_absorption(const OrderTerm& t);

// The eight structural conditions on (L, blocks, R), each evaluated on its
// own.  At most one holds for any decomposition.
std::array<bool, 8> case_conditions(const Decomposition& d);

bool absorbs(const OrderTerm& a, const OrderTerm& x);

enum class Spectrum {
    All,
    HasLeft,
    HasRight,
    ExactlyOneQOneOr1,
    BothEndsSuccPredComplete,
    BothEndsSuccComplete,
    BothEndsPredComplete,
    BothEnds,
    TrivialOnly,
};

const char* to_string(Spectrum s);
// Human-readable membership condition for A.
std::string describe(Spectrum s);

Spectrum spectrum_description(const OrderTerm& x);

// Membership of a fixed order in a spectrum, from its profile alone.
bool spectrum_admits(Spectrum s, const OrderTerm& a);

bool is_square(const OrderTerm& x);

enum class SquareVerdict { True, False, NotApplicable };
const char* to_string(SquareVerdict v);

struct SquareTwoEndpoints {
    SquareVerdict verdict = SquareVerdict::NotApplicable;
    int case_number = 0;               // 1..5 when verdict == True
};

// Squares of orders with both endpoints, decided by the five-case
// characterization over the decomposition.
SquareTwoEndpoints square_two_endpoints(const OrderTerm& x);

std::string to_string(const AbsorptionClass& c);

}  // namespace ordtype
