#include "ordtype/classify.hpp"

#include "ordtype/profile.hpp"

namespace ordtype {

namespace {

CanonicalForm canonical_or_unsupported(const OrderTerm& t) {
    try {
        return canonicalize(t);
    } catch (const Stuck& e) {
        throw Unsupported(std::string("canonicalization is stuck: ") + e.what());
    }
}

bool any_block(const Decomposition& d, const CanonicalForm& x) { return has_block(d.blocks, x); }

struct Junctions {
    bool l = false;    // L is a block
    bool r = false;    // R is a block
    bool rl = false;   // R + L is a block
};

Junctions junctions(const Decomposition& d) {
    return {any_block(d, d.left), any_block(d, d.right), any_block(d, concat(d.right, d.left))};
}

// Every point of the block has an immediate successor in the ambient order,
// which forces the block to have no maximum.
bool every_point_has_successor(const CanonicalForm& block) {
    const auto p = profile(to_term(block));
    return p.succ_complete && !p.has_right_endpoint;
}

bool every_point_has_predecessor(const CanonicalForm& block) {
    const auto p = profile(to_term(block));
    return p.pred_complete && !p.has_left_endpoint;
}

}  // namespace

std::variant<Decomposition, NotShape> decompose(const OrderTerm& t) {
    const auto cf = canonical_or_unsupported(t);
    if (!cf.tame) throw Unsupported("canonical form " + to_string(cf) + " has a non-tame scattered part");

    const auto& cs = cf.components;
    std::size_t pos = 0;
    Decomposition d;
    if (pos < cs.size() && !cs[pos].is_shuffle()) d.left = from_scat(cs[pos++].scat);
    if (pos >= cs.size() || !cs[pos].is_shuffle()) {
        if (cf.empty()) return NotShape{"the order is empty"};
        return NotShape{"the canonical form " + to_string(cf) + " has no shuffle component"};
    }
    d.blocks = cs[pos++].blocks;
    if (pos < cs.size() && !cs[pos].is_shuffle()) d.right = from_scat(cs[pos++].scat);
    if (pos != cs.size())
        return NotShape{"the canonical form " + to_string(cf) + " has more than one shuffle component"};
    return d;
}

SelfSimilarity is_self_similar(const OrderTerm& t) {
    auto shape = decompose(t);
    if (auto* ns = std::get_if<NotShape>(&shape)) return {false, std::nullopt, ns->reason};
    auto& d = std::get<Decomposition>(shape);

    bool left_ok = d.left.empty();
    bool right_ok = d.right.empty();
    for (const auto& b : d.blocks) {
        left_ok = left_ok || is_final_segment(d.left, b);
        right_ok = right_ok || is_initial_segment(d.right, b);
    }
    if (!left_ok)
        return {false, std::nullopt, to_string(d.left) + " is not a final segment of any block"};
    if (!right_ok)
        return {false, std::nullopt, to_string(d.right) + " is not an initial segment of any block"};
    return {true, std::move(d), ""};
}

std::array<bool, 8> case_conditions(const Decomposition& d) {
    const bool l0 = d.left.empty();
    const bool r0 = d.right.empty();
    const bool both = !l0 && !r0;
    const auto j = junctions(d);
    return {
        l0 && r0,
        j.l && !l0 && r0,
        j.r && l0 && !r0,
        both && j.l && j.r && !j.rl,
        both && j.rl && !j.l && !j.r,
        both && j.rl && j.l && !j.r,
        both && j.rl && !j.l && j.r,
        both && j.rl && j.l && j.r,
    };
}

AbsorptionClass classify_absorption(const OrderTerm& t) {
    auto ss = is_self_similar(t);
    AbsorptionClass out;
    if (!ss.value) {
        out.kind = AbsorptionClass::Kind::NotSelfSimilar;
        out.reason = ss.reason;
        return out;
    }
    const auto& d = *ss.witness;
    out.witness = d;
    const bool l0 = d.left.empty();
    const bool r0 = d.right.empty();
    const auto j = junctions(d);

    int n = 0;
    if (l0 && r0) {
        n = 1;
    } else if (!l0 && r0) {
        if (j.l) n = 2;
        else out.reason = "the left part " + to_string(d.left) + " is not a block";
    } else if (l0 && !r0) {
        if (j.r) n = 3;
        else out.reason = "the right part " + to_string(d.right) + " is not a block";
    } else if (!j.rl) {
        if (j.l && j.r) n = 4;
        else out.reason = "neither the junction " + to_string(concat(d.right, d.left)) +
                          " nor both end parts are blocks";
    } else {
        n = j.l ? (j.r ? 8 : 6) : (j.r ? 7 : 5);
    }
    if (n == 0) {
        out.kind = AbsorptionClass::Kind::SelfSimilarNotAbsorbing;
    } else {
        out.kind = AbsorptionClass::Kind::Case;
        out.case_number = n;
    }
    return out;
}

const char* to_string(Spectrum s) {
    switch (s) {
        case Spectrum::All: return "All";
        case Spectrum::HasLeft: return "HasLeft";
        case Spectrum::HasRight: return "HasRight";
        case Spectrum::ExactlyOneQOneOr1: return "ExactlyOneQOneOr1";
        case Spectrum::BothEndsSuccPredComplete: return "BothEndsSuccPredComplete";
        case Spectrum::BothEndsSuccComplete: return "BothEndsSuccComplete";
        case Spectrum::BothEndsPredComplete: return "BothEndsPredComplete";
        case Spectrum::BothEnds: return "BothEnds";
        case Spectrum::TrivialOnly: return "TrivialOnly";
    }
    return "?";
}

std::string describe(Spectrum s) {
    switch (s) {
        case Spectrum::All: return "every countable A";
        case Spectrum::HasLeft: return "A has a left endpoint";
        case Spectrum::HasRight: return "A has a right endpoint";
        case Spectrum::ExactlyOneQOneOr1: return "A is 1 + Q + 1 or 1";
        case Spectrum::BothEndsSuccPredComplete:
            return "A has both endpoints, every non-maximum has a successor "
                   "and every non-minimum has a predecessor";
        case Spectrum::BothEndsSuccComplete:
            return "A has both endpoints and every non-maximum has a successor";
        case Spectrum::BothEndsPredComplete:
            return "A has both endpoints and every non-minimum has a predecessor";
        case Spectrum::BothEnds: return "A has both endpoints";
        case Spectrum::TrivialOnly: return "only A = 1";
    }
    return "?";
}

Spectrum spectrum_description(const OrderTerm& x) {
    const auto c = classify_absorption(x);
    if (c.kind != AbsorptionClass::Kind::Case) return Spectrum::TrivialOnly;
    static constexpr Spectrum by_case[] = {
        Spectrum::All,
        Spectrum::HasLeft,
        Spectrum::HasRight,
        Spectrum::ExactlyOneQOneOr1,
        Spectrum::BothEndsSuccPredComplete,
        Spectrum::BothEndsSuccComplete,
        Spectrum::BothEndsPredComplete,
        Spectrum::BothEnds,
    };
    return by_case[c.case_number - 1];
}

bool spectrum_admits(Spectrum s, const OrderTerm& a) {
    const auto p = profile(a);
    if (p.is_singleton()) return true;
    const bool ends = p.has_left_endpoint && p.has_right_endpoint;
    switch (s) {
        case Spectrum::All: return true;
        case Spectrum::HasLeft: return p.has_left_endpoint;
        case Spectrum::HasRight: return p.has_right_endpoint;
        case Spectrum::ExactlyOneQOneOr1: return p.dense_class == DenseClass::OneQOne;
        case Spectrum::BothEndsSuccPredComplete: return ends && p.succ_complete && p.pred_complete;
        case Spectrum::BothEndsSuccComplete: return ends && p.succ_complete;
        case Spectrum::BothEndsPredComplete: return ends && p.pred_complete;
        case Spectrum::BothEnds: return ends;
        case Spectrum::TrivialOnly: return false;
    }
    return false;
}

bool absorbs(const OrderTerm& a, const OrderTerm& x) {
    const auto pa = profile(a);
    const auto px = profile(x);
    if (px.is_empty) return true;
    if (pa.is_empty) return false;
    if (pa.is_singleton()) return true;
    return spectrum_admits(spectrum_description(x), a);
}

bool is_square(const OrderTerm& x) {
    const auto p = profile(x);
    if (p.is_empty || p.is_singleton()) return true;
    return absorbs(x, x);
}

const char* to_string(SquareVerdict v) {
    switch (v) {
        case SquareVerdict::True: return "true";
        case SquareVerdict::False: return "false";
        case SquareVerdict::NotApplicable: return "not applicable";
    }
    return "?";
}

SquareTwoEndpoints square_two_endpoints(const OrderTerm& x) {
    const auto p = profile(x);
    if (!p.has_left_endpoint || !p.has_right_endpoint) return {SquareVerdict::NotApplicable, 0};
    // The five cases describe orders with at least two points.
    if (p.is_singleton()) return {SquareVerdict::True, 0};

    auto shape = decompose(x);
    if (std::holds_alternative<NotShape>(shape)) return {SquareVerdict::False, 0};
    const auto& d = std::get<Decomposition>(shape);
    if (d.left.empty() || d.right.empty()) return {SquareVerdict::False, 0};

    const auto one = from_scat(ScatNF{{ScatAtom::fin(1)}});
    const auto j = junctions(d);
    auto all_blocks = [&](auto pred) {
        for (const auto& b : d.blocks)
            if (!pred(b)) return false;
        return true;
    };

    int n = 0;
    if (d.left == one && d.right == one && d.blocks == std::vector<CanonicalForm>{one}) {
        n = 1;
    } else if (j.rl && !j.l && !j.r) {
        if (all_blocks([](const CanonicalForm& b) {
                return every_point_has_successor(b) && every_point_has_predecessor(b);
            }))
            n = 2;
    } else if (j.rl && j.l && !j.r) {
        if (all_blocks(every_point_has_successor)) n = 3;
    } else if (j.rl && !j.l && j.r) {
        if (all_blocks(every_point_has_predecessor)) n = 4;
    } else if (j.rl && j.l && j.r) {
        n = 5;
    }
    if (n == 0) return {SquareVerdict::False, 0};
    return {SquareVerdict::True, n};
}

std::string to_string(const AbsorptionClass& c) {
    switch (c.kind) {
        case AbsorptionClass::Kind::NotSelfSimilar: return "not self-similar";
        case AbsorptionClass::Kind::SelfSimilarNotAbsorbing: return "self-similar, not left-absorbing";
        case AbsorptionClass::Kind::Case: return "case " + std::to_string(c.case_number);
    }
    return "?";
}

}  // namespace ordtype
