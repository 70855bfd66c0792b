#pragma once

// Compositional first-order facts about the order a term denotes: endpoints,
// successor structure and the dense type.  These are exactly the conditions
// the absorption table tests on the absorbed factor.

#include <cstdint>
#include <optional>
#include <string>

#include "ordtype/term.hpp"

namespace ordtype {

enum class DenseClass : std::uint8_t { None, Q, OneQ, QOne, OneQOne };

const char* to_string(DenseClass d);

struct StructProfile {
    bool is_empty = true;
    // Number of points; nullopt when countably infinite.  Saturates.
    std::optional<std::uint64_t> size = 0;
    bool has_left_endpoint = false;
    bool has_right_endpoint = false;
    // No point has an immediate successor.
    bool succ_pair_free = true;
    // Every point other than the maximum has an immediate successor.
    bool succ_complete = true;
    // Every point other than the minimum has an immediate predecessor.
    bool pred_complete = true;
    DenseClass dense_class = DenseClass::None;

    bool is_singleton() const { return size && *size == 1; }
    bool is_infinite() const { return !size.has_value(); }

    friend bool operator==(const StructProfile&, const StructProfile&) = default;
};

// Accepts any validated term; reversal and empty parts are desugared first.
StructProfile profile(const OrderTerm& t);

// The profile of the reversed order.
StructProfile mirror(const StructProfile& p);

std::string describe(const StructProfile& p);

}  // namespace ordtype
