#include "rtz/di_codes.hpp"

#include <stdexcept>

namespace rtz {

std::string_view to_string(CodeClass c) {
    switch (c) {
        case CodeClass::Valid: return "valid";
        case CodeClass::Spacer: return "spacer";
        case CodeClass::Invalid: return "invalid";
    }
    return "?";
}

CodeClass classify(std::span<const Level> rails) {
    if (rails.empty())
        throw std::invalid_argument("classify: empty rail group");
    int high = 0;
    for (Level l : rails)
        high += l ? 1 : 0;
    if (high == 0) return CodeClass::Spacer;
    if (high == 1) return CodeClass::Valid;
    return CodeClass::Invalid;
}

CodeClass classify(const DualRail& d) {
    const Level rails[] = {d.w1, d.w0};
    return classify(rails);
}

CodeClass classify(const OneOfFour& q) {
    const Level rails[] = {q.f0, q.f1, q.f2, q.f3};
    return classify(rails);
}

DualRail encode_dual_rail(int bit) {
    if (bit != 0 && bit != 1)
        throw std::invalid_argument("encode_dual_rail: bit must be 0 or 1");
    return bit ? DualRail{true, false} : DualRail{false, true};
}

DualRailValue decode_dual_rail(const DualRail& d) {
    switch (classify(d)) {
        case CodeClass::Valid: return {CodeClass::Valid, d.w1 ? 1 : 0};
        case CodeClass::Spacer: return {CodeClass::Spacer, -1};
        default: return {CodeClass::Invalid, -1};
    }
}

OneOfFour encode_one_of_four(int x, int y) {
    if ((x != 0 && x != 1) || (y != 0 && y != 1))
        throw std::invalid_argument("encode_one_of_four: bits must be 0 or 1");
    OneOfFour q;
    switch (x * 2 + y) {
        case 0: q.f0 = true; break;
        case 1: q.f1 = true; break;
        case 2: q.f2 = true; break;
        case 3: q.f3 = true; break;
    }
    return q;
}

OneOfFourValue decode_one_of_four(const OneOfFour& q) {
    switch (classify(q)) {
        case CodeClass::Spacer: return {CodeClass::Spacer, -1, -1};
        case CodeClass::Invalid: return {CodeClass::Invalid, -1, -1};
        default: break;
    }
    int idx = q.f1 ? 1 : q.f2 ? 2 : q.f3 ? 3 : 0;
    return {CodeClass::Valid, idx >> 1, idx & 1};
}

}  // namespace rtz
