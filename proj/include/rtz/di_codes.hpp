#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace rtz {

// Binary logic level, 0 or 1. The model has no X/Z states. An integral
// byte rather than bool so that std::vector<Level> is a plain array.
using Level = std::uint8_t;

// Classification of a delay-insensitive code word. Every rail assignment
// maps to exactly one class; INVALID words are kept representable so a
// protocol violation by a circuit under test is detectable, never hidden.
enum class CodeClass { Valid, Spacer, Invalid };

std::string_view to_string(CodeClass c);

// Dual-rail (1-of-2) code word. Serialized rail order is (w1, w0).
struct DualRail {
    Level w1 = false;
    Level w0 = false;
    friend bool operator==(const DualRail&, const DualRail&) = default;
};

// 1-of-4 code word carrying two bits (x, y). Serialized rail order is
// (f0, f1, f2, f3); (x=0,y=0)->f0, (0,1)->f1, (1,0)->f2, (1,1)->f3.
struct OneOfFour {
    Level f0 = false;
    Level f1 = false;
    Level f2 = false;
    Level f3 = false;
    friend bool operator==(const OneOfFour&, const OneOfFour&) = default;
};

// One-hot classification over any rail group.
// Throws std::invalid_argument on an empty group (caller bug).
CodeClass classify(std::span<const Level> rails);
CodeClass classify(const DualRail& d);
CodeClass classify(const OneOfFour& q);

DualRail encode_dual_rail(int bit);

struct DualRailValue {
    CodeClass cls;
    int bit = -1;  // meaningful only when cls == Valid
};
DualRailValue decode_dual_rail(const DualRail& d);

OneOfFour encode_one_of_four(int x, int y);

struct OneOfFourValue {
    CodeClass cls;
    int x = -1;
    int y = -1;
};
OneOfFourValue decode_one_of_four(const OneOfFour& q);

}  // namespace rtz
