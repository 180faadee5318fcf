#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "rtz/di_codes.hpp"

using namespace rtz;

namespace {

// independent oracle: count of asserted rails decides the class
CodeClass oracle(const std::vector<Level>& rails) {
    int high = 0;
    for (Level l : rails) high += l ? 1 : 0;
    if (high == 0) return CodeClass::Spacer;
    if (high == 1) return CodeClass::Valid;
    return CodeClass::Invalid;
}

}  // namespace

TEST_CASE("classify matches the one-hot oracle over all rail patterns") {
    for (int width = 1; width <= 4; ++width) {
        for (int bits = 0; bits < (1 << width); ++bits) {
            std::vector<Level> rails(width);
            for (int i = 0; i < width; ++i) rails[i] = (bits >> i) & 1;
            CHECK(classify(std::span<const Level>(rails)) == oracle(rails));
        }
    }
}

TEST_CASE("classify rejects an empty rail group") {
    std::vector<Level> none;
    std::span<const Level> empty(none);
    CHECK_THROWS_AS(classify(empty), std::invalid_argument);
}

TEST_CASE("dual-rail encode/decode round trip") {
    for (int bit = 0; bit < 2; ++bit) {
        DualRail d = encode_dual_rail(bit);
        CHECK(classify(d) == CodeClass::Valid);
        DualRailValue v = decode_dual_rail(d);
        CHECK(v.cls == CodeClass::Valid);
        CHECK(v.bit == bit);
    }
    CHECK(encode_dual_rail(1) == DualRail{1, 0});
    CHECK(encode_dual_rail(0) == DualRail{0, 1});
}

TEST_CASE("dual-rail spacer and invalid words") {
    CHECK(decode_dual_rail(DualRail{0, 0}).cls == CodeClass::Spacer);
    CHECK(decode_dual_rail(DualRail{1, 1}).cls == CodeClass::Invalid);
}

TEST_CASE("1-of-4 encode/decode round trip") {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            OneOfFour q = encode_one_of_four(x, y);
            CHECK(classify(q) == CodeClass::Valid);
            OneOfFourValue v = decode_one_of_four(q);
            CHECK(v.cls == CodeClass::Valid);
            CHECK(v.x == x);
            CHECK(v.y == y);
        }
    // rail index is 2x + y
    CHECK(encode_one_of_four(0, 0) == OneOfFour{1, 0, 0, 0});
    CHECK(encode_one_of_four(0, 1) == OneOfFour{0, 1, 0, 0});
    CHECK(encode_one_of_four(1, 0) == OneOfFour{0, 0, 1, 0});
    CHECK(encode_one_of_four(1, 1) == OneOfFour{0, 0, 0, 1});
}

TEST_CASE("1-of-4 spacer and invalid words") {
    CHECK(decode_one_of_four(OneOfFour{0, 0, 0, 0}).cls == CodeClass::Spacer);
    CHECK(decode_one_of_four(OneOfFour{1, 0, 1, 0}).cls == CodeClass::Invalid);
    CHECK(decode_one_of_four(OneOfFour{1, 1, 1, 1}).cls == CodeClass::Invalid);
}

TEST_CASE("code class names") {
    CHECK(to_string(CodeClass::Valid) == "valid");
    CHECK(to_string(CodeClass::Spacer) == "spacer");
    CHECK(to_string(CodeClass::Invalid) == "invalid");
}
