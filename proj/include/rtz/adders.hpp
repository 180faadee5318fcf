#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtz/netlist.hpp"
#include "rtz/sim.hpp"

namespace rtz {

// Net handles for one full adder stage. Internal nets keep short stable
// names (int1..int3, isum1/isum0) with a per-stage suffix so traces and
// reports stay readable.
struct FullAdderPorts {
    NetId e[4] = {kNoNet, kNoNet, kNoNet, kNoNet};  // 1-of-4 operand input
    NetId cin1 = kNoNet, cin0 = kNoNet;
    NetId sum1 = kNoNet, sum0 = kNoNet;
    NetId cout1 = kNoNet, cout0 = kNoNet;
    NetId int1 = kNoNet, int2 = kNoNet, int3 = kNoNet;
    NetId isum1 = kNoNet, isum0 = kNoNet;
    GateId cout1_gate = 0, cout0_gate = 0;  // the stage's AO21 gates
};

struct EncoderPorts {
    NetId a1 = kNoNet, a0 = kNoNet, b1 = kNoNet, b0 = kNoNet;
    NetId e[4] = {kNoNet, kNoNet, kNoNet, kNoNet};
};

struct RcaOptions {
    bool include_encoders = true;
    bool structural_c2 = false;   // expand behavioral C2 into AO222+feedback
    bool include_detector = false;  // completion detector over input groups
};

struct RcaDescriptor {
    std::uint32_t width = 0;
    std::vector<FullAdderPorts> stages;
    std::vector<EncoderPorts> encoders;  // empty without encoders
    NetId cin1 = kNoNet, cin0 = kNoNet;
    bool has_encoders = false;
    bool has_detector = false;
    NetId done = kNoNet;
};

// Dual-rail to 1-of-4 encoder: E0=C(A0,B0), E1=C(A0,B1), E2=C(A1,B0),
// E3=C(A1,B1).
EncoderPorts append_encoder(Circuit& c, NetId a1, NetId a0, NetId b1, NetId b0,
                            const std::string& suffix);

// The hybrid input encoded early-output full adder:
//   int1 = e0 + e3          int2 = e1 + e2          int3 = int1 + int2
//   isum1 = int2.cin0 + int1.cin1     isum0 = int2.cin1 + int1.cin0
//   cout1 = int2.cin1 + e3            cout0 = int2.cin0 + e0
//   sum1 = C(isum1, int3)             sum0 = C(isum0, int3)
FullAdderPorts append_full_adder(Circuit& c, const NetId e[4], NetId cin1,
                                 NetId cin0, const std::string& suffix);

// Per group an OR over its rails, combined by a balanced tree of 2-input
// C-elements into one done signal. Throws on an empty group list.
NetId append_completion_detector(Circuit& c,
                                 const std::vector<std::vector<NetId>>& groups,
                                 const std::string& done_name);

// Standalone circuits with annotated port groups.
Circuit build_encoder();
Circuit build_full_adder();

// n-bit ripple carry adder; stage i's carry-out nets are stage i+1's
// carry-in nets. Gate count: 9n (+4n encoder C-elements when included).
std::pair<Circuit, RcaDescriptor> build_rca(std::uint32_t n,
                                            const RcaOptions& opts = {});

// Vector helpers matching build_rca's group declaration order.
GroupAssignment rca_vector(const RcaDescriptor& d, std::uint64_t a,
                           std::uint64_t b, int cin);

struct RcaOutputs {
    std::uint64_t sum = 0;
    int cout = 0;
};
RcaOutputs decode_rca_outputs(const RcaDescriptor& d, const CycleMetrics& m);

}  // namespace rtz
