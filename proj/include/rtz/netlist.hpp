#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rtz/di_codes.hpp"

namespace rtz {

// Gate library. Input ordering is significant:
//   OR2   (a, b)                out = a + b
//   AO21  (a, b, c)             out = a.b + c
//   AO22  (a, b, c, d)          out = a.b + c.d
//   AO222 (a, b, c, d, e, f)    out = a.b + c.d + e.f
//   C2    (a, b)                Muller C-element: sets on (1,1), resets on
//                               (0,0), holds otherwise
enum class GateKind : std::uint8_t { Or2, Ao21, Ao22, Ao222, C2 };

inline constexpr int kGateKindCount = 5;

int gate_arity(GateKind kind);
std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

using NetId = std::uint32_t;
using GateId = std::uint32_t;
inline constexpr NetId kNoNet = static_cast<NetId>(-1);

struct Net {
    NetId id = kNoNet;
    std::string name;
    std::optional<GateId> driver;  // unset for primary inputs
};

struct Gate {
    GateId id = 0;
    GateKind kind = GateKind::Or2;
    std::vector<NetId> inputs;
    NetId output = kNoNet;
};

enum class Encoding { Bare, DualRail, OneOfFour };
enum class PortDir { Input, Output };

int encoding_rails(Encoding enc);
std::string_view encoding_name(Encoding enc);
std::optional<Encoding> encoding_from_name(std::string_view name);

// Named group of nets forming one code word at the circuit boundary.
// Rail order follows the serialized convention: (w1, w0) for dual-rail,
// (f0, f1, f2, f3) for 1-of-4.
struct PortGroup {
    std::string name;
    PortDir dir = PortDir::Input;
    Encoding enc = Encoding::Bare;
    std::vector<NetId> nets;
};

// Gate-and-net graph. Construction is single-threaded; a completed circuit
// is immutable and may be shared read-only across simulation workers.
class Circuit {
public:
    NetId add_net(std::string name);
    GateId add_gate(GateKind kind, std::vector<NetId> inputs, NetId output);
    void add_port_group(std::string name, PortDir dir, Encoding enc,
                        std::vector<NetId> nets);

    std::optional<NetId> find_net(std::string_view name) const;
    NetId net_id(std::string_view name) const;  // throws if absent

    const Net& net(NetId id) const { return nets_.at(id); }
    const Gate& gate(GateId id) const { return gates_.at(id); }
    const std::vector<Net>& nets() const { return nets_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<PortGroup>& port_groups() const { return groups_; }

    const PortGroup* find_group(std::string_view name) const;
    std::vector<const PortGroup*> groups(PortDir dir) const;

    // Replaces all behavioral C2 gates by the AO222-with-feedback
    // realization. Net ids are preserved; gate ids are reassigned.
    void expand_c2();

private:
    std::vector<Net> nets_;
    std::vector<Gate> gates_;
    std::vector<PortGroup> groups_;
    std::unordered_map<std::string, NetId> by_name_;
};

// Single-gate function evaluation. `prev` is the gate's settled output and
// is ignored by the combinational kinds. Throws std::invalid_argument on an
// arity mismatch.
Level eval_gate(GateKind kind, std::span<const Level> inputs, Level prev);

// True for gates that may legally sit on a feedback loop: behavioral C2,
// and an AO222 whose output feeds back into itself in the canonical
// C-element pattern a.b + a.out + b.out.
bool is_state_holding(const Circuit& c, const Gate& g);

// Appends the structural C-element realization (one AO222 with feedback)
// and returns its output net.
NetId append_c2_ao222(Circuit& c, NetId a, NetId b, std::string out_name);

// Structural well-formedness: single driver per net, no dangling inputs,
// port groups reference existing nets with matching rail counts, no
// combinational cycles outside the blessed C-element feedback. Returns an
// empty list iff the circuit is valid.
std::vector<std::string> validate_circuit(const Circuit& c);

class NetlistError : public std::runtime_error {
public:
    NetlistError(int line, int col, const std::string& msg);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

struct ParseResult {
    Circuit circuit;
    std::vector<std::string> warnings;
};

// Parses the line-oriented netlist format ('#' starts a comment):
//   net <name>
//   input|output <group> bare <net>
//   input|output <group> dualrail <w1> <w0>
//   input|output <group> oneof4 <f0> <f1> <f2> <f3>
//   gate <kind> <in1> ... <inK> -> <out>
// Nets must be declared before use. Throws NetlistError with line/column
// on syntax errors and on structural validation failures.
ParseResult parse_netlist(std::string_view text);

std::string emit_netlist(const Circuit& c);

}  // namespace rtz
