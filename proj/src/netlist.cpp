#include "rtz/netlist.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace rtz {

namespace {

constexpr std::array<std::pair<std::string_view, GateKind>, 5> kKindNames{{
    {"or2", GateKind::Or2},
    {"ao21", GateKind::Ao21},
    {"ao22", GateKind::Ao22},
    {"ao222", GateKind::Ao222},
    {"c2", GateKind::C2},
}};

}  // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::Or2: return 2;
        case GateKind::Ao21: return 3;
        case GateKind::Ao22: return 4;
        case GateKind::Ao222: return 6;
        case GateKind::C2: return 2;
    }
    return 0;
}

std::string_view gate_kind_name(GateKind kind) {
    for (auto [name, k] : kKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (auto [n, k] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

int encoding_rails(Encoding enc) {
    switch (enc) {
        case Encoding::Bare: return 1;
        case Encoding::DualRail: return 2;
        case Encoding::OneOfFour: return 4;
    }
    return 0;
}

std::string_view encoding_name(Encoding enc) {
    switch (enc) {
        case Encoding::Bare: return "bare";
        case Encoding::DualRail: return "dualrail";
        case Encoding::OneOfFour: return "oneof4";
    }
    return "?";
}

std::optional<Encoding> encoding_from_name(std::string_view name) {
    if (name == "bare") return Encoding::Bare;
    if (name == "dualrail") return Encoding::DualRail;
    if (name == "oneof4") return Encoding::OneOfFour;
    return std::nullopt;
}

NetId Circuit::add_net(std::string name) {
    if (by_name_.contains(name))
        throw std::invalid_argument("duplicate net name: " + name);
    NetId id = static_cast<NetId>(nets_.size());
    by_name_.emplace(name, id);
    nets_.push_back(Net{id, std::move(name), std::nullopt});
    return id;
}

GateId Circuit::add_gate(GateKind kind, std::vector<NetId> inputs, NetId output) {
    if (static_cast<int>(inputs.size()) != gate_arity(kind))
        throw std::invalid_argument(
            std::string("gate ") + std::string(gate_kind_name(kind)) +
            ": expected " + std::to_string(gate_arity(kind)) + " inputs, got " +
            std::to_string(inputs.size()));
    GateId id = static_cast<GateId>(gates_.size());
    gates_.push_back(Gate{id, kind, std::move(inputs), output});
    if (output < nets_.size() && !nets_[output].driver)
        nets_[output].driver = id;
    return id;
}

void Circuit::add_port_group(std::string name, PortDir dir, Encoding enc,
                             std::vector<NetId> nets) {
    for (const auto& g : groups_)
        if (g.name == name && g.dir == dir)
            throw std::invalid_argument("duplicate port group: " + name);
    groups_.push_back(PortGroup{std::move(name), dir, enc, std::move(nets)});
}

std::optional<NetId> Circuit::find_net(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? std::nullopt : std::optional<NetId>(it->second);
}

NetId Circuit::net_id(std::string_view name) const {
    auto id = find_net(name);
    if (!id) throw std::invalid_argument("unknown net: " + std::string(name));
    return *id;
}

const PortGroup* Circuit::find_group(std::string_view name) const {
    for (const auto& g : groups_)
        if (g.name == name) return &g;
    return nullptr;
}

std::vector<const PortGroup*> Circuit::groups(PortDir dir) const {
    std::vector<const PortGroup*> out;
    for (const auto& g : groups_)
        if (g.dir == dir) out.push_back(&g);
    return out;
}

void Circuit::expand_c2() {
    std::vector<Gate> old = std::move(gates_);
    gates_.clear();
    for (auto& n : nets_)
        n.driver.reset();
    for (auto& g : old) {
        if (g.kind == GateKind::C2) {
            NetId a = g.inputs[0], b = g.inputs[1], out = g.output;
            add_gate(GateKind::Ao222, {a, b, a, out, b, out}, out);
        } else {
            add_gate(g.kind, std::move(g.inputs), g.output);
        }
    }
}

Level eval_gate(GateKind kind, std::span<const Level> in, Level prev) {
    if (static_cast<int>(in.size()) != gate_arity(kind))
        throw std::invalid_argument("eval_gate: arity mismatch");
    switch (kind) {
        case GateKind::Or2:
            return in[0] || in[1];
        case GateKind::Ao21:
            return (in[0] && in[1]) || in[2];
        case GateKind::Ao22:
            return (in[0] && in[1]) || (in[2] && in[3]);
        case GateKind::Ao222:
            return (in[0] && in[1]) || (in[2] && in[3]) || (in[4] && in[5]);
        case GateKind::C2:
            if (in[0] && in[1]) return true;
            if (!in[0] && !in[1]) return false;
            return prev;
    }
    return false;
}

namespace {

// Matches the C-element feedback idiom: products {x,y}, {x,out}, {y,out}.
bool matches_c2_feedback(const Gate& g) {
    if (g.kind != GateKind::Ao222) return false;
    NetId out = g.output;
    std::vector<std::pair<NetId, NetId>> products;
    for (int i = 0; i < 3; ++i) {
        NetId p = g.inputs[2 * i], q = g.inputs[2 * i + 1];
        if (p > q) std::swap(p, q);
        products.emplace_back(p, q);
    }
    // exactly one product without the output net
    int plain = -1;
    for (int i = 0; i < 3; ++i)
        if (products[i].first != out && products[i].second != out) {
            if (plain >= 0) return false;
            plain = i;
        }
    if (plain < 0) return false;
    NetId x = products[plain].first, y = products[plain].second;
    if (x == out || y == out) return false;
    std::vector<std::pair<NetId, NetId>> want = {
        {std::min(x, out), std::max(x, out)}, {std::min(y, out), std::max(y, out)}};
    std::vector<std::pair<NetId, NetId>> got;
    for (int i = 0; i < 3; ++i)
        if (i != plain) got.push_back(products[i]);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    return want == got;
}

}  // namespace

bool is_state_holding(const Circuit&, const Gate& g) {
    if (g.kind == GateKind::C2) return true;
    if (g.kind == GateKind::Ao222) {
        for (NetId in : g.inputs)
            if (in == g.output) return matches_c2_feedback(g);
    }
    return false;
}

NetId append_c2_ao222(Circuit& c, NetId a, NetId b, std::string out_name) {
    NetId out = c.add_net(std::move(out_name));
    c.add_gate(GateKind::Ao222, {a, b, a, out, b, out}, out);
    return out;
}

std::vector<std::string> validate_circuit(const Circuit& c) {
    std::vector<std::string> diags;
    const auto& nets = c.nets();
    const auto& gates = c.gates();

    auto net_label = [&](NetId id) {
        if (id < nets.size()) return "'" + nets[id].name + "'";
        return "#" + std::to_string(id);
    };

    std::vector<int> drivers(nets.size(), 0);
    for (const auto& g : gates) {
        if (static_cast<int>(g.inputs.size()) != gate_arity(g.kind))
            diags.push_back("gate " + std::to_string(g.id) + " (" +
                            std::string(gate_kind_name(g.kind)) + "): arity mismatch");
        for (NetId in : g.inputs)
            if (in >= nets.size())
                diags.push_back("gate " + std::to_string(g.id) +
                                ": dangling input references undeclared net #" +
                                std::to_string(in));
        if (g.output >= nets.size()) {
            diags.push_back("gate " + std::to_string(g.id) +
                            ": output references undeclared net #" +
                            std::to_string(g.output));
        } else {
            drivers[g.output]++;
        }
        if (g.kind == GateKind::Ao222) {
            bool self = false;
            for (NetId in : g.inputs)
                if (in == g.output) self = true;
            if (self && !matches_c2_feedback(g))
                diags.push_back("gate " + std::to_string(g.id) +
                                ": ao222 self-feedback does not match the C-element pattern");
        }
    }
    for (NetId i = 0; i < nets.size(); ++i)
        if (drivers[i] > 1)
            diags.push_back("net " + net_label(i) + " has multiple drivers (" +
                            std::to_string(drivers[i]) + ")");

    for (const auto& grp : c.port_groups()) {
        if (static_cast<int>(grp.nets.size()) != encoding_rails(grp.enc))
            diags.push_back("port group '" + grp.name + "': rail count " +
                            std::to_string(grp.nets.size()) + " does not match " +
                            std::string(encoding_name(grp.enc)));
        for (NetId id : grp.nets) {
            if (id >= nets.size()) {
                diags.push_back("port group '" + grp.name +
                                "' references undeclared net #" + std::to_string(id));
                continue;
            }
            if (grp.dir == PortDir::Input && nets[id].driver)
                diags.push_back("input group '" + grp.name + "': net " +
                                net_label(id) + " is driven by a gate");
        }
    }

    // Combinational cycle check over non-state-holding gates. Cycles routed
    // through a C-element (behavioral or structural) are sequential and fine.
    std::vector<int> comb_index(gates.size(), -1);
    std::vector<GateId> comb;
    for (const auto& g : gates)
        if (!is_state_holding(c, g)) {
            comb_index[g.id] = static_cast<int>(comb.size());
            comb.push_back(g.id);
        }
    std::vector<std::vector<int>> adj(comb.size());
    for (size_t ci = 0; ci < comb.size(); ++ci) {
        const Gate& g = gates[comb[ci]];
        for (NetId in : g.inputs) {
            if (in >= nets.size() || !nets[in].driver) continue;
            int di = comb_index[*nets[in].driver];
            if (di >= 0) adj[di].push_back(static_cast<int>(ci));
        }
    }
    std::vector<int> color(comb.size(), 0);
    std::vector<int> stack;
    for (size_t s = 0; s < comb.size(); ++s) {
        if (color[s]) continue;
        stack.push_back(static_cast<int>(s));
        while (!stack.empty()) {
            int v = stack.back();
            if (color[v] == 0) {
                color[v] = 1;
                for (int w : adj[v]) {
                    if (color[w] == 1) {
                        const Gate& g = gates[comb[w]];
                        diags.push_back("combinational cycle through net " +
                                        net_label(g.output));
                        color[w] = 2;  // report once
                    } else if (color[w] == 0) {
                        stack.push_back(w);
                    }
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return diags;
}

NetlistError::NetlistError(int line, int col, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", col " +
                                        std::to_string(col) + ": " + msg
                                  : msg),
      line_(line),
      col_(col) {}

namespace {

struct Token {
    std::string text;
    int col = 0;
};

std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        toks.push_back({std::string(line.substr(start, i - start)),
                        static_cast<int>(start) + 1});
    }
    return toks;
}

}  // namespace

ParseResult parse_netlist(std::string_view text) {
    ParseResult result;
    Circuit& c = result.circuit;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                           : eol - pos);
        ++lineno;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        const std::string& cmd = toks[0].text;

        auto fail = [&](int tok_idx, const std::string& msg) -> void {
            int col = tok_idx < static_cast<int>(toks.size()) ? toks[tok_idx].col
                                                              : static_cast<int>(line.size()) + 1;
            throw NetlistError(lineno, col, msg);
        };
        auto resolve = [&](int tok_idx) -> NetId {
            auto id = c.find_net(toks[tok_idx].text);
            if (!id) fail(tok_idx, "unknown net '" + toks[tok_idx].text + "'");
            return *id;
        };

        if (cmd == "net") {
            if (toks.size() != 2) fail(1, "expected: net <name>");
            if (c.find_net(toks[1].text))
                fail(1, "duplicate net name '" + toks[1].text + "'");
            c.add_net(toks[1].text);
        } else if (cmd == "input" || cmd == "output") {
            if (toks.size() < 4) fail(1, "expected: " + cmd + " <group> <encoding> <nets...>");
            auto enc = encoding_from_name(toks[2].text);
            if (!enc) fail(2, "unknown encoding '" + toks[2].text + "'");
            int rails = encoding_rails(*enc);
            if (static_cast<int>(toks.size()) != 3 + rails)
                fail(3, std::string(encoding_name(*enc)) + " group needs " +
                            std::to_string(rails) + " nets");
            std::vector<NetId> nets;
            for (int i = 0; i < rails; ++i)
                nets.push_back(resolve(3 + i));
            if (c.find_group(toks[1].text))
                fail(1, "duplicate port group '" + toks[1].text + "'");
            c.add_port_group(toks[1].text,
                             cmd == "input" ? PortDir::Input : PortDir::Output,
                             *enc, std::move(nets));
        } else if (cmd == "gate") {
            if (toks.size() < 2) fail(1, "expected: gate <kind> <ins...> -> <out>");
            auto kind = gate_kind_from_name(toks[1].text);
            if (!kind) fail(1, "unknown gate kind '" + toks[1].text + "'");
            int arity = gate_arity(*kind);
            if (static_cast<int>(toks.size()) != 2 + arity + 2)
                fail(2, std::string(gate_kind_name(*kind)) + " takes " +
                            std::to_string(arity) + " inputs: gate " +
                            std::string(gate_kind_name(*kind)) +
                            " <ins...> -> <out>");
            if (toks[2 + arity].text != "->") fail(2 + arity, "expected '->'");
            std::vector<NetId> ins;
            for (int i = 0; i < arity; ++i)
                ins.push_back(resolve(2 + i));
            NetId out = resolve(2 + arity + 1);
            c.add_gate(*kind, std::move(ins), out);
        } else {
            fail(0, "unknown directive '" + cmd + "'");
        }
    }

    auto diags = validate_circuit(c);
    if (!diags.empty()) {
        std::ostringstream os;
        os << "structural error";
        for (const auto& d : diags) os << ": " << d;
        throw NetlistError(0, 0, os.str());
    }
    if (c.gates().empty())
        result.warnings.push_back("netlist declares no gates");
    return result;
}

std::string emit_netlist(const Circuit& c) {
    std::ostringstream os;
    os << "# rtz netlist v1\n";
    for (const auto& n : c.nets())
        os << "net " << n.name << "\n";
    for (const auto& g : c.port_groups()) {
        os << (g.dir == PortDir::Input ? "input " : "output ") << g.name << " "
           << encoding_name(g.enc);
        for (NetId id : g.nets) os << " " << c.net(id).name;
        os << "\n";
    }
    for (const auto& g : c.gates()) {
        os << "gate " << gate_kind_name(g.kind);
        for (NetId id : g.inputs) os << " " << c.net(id).name;
        os << " -> " << c.net(g.output).name << "\n";
    }
    return os.str();
}

}  // namespace rtz
