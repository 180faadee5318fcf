#include "rtz/adders.hpp"

#include <stdexcept>

namespace rtz {

EncoderPorts append_encoder(Circuit& c, NetId a1, NetId a0, NetId b1, NetId b0,
                            const std::string& suffix) {
    EncoderPorts p;
    p.a1 = a1;
    p.a0 = a0;
    p.b1 = b1;
    p.b0 = b0;
    for (int k = 0; k < 4; ++k)
        p.e[k] = c.add_net("e" + std::to_string(k) + suffix);
    c.add_gate(GateKind::C2, {a0, b0}, p.e[0]);  // CE1
    c.add_gate(GateKind::C2, {a0, b1}, p.e[1]);  // CE2
    c.add_gate(GateKind::C2, {a1, b0}, p.e[2]);  // CE3
    c.add_gate(GateKind::C2, {a1, b1}, p.e[3]);  // CE4
    return p;
}

FullAdderPorts append_full_adder(Circuit& c, const NetId e[4], NetId cin1,
                                 NetId cin0, const std::string& suffix) {
    FullAdderPorts p;
    for (int k = 0; k < 4; ++k) p.e[k] = e[k];
    p.cin1 = cin1;
    p.cin0 = cin0;
    p.int1 = c.add_net("int1" + suffix);
    p.int2 = c.add_net("int2" + suffix);
    p.int3 = c.add_net("int3" + suffix);
    p.isum1 = c.add_net("isum1" + suffix);
    p.isum0 = c.add_net("isum0" + suffix);
    p.sum1 = c.add_net("sum1" + suffix);
    p.sum0 = c.add_net("sum0" + suffix);
    p.cout1 = c.add_net("cout1" + suffix);
    p.cout0 = c.add_net("cout0" + suffix);

    c.add_gate(GateKind::Or2, {e[0], e[3]}, p.int1);                 // OR1
    c.add_gate(GateKind::Or2, {e[1], e[2]}, p.int2);                 // OR2
    c.add_gate(GateKind::Or2, {p.int1, p.int2}, p.int3);             // OR3
    c.add_gate(GateKind::Ao22, {p.int2, cin0, p.int1, cin1}, p.isum1);  // CG1
    c.add_gate(GateKind::Ao22, {p.int2, cin1, p.int1, cin0}, p.isum0);  // CG2
    p.cout1_gate = c.add_gate(GateKind::Ao21, {p.int2, cin1, e[3]}, p.cout1);  // CG3
    p.cout0_gate = c.add_gate(GateKind::Ao21, {p.int2, cin0, e[0]}, p.cout0);  // CG4
    c.add_gate(GateKind::C2, {p.isum1, p.int3}, p.sum1);             // C1
    c.add_gate(GateKind::C2, {p.isum0, p.int3}, p.sum0);             // C2
    return p;
}

namespace {

// Pairwise reduction rounds give a balanced tree; the final gate's output
// net receives `final_name`.
NetId reduce_pairs(Circuit& c, std::vector<NetId> xs, GateKind kind,
                   const std::string& prefix, const std::string& final_name) {
    if (xs.empty()) throw std::invalid_argument("reduce_pairs: empty");
    int counter = 0;
    while (xs.size() > 1) {
        std::vector<NetId> next;
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
            bool last = xs.size() == 2;
            NetId out = c.add_net(last ? final_name
                                       : prefix + std::to_string(counter++));
            c.add_gate(kind, {xs[i], xs[i + 1]}, out);
            next.push_back(out);
        }
        if (xs.size() % 2) next.push_back(xs.back());
        xs = std::move(next);
    }
    return xs[0];
}

}  // namespace

NetId append_completion_detector(Circuit& c,
                                 const std::vector<std::vector<NetId>>& groups,
                                 const std::string& done_name) {
    if (groups.empty())
        throw std::invalid_argument("completion detector needs at least one group");
    std::vector<NetId> group_outs;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].empty())
            throw std::invalid_argument("completion detector group is empty");
        std::string prefix = "cd_g" + std::to_string(i) + "_or";
        bool names_done = groups.size() == 1 && groups[i].size() > 1;
        group_outs.push_back(reduce_pairs(c, groups[i], GateKind::Or2, prefix,
                                          names_done ? done_name
                                                     : prefix + "x"));
    }
    if (group_outs.size() == 1) return group_outs[0];
    return reduce_pairs(c, std::move(group_outs), GateKind::C2, "cd_c",
                        done_name);
}

Circuit build_encoder() {
    Circuit c;
    NetId a1 = c.add_net("a1"), a0 = c.add_net("a0");
    NetId b1 = c.add_net("b1"), b0 = c.add_net("b0");
    c.add_port_group("a", PortDir::Input, Encoding::DualRail, {a1, a0});
    c.add_port_group("b", PortDir::Input, Encoding::DualRail, {b1, b0});
    EncoderPorts p = append_encoder(c, a1, a0, b1, b0, "");
    c.add_port_group("e", PortDir::Output, Encoding::OneOfFour,
                     {p.e[0], p.e[1], p.e[2], p.e[3]});
    return c;
}

Circuit build_full_adder() {
    Circuit c;
    NetId e[4];
    for (int k = 0; k < 4; ++k) e[k] = c.add_net("e" + std::to_string(k));
    NetId cin1 = c.add_net("cin1"), cin0 = c.add_net("cin0");
    c.add_port_group("e", PortDir::Input, Encoding::OneOfFour,
                     {e[0], e[1], e[2], e[3]});
    c.add_port_group("cin", PortDir::Input, Encoding::DualRail, {cin1, cin0});
    FullAdderPorts p = append_full_adder(c, e, cin1, cin0, "");
    c.add_port_group("sum", PortDir::Output, Encoding::DualRail,
                     {p.sum1, p.sum0});
    c.add_port_group("cout", PortDir::Output, Encoding::DualRail,
                     {p.cout1, p.cout0});
    return c;
}

std::pair<Circuit, RcaDescriptor> build_rca(std::uint32_t n,
                                            const RcaOptions& opts) {
    if (n < 1) throw std::invalid_argument("build_rca: width must be >= 1");
    Circuit c;
    RcaDescriptor d;
    d.width = n;
    d.has_encoders = opts.include_encoders;
    d.has_detector = opts.include_detector;

    d.cin1 = c.add_net("cin1");
    d.cin0 = c.add_net("cin0");

    NetId cin1 = d.cin1, cin0 = d.cin0;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::string sfx = "_" + std::to_string(i);
        NetId e[4];
        if (opts.include_encoders) {
            NetId a1 = c.add_net("a1" + sfx), a0 = c.add_net("a0" + sfx);
            NetId b1 = c.add_net("b1" + sfx), b0 = c.add_net("b0" + sfx);
            c.add_port_group("a" + sfx, PortDir::Input, Encoding::DualRail,
                             {a1, a0});
            c.add_port_group("b" + sfx, PortDir::Input, Encoding::DualRail,
                             {b1, b0});
            EncoderPorts enc = append_encoder(c, a1, a0, b1, b0, sfx);
            for (int k = 0; k < 4; ++k) e[k] = enc.e[k];
            d.encoders.push_back(enc);
        } else {
            for (int k = 0; k < 4; ++k)
                e[k] = c.add_net("e" + std::to_string(k) + sfx);
            c.add_port_group("e" + sfx, PortDir::Input, Encoding::OneOfFour,
                             {e[0], e[1], e[2], e[3]});
        }
        FullAdderPorts fa = append_full_adder(c, e, cin1, cin0, sfx);
        d.stages.push_back(fa);
        cin1 = fa.cout1;
        cin0 = fa.cout0;
    }
    c.add_port_group("cin", PortDir::Input, Encoding::DualRail,
                     {d.cin1, d.cin0});

    for (std::uint32_t i = 0; i < n; ++i)
        c.add_port_group("sum_" + std::to_string(i), PortDir::Output,
                         Encoding::DualRail,
                         {d.stages[i].sum1, d.stages[i].sum0});
    c.add_port_group("cout", PortDir::Output, Encoding::DualRail,
                     {d.stages[n - 1].cout1, d.stages[n - 1].cout0});

    if (opts.include_detector) {
        std::vector<std::vector<NetId>> groups;
        for (const PortGroup* g : c.groups(PortDir::Input))
            groups.push_back(g->nets);
        d.done = append_completion_detector(c, groups, "done");
        c.add_port_group("done", PortDir::Output, Encoding::Bare, {d.done});
    }
    if (opts.structural_c2) c.expand_c2();
    return {std::move(c), std::move(d)};
}

GroupAssignment rca_vector(const RcaDescriptor& d, std::uint64_t a,
                           std::uint64_t b, int cin) {
    GroupAssignment v;
    for (std::uint32_t i = 0; i < d.width; ++i) {
        unsigned ai = (a >> i) & 1u;
        unsigned bi = (b >> i) & 1u;
        if (d.has_encoders) {
            v.push_back(ai);
            v.push_back(bi);
        } else {
            v.push_back(ai * 2 + bi);  // (x=a, y=b) -> e index
        }
    }
    v.push_back(cin ? 1u : 0u);
    return v;
}

RcaOutputs decode_rca_outputs(const RcaDescriptor& d, const CycleMetrics& m) {
    RcaOutputs out;
    for (std::uint32_t i = 0; i < d.width; ++i)
        out.sum |= static_cast<std::uint64_t>(m.decoded_outputs.at(i) & 1u) << i;
    out.cout = static_cast<int>(m.decoded_outputs.at(d.width) & 1u);
    return out;
}

}  // namespace rtz
