#include <doctest.h>

#include <string>
#include <vector>

#include "rtz/adders.hpp"
#include "rtz/sim.hpp"

using namespace rtz;

namespace {

Circuit single_or2(NetId& a, NetId& b, NetId& y) {
    Circuit c;
    a = c.add_net("a");
    b = c.add_net("b");
    y = c.add_net("y");
    c.add_gate(GateKind::Or2, {a, b}, y);
    c.add_port_group("a", PortDir::Input, Encoding::Bare, {a});
    c.add_port_group("b", PortDir::Input, Encoding::Bare, {b});
    c.add_port_group("y", PortDir::Output, Encoding::Bare, {y});
    return c;
}

}  // namespace

TEST_CASE("single OR2 propagates with the table delay") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> stim = {{1000, a, 1}, {5000, a, 0}};
    Trace t = simulate(c, stim, DelayModel::fixed());
    REQUIRE(t.quiescent);
    REQUIRE(t.net_events[y].size() == 2);
    // default OR2 rise and fall are both 70 ps
    CHECK(t.events[t.net_events[y][0]].time == 1070);
    CHECK(t.events[t.net_events[y][0]].level == 1);
    CHECK(t.events[t.net_events[y][1]].time == 5070);
    CHECK(t.events[t.net_events[y][1]].level == 0);
    CHECK(t.final_levels[y] == 0);
}

TEST_CASE("inertial model swallows pulses shorter than the gate delay") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> stim = {{1000, a, 1}, {1010, a, 0}};
    Trace t = simulate(c, stim, DelayModel::fixed());
    REQUIRE(t.quiescent);
    CHECK(t.net_events[y].empty());
    CHECK(t.final_levels[y] == 0);
}

TEST_CASE("event causes chain back to the stimulus") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> stim = {{0, a, 1}};
    Trace t = simulate(c, stim, DelayModel::fixed());
    REQUIRE(t.net_events[y].size() == 1);
    const Event& out = t.events[t.net_events[y][0]];
    REQUIRE(out.cause.has_value());
    const Event& src = t.events[*out.cause];
    CHECK(src.net == a);
    CHECK(src.is_stimulus);
}

TEST_CASE("simulation is deterministic") {
    auto [circuit, desc] = build_rca(3, RcaOptions{});
    auto vec = rca_vector(desc, 5, 3, 1);
    std::vector<GroupAssignment> vecs = {vec, rca_vector(desc, 7, 7, 0)};
    auto r1 = run_handshake_cycles(circuit, vecs, DelayModel::fixed());
    auto r2 = run_handshake_cycles(circuit, vecs, DelayModel::fixed());
    REQUIRE(r1.trace.events.size() == r2.trace.events.size());
    for (std::size_t i = 0; i < r1.trace.events.size(); ++i) {
        CHECK(r1.trace.events[i].time == r2.trace.events[i].time);
        CHECK(r1.trace.events[i].net == r2.trace.events[i].net);
        CHECK(r1.trace.events[i].level == r2.trace.events[i].level);
    }
}

TEST_CASE("scaling every delay scales every event time") {
    auto [circuit, desc] = build_rca(2, RcaOptions{});
    std::vector<GroupAssignment> vecs = {rca_vector(desc, 3, 1, 1)};
    auto base = run_handshake_cycles(circuit, vecs, DelayModel::fixed());
    auto model3 = DelayModel::fixed(DelayTable::default_table().scaled(3));
    HandshakeOptions opts3;
    opts3.env_delay_ps = 0;
    auto tripled = run_handshake_cycles(circuit, vecs, model3, opts3);
    REQUIRE(base.trace.events.size() == tripled.trace.events.size());
    for (std::size_t i = 0; i < base.trace.events.size(); ++i) {
        CHECK(base.trace.events[i].net == tripled.trace.events[i].net);
        CHECK(base.trace.events[i].time * 3 == tripled.trace.events[i].time);
    }
    CHECK(base.cycles[0].forward_ps * 3 == tripled.cycles[0].forward_ps);
    CHECK(base.cycles[0].reverse_ps * 3 == tripled.cycles[0].reverse_ps);
}

TEST_CASE("stimulus on a driven or unknown net is rejected") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> bad = {{0, y, 1}};
    CHECK_THROWS_AS(simulate(c, bad, DelayModel::fixed()), SimError);
    std::vector<SetStimulus> unknown = {{0, 999, 1}};
    CHECK_THROWS_AS(simulate(c, unknown, DelayModel::fixed()), SimError);
}

TEST_CASE("runaway toggling trips the oscillation bound") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> stim;
    for (int i = 0; i < 200; ++i)
        stim.push_back({static_cast<TimePs>(1000 * (i + 1)), a, Level(i % 2 == 0)});
    CHECK_THROWS_AS(simulate(c, stim, DelayModel::fixed()), OscillationError);
}

TEST_CASE("handshake cycles on the full adder settle and decode") {
    Circuit fa = build_full_adder();
    std::vector<GroupAssignment> vecs;
    std::vector<int> expect;
    for (int av = 0; av < 2; ++av)
        for (int bv = 0; bv < 2; ++bv)
            for (int cin = 0; cin < 2; ++cin) {
                vecs.push_back({unsigned(av * 2 + bv), unsigned(cin)});
                expect.push_back(av + bv + cin);
            }
    auto hr = run_handshake_cycles(fa, vecs, DelayModel::fixed());
    REQUIRE(hr.cycles.size() == vecs.size());
    CHECK(hr.monotonic_ok);
    CHECK(hr.late_event_count == 0);
    // two phases per cycle, all completed
    REQUIRE(hr.trace.phases.size() == 2 * vecs.size());
    for (const PhaseMark& p : hr.trace.phases)
        CHECK(p.complete.has_value());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        int sum = hr.cycles[i].decoded_outputs.at(0);
        int cout = hr.cycles[i].decoded_outputs.at(1);
        CHECK(cout * 2 + sum == expect[i]);
        CHECK(hr.cycles[i].forward_ps > 0);
        CHECK(hr.cycles[i].reverse_ps > 0);
    }
}

TEST_CASE("environment delay shifts cycle boundaries but not function") {
    auto [circuit, desc] = build_rca(2, RcaOptions{});
    std::vector<GroupAssignment> vecs = {rca_vector(desc, 2, 1, 0)};
    HandshakeOptions slow;
    slow.env_delay_ps = 500;
    auto fast = run_handshake_cycles(circuit, vecs, DelayModel::fixed());
    auto delayed = run_handshake_cycles(circuit, vecs, DelayModel::fixed(), slow);
    CHECK(fast.cycles[0].decoded_outputs == delayed.cycles[0].decoded_outputs);
    CHECK(fast.cycles[0].forward_ps == delayed.cycles[0].forward_ps);
    CHECK(delayed.cycles[0].t_spacer_applied ==
          delayed.cycles[0].t_outputs_valid + 500);
}

TEST_CASE("unrecorded runs keep metrics but drop the event list") {
    auto [circuit, desc] = build_rca(2, RcaOptions{});
    std::vector<GroupAssignment> vecs = {rca_vector(desc, 1, 2, 1),
                                         rca_vector(desc, 3, 3, 0)};
    HandshakeOptions opts;
    opts.record_events = false;
    auto lean = run_handshake_cycles(circuit, vecs, DelayModel::fixed(), opts);
    auto full = run_handshake_cycles(circuit, vecs, DelayModel::fixed());
    CHECK_FALSE(lean.trace.events_recorded);
    CHECK(lean.trace.events.empty());
    REQUIRE(lean.cycles.size() == full.cycles.size());
    for (std::size_t i = 0; i < lean.cycles.size(); ++i) {
        CHECK(lean.cycles[i].forward_ps == full.cycles[i].forward_ps);
        CHECK(lean.cycles[i].reverse_ps == full.cycles[i].reverse_ps);
        CHECK(lean.cycles[i].decoded_outputs == full.cycles[i].decoded_outputs);
    }
}

TEST_CASE("VCD export is stable and well formed") {
    NetId a, b, y;
    Circuit c = single_or2(a, b, y);
    std::vector<SetStimulus> stim = {{0, a, 1}, {500, b, 1}, {2000, a, 0},
                                     {2100, b, 0}};
    Trace t1 = simulate(c, stim, DelayModel::fixed());
    Trace t2 = simulate(c, stim, DelayModel::fixed());
    std::string v1 = export_vcd(t1, c);
    CHECK(v1 == export_vcd(t2, c));
    CHECK(v1.find("$timescale 1ps $end") != std::string::npos);
    CHECK(v1.find("$enddefinitions") != std::string::npos);
    CHECK(v1.find("#0") != std::string::npos);
    // the OR2 output rise must appear 70 ps after the first stimulus
    CHECK(v1.find("#70") != std::string::npos);
}
