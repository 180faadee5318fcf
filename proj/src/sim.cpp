#include "rtz/sim.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <sstream>

namespace rtz {

namespace {

struct Scheduled {
    TimePs time;
    std::uint64_t seq;
    NetId net;
    Level level;
    std::optional<std::uint32_t> cause;
    bool is_stimulus;
    std::uint64_t gen;
};

struct Later {
    bool operator()(const Scheduled& a, const Scheduled& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

class EventEngine {
public:
    EventEngine(const Circuit& c, ResolvedDelays delays, TimePs horizon,
                int oscillation_bound, bool record)
        : circuit_(c),
          delays_(std::move(delays)),
          horizon_(horizon),
          osc_bound_(oscillation_bound) {
        const auto n = c.nets().size();
        levels_.assign(n, false);
        has_pending_.assign(n, false);
        pending_level_.assign(n, false);
        gen_.assign(n, 0);
        toggles_.assign(n, 0);
        fanout_.assign(n, {});
        for (const auto& g : c.gates())
            for (NetId in : g.inputs)
                if (in < n) {
                    auto& f = fanout_[in];
                    if (f.empty() || f.back() != g.id) f.push_back(g.id);
                }
        trace_.events_recorded = record;
        if (record) trace_.net_events.assign(n, {});
    }

    void add_stimulus(TimePs t, NetId net, Level level) {
        queue_.push(Scheduled{t, seq_++, net, level, std::nullopt, true, 0});
    }

    Level level(NetId n) const { return levels_[n]; }
    TimePs now() const { return now_; }
    void reset_toggle_counts() { std::fill(toggles_.begin(), toggles_.end(), 0); }

    // Runs until quiescence or horizon. The observer sees each applied
    // event after net levels are updated.
    void run(const std::function<void(const Event&, std::uint32_t)>& observer) {
        while (!queue_.empty()) {
            Scheduled s = queue_.top();
            queue_.pop();
            if (!s.is_stimulus && s.gen != gen_[s.net]) continue;  // cancelled
            if (s.time > horizon_) {
                trace_.quiescent = false;
                break;
            }
            now_ = s.time;
            if (s.is_stimulus) {
                if (levels_[s.net] == s.level) continue;
            } else {
                has_pending_[s.net] = false;
            }
            levels_[s.net] = s.level;
            if (++toggles_[s.net] > osc_bound_)
                throw OscillationError("net '" + circuit_.net(s.net).name +
                                       "' toggled more than " +
                                       std::to_string(osc_bound_) +
                                       " times within one phase (t=" +
                                       std::to_string(s.time) + " ps)");
            Event ev{s.time, s.net, s.level, s.cause, s.is_stimulus};
            std::uint32_t idx = applied_++;
            if (trace_.events_recorded) {
                trace_.events.push_back(ev);
                trace_.net_events[s.net].push_back(idx);
            }
            for (GateId g : fanout_[s.net]) react(g, s.time, idx);
            if (observer) observer(ev, idx);
        }
        trace_.final_levels = levels_;
    }

    Trace take_trace() { return std::move(trace_); }
    Trace& trace() { return trace_; }

private:
    void react(GateId gid, TimePs t, std::uint32_t cause) {
        const Gate& g = circuit_.gate(gid);
        scratch_.clear();
        for (NetId in : g.inputs) scratch_.push_back(levels_[in]);
        NetId out = g.output;
        Level newv = eval_gate(g.kind, scratch_, levels_[out]);
        Level target = has_pending_[out] ? pending_level_[out] : levels_[out];
        if (newv == target) return;
        if (has_pending_[out]) {
            ++gen_[out];  // inertial cancellation of the opposite edge
            has_pending_[out] = false;
        }
        if (newv == levels_[out]) return;  // glitch absorbed
        TimePs d = delays_.delay(gid, newv);
        has_pending_[out] = true;
        pending_level_[out] = newv;
        queue_.push(Scheduled{t + d, seq_++, out, newv, cause, false, gen_[out]});
    }

    const Circuit& circuit_;
    ResolvedDelays delays_;
    TimePs horizon_;
    int osc_bound_;
    TimePs now_ = 0;
    std::uint64_t seq_ = 0;
    std::uint32_t applied_ = 0;
    std::vector<Level> levels_;
    std::vector<char> has_pending_;
    std::vector<Level> pending_level_;
    std::vector<std::uint64_t> gen_;
    std::vector<int> toggles_;
    std::vector<std::vector<GateId>> fanout_;
    std::vector<Level> scratch_;
    std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue_;
    Trace trace_;
};

}  // namespace

Trace simulate(const Circuit& c, std::span<const SetStimulus> stimulus,
               const DelayModel& model, const SimOptions& opts) {
    for (const auto& s : stimulus) {
        if (s.net >= c.nets().size())
            throw SimError("stimulus references unknown net #" +
                           std::to_string(s.net));
        if (c.net(s.net).driver)
            throw SimError("stimulus on driven net '" + c.net(s.net).name + "'");
    }
    EventEngine eng(c, model.resolve(c), opts.horizon_ps, opts.oscillation_bound,
                    opts.record_events);
    std::vector<SetStimulus> sorted(stimulus.begin(), stimulus.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SetStimulus& a, const SetStimulus& b) {
                         return a.time < b.time;
                     });
    for (const auto& s : sorted) eng.add_stimulus(s.time, s.net, s.level);
    eng.run(nullptr);
    return eng.take_trace();
}

namespace {

void rails_for_value(Encoding enc, unsigned value, bool spacer,
                     std::vector<Level>& out) {
    out.clear();
    int rails = encoding_rails(enc);
    if (spacer) {
        out.assign(rails, false);
        return;
    }
    switch (enc) {
        case Encoding::Bare:
            out = {value != 0};
            break;
        case Encoding::DualRail:
            if (value > 1) throw SimError("dual-rail vector value out of range");
            out = {value == 1, value == 0};  // (w1, w0)
            break;
        case Encoding::OneOfFour:
            if (value > 3) throw SimError("1-of-4 vector value out of range");
            out.assign(4, false);
            out[value] = true;
            break;
    }
}

unsigned decode_group(const PortGroup& g, const EventEngine& eng) {
    switch (g.enc) {
        case Encoding::Bare:
            return eng.level(g.nets[0]) ? 1u : 0u;
        case Encoding::DualRail:
            return eng.level(g.nets[0]) ? 1u : 0u;  // (w1, w0)
        case Encoding::OneOfFour:
            for (unsigned i = 0; i < 4; ++i)
                if (eng.level(g.nets[i])) return i;
            return 0;
    }
    return 0;
}

}  // namespace

HandshakeResult run_handshake_cycles(const Circuit& c,
                                     std::span<const GroupAssignment> vectors,
                                     const DelayModel& model,
                                     const HandshakeOptions& opts) {
    auto inputs = c.groups(PortDir::Input);
    auto outputs = c.groups(PortDir::Output);
    if (outputs.empty())
        throw std::invalid_argument("run_handshake_cycles: circuit has no output groups");
    if (inputs.empty())
        throw std::invalid_argument("run_handshake_cycles: circuit has no input groups");
    for (const auto& v : vectors)
        if (v.size() != inputs.size())
            throw std::invalid_argument("vector width does not match input group count");

    HandshakeResult result;
    if (vectors.empty()) return result;

    EventEngine eng(c, model.resolve(c), opts.horizon_ps, opts.oscillation_bound,
                    opts.record_events);
    Trace& trace = eng.trace();

    enum class EnvState { AwaitValid, AwaitSpacer, Done };
    EnvState state = EnvState::AwaitValid;
    std::size_t vec_idx = 0;

    std::vector<Level> rails;
    auto apply_inputs = [&](TimePs t, bool spacer) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            rails_for_value(inputs[i]->enc,
                            spacer ? 0u : vectors[vec_idx][i], spacer, rails);
            for (std::size_t r = 0; r < rails.size(); ++r)
                eng.add_stimulus(t, inputs[i]->nets[r], rails[r]);
        }
    };

    auto output_classes_are = [&](CodeClass want, TimePs t) {
        bool all = true;
        std::vector<Level> grp;
        for (const PortGroup* g : outputs) {
            if (g->enc == Encoding::Bare) {
                // bare outputs: treat 1 as valid, 0 as spacer
                CodeClass cls = eng.level(g->nets[0]) ? CodeClass::Valid
                                                      : CodeClass::Spacer;
                if (cls != want) all = false;
                continue;
            }
            grp.clear();
            for (NetId n : g->nets) grp.push_back(eng.level(n));
            CodeClass cls = classify(grp);
            if (cls == CodeClass::Invalid)
                throw ProtocolViolation("output group '" + g->name +
                                        "' became invalid at t=" +
                                        std::to_string(t) + " ps");
            if (cls != want) all = false;
        }
        return all;
    };

    // phase bookkeeping --------------------------------------------------
    auto begin_phase = [&](PhaseKind kind, std::uint32_t cycle, TimePs start) {
        trace.phases.push_back(PhaseMark{kind, cycle, start, std::nullopt});
        eng.reset_toggle_counts();
    };

    auto phase_for_event = [&](const Event& ev) -> const PhaseMark* {
        PhaseKind want = ev.level ? PhaseKind::Valid : PhaseKind::Rtz;
        for (auto it = trace.phases.rbegin(); it != trace.phases.rend(); ++it)
            if (it->kind == want && it->start <= ev.time) return &*it;
        return nullptr;
    };

    auto current_phase = [&](TimePs t) -> const PhaseMark* {
        for (auto it = trace.phases.rbegin(); it != trace.phases.rend(); ++it)
            if (it->start <= t) return &*it;
        return nullptr;
    };

    std::vector<char> is_output_rail(c.nets().size(), 0);
    for (const PortGroup* g : outputs)
        for (NetId n : g->nets) is_output_rail[n] = 1;

    // kick off cycle 0
    begin_phase(PhaseKind::Valid, 0, 0);
    result.cycles.push_back(CycleMetrics{});
    result.cycles.back().index = 0;
    result.cycles.back().t_inputs_valid = 0;
    apply_inputs(0, false);

    auto observer = [&](const Event& ev, std::uint32_t) {
        // monotonicity and late-transition accounting
        const PhaseMark* cur = current_phase(ev.time);
        if (cur) {
            bool rising_phase = cur->kind == PhaseKind::Valid;
            if (!ev.is_stimulus && ev.level != rising_phase &&
                result.monotonic_ok) {
                // a transition against the phase's wave direction; decide
                // whether it is a straggler from the previous phase
                const PhaseMark* own = phase_for_event(ev);
                if (!own || !own->complete || ev.time <= *own->complete) {
                    result.monotonic_ok = false;
                    result.monotonic_note =
                        "net '" + c.net(ev.net).name + "' " +
                        (ev.level ? "rose" : "fell") + " at t=" +
                        std::to_string(ev.time) + " ps during a " +
                        (rising_phase ? "valid" : "RTZ") + " phase";
                }
            }
            const PhaseMark* own = phase_for_event(ev);
            if (own && own->complete && ev.time > *own->complete) {
                ++result.late_event_count;
                if (result.late_events.size() < opts.late_event_cap)
                    result.late_events.push_back(ev);
            }
        }

        if (!is_output_rail[ev.net] || state == EnvState::Done) {
            if (is_output_rail[ev.net]) output_classes_are(CodeClass::Valid, ev.time);
            return;
        }

        if (state == EnvState::AwaitValid) {
            if (!output_classes_are(CodeClass::Valid, ev.time)) return;
            CycleMetrics& m = result.cycles.back();
            m.t_outputs_valid = ev.time;
            m.forward_ps = ev.time - m.t_inputs_valid;
            if (m.index > 0)
                m.cycle_ps = ev.time - result.cycles[m.index - 1].t_outputs_valid;
            for (const PortGroup* g : outputs)
                m.decoded_outputs.push_back(decode_group(*g, eng));
            trace.phases.back().complete = ev.time;

            TimePs t_next = ev.time + opts.env_delay_ps;
            m.t_spacer_applied = t_next;
            begin_phase(PhaseKind::Rtz, m.index, t_next);
            apply_inputs(t_next, true);
            state = EnvState::AwaitSpacer;
        } else if (state == EnvState::AwaitSpacer) {
            if (!output_classes_are(CodeClass::Spacer, ev.time)) return;
            CycleMetrics& m = result.cycles.back();
            m.t_outputs_spacer = ev.time;
            m.reverse_ps = ev.time - m.t_spacer_applied;
            trace.phases.back().complete = ev.time;

            if (++vec_idx < vectors.size()) {
                TimePs t_next = ev.time + opts.env_delay_ps;
                std::uint32_t cyc = static_cast<std::uint32_t>(vec_idx);
                begin_phase(PhaseKind::Valid, cyc, t_next);
                result.cycles.push_back(CycleMetrics{});
                result.cycles.back().index = cyc;
                result.cycles.back().t_inputs_valid = t_next;
                apply_inputs(t_next, false);
                state = EnvState::AwaitValid;
            } else {
                state = EnvState::Done;  // drain stragglers to quiescence
            }
        }
    };

    eng.run(observer);

    if (state != EnvState::Done) {
        const char* want = state == EnvState::AwaitValid ? "valid" : "spacer";
        throw SimError(std::string("handshake stalled in cycle ") +
                       std::to_string(vec_idx) + ": outputs never became " + want);
    }
    result.trace = eng.take_trace();
    return result;
}

std::string export_vcd(const Trace& trace, const Circuit& c) {
    std::ostringstream os;
    auto code = [](std::size_t i) {
        std::string s;
        do {
            s.push_back(static_cast<char>(33 + i % 94));
            i /= 94;
        } while (i);
        return s;
    };
    os << "$timescale 1ps $end\n";
    os << "$scope module top $end\n";
    for (const auto& n : c.nets())
        os << "$var wire 1 " << code(n.id) << " " << n.name << " $end\n";
    os << "$upscope $end\n";
    os << "$enddefinitions $end\n";
    os << "#0\n$dumpvars\n";
    for (const auto& n : c.nets())
        os << "0" << code(n.id) << "\n";
    os << "$end\n";
    TimePs cur = 0;
    for (const auto& ev : trace.events) {
        if (ev.time != cur) {
            os << "#" << ev.time << "\n";
            cur = ev.time;
        }
        os << (ev.level ? "1" : "0") << code(ev.net) << "\n";
    }
    return os.str();
}

}  // namespace rtz
