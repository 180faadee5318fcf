#include "rtz/analysis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rtz {

namespace {

struct Term {
    int e;    // E rail index
    int cin;  // carry literal: 0, 1, or -1 for none
};

struct Equation {
    const char* output;
    std::vector<Term> terms;
};

const std::vector<Equation>& fa_equations() {
    static const std::vector<Equation> eqs = {
        {"sum1", {{1, 0}, {2, 0}, {0, 1}, {3, 1}}},
        {"sum0", {{1, 1}, {2, 1}, {0, 0}, {3, 0}}},
        {"cout1", {{1, 1}, {2, 1}, {3, -1}}},
        {"cout0", {{1, 0}, {2, 0}, {0, -1}}},
    };
    return eqs;
}

}  // namespace

MonotonicCoverReport check_monotonic_cover(const Circuit& fa) {
    MonotonicCoverReport rep;
    const auto& eqs = fa_equations();
    const PortGroup* eg = fa.find_group("e");
    const PortGroup* cg = fa.find_group("cin");
    if (!eg || !cg)
        throw std::invalid_argument(
            "check_monotonic_cover: circuit lacks 'e'/'cin' input groups");

    for (int eidx = 0; eidx < 4; ++eidx) {
        for (int cin = 0; cin < 2; ++cin) {
            ++rep.combos_checked;
            int a = eidx >> 1, b = eidx & 1;
            int total = a + b + cin;
            bool expected[4] = {(total & 1) != 0, (total & 1) == 0,
                                (total >> 1) != 0, (total >> 1) == 0};
            for (std::size_t q = 0; q < eqs.size(); ++q) {
                int active = 0;
                for (const Term& t : eqs[q].terms)
                    if (t.e == eidx && (t.cin < 0 || t.cin == cin)) ++active;
                int want = expected[q] ? 1 : 0;
                if (active != want) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << eqs[q].output << ": E" << eidx << ", CIN" << cin
                       << " activates " << active << " product terms, expected "
                       << want;
                    rep.failures.push_back(os.str());
                }
            }

            // circuit steady state must agree with the equations
            std::vector<SetStimulus> stim = {
                {0, eg->nets[eidx], true},
                {0, cg->nets[cin ? 0 : 1], true},  // (w1, w0)
            };
            Trace tr = simulate(fa, stim, DelayModel::fixed());
            const char* outs[4] = {"sum1", "sum0", "cout1", "cout0"};
            for (int q = 0; q < 4; ++q) {
                Level got = tr.final_levels[fa.net_id(outs[q])];
                if (got != expected[q]) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << outs[q] << ": circuit settles at " << got
                       << " but equations give " << expected[q] << " for E"
                       << eidx << ", CIN" << cin;
                    rep.failures.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

namespace {

int group_cardinality(Encoding enc) {
    switch (enc) {
        case Encoding::Bare: return 1;      // the only "valid" word is 1
        case Encoding::DualRail: return 2;
        case Encoding::OneOfFour: return 4;
    }
    return 1;
}

void valid_rails(Encoding enc, unsigned value, std::vector<Level>& out) {
    switch (enc) {
        case Encoding::Bare:
            out = {true};
            break;
        case Encoding::DualRail:
            out = {value == 1, value == 0};
            break;
        case Encoding::OneOfFour:
            out.assign(4, false);
            out[value] = true;
            break;
    }
}

// invokes fn for every assignment of valid values to the listed groups
void for_each_assignment(const std::vector<const PortGroup*>& groups,
                         const std::vector<std::size_t>& subset,
                         const std::function<void(const std::vector<unsigned>&)>& fn) {
    std::vector<unsigned> values(subset.size(), 0);
    std::size_t k = 0;
    // odometer enumeration
    while (true) {
        fn(values);
        for (k = 0; k < subset.size(); ++k) {
            int card = group_cardinality(groups[subset[k]]->enc);
            if (static_cast<int>(++values[k]) < card) break;
            values[k] = 0;
        }
        if (k == subset.size()) break;
    }
}

CodeClass group_class(const PortGroup& g, const std::vector<Level>& levels) {
    if (g.enc == Encoding::Bare)
        return levels[g.nets[0]] ? CodeClass::Valid : CodeClass::Spacer;
    std::vector<Level> rails;
    for (NetId n : g.nets) rails.push_back(levels[n]);
    return classify(rails);
}

}  // namespace

IndicationProfile classify_indication(const Circuit& c, const DelayModel& model) {
    auto inputs = c.groups(PortDir::Input);
    auto outputs = c.groups(PortDir::Output);
    if (inputs.empty() || outputs.empty())
        throw std::invalid_argument("classify_indication: need input and output groups");
    if (inputs.size() > 12)
        throw std::invalid_argument("classify_indication: too many input groups");

    const std::size_t n_in = inputs.size();
    const TimePs rtz_at = 1'000'000;  // far beyond settling for these netlists

    struct Probe {
        bool early_set = false;
        bool early_reset = false;
        std::vector<bool> input_in_every_set_witness;
    };
    std::vector<Probe> probes(outputs.size());
    for (auto& p : probes) p.input_in_every_set_witness.assign(n_in, true);
    std::vector<bool> any_set_witness(outputs.size(), false);
    bool circuit_early_set = false, circuit_early_reset = false;

    std::vector<Level> rails;

    // (a) set probes: valid data on a proper subset only
    for (std::size_t mask = 1; mask + 1 < (1u << n_in); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n_in; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        for_each_assignment(inputs, subset, [&](const std::vector<unsigned>& vals) {
            std::vector<SetStimulus> stim;
            for (std::size_t k = 0; k < subset.size(); ++k) {
                valid_rails(inputs[subset[k]]->enc, vals[k], rails);
                for (std::size_t r = 0; r < rails.size(); ++r)
                    if (rails[r])
                        stim.push_back({0, inputs[subset[k]]->nets[r], true});
            }
            Trace tr = simulate(c, stim, model);
            bool all_valid = true;
            for (std::size_t o = 0; o < outputs.size(); ++o) {
                CodeClass cls = group_class(*outputs[o], tr.final_levels);
                if (cls == CodeClass::Valid) {
                    probes[o].early_set = true;
                    any_set_witness[o] = true;
                    for (std::size_t i = 0; i < n_in; ++i)
                        if (!(mask & (1u << i)))
                            probes[o].input_in_every_set_witness[i] = false;
                } else {
                    all_valid = false;
                }
            }
            if (all_valid) circuit_early_set = true;
        });
    }

    // (b) reset probes: from a completed valid phase, RTZ a proper subset
    std::vector<std::size_t> all_groups(n_in);
    for (std::size_t i = 0; i < n_in; ++i) all_groups[i] = i;
    for_each_assignment(inputs, all_groups, [&](const std::vector<unsigned>& vals) {
        for (std::size_t mask = 1; mask + 1 < (1u << n_in); ++mask) {
            std::vector<SetStimulus> stim;
            for (std::size_t i = 0; i < n_in; ++i) {
                valid_rails(inputs[i]->enc, vals[i], rails);
                for (std::size_t r = 0; r < rails.size(); ++r) {
                    if (rails[r]) stim.push_back({0, inputs[i]->nets[r], true});
                    if (mask & (1u << i))
                        stim.push_back({rtz_at, inputs[i]->nets[r], false});
                }
            }
            Trace tr = simulate(c, stim, model);
            bool all_spacer = true;
            for (std::size_t o = 0; o < outputs.size(); ++o) {
                CodeClass cls = group_class(*outputs[o], tr.final_levels);
                if (cls == CodeClass::Spacer)
                    probes[o].early_reset = true;
                else
                    all_spacer = false;
            }
            if (all_spacer) circuit_early_reset = true;
        }
    });

    IndicationProfile prof;
    bool any_early = false;
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        IndicationProfile::GroupEntry e;
        e.group = outputs[o]->name;
        e.early_set_capable = probes[o].early_set;
        e.early_reset_capable = probes[o].early_reset;
        e.set_tag = probes[o].early_set ? "early-set" : "strong";
        e.reset_tag = probes[o].early_reset ? "early-reset" : "standard-reset";
        for (std::size_t i = 0; i < n_in; ++i)
            if (!any_set_witness[o] || probes[o].input_in_every_set_witness[i])
                e.required_inputs.push_back(inputs[i]->name);
        any_early = any_early || probes[o].early_set || probes[o].early_reset;
        prof.outputs.push_back(std::move(e));
    }
    if (circuit_early_set && circuit_early_reset)
        prof.summary = "early output (early set, early reset)";
    else if (circuit_early_set)
        prof.summary = "early output (early set)";
    else if (circuit_early_reset)
        prof.summary = "early output (early reset)";
    else if (any_early)
        prof.summary = "weak-indication";
    else
        prof.summary = "strong-indication";
    return prof;
}

namespace {

// latest phase of the direction matching the transition, starting at or
// before it; the acknowledgment boundary is that phase's completion instant
const PhaseMark* owning_phase(const Trace& trace, const Event& ev,
                              std::uint32_t* index_out) {
    PhaseKind want = ev.level ? PhaseKind::Valid : PhaseKind::Rtz;
    for (std::size_t i = trace.phases.size(); i-- > 0;) {
        const PhaseMark& p = trace.phases[i];
        if (p.kind == want && p.start <= ev.time) {
            if (index_out) *index_out = static_cast<std::uint32_t>(i);
            return &p;
        }
    }
    return nullptr;
}

}  // namespace

OrphanReport detect_orphans(const Trace& trace, const Circuit& c) {
    if (trace.phases.empty())
        throw std::invalid_argument("detect_orphans: trace has no phase markers");
    if (!trace.events_recorded)
        throw std::invalid_argument("detect_orphans: trace events were not recorded");
    OrphanReport rep;
    for (const Event& ev : trace.events) {
        std::uint32_t pidx = 0;
        const PhaseMark* own = owning_phase(trace, ev, &pidx);
        if (!own || !own->complete || ev.time <= *own->complete) continue;
        OrphanEntry e;
        e.net = ev.net;
        e.net_name = c.net(ev.net).name;
        e.time = ev.time;
        e.phase_index = pidx;
        e.kind = c.net(ev.net).driver ? OrphanEntry::Kind::Gate
                                      : OrphanEntry::Kind::Wire;
        std::ostringstream os;
        os << "net '" << e.net_name << "' " << (ev.level ? "rose" : "fell")
           << " at t=" << ev.time << " ps, " << (ev.time - *own->complete)
           << " ps after the "
           << (own->kind == PhaseKind::Valid ? "valid" : "RTZ")
           << " phase of cycle " << own->cycle << " completed";
        e.explanation = os.str();
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

namespace {

std::optional<TimePs> first_fall_in(const Trace& trace, NetId net, TimePs lo,
                                    TimePs hi) {
    for (std::uint32_t idx : trace.net_events[net]) {
        const Event& ev = trace.events[idx];
        if (!ev.level && ev.time >= lo && ev.time < hi) return ev.time;
    }
    return std::nullopt;
}

}  // namespace

RtSlackReport check_relative_timing(const Trace& trace, const Circuit& c,
                                    const RcaDescriptor& d,
                                    const ResolvedDelays& delays) {
    if (trace.phases.empty() || !trace.events_recorded)
        throw std::invalid_argument(
            "check_relative_timing: need a recorded handshake trace");
    RtSlackReport rep;
    const TimePs inf = std::numeric_limits<TimePs>::max();

    for (std::size_t pi = 0; pi < trace.phases.size(); ++pi) {
        if (trace.phases[pi].kind != PhaseKind::Rtz) continue;
        TimePs lo = trace.phases[pi].start;
        TimePs hi = inf;
        for (std::size_t pj = pi + 1; pj < trace.phases.size(); ++pj)
            if (trace.phases[pj].kind == PhaseKind::Rtz) {
                hi = trace.phases[pj].start;
                break;
            }

        for (std::uint32_t i = 1; i < d.width; ++i) {
            RtStage st;
            st.stage = i;
            st.phase_index = static_cast<std::uint32_t>(pi);

            const FullAdderPorts& prev = d.stages[i - 1];
            const FullAdderPorts& cur = d.stages[i];
            auto cf1 = first_fall_in(trace, prev.cout1, lo, hi);
            auto cf0 = first_fall_in(trace, prev.cout0, lo, hi);
            st.carry_fall = cf1 && cf0 ? std::max(*cf1, *cf0) : cf1 ? cf1 : cf0;
            auto sf1 = first_fall_in(trace, cur.sum1, lo, hi);
            auto sf0 = first_fall_in(trace, cur.sum0, lo, hi);
            std::optional<TimePs> sum_fall =
                sf1 && sf0 ? std::max(*sf1, *sf0) : sf1 ? sf1 : sf0;
            st.sum_fall = sum_fall;

            NetId sum_rail = sf1 ? cur.sum1 : cur.sum0;
            auto longest_from = [&](const NetId (&es)[4]) {
                TimePs best = std::numeric_limits<TimePs>::min();
                for (NetId e : es)
                    if (auto p = static_path_delay(c, e, sum_rail, delays, false))
                        best = std::max(best, *p);
                return best;
            };
            st.static_slack_ps = longest_from(cur.e) - longest_from(prev.e);

            if (!st.carry_fall || !st.sum_fall) {
                st.exercised = false;  // carry chain broken that cycle
                st.satisfied = true;
            } else {
                st.exercised = true;
                st.measured_margin_ps = *st.carry_fall - *st.sum_fall;
                st.satisfied = *st.measured_margin_ps < 0;  // ties violate
                if (!st.satisfied) rep.all_satisfied = false;
            }
            rep.stages.push_back(st);
        }
    }
    return rep;
}

std::optional<TimePs> static_path_delay(const Circuit& c, NetId source,
                                        NetId sink, const ResolvedDelays& delays,
                                        bool rising) {
    const std::size_t n = c.nets().size();
    if (source >= n || sink >= n)
        throw std::invalid_argument("static_path_delay: unknown net");

    struct Arc {
        NetId to;
        TimePs w;
    };
    std::vector<std::vector<Arc>> adj(n);
    std::vector<int> indeg(n, 0);
    for (const Gate& g : c.gates()) {
        bool blessed = g.kind == GateKind::Ao222 && is_state_holding(c, g);
        TimePs w = delays.delay(g.id, rising);
        for (NetId in : g.inputs) {
            if (blessed && in == g.output) continue;  // break feedback arc
            adj[in].push_back({g.output, w});
            ++indeg[g.output];
        }
    }
    std::vector<NetId> order;
    order.reserve(n);
    for (NetId i = 0; i < n; ++i)
        if (indeg[i] == 0) order.push_back(i);
    for (std::size_t h = 0; h < order.size(); ++h)
        for (const Arc& a : adj[order[h]])
            if (--indeg[a.to] == 0) order.push_back(a.to);
    if (order.size() != n)
        throw std::runtime_error("static_path_delay: circuit graph is cyclic");

    const TimePs ninf = std::numeric_limits<TimePs>::min();
    std::vector<TimePs> dist(n, ninf);
    dist[source] = 0;
    for (NetId u : order) {
        if (dist[u] == ninf) continue;
        for (const Arc& a : adj[u])
            dist[a.to] = std::max(dist[a.to], dist[u] + a.w);
    }
    if (dist[sink] == ninf) return std::nullopt;
    return dist[sink];
}

TimePs compute_rt_slack(const DelayTable& table) {
    TimePs direct = table[GateKind::Or2].fall_ps + table[GateKind::Ao22].fall_ps +
                    table[GateKind::C2].fall_ps;
    TimePs indirect = table[GateKind::Or2].fall_ps +
                      table[GateKind::Ao21].fall_ps +
                      table[GateKind::Ao22].fall_ps + table[GateKind::C2].fall_ps;
    return direct - indirect;
}

LatencyMetrics measure_latency(std::span<const CycleMetrics> cycles,
                               std::span<const int> chain_lengths) {
    LatencyMetrics m;
    m.cycles = cycles.size();
    if (cycles.empty()) return m;
    TimePs fsum = 0, rsum = 0, fmax = 0, rmax = 0;
    TimePs csum = 0;
    std::size_t cn = 0;
    for (const auto& c : cycles) {
        fsum += c.forward_ps;
        rsum += c.reverse_ps;
        fmax = std::max(fmax, c.forward_ps);
        rmax = std::max(rmax, c.reverse_ps);
        if (c.cycle_ps) {
            csum += *c.cycle_ps;
            ++cn;
        }
    }
    m.mean_forward_ns = ps_to_ns(fsum) / static_cast<double>(cycles.size());
    m.mean_reverse_ns = ps_to_ns(rsum) / static_cast<double>(cycles.size());
    m.max_forward_ns = ps_to_ns(fmax);
    m.max_reverse_ns = ps_to_ns(rmax);
    if (cn > 0) m.mean_cycle_ns = ps_to_ns(csum) / static_cast<double>(cn);

    if (!chain_lengths.empty()) {
        if (chain_lengths.size() != cycles.size())
            throw std::invalid_argument("measure_latency: chain length count mismatch");
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            auto& b = m.by_chain_length[chain_lengths[i]];
            if (b.count == 0) {
                b.min_forward_ps = cycles[i].forward_ps;
                b.max_forward_ps = cycles[i].forward_ps;
            }
            b.min_forward_ps = std::min(b.min_forward_ps, cycles[i].forward_ps);
            b.max_forward_ps = std::max(b.max_forward_ps, cycles[i].forward_ps);
            b.mean_forward_ns += ps_to_ns(cycles[i].forward_ps);
            ++b.count;
        }
        for (auto& [len, b] : m.by_chain_length)
            b.mean_forward_ns /= static_cast<double>(b.count);
    }
    return m;
}

int carry_chain_length(std::uint64_t a, std::uint64_t b, std::uint32_t n) {
    std::uint64_t p = a ^ b;
    int run = 0, best = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        best = std::max(best, run);
        if ((p >> i) & 1u)
            ++run;
        else
            run = 0;
    }
    return best;
}

}  // namespace rtz
