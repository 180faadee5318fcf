#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtz/delay.hpp"
#include "rtz/netlist.hpp"

namespace rtz {

struct Event {
    TimePs time = 0;
    NetId net = kNoNet;
    Level level = false;
    std::optional<std::uint32_t> cause;  // index of the triggering event
    bool is_stimulus = false;
};

enum class PhaseKind { Valid, Rtz };

struct PhaseMark {
    PhaseKind kind = PhaseKind::Valid;
    std::uint32_t cycle = 0;
    TimePs start = 0;
    std::optional<TimePs> complete;  // all output groups valid / spacer
};

struct Trace {
    std::vector<Event> events;  // empty when recording was disabled
    std::vector<PhaseMark> phases;
    std::vector<Level> final_levels;  // indexed by NetId
    bool quiescent = true;
    bool events_recorded = true;

    // event indices per net, filled only when events are recorded
    std::vector<std::vector<std::uint32_t>> net_events;
};

struct SetStimulus {
    TimePs time = 0;
    NetId net = kNoNet;
    Level level = false;
};

struct SimOptions {
    TimePs horizon_ps = std::numeric_limits<TimePs>::max() / 4;
    int oscillation_bound = 64;  // max toggles per net (per phase, if phased)
    bool record_events = true;
};

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OscillationError : public SimError {
public:
    using SimError::SimError;
};

class ProtocolViolation : public SimError {
public:
    using SimError::SimError;
};

// Inertial event-driven simulation from the all-zero (global spacer)
// state. Stops at quiescence or at the horizon (non-quiescent flag, not
// fatal). Deterministic for a given circuit, stimulus and delay model.
Trace simulate(const Circuit& c, std::span<const SetStimulus> stimulus,
               const DelayModel& model, const SimOptions& opts = {});

// One input-group value per cycle: dual-rail 0/1, 1-of-4 0..3, bare 0/1,
// ordered as the circuit declares its input groups.
using GroupAssignment = std::vector<unsigned>;

struct CycleMetrics {
    std::uint32_t index = 0;
    TimePs t_inputs_valid = 0;
    TimePs t_outputs_valid = 0;
    TimePs t_spacer_applied = 0;
    TimePs t_outputs_spacer = 0;
    TimePs forward_ps = 0;
    TimePs reverse_ps = 0;
    std::optional<TimePs> cycle_ps;  // vs previous valid completion
    // value per output group at valid completion, circuit declaration order
    std::vector<unsigned> decoded_outputs;
};

struct HandshakeOptions {
    TimePs env_delay_ps = 0;
    TimePs horizon_ps = std::numeric_limits<TimePs>::max() / 4;
    int oscillation_bound = 64;
    bool record_events = true;
    // cap on late events kept individually; the count is always exact
    std::size_t late_event_cap = 1024;
};

struct HandshakeResult {
    Trace trace;
    std::vector<CycleMetrics> cycles;
    bool monotonic_ok = true;
    std::string monotonic_note;
    // transitions applied after their phase's completion instant
    // (orphan candidates, also available offline via detect_orphans)
    std::uint64_t late_event_count = 0;
    std::vector<Event> late_events;
};

// Drives the 4-phase RTZ environment: apply a valid vector, wait until all
// output groups are valid, apply the all-spacer vector, wait until all
// output groups are spacer, repeat. Completion is observed ideally from
// the output code classes. Throws ProtocolViolation if any output group
// turns invalid.
HandshakeResult run_handshake_cycles(const Circuit& c,
                                     std::span<const GroupAssignment> vectors,
                                     const DelayModel& model,
                                     const HandshakeOptions& opts = {});

// Standard four-state value change dump, timescale 1 ps.
std::string export_vcd(const Trace& trace, const Circuit& c);

}  // namespace rtz
