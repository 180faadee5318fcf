#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtz/adders.hpp"
#include "rtz/delay.hpp"
#include "rtz/netlist.hpp"
#include "rtz/sim.hpp"

namespace rtz {

// ---------------------------------------------------------------------------
// Monotonic cover / disjointness of the full adder equations
//   SUM1  = E1.CIN0 + E2.CIN0 + E0.CIN1 + E3.CIN1
//   SUM0  = E1.CIN1 + E2.CIN1 + E0.CIN0 + E3.CIN0
//   COUT1 = E1.CIN1 + E2.CIN1 + E3
//   COUT0 = E1.CIN0 + E2.CIN0 + E0
// ---------------------------------------------------------------------------

struct MonotonicCoverReport {
    bool pass = true;
    int combos_checked = 0;
    std::vector<std::string> failures;
};

// Checks, over all 8 valid (E, CIN) combinations, that every asserted
// output has exactly one satisfied product term, every de-asserted rail has
// zero, no two terms of one equation are simultaneously true, and the
// generated circuit's steady state agrees with the equations.
MonotonicCoverReport check_monotonic_cover(const Circuit& fa);

// ---------------------------------------------------------------------------
// Indication classification by probe experiments
// ---------------------------------------------------------------------------

struct IndicationProfile {
    struct GroupEntry {
        std::string group;
        bool early_set_capable = false;   // valid from a proper input subset
        bool early_reset_capable = false; // spacer from a proper RTZ subset
        // input groups present in every set-probe witness (the inputs this
        // output provably waits for); all inputs when not early-set-capable
        std::vector<std::string> required_inputs;
        std::string set_tag;    // "strong" | "early-set"
        std::string reset_tag;  // "standard-reset" | "early-reset"
    };
    std::vector<GroupEntry> outputs;
    std::string summary;  // weakest output's class
};

IndicationProfile classify_indication(
    const Circuit& c, const DelayModel& model = DelayModel::fixed());

// ---------------------------------------------------------------------------
// Orphans: transitions applied after their phase's completion instant
// ---------------------------------------------------------------------------

struct OrphanEntry {
    enum class Kind { Wire, Gate };
    NetId net = kNoNet;
    std::string net_name;
    TimePs time = 0;
    std::uint32_t phase_index = 0;  // index into trace.phases
    Kind kind = Kind::Gate;
    std::string explanation;
};

struct OrphanReport {
    std::vector<OrphanEntry> entries;
    bool empty() const { return entries.empty(); }
};

// Requires a trace with phase markers (throws std::invalid_argument
// otherwise). Events on driverless nets are wire orphans, gate outputs are
// gate orphans.
OrphanReport detect_orphans(const Trace& trace, const Circuit& c);

// ---------------------------------------------------------------------------
// Relative timing of the internal carries
// ---------------------------------------------------------------------------

struct RtStage {
    std::uint32_t stage = 0;       // successor stage i (pairs i-1 -> i)
    std::uint32_t phase_index = 0;
    bool exercised = false;
    std::optional<TimePs> carry_fall;  // COUT of stage i-1
    std::optional<TimePs> sum_fall;    // SUM of stage i
    // carry_fall - sum_fall; the assumption requires this to be < 0
    std::optional<TimePs> measured_margin_ps;
    // direct-path minus indirect-path fall delay for this stage pair
    TimePs static_slack_ps = 0;
    bool satisfied = true;
};

struct RtSlackReport {
    std::vector<RtStage> stages;
    bool all_satisfied = true;
};

// Requires a recorded handshake trace of an RCA. A stage pair with no
// carry fall that cycle is marked not exercised, never failed. A margin of
// exactly zero counts as a violation.
RtSlackReport check_relative_timing(const Trace& trace, const Circuit& c,
                                    const RcaDescriptor& d,
                                    const ResolvedDelays& delays);

// ---------------------------------------------------------------------------
// Static path analysis
// ---------------------------------------------------------------------------

// Longest-path delay from source to sink over the gate DAG (C-element
// feedback arcs broken; a C-element contributes its delay once, from
// either input). nullopt when no path exists; 0 when source == sink.
std::optional<TimePs> static_path_delay(const Circuit& c, NetId source,
                                        NetId sink, const ResolvedDelays& delays,
                                        bool rising = false);

// Direct RTZ cone (OR2+AO22+C2) minus indirect cone via the carry
// (OR2+AO21+AO22+C2): equals -fall(AO21). Default table: -63 ps.
TimePs compute_rt_slack(const DelayTable& table);

// ---------------------------------------------------------------------------
// Latency metrics
// ---------------------------------------------------------------------------

struct LatencyMetrics {
    std::size_t cycles = 0;
    double mean_forward_ns = 0, max_forward_ns = 0;
    double mean_reverse_ns = 0, max_reverse_ns = 0;
    std::optional<double> mean_cycle_ns;  // unavailable below 2 cycles
    struct ChainBucket {
        std::size_t count = 0;
        double mean_forward_ns = 0;
        TimePs min_forward_ps = 0, max_forward_ps = 0;
    };
    std::map<int, ChainBucket> by_chain_length;  // filled when lengths given
};

LatencyMetrics measure_latency(std::span<const CycleMetrics> cycles,
                               std::span<const int> chain_lengths = {});

// Number of AO21 hops the critical carry makes for operands (a, b): the
// longest run of consecutive propagate stages strictly below some stage.
int carry_chain_length(std::uint64_t a, std::uint64_t b, std::uint32_t n);

}  // namespace rtz
