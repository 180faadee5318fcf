#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rtz/netlist.hpp"

namespace rtz {

// All times are integer picoseconds. Keeping time integral makes path
// comparisons like 238 vs 301 exact, with no float ties.
using TimePs = std::int64_t;

TimePs ns_to_ps(double ns);
double ps_to_ns(TimePs ps);

struct DelayEntry {
    TimePs rise_ps = 0;
    TimePs fall_ps = 0;
    friend bool operator==(const DelayEntry&, const DelayEntry&) = default;
};

// Per-kind propagation delays, the timing ground truth for both simulation
// and static analysis.
struct DelayTable {
    DelayEntry entries[kGateKindCount];

    DelayEntry& operator[](GateKind k) { return entries[static_cast<int>(k)]; }
    const DelayEntry& operator[](GateKind k) const {
        return entries[static_cast<int>(k)];
    }

    // OR2 70, AO21 63, AO22 90, AO222 90, C2 78 (ps, rise = fall). The
    // split is a convention chosen so that OR2+AO22+C2 = 238 ps and
    // OR2+AO21+AO22+C2 = 301 ps.
    static DelayTable default_table();
    static DelayTable zero();

    DelayTable scaled(std::int64_t factor) const;

    // File format: one line per kind, `<gatekind> <rise_ns> <fall_ns>`.
    // Unlisted kinds keep the default table's values.
    static DelayTable parse(std::string_view text);
    std::string to_text() const;

    std::uint64_t hash() const;

    friend bool operator==(const DelayTable&, const DelayTable&) = default;
};

struct GateDelayOverride {
    std::optional<TimePs> rise_ps;
    std::optional<TimePs> fall_ps;
};

// Fully resolved per-gate delays, produced once per (circuit, model).
struct ResolvedDelays {
    std::vector<DelayEntry> per_gate;

    TimePs delay(GateId g, bool rising) const {
        const DelayEntry& e = per_gate[g];
        return rising ? e.rise_ps : e.fall_ps;
    }
};

// Delay assignment policy. RandomBounded draws one (rise, fall) pair per
// gate, uniformly within [lo, hi] for its kind; draws are deterministic
// given the seed. Per-gate overrides apply on top of either mode.
struct DelayModel {
    enum class Mode { Fixed, RandomBounded };

    Mode mode = Mode::Fixed;
    DelayTable table = DelayTable::default_table();
    DelayTable lo = DelayTable::default_table();
    DelayTable hi = DelayTable::default_table();
    std::uint64_t seed = 0;
    std::map<GateId, GateDelayOverride> overrides;

    static DelayModel fixed(DelayTable t = DelayTable::default_table());
    static DelayModel random_bounded(DelayTable lo, DelayTable hi,
                                     std::uint64_t seed);

    ResolvedDelays resolve(const Circuit& c) const;
};

}  // namespace rtz
