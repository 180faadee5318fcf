#include "rtz/delay.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rtz {

TimePs ns_to_ps(double ns) {
    return static_cast<TimePs>(std::llround(ns * 1000.0));
}

double ps_to_ns(TimePs ps) { return static_cast<double>(ps) / 1000.0; }

DelayTable DelayTable::default_table() {
    DelayTable t;
    t[GateKind::Or2] = {70, 70};
    t[GateKind::Ao21] = {63, 63};
    t[GateKind::Ao22] = {90, 90};
    t[GateKind::Ao222] = {90, 90};
    t[GateKind::C2] = {78, 78};
    return t;
}

DelayTable DelayTable::zero() {
    DelayTable t;
    for (auto& e : t.entries) e = {0, 0};
    return t;
}

DelayTable DelayTable::scaled(std::int64_t factor) const {
    DelayTable t = *this;
    for (auto& e : t.entries) {
        e.rise_ps *= factor;
        e.fall_ps *= factor;
    }
    return t;
}

DelayTable DelayTable::parse(std::string_view text) {
    DelayTable t = default_table();
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind_name;
        if (!(ls >> kind_name)) continue;
        auto kind = gate_kind_from_name(kind_name);
        if (!kind)
            throw std::invalid_argument("delay table line " +
                                        std::to_string(lineno) +
                                        ": unknown gate kind '" + kind_name + "'");
        double rise_ns = 0, fall_ns = 0;
        if (!(ls >> rise_ns >> fall_ns))
            throw std::invalid_argument("delay table line " +
                                        std::to_string(lineno) +
                                        ": expected <kind> <rise_ns> <fall_ns>");
        if (rise_ns < 0 || fall_ns < 0)
            throw std::invalid_argument("delay table line " +
                                        std::to_string(lineno) +
                                        ": delays must be non-negative");
        t[*kind] = {ns_to_ps(rise_ns), ns_to_ps(fall_ns)};
    }
    return t;
}

std::string DelayTable::to_text() const {
    std::ostringstream os;
    for (int k = 0; k < kGateKindCount; ++k) {
        const auto& e = entries[k];
        os << gate_kind_name(static_cast<GateKind>(k)) << " "
           << ps_to_ns(e.rise_ps) << " " << ps_to_ns(e.fall_ps) << "\n";
    }
    return os.str();
}

std::uint64_t DelayTable::hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (const auto& e : entries) {
        mix(static_cast<std::uint64_t>(e.rise_ps));
        mix(static_cast<std::uint64_t>(e.fall_ps));
    }
    return h;
}

DelayModel DelayModel::fixed(DelayTable t) {
    DelayModel m;
    m.mode = Mode::Fixed;
    m.table = t;
    return m;
}

DelayModel DelayModel::random_bounded(DelayTable lo, DelayTable hi,
                                      std::uint64_t seed) {
    for (int k = 0; k < kGateKindCount; ++k)
        if (lo.entries[k].rise_ps > hi.entries[k].rise_ps ||
            lo.entries[k].fall_ps > hi.entries[k].fall_ps)
            throw std::invalid_argument("random_bounded: lo > hi");
    DelayModel m;
    m.mode = Mode::RandomBounded;
    m.lo = lo;
    m.hi = hi;
    m.seed = seed;
    return m;
}

ResolvedDelays DelayModel::resolve(const Circuit& c) const {
    ResolvedDelays r;
    r.per_gate.reserve(c.gates().size());
    std::mt19937_64 rng(seed);
    // modulo draw keeps the stream identical across standard libraries
    auto draw = [&](TimePs a, TimePs b) {
        if (a == b) return a;
        return a + static_cast<TimePs>(rng() %
                                       static_cast<std::uint64_t>(b - a + 1));
    };
    for (const auto& g : c.gates()) {
        DelayEntry e;
        if (mode == Mode::Fixed) {
            e = table[g.kind];
        } else {
            const DelayEntry& l = lo[g.kind];
            const DelayEntry& h = hi[g.kind];
            e.rise_ps = draw(l.rise_ps, h.rise_ps);
            e.fall_ps = draw(l.fall_ps, h.fall_ps);
        }
        if (auto it = overrides.find(g.id); it != overrides.end()) {
            if (it->second.rise_ps) e.rise_ps = *it->second.rise_ps;
            if (it->second.fall_ps) e.fall_ps = *it->second.fall_ps;
        }
        if (e.rise_ps < 0 || e.fall_ps < 0)
            throw std::invalid_argument("negative delay for gate " +
                                        std::to_string(g.id));
        r.per_gate.push_back(e);
    }
    return r;
}

}  // namespace rtz
