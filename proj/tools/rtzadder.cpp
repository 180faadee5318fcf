// rtzadder: generate, simulate, verify and analyze early-output hybrid
// input encoded asynchronous ripple carry adders.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage/config error,
// 3 I/O or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rtz/adders.hpp"
#include "rtz/analysis.hpp"
#include "rtz/delay.hpp"
#include "rtz/netlist.hpp"
#include "rtz/sim.hpp"

using nlohmann::json;
using namespace rtz;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << data;
}

DelayTable load_table(const std::string& path) {
    if (path.empty()) return DelayTable::default_table();
    try {
        return DelayTable::parse(read_file(path));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("delay table: ") + e.what());
    }
}

// Override grammar: <kind>_<rise|fall>[_stage<k>]=<ns>. Without a stage the
// table entry itself is edited; with a stage it applies to every gate of
// that kind whose output net carries the stage suffix.
void apply_overrides(const std::vector<std::string>& specs, DelayTable& table,
                     DelayModel& model, const Circuit& c) {
    for (const std::string& spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad delay override '" + spec + "' (expected key=ns)");
        std::string key = spec.substr(0, eq);
        double ns = 0;
        try {
            ns = std::stod(spec.substr(eq + 1));
        } catch (...) {
            throw ConfigError("bad delay value in '" + spec + "'");
        }
        if (ns < 0) throw ConfigError("negative delay in '" + spec + "'");

        int stage = -1;
        auto st = key.rfind("_stage");
        if (st != std::string::npos) {
            try {
                stage = std::stoi(key.substr(st + 6));
            } catch (...) {
                throw ConfigError("bad stage in '" + spec + "'");
            }
            key.erase(st);
        }
        bool rise;
        if (key.ends_with("_rise")) {
            rise = true;
        } else if (key.ends_with("_fall")) {
            rise = false;
        } else {
            throw ConfigError("override '" + spec + "' must name _rise or _fall");
        }
        key.erase(key.size() - 5);
        auto kind = gate_kind_from_name(key);
        if (!kind) throw ConfigError("unknown gate kind in '" + spec + "'");

        TimePs ps = ns_to_ps(ns);
        if (stage < 0) {
            (rise ? table[*kind].rise_ps : table[*kind].fall_ps) = ps;
            continue;
        }
        std::string suffix = "_" + std::to_string(stage);
        bool hit = false;
        for (const Gate& g : c.gates()) {
            if (g.kind != *kind) continue;
            const std::string& name = c.net(g.output).name;
            if (!name.ends_with(suffix)) continue;
            auto& ov = model.overrides[g.id];
            (rise ? ov.rise_ps : ov.fall_ps) = ps;
            hit = true;
        }
        if (!hit)
            throw ConfigError("override '" + spec + "' matched no gate");
    }
}

std::string header_line(const std::string& cmd, std::uint32_t n,
                        std::uint64_t seed, const DelayTable& table) {
    std::ostringstream os;
    os << "# rtzadder " << cmd << " n=" << n << " seed=" << seed
       << " delay_table_hash=0x" << std::hex << table.hash();
    return os.str();
}

// ---------------------------------------------------------------------- //

int cmd_generate(std::uint32_t n, bool no_encoders, bool with_detector,
                 bool structural_c2, const std::string& out_path) {
    RcaOptions opts;
    opts.include_encoders = !no_encoders;
    opts.include_detector = with_detector;
    opts.structural_c2 = structural_c2;
    auto [circuit, desc] = build_rca(n, opts);
    std::string text = emit_netlist(circuit);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);

    int counts[kGateKindCount] = {};
    for (const Gate& g : circuit.gates()) counts[static_cast<int>(g.kind)]++;
    std::ostringstream os;
    os << "generated " << n << "-bit RCA: " << circuit.gates().size()
       << " gates (";
    bool first = true;
    for (int k = 0; k < kGateKindCount; ++k) {
        if (!counts[k]) continue;
        if (!first) os << ", ";
        os << counts[k] << " " << gate_kind_name(static_cast<GateKind>(k));
        first = false;
    }
    os << "), " << circuit.nets().size() << " nets";
    std::cerr << os.str() << "\n";
    return kExitPass;
}

// ---------------------------------------------------------------------- //

std::vector<GroupAssignment> make_vectors(const RcaDescriptor& d,
                                          bool exhaustive, std::size_t count,
                                          std::uint64_t seed,
                                          std::vector<std::uint64_t>* raw) {
    std::vector<GroupAssignment> vecs;
    std::uint32_t n = d.width;
    if (exhaustive) {
        for (std::uint64_t a = 0; a < (1ull << n); ++a)
            for (std::uint64_t b = 0; b < (1ull << n); ++b)
                for (int cin = 0; cin < 2; ++cin) {
                    vecs.push_back(rca_vector(d, a, b, cin));
                    if (raw) {
                        raw->push_back(a);
                        raw->push_back(b);
                        raw->push_back(cin);
                    }
                }
    } else {
        std::mt19937_64 rng(seed);
        std::uint64_t mask = n >= 64 ? ~0ull : (1ull << n) - 1;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t a = rng() & mask, b = rng() & mask;
            int cin = static_cast<int>(rng() & 1);
            vecs.push_back(rca_vector(d, a, b, cin));
            if (raw) {
                raw->push_back(a);
                raw->push_back(b);
                raw->push_back(cin);
            }
        }
    }
    return vecs;
}

int cmd_verify(std::uint32_t n, bool exhaustive, std::size_t random_count,
               std::uint64_t seed, std::uint32_t cap,
               const std::string& table_path,
               const std::vector<std::string>& overrides, double env_delay_ns,
               bool as_json, const std::string& out_path) {
    if (exhaustive && n > cap)
        throw ConfigError("exhaustive mode is capped at n=" + std::to_string(cap) +
                          " (see --cap)");

    auto [circuit, desc] = build_rca(n, RcaOptions{});
    DelayTable table = load_table(table_path);
    DelayModel model = DelayModel::fixed(table);
    apply_overrides(overrides, table, model, circuit);
    model.table = table;

    std::vector<std::uint64_t> raw;
    auto vectors = make_vectors(desc, exhaustive, random_count, seed, &raw);

    HandshakeOptions hopts;
    hopts.env_delay_ps = ns_to_ps(env_delay_ns);
    hopts.record_events = false;

    std::ostringstream rep;
    rep << header_line("verify", n, seed, table) << "\n";
    rep << "vectors: " << vectors.size()
        << (exhaustive ? " (exhaustive)" : " (random)") << "\n";

    bool pass = true;
    json j;
    j["command"] = "verify";
    j["n"] = n;
    j["seed"] = seed;
    j["delay_table_hash"] = table.hash();
    j["vectors"] = vectors.size();

    std::size_t mismatches = 0;
    std::string first_counterexample;
    std::string protocol_error;
    HandshakeResult bulk;
    try {
        bulk = run_handshake_cycles(circuit, vectors, model, hopts);
        for (std::size_t i = 0; i < bulk.cycles.size(); ++i) {
            std::uint64_t a = raw[3 * i], b = raw[3 * i + 1], cin = raw[3 * i + 2];
            std::uint64_t want = a + b + cin;
            RcaOutputs got = decode_rca_outputs(desc, bulk.cycles[i]);
            std::uint64_t got_total =
                got.sum | (static_cast<std::uint64_t>(got.cout) << n);
            if (got_total != want) {
                ++mismatches;
                if (first_counterexample.empty()) {
                    std::ostringstream os;
                    os << "vector " << i << ": a=" << a << " b=" << b
                       << " cin=" << cin << " expected " << want << " got "
                       << got_total;
                    first_counterexample = os.str();
                }
            }
        }
    } catch (const SimError& e) {
        protocol_error = e.what();
        pass = false;
    }

    bool arithmetic_ok = mismatches == 0 && protocol_error.empty();
    bool monotonic_ok = protocol_error.empty() && bulk.monotonic_ok;
    bool orphan_free = protocol_error.empty() && bulk.late_event_count == 0;
    pass = pass && arithmetic_ok && monotonic_ok && orphan_free;

    // detail pass with full trace: propagate chains plus a vector sample
    bool rt_ok = true;
    std::string rt_note;
    {
        std::vector<GroupAssignment> detail;
        for (std::uint32_t k = 0; k < n; ++k)
            detail.push_back(rca_vector(desc, (1ull << k) - 1, 0, 1));
        for (std::size_t i = 0; i < vectors.size() && i < 8; ++i)
            detail.push_back(vectors[i]);
        HandshakeOptions dopts = hopts;
        dopts.record_events = true;
        try {
            HandshakeResult hr = run_handshake_cycles(circuit, detail, model, dopts);
            auto delays = model.resolve(circuit);
            auto rt = check_relative_timing(hr.trace, circuit, desc, delays);
            rt_ok = rt.all_satisfied;
            if (!rt_ok) {
                for (const auto& st : rt.stages)
                    if (st.exercised && !st.satisfied) {
                        std::ostringstream os;
                        os << "stage " << st.stage << ": carry fell at "
                           << *st.carry_fall << " ps, sum at " << *st.sum_fall
                           << " ps (margin +" << *st.measured_margin_ps << " ps)";
                        rt_note = os.str();
                        break;
                    }
            }
            auto orphans = detect_orphans(hr.trace, circuit);
            if (!orphans.empty()) {
                orphan_free = false;
                if (rt_note.empty()) rt_note = orphans.entries.front().explanation;
            }
        } catch (const SimError& e) {
            rt_ok = false;
            rt_note = e.what();
        }
    }
    pass = pass && rt_ok && orphan_free;

    auto line = [&](const char* name, bool ok, const std::string& note = "") {
        rep << name << ": " << (ok ? "pass" : "FAIL");
        if (!ok && !note.empty()) rep << " (" << note << ")";
        rep << "\n";
    };
    line("arithmetic", arithmetic_ok,
         protocol_error.empty() ? first_counterexample : protocol_error);
    line("protocol", protocol_error.empty(), protocol_error);
    line("phase monotonicity", monotonic_ok, bulk.monotonic_note);
    line("orphan freedom", orphan_free, rt_note);
    line("relative timing", rt_ok, rt_note);

    if (protocol_error.empty()) {
        auto lat = measure_latency(bulk.cycles);
        rep << "forward latency: mean " << lat.mean_forward_ns << " ns, max "
            << lat.max_forward_ns << " ns\n";
        rep << "reverse latency: mean " << lat.mean_reverse_ns << " ns\n";
        if (lat.mean_cycle_ns)
            rep << "cycle time: mean " << *lat.mean_cycle_ns << " ns\n";
        j["mean_forward_ns"] = lat.mean_forward_ns;
        j["max_forward_ns"] = lat.max_forward_ns;
        j["mean_reverse_ns"] = lat.mean_reverse_ns;
        if (lat.mean_cycle_ns) j["mean_cycle_ns"] = *lat.mean_cycle_ns;
    }
    rep << "result: " << (pass ? "PASS" : "FAIL") << "\n";

    j["arithmetic_ok"] = arithmetic_ok;
    j["mismatches"] = mismatches;
    j["protocol_ok"] = protocol_error.empty();
    j["monotonic_ok"] = monotonic_ok;
    j["orphan_free"] = orphan_free;
    j["relative_timing_ok"] = rt_ok;
    j["pass"] = pass;

    std::string text = as_json ? j.dump(2) + "\n" : rep.str();
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------- //

int cmd_analyze(std::uint32_t n, const std::string& table_path,
                const std::vector<std::string>& overrides, bool as_json,
                const std::string& out_path) {
    auto [circuit, desc] = build_rca(n, RcaOptions{});
    DelayTable table = load_table(table_path);
    DelayModel model = DelayModel::fixed(table);
    apply_overrides(overrides, table, model, circuit);
    model.table = table;
    auto delays = model.resolve(circuit);

    std::uint32_t s = n >= 2 ? 1 : 0;
    auto direct = static_path_delay(circuit, desc.stages[s].e[1],
                                    desc.stages[s].sum1, delays, false);
    std::optional<TimePs> indirect;
    if (n >= 2)
        indirect = static_path_delay(circuit, desc.stages[0].e[1],
                                     desc.stages[1].sum1, delays, false);
    TimePs slack = compute_rt_slack(table);

    // measured latency on carry chains of every length
    std::vector<GroupAssignment> vecs;
    std::vector<int> chains;
    std::vector<std::uint64_t> ops;
    for (std::uint32_t k = 0; k < n; ++k) {
        std::uint64_t a = (1ull << k) - 1;
        vecs.push_back(rca_vector(desc, a, 0, 1));
        chains.push_back(carry_chain_length(a, 0, n));
        ops.push_back(a);
    }
    HandshakeOptions hopts;
    hopts.record_events = false;
    auto hr = run_handshake_cycles(circuit, vecs, model, hopts);
    auto lat = measure_latency(hr.cycles, chains);

    bool reverse_uniform = true;
    for (const auto& cyc : hr.cycles)
        if (cyc.reverse_ps != hr.cycles.front().reverse_ps) reverse_uniform = false;

    std::ostringstream rep;
    rep << header_line("analyze", n, 0, table) << "\n";
    rep << "direct RTZ path (or2+ao22+c2): " << ps_to_ns(direct.value_or(-1))
        << " ns\n";
    if (indirect)
        rep << "indirect RTZ path via carry (or2+ao21+ao22+c2): "
            << ps_to_ns(*indirect) << " ns\n";
    rep << "relative-timing slack: " << ps_to_ns(slack) << " ns\n";
    rep << "reverse latency: " << ps_to_ns(hr.cycles.front().reverse_ps)
        << " ns" << (reverse_uniform ? " (uniform across vectors)" : "") << "\n";
    rep << "forward latency by carry-chain length:\n";
    for (const auto& [len, b] : lat.by_chain_length)
        rep << "  chain " << len << ": " << b.mean_forward_ns << " ns\n";
    if (lat.mean_cycle_ns)
        rep << "cycle time: mean " << *lat.mean_cycle_ns << " ns\n";

    json j;
    j["command"] = "analyze";
    j["n"] = n;
    j["delay_table_hash"] = table.hash();
    j["direct_path_ns"] = ps_to_ns(direct.value_or(-1));
    if (indirect) j["indirect_path_ns"] = ps_to_ns(*indirect);
    j["rt_slack_ns"] = ps_to_ns(slack);
    j["reverse_latency_ns"] = ps_to_ns(hr.cycles.front().reverse_ps);
    j["reverse_latency_uniform"] = reverse_uniform;
    json chains_j = json::array();
    for (const auto& [len, b] : lat.by_chain_length)
        chains_j.push_back({{"chain_length", len},
                            {"mean_forward_ns", b.mean_forward_ns}});
    j["forward_latency_by_chain"] = chains_j;
    if (lat.mean_cycle_ns) j["mean_cycle_ns"] = *lat.mean_cycle_ns;

    std::string text = as_json ? j.dump(2) + "\n" : rep.str();
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kExitPass;
}

// ---------------------------------------------------------------------- //

struct StimulusFile {
    bool handshake = false;
    std::vector<SetStimulus> sets;
    std::vector<std::vector<std::uint64_t>> vectors;  // raw columns
};

std::uint64_t parse_number(const std::string& s, int lineno) {
    try {
        return std::stoull(s, nullptr, 0);  // decimal or 0x hex
    } catch (...) {
        throw NetlistError(lineno, 1, "bad number '" + s + "' in stimulus");
    }
}

StimulusFile parse_stimulus(const std::string& text, const Circuit& c) {
    StimulusFile sf;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool saw_set = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "at") {
            std::string t_s, set_kw, net_s, lvl_s;
            if (!(ls >> t_s >> set_kw >> net_s >> lvl_s) || set_kw != "set")
                throw NetlistError(lineno, 1, "expected: at <time_ps> set <net> <0|1>");
            auto net = c.find_net(net_s);
            if (!net) throw NetlistError(lineno, 1, "unknown net '" + net_s + "'");
            if (lvl_s != "0" && lvl_s != "1")
                throw NetlistError(lineno, 1, "level must be 0 or 1");
            sf.sets.push_back({static_cast<TimePs>(parse_number(t_s, lineno)),
                               *net, lvl_s == "1"});
            saw_set = true;
        } else if (word == "vector") {
            std::vector<std::uint64_t> cols;
            while (ls >> word) cols.push_back(parse_number(word, lineno));
            if (cols.empty())
                throw NetlistError(lineno, 1, "vector needs at least one value");
            sf.vectors.push_back(std::move(cols));
            sf.handshake = true;
        } else {
            throw NetlistError(lineno, 1, "unknown stimulus directive '" + word + "'");
        }
    }
    if (sf.handshake && saw_set)
        throw NetlistError(0, 0, "stimulus mixes 'at' and 'vector' lines");
    return sf;
}

// Maps raw vector columns onto the circuit's input groups. For RCA-shaped
// netlists (a_i/b_i or e_i groups plus cin) three columns A B CIN are
// accepted; otherwise one column per input group.
std::vector<GroupAssignment> map_vectors(const StimulusFile& sf, const Circuit& c) {
    auto inputs = c.groups(PortDir::Input);
    bool rca_shape = c.find_group("cin") != nullptr && inputs.size() > 1;
    for (const PortGroup* g : inputs)
        if (g->name != "cin" && !g->name.starts_with("a_") &&
            !g->name.starts_with("b_") && !g->name.starts_with("e_"))
            rca_shape = false;

    std::vector<GroupAssignment> out;
    for (std::size_t vi = 0; vi < sf.vectors.size(); ++vi) {
        const auto& cols = sf.vectors[vi];
        GroupAssignment ga;
        if (rca_shape && cols.size() == 3) {
            std::uint64_t a = cols[0], b = cols[1], cin = cols[2];
            for (const PortGroup* g : inputs) {
                if (g->name == "cin") {
                    ga.push_back(cin ? 1u : 0u);
                    continue;
                }
                std::uint32_t bit = std::stoul(g->name.substr(2));
                if (g->name[0] == 'a')
                    ga.push_back((a >> bit) & 1u);
                else if (g->name[0] == 'b')
                    ga.push_back((b >> bit) & 1u);
                else
                    ga.push_back((((a >> bit) & 1u) << 1) | ((b >> bit) & 1u));
            }
        } else if (cols.size() == inputs.size()) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                ga.push_back(static_cast<unsigned>(cols[i]));
        } else {
            throw NetlistError(0, 0,
                               "vector " + std::to_string(vi) + " has " +
                                   std::to_string(cols.size()) +
                                   " columns; expected " +
                                   std::to_string(inputs.size()) +
                                   (rca_shape ? " (or 3: A B CIN)" : ""));
        }
        out.push_back(std::move(ga));
    }
    return out;
}

int cmd_simulate(const std::string& netlist_path, const std::string& stim_path,
                 const std::string& vcd_path, const std::string& table_path,
                 std::uint64_t seed, double env_delay_ns, bool as_json) {
    ParseResult pr = parse_netlist(read_file(netlist_path));
    for (const auto& w : pr.warnings) std::cerr << "warning: " << w << "\n";
    const Circuit& circuit = pr.circuit;

    DelayTable table = load_table(table_path);
    DelayModel model = DelayModel::fixed(table);

    StimulusFile sf = parse_stimulus(read_file(stim_path), circuit);

    json j;
    j["command"] = "simulate";
    j["seed"] = seed;
    j["delay_table_hash"] = table.hash();
    std::ostringstream rep;
    rep << header_line("simulate", 0, seed, table) << "\n";

    Trace trace;
    if (sf.handshake) {
        auto vectors = map_vectors(sf, circuit);
        HandshakeOptions hopts;
        hopts.env_delay_ps = ns_to_ps(env_delay_ns);
        auto hr = run_handshake_cycles(circuit, vectors, model, hopts);
        trace = std::move(hr.trace);
        auto lat = measure_latency(hr.cycles);
        rep << "cycles: " << hr.cycles.size() << "\n";
        rep << "forward latency: mean " << lat.mean_forward_ns << " ns, max "
            << lat.max_forward_ns << " ns\n";
        rep << "reverse latency: mean " << lat.mean_reverse_ns << " ns\n";
        if (lat.mean_cycle_ns)
            rep << "cycle time: mean " << *lat.mean_cycle_ns << " ns\n";
        rep << "monotonic phases: " << (hr.monotonic_ok ? "yes" : "NO") << "\n";
        j["cycles"] = hr.cycles.size();
        j["mean_forward_ns"] = lat.mean_forward_ns;
        j["mean_reverse_ns"] = lat.mean_reverse_ns;
        if (lat.mean_cycle_ns) j["mean_cycle_ns"] = *lat.mean_cycle_ns;
        j["monotonic_ok"] = hr.monotonic_ok;
    } else {
        trace = simulate(circuit, sf.sets, model);
        rep << "events: " << trace.events.size() << "\n";
        rep << "quiescent: " << (trace.quiescent ? "yes" : "no") << "\n";
        j["events"] = trace.events.size();
        j["quiescent"] = trace.quiescent;
    }
    if (!vcd_path.empty()) {
        write_file(vcd_path, export_vcd(trace, circuit));
        rep << "vcd: " << vcd_path << "\n";
        j["vcd"] = vcd_path;
    }
    std::cout << (as_json ? j.dump(2) + "\n" : rep.str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-driven simulator and verifier for early-output hybrid "
                 "input encoded asynchronous ripple carry adders"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit an n-bit RCA netlist");
    std::uint32_t gen_n = 2;
    bool gen_no_enc = false, gen_det = false, gen_struct = false;
    std::string gen_out;
    gen->add_option("-n,--width", gen_n, "adder width")->required()
        ->check(CLI::Range(1u, 64u));
    gen->add_flag("--no-encoders", gen_no_enc, "1-of-4 operand inputs, no dual-rail encoders");
    gen->add_flag("--with-detector", gen_det, "append an input completion detector");
    gen->add_flag("--structural-c2", gen_struct, "expand C-elements into AO222+feedback");
    gen->add_option("-o,--output", gen_out, "netlist file (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "handshake-simulate vectors and check all properties");
    std::uint32_t ver_n = 4, ver_cap = 8;
    bool ver_exh = false, ver_json = false;
    std::size_t ver_random = 1000;
    std::uint64_t ver_seed = 1;
    double ver_env = 0;
    std::string ver_table, ver_out;
    std::vector<std::string> ver_over;
    ver->add_option("-n,--width", ver_n, "adder width")->required()
        ->check(CLI::Range(1u, 64u));
    ver->add_flag("--exhaustive", ver_exh, "all 2^(2n+1) vectors (n <= cap)");
    ver->add_option("--random", ver_random, "number of random vectors");
    ver->add_option("--seed", ver_seed, "random vector seed");
    ver->add_option("--cap", ver_cap, "exhaustive width cap");
    ver->add_option("--delay-table", ver_table, "delay table file");
    ver->add_option("--delay-override", ver_over,
                    "<kind>_<rise|fall>[_stage<k>]=<ns>, repeatable");
    ver->add_option("--env-delay-ns", ver_env, "environment response delay");
    ver->add_flag("--json", ver_json, "machine-readable report");
    ver->add_option("-o,--output", ver_out, "report file (default stdout)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "static path delays, RT slack and latency structure");
    std::uint32_t ana_n = 2;
    bool ana_json = false;
    std::string ana_table, ana_out;
    std::vector<std::string> ana_over;
    ana->add_option("-n,--width", ana_n, "adder width")->required()
        ->check(CLI::Range(1u, 64u));
    ana->add_option("--delay-table", ana_table, "delay table file");
    ana->add_option("--delay-override", ana_over,
                    "<kind>_<rise|fall>[_stage<k>]=<ns>, repeatable");
    ana->add_flag("--json", ana_json, "machine-readable report");
    ana->add_option("-o,--output", ana_out, "report file (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a netlist against a stimulus file");
    std::string sim_netlist, sim_stim, sim_vcd, sim_table;
    std::uint64_t sim_seed = 0;
    double sim_env = 0;
    bool sim_json = false;
    sim->add_option("netlist", sim_netlist, "netlist file")->required();
    sim->add_option("stimulus", sim_stim, "stimulus file")->required();
    sim->add_option("--vcd", sim_vcd, "write a value change dump");
    sim->add_option("--delay-table", sim_table, "delay table file");
    sim->add_option("--seed", sim_seed, "seed (recorded in the header)");
    sim->add_option("--env-delay-ns", sim_env, "environment response delay");
    sim->add_flag("--json", sim_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*gen)
            return cmd_generate(gen_n, gen_no_enc, gen_det, gen_struct, gen_out);
        if (*ver)
            return cmd_verify(ver_n, ver_exh, ver_random, ver_seed, ver_cap,
                              ver_table, ver_over, ver_env, ver_json, ver_out);
        if (*ana)
            return cmd_analyze(ana_n, ana_table, ana_over, ana_json, ana_out);
        if (*sim)
            return cmd_simulate(sim_netlist, sim_stim, sim_vcd, sim_table,
                                sim_seed, sim_env, sim_json);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NetlistError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
