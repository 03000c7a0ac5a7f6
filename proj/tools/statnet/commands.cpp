// Copyright 2026 The Statnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "statnet/dynamics.hpp"
#include "statnet/errors.hpp"
#include "statnet/network.hpp"
#include "statnet/protocol.hpp"
#include "statnet/statics.hpp"

namespace statnet::cli {

namespace {

struct Config {
    std::string command;
    std::string network = "fig1";
    std::optional<double> dt;
    double tau = 1.0;
    std::string schedule = "linear-ramp";
    std::optional<double> theta;
    std::optional<double> phi_final;
    std::string drive = "both";
    std::size_t shots = 100;
    std::uint64_t seed = 0;
    std::string leak = "none";
    std::string format;
    std::string out_path;
    bool no_mask = false;
    std::string dump_path;
    double tolerance = 1e-9;
    double confidence = 0.99;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read network file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Network load_network(const std::string &name_or_path) {
    if (auto net = builtin_network(name_or_path)) {
        return *net;
    }
    return parse_network(read_file(name_or_path));
}

DriveSchedule make_schedule(const Config &cfg, double theta_default, double phi_default) {
    DriveSchedule s;
    s.kind = parse_schedule_kind(cfg.schedule);
    s.tau = cfg.tau;
    s.dt = cfg.dt.value_or(1e-3 * cfg.tau);
    s.theta0 = cfg.theta.value_or(theta_default);
    s.phi_final = cfg.phi_final.value_or(phi_default);
    s.validate();
    return s;
}

ProtocolOptions make_protocol_options(const Config &cfg) {
    if (cfg.theta) {
        throw InputError("--theta does not apply here: the angle comes from the preparation");
    }
    ProtocolOptions o;
    o.kind = parse_schedule_kind(cfg.schedule);
    o.tau = cfg.tau;
    o.dt = cfg.dt.value_or(1e-3 * cfg.tau);
    o.phi_final = cfg.phi_final;
    o.leak = parse_leak_model(cfg.leak);
    o.confidence_threshold = cfg.confidence;
    return o;
}

std::string gate_function_class(const TruthTable &table, std::size_t out_bit) {
    // Truth vector f(00) f(01) f(10) f(11) of one output bit.
    unsigned f = 0;
    for (std::uint32_t in = 0; in < 4; ++in) {
        const std::uint32_t out = *table.output_for(in);
        const unsigned bit = (out >> (table.out_arity() - 1 - out_bit)) & 1U;
        f = (f << 1) | bit;
    }
    switch (f) {
        case 0b0110:
            return "XOR";
        case 0b1001:
            return "XNOR";
        case 0b0001:
            return "AND";
        case 0b1110:
            return "NAND";
        case 0b0111:
            return "OR";
        case 0b1000:
            return "NOR";
        case 0b0011:
        case 0b0101:
            return "COPY";
        case 0b1100:
        case 0b1010:
            return "NOT";
        case 0b0000:
        case 0b1111:
            return "CONST";
        case 0b0010:
        case 0b0100:
            return "INHIBIT";
        default:
            return "IMPLIES";
    }
}

std::size_t local_dim(const Gate &gate) {
    Network local(gate.nodes(), {gate}, {});
    return network_mask(local, true).count();
}

template <typename T>
nlohmann::ordered_json as_json_array(const std::vector<T> &v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto &x : v) {
        a.push_back(x);
    }
    return a;
}

nlohmann::ordered_json dump_json(const Network &net) {
    if (net.num_nodes() > 16) {
        throw LimitError("--dump is limited to networks of at most 16 nodes");
    }
    nlohmann::ordered_json j;
    j["nodes"] = as_json_array(net.nodes());
    nlohmann::ordered_json masks;
    nlohmann::ordered_json hams;
    for (const auto &g : net.gates()) {
        masks[gate_mask(net, g).label()] = as_json_array(gate_mask(net, g).bits());
        auto h = gate_hamiltonian(net, g);
        hams[h.label()] = as_json_array(h.energies());
    }
    for (const auto &p : net.pins()) {
        masks[pin_mask(net, p).label()] = as_json_array(pin_mask(net, p).bits());
        auto h = pin_hamiltonian(net, p);
        hams["H_pin_" + p.node] = as_json_array(h.energies());
    }
    masks["A_N[inputs]"] = as_json_array(network_mask(net, false).bits());
    masks["A_N"] = as_json_array(network_mask(net, true).bits());
    hams["H_N[inputs]"] = as_json_array(network_hamiltonian(net, false).energies());
    hams["H_N"] = as_json_array(network_hamiltonian(net, true).energies());
    j["masks"] = std::move(masks);
    j["hamiltonians"] = std::move(hams);
    return j;
}

int cmd_check(const Config &cfg, std::ostream &out) {
    const Network net = load_network(cfg.network);
    std::vector<std::string> gate_names;
    for (const auto &g : net.gates()) {
        gate_names.push_back(g.name);
    }
    out << "nodes: " << net.num_nodes() << "\n";
    out << "gates: " << net.gates().size();
    for (const auto &name : gate_names) {
        out << " " << name;
    }
    out << "\n";
    out << "pins: " << net.pins().size();
    for (const auto &p : net.pins()) {
        out << " " << p.node << "=" << p.value << "(" << to_string(p.kind) << ")";
    }
    out << "\n";
    if (net.drive_node()) {
        out << "drive: " << *net.drive_node() << "\n";
    }
    out << "solutions with all pins: " << brute_force_solutions(net, true).size() << "\n";
    out << "mask support with output pins: " << network_mask(net, true).count() << "\n";
    out << "mask support without output pins: " << network_mask(net, false).count() << "\n";
    for (const auto &g : net.gates()) {
        out << "gate " << g.name << ": constrained subspace dim: " << local_dim(g) << " of "
            << (std::size_t{1} << g.nodes().size()) << "\n";
        const bool total = g.table.in_arity() == 2 && g.table.rows().size() == 4;
        if (!total) {
            continue;
        }
        for (std::size_t j = 0; j < g.out_nodes.size(); ++j) {
            std::vector<TableRow> rows;
            for (std::uint32_t in = 0; in < 4; ++in) {
                rows.push_back({in, (*g.table.output_for(in) >> (g.table.out_arity() - 1 - j)) & 1U});
            }
            Gate sub{g.name + "." + g.out_nodes[j], g.in_nodes, {g.out_nodes[j]}, TruthTable(2, 1, rows)};
            out << "gate " << g.name << " output " << g.out_nodes[j] << ": " << gate_function_class(g.table, j)
                << "-type gate subspace dim: " << local_dim(sub) << " of 8\n";
        }
    }
    if (!cfg.dump_path.empty()) {
        std::ofstream dump(cfg.dump_path, std::ios::binary);
        if (!dump) {
            throw InputError("cannot write '" + cfg.dump_path + "'");
        }
        dump << dump_json(net).dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_solve_brute(const Config &cfg, std::ostream &out) {
    const Network net = load_network(cfg.network);
    const auto solutions = brute_force_solutions(net, true);
    if (solutions.empty()) {
        out << "(none)\n";
        return kExitNegative;
    }
    for (const auto &s : solutions) {
        out << s << "\n";
    }
    return kExitOk;
}

using ClosedForm = std::function<StateVector(double phi)>;

// Writes the trace and returns the largest closed-form deviation (0 without one).
double write_trace(const Trajectory &traj, const ClosedForm &reference, const std::string &format, std::ostream &out) {
    static const std::vector<std::string> columns{"t",       "phi",    "p0",          "p1",
                                                  "alpha_sq", "beta_sq", "energy", "step_overlap"};
    double worst = 0.0;
    auto deviation = [&](const TrajectoryPoint &p) {
        const double d = max_abs_diff(p.state, reference(p.phi));
        worst = std::max(worst, d);
        return d;
    };
    if (format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &p : traj.points) {
            nlohmann::ordered_json row;
            row["t"] = p.t;
            row["phi"] = p.phi;
            row["p0"] = p.p0;
            row["p1"] = p.p1;
            row["alpha_sq"] = p.alpha_sq;
            row["beta_sq"] = p.beta_sq;
            row["energy"] = p.energy;
            row["step_overlap"] = p.step_overlap;
            if (reference) {
                row["deviation_from_closed_form"] = deviation(p);
            }
            rows.push_back(std::move(row));
        }
        nlohmann::ordered_json j;
        j["schedule"] = to_json(traj.schedule);
        j["schedule"]["leak"] = std::string(to_string(traj.leak_model));
        j["points"] = std::move(rows);
        out << j.dump(2) << "\n";
        return worst;
    }
    for (std::size_t k = 0; k < columns.size(); ++k) {
        out << (k ? "," : "") << columns[k];
    }
    out << (reference ? ",deviation_from_closed_form\n" : "\n");
    for (const auto &p : traj.points) {
        out << num(p.t) << ',' << num(p.phi) << ',' << num(p.p0) << ',' << num(p.p1) << ',' << num(p.alpha_sq) << ','
            << num(p.beta_sq) << ',' << num(p.energy) << ',' << num(p.step_overlap);
        if (reference) {
            out << ',' << num(deviation(p));
        }
        out << '\n';
    }
    return worst;
}

int finish_simulation(double worst, const Config &cfg, std::ostream &err) {
    if (worst > cfg.tolerance) {
        err << "max deviation from closed form " << num(worst) << " exceeds tolerance " << num(cfg.tolerance) << "\n";
        return kExitNegative;
    }
    return kExitOk;
}

int cmd_simulate_link(const Config &cfg, std::ostream &out, std::ostream &err) {
    const Network net = builtin_link();
    const DriveSchedule s = make_schedule(cfg, std::numbers::pi / 6, std::numbers::pi / 3);
    const ConstraintMask mask = cfg.no_mask ? ConstraintMask(net.dim(), "1") : network_mask(net, true);
    const PenaltyHamiltonian h_rs = gate_hamiltonian(net, net.gates().front());
    const Trajectory traj = evolve(closed_form_link(s.theta0, 0.0), mask, "r", s, parse_leak_model(cfg.leak), &h_rs);
    const double worst = write_trace(traj, [&](double phi) { return closed_form_link(s.theta0, phi); }, cfg.format, out);
    return finish_simulation(worst, cfg, err);
}

int cmd_simulate_triplet(const Config &cfg, std::ostream &out, std::ostream &err) {
    const DriveSchedule s = make_schedule(cfg, std::numbers::pi / 6, std::numbers::pi / 3);
    TripletDrive drive;
    if (cfg.drive == "1") {
        drive = TripletDrive::first;
    } else if (cfg.drive == "2") {
        drive = TripletDrive::second;
    } else if (cfg.drive == "both") {
        drive = TripletDrive::both;
    } else {
        throw InputError("--drive must be 1, 2 or both");
    }
    const Trajectory traj = triplet_watchdog_demo(s, drive);
    const double worst =
        write_trace(traj, [&](double phi) { return closed_form_triplet(s.theta0, phi); }, cfg.format, out);
    return finish_simulation(worst, cfg, err);
}

int cmd_simulate_network(const Config &cfg, std::ostream &out) {
    const Network net = load_network(cfg.network);
    const ProtocolOptions options = make_protocol_options(cfg);
    const Preparation prep = prepare_ground(net);
    const DriveSchedule s = protocol_schedule(net, prep, options);
    const ConstraintMask mask = cfg.no_mask ? ConstraintMask(net.dim(), "1") : network_mask(net, false);
    const PenaltyHamiltonian h = network_hamiltonian(net, false);
    const Trajectory traj = evolve(prep.state, mask, *net.drive_node(), s, options.leak, &h);
    write_trace(traj, {}, cfg.format, out);
    return kExitOk;
}

int cmd_run(const Config &cfg, std::ostream &out) {
    if (cfg.format == "csv") {
        throw InputError("run writes JSON only");
    }
    const Network net = load_network(cfg.network);
    const ProtocolResult r = run_protocol(net, cfg.shots, cfg.seed, make_protocol_options(cfg));
    out << to_json(r).dump(2) << "\n";
    switch (r.decision) {
        case Decision::satisfiable:
            return kExitOk;
        case Decision::unsatisfiable:
            return kExitNegative;
        case Decision::inconclusive:
            return kExitInconclusive;
    }
    return kExitError;
}

int dispatch(const Config &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.command == "check") {
        return cmd_check(cfg, out);
    }
    if (cfg.command == "solve-brute") {
        return cmd_solve_brute(cfg, out);
    }
    if (cfg.command == "simulate-link") {
        return cmd_simulate_link(cfg, out, err);
    }
    if (cfg.command == "simulate-triplet") {
        return cmd_simulate_triplet(cfg, out, err);
    }
    if (cfg.command == "simulate-network") {
        return cmd_simulate_network(cfg, out);
    }
    return cmd_run(cfg, out);
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Config cfg;
    CLI::App app{"Boolean networks as constraint projectors, driven by watchdog dynamics."};
    app.name("statnet");
    app.add_option("command", cfg.command, "check | solve-brute | simulate-link | simulate-triplet | simulate-network | run")
        ->required()
        ->check(CLI::IsMember(
            {"check", "solve-brute", "simulate-link", "simulate-triplet", "simulate-network", "run"}));
    app.add_option("--network", cfg.network, "Network file or builtin (fig1, fig1-unsat, link, xor)")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "Step size [default: 1e-3 * tau]");
    app.add_option("--tau", cfg.tau, "Schedule duration")->capture_default_str();
    app.add_option("--schedule", cfg.schedule, "linear-ramp | cosine-ramp | exponential-relax")
        ->capture_default_str()
        ->check(CLI::IsMember({"linear-ramp", "cosine-ramp", "exponential-relax"}));
    app.add_option("--theta", cfg.theta, "Initial angle for simulate-link/-triplet [default: pi/6]");
    app.add_option("--phi-final", cfg.phi_final,
                   "Total rotation [default: pi/3 for link/triplet; ends on the drive pin for networks]");
    app.add_option("--drive", cfg.drive, "Driven particle for simulate-triplet: 1 | 2 | both")->capture_default_str();
    app.add_option("--shots", cfg.shots, "Repetitions for run")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed (STATNET_SEED overrides)")->capture_default_str();
    app.add_option("--leak", cfg.leak, "none | uniform-excited")
        ->capture_default_str()
        ->check(CLI::IsMember({"none", "uniform-excited"}));
    app.add_option("--format", cfg.format, "csv | json [default: csv for traces]")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    app.add_flag("--no-mask", cfg.no_mask, "Run the dynamics without the constraint projector");
    app.add_option("--dump", cfg.dump_path, "check: write masks and Hamiltonian diagonals as JSON");
    app.add_option("--tolerance", cfg.tolerance, "Allowed deviation from the closed form")->capture_default_str();
    app.add_option("--confidence", cfg.confidence, "Confidence needed to report unsatisfiable")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (const char *env = std::getenv("STATNET_SEED")) {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) {
                    throw std::invalid_argument(env);
                }
            } catch (const std::exception &) {
                throw InputError("STATNET_SEED must be a nonnegative integer");
            }
        }
        if (cfg.format.empty()) {
            cfg.format = cfg.command == "run" ? "json" : "csv";
        }
        if (cfg.out_path.empty()) {
            return dispatch(cfg, out, err);
        }
        std::ostringstream buffer;
        const int code = dispatch(cfg, buffer, err);
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file || !(file << buffer.str())) {
            throw InputError("cannot write '" + cfg.out_path + "'");
        }
        return code;
    } catch (const DegenerateDynamicsError &e) {
        err << "error: degenerate dynamics at t=" << num(e.t()) << ": " << e.what() << "\n";
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace statnet::cli
