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

#include "statnet/network.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_set>

#include "patterns.hpp"
#include "statnet/errors.hpp"
#include "statnet/hilbert.hpp"

namespace statnet {

namespace {

std::string pattern_string(std::uint32_t pattern, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        s[k] = static_cast<char>('0' + ((pattern >> (width - 1 - k)) & 1U));
    }
    return s;
}

std::string join(const std::vector<std::string> &items, const char *sep) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) {
            out += sep;
        }
        out += items[k];
    }
    return out;
}

TruthTable two_bit_adder_table() {
    // c copies the first input, d is the XOR of both inputs.
    return TruthTable(2, 2, {{0b00, 0b00}, {0b01, 0b01}, {0b10, 0b11}, {0b11, 0b10}});
}

}  // namespace

TruthTable::TruthTable(std::size_t in_arity, std::size_t out_arity, std::vector<TableRow> rows)
    : in_arity_(in_arity), out_arity_(out_arity), rows_(std::move(rows)) {
    if (in_arity_ > 20 || out_arity_ > 20) {
        throw InputError("truth table arity above 20 is not supported");
    }
    if (rows_.empty()) {
        throw InputError("truth table has no rows");
    }
    lookup_.assign(std::size_t{1} << in_arity_, -1);
    for (const auto &row : rows_) {
        if (row.in >> in_arity_ || row.out >> out_arity_) {
            throw InputError("truth table row does not fit the declared arity");
        }
        if (lookup_[row.in] >= 0) {
            throw InputError("input pattern " + pattern_string(row.in, in_arity_) + " appears twice");
        }
        lookup_[row.in] = row.out;
    }
}

std::optional<std::uint32_t> TruthTable::output_for(std::uint32_t in) const {
    if (in >= lookup_.size() || lookup_[in] < 0) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(lookup_[in]);
}

bool TruthTable::contains(std::uint32_t in, std::uint32_t out) const {
    return in < lookup_.size() && lookup_[in] == static_cast<std::int64_t>(out);
}

TruthTable TruthTable::inverter() {
    return TruthTable(1, 1, {{0, 1}, {1, 0}});
}

std::vector<std::string> Gate::nodes() const {
    std::vector<std::string> all = in_nodes;
    all.insert(all.end(), out_nodes.begin(), out_nodes.end());
    return all;
}

std::string_view to_string(PinKind kind) {
    return kind == PinKind::input ? "input" : "output";
}

Network::Network(std::vector<std::string> nodes, std::vector<Gate> gates, std::vector<Pin> pins,
                 std::optional<std::string> drive_node)
    : nodes_(std::move(nodes)), gates_(std::move(gates)), pins_(std::move(pins)), drive_node_(std::move(drive_node)) {
    if (nodes_.size() > 30) {
        throw InputError("networks are limited to 30 nodes");
    }
    std::unordered_set<std::string> declared;
    for (const auto &n : nodes_) {
        if (n.empty()) {
            throw InputError("empty node name");
        }
        if (!declared.insert(n).second) {
            throw InputError("duplicate node '" + n + "'");
        }
    }
    auto require_declared = [&](const std::string &n, const std::string &where) {
        if (!declared.count(n)) {
            throw InputError(where + " references undeclared node '" + n + "'");
        }
    };

    std::unordered_set<std::string> gate_names;
    for (const auto &g : gates_) {
        if (!gate_names.insert(g.name).second) {
            throw InputError("duplicate gate name '" + g.name + "'");
        }
        std::unordered_set<std::string> local;
        for (const auto &n : g.nodes()) {
            require_declared(n, "gate '" + g.name + "'");
            if (!local.insert(n).second) {
                throw InputError("gate '" + g.name + "' lists node '" + n + "' more than once");
            }
        }
        if (g.table.rows().empty()) {
            throw InputError("gate '" + g.name + "' has an empty truth table");
        }
        if (g.table.in_arity() != g.in_nodes.size() || g.table.out_arity() != g.out_nodes.size()) {
            throw InputError("gate '" + g.name + "' arity does not match its truth table");
        }
    }

    std::unordered_set<std::string> pinned;
    for (const auto &p : pins_) {
        require_declared(p.node, "pin");
        if (p.value != 0 && p.value != 1) {
            throw InputError("pin on '" + p.node + "' must have value 0 or 1");
        }
        if (!pinned.insert(p.node).second) {
            throw InputError("node '" + p.node + "' carries more than one pin");
        }
    }

    if (drive_node_) {
        require_declared(*drive_node_, "drive");
        const Pin *pin = pin_on(*drive_node_);
        if (pin == nullptr || pin->kind != PinKind::output) {
            throw InputError("drive node '" + *drive_node_ + "' must carry an output pin");
        }
    }
}

std::size_t Network::node_position(std::string_view node) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end()) {
        throw InputError("unknown node '" + std::string(node) + "'");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

const Gate &Network::gate(std::string_view name) const {
    for (const auto &g : gates_) {
        if (g.name == name) {
            return g;
        }
    }
    throw InputError("unknown gate '" + std::string(name) + "'");
}

const Pin *Network::pin_on(std::string_view node) const {
    for (const auto &p : pins_) {
        if (p.node == node) {
            return &p;
        }
    }
    return nullptr;
}

bool Network::is_gate_output(std::string_view node) const {
    for (const auto &g : gates_) {
        if (std::find(g.out_nodes.begin(), g.out_nodes.end(), node) != g.out_nodes.end()) {
            return true;
        }
    }
    return false;
}

Network Network::with_pins(std::vector<Pin> pins) const {
    std::optional<std::string> drive = drive_node_;
    if (drive) {
        auto it = std::find_if(pins.begin(), pins.end(), [&](const Pin &p) { return p.node == *drive; });
        if (it == pins.end() || it->kind != PinKind::output) {
            drive.reset();
        }
    }
    return Network(nodes_, gates_, std::move(pins), std::move(drive));
}

std::string render_network(const Network &net) {
    std::ostringstream out;
    out << "nodes " << join(net.nodes(), " ") << "\n";
    for (const auto &g : net.gates()) {
        out << "gate " << g.name << " in(" << join(g.in_nodes, ",") << ") out(" << join(g.out_nodes, ",") << ") {";
        for (std::size_t k = 0; k < g.table.rows().size(); ++k) {
            const auto &row = g.table.rows()[k];
            out << (k ? "; " : " ") << pattern_string(row.in, g.table.in_arity()) << "->"
                << pattern_string(row.out, g.table.out_arity());
        }
        out << " }\n";
    }
    for (const auto &p : net.pins()) {
        out << "fix " << p.node << "=" << p.value << " " << to_string(p.kind) << "\n";
    }
    if (net.drive_node()) {
        out << "drive " << *net.drive_node() << "\n";
    }
    return out.str();
}

Network builtin_fig1() {
    std::vector<std::string> nodes{"a", "b", "c", "d", "e", "f", "g", "h"};
    std::vector<Gate> gates{
        Gate{"gate1", {"a", "b"}, {"c", "d"}, two_bit_adder_table()},
        Gate{"link_d_e", {"d"}, {"e"}, TruthTable::inverter()},
        Gate{"gate3", {"e", "f"}, {"g", "h"}, two_bit_adder_table()},
    };
    std::vector<Pin> pins{
        Pin{"b", 1, PinKind::input},
        Pin{"f", 0, PinKind::input},
        Pin{"h", 1, PinKind::output},
    };
    return Network(std::move(nodes), std::move(gates), std::move(pins), std::string("h"));
}

Network builtin_fig1_unsat() {
    Network base = builtin_fig1();
    return base.with_pins({
        Pin{"b", 1, PinKind::input},
        Pin{"f", 0, PinKind::input},
        Pin{"g", 0, PinKind::output},
        Pin{"h", 1, PinKind::output},
    });
}

Network builtin_link() {
    return Network({"r", "s"}, {Gate{"link_r_s", {"r"}, {"s"}, TruthTable::inverter()}}, {});
}

Network builtin_xor() {
    TruthTable xor_table(2, 1, {{0b00, 0}, {0b01, 1}, {0b10, 1}, {0b11, 0}});
    return Network({"t", "u", "v"}, {Gate{"xor", {"t", "u"}, {"v"}, xor_table}}, {});
}

std::optional<Network> builtin_network(std::string_view name) {
    if (name == "fig1") {
        return builtin_fig1();
    }
    if (name == "fig1-unsat") {
        return builtin_fig1_unsat();
    }
    if (name == "link") {
        return builtin_link();
    }
    if (name == "xor") {
        return builtin_xor();
    }
    return std::nullopt;
}

bool index_satisfies(const Network &net, std::size_t index, bool include_pins) {
    const std::size_t n = net.num_nodes();
    for (const auto &gate : net.gates()) {
        if (!detail::gate_allows(detail::compile_gate(net, gate), index, n)) {
            return false;
        }
    }
    if (include_pins) {
        for (const auto &pin : net.pins()) {
            if (node_bit(index, net.node_position(pin.node), n) != pin.value) {
                return false;
            }
        }
    }
    return true;
}

bool assignment_satisfies(const Network &net, std::string_view assignment, bool include_pins) {
    return index_satisfies(net, basis_index(net.num_nodes(), assignment), include_pins);
}

std::vector<std::string> brute_force_solutions(const Network &net, bool include_pins, std::size_t node_limit) {
    const std::size_t n = net.num_nodes();
    if (n > node_limit) {
        throw LimitError(
            "exhaustive enumeration over " + std::to_string(n) + " nodes exceeds the limit of " +
            std::to_string(node_limit));
    }
    std::vector<detail::CompiledGate> gates;
    for (const auto &g : net.gates()) {
        gates.push_back(detail::compile_gate(net, g));
    }
    std::size_t pin_mask = 0;
    std::size_t pin_value = 0;
    if (include_pins) {
        for (const auto &p : net.pins()) {
            std::size_t bit = std::size_t{1} << (n - 1 - net.node_position(p.node));
            pin_mask |= bit;
            if (p.value) {
                pin_value |= bit;
            }
        }
    }

    std::vector<std::string> out;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t k = 0; k < dim; ++k) {
        if ((k & pin_mask) != pin_value) {
            continue;
        }
        bool ok = std::all_of(gates.begin(), gates.end(), [&](const auto &g) { return detail::gate_allows(g, k, n); });
        if (ok) {
            out.push_back(assignment_of(k, n));
        }
    }
    return out;
}

std::string network_hash(const Network &net) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : render_network(net)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace statnet
