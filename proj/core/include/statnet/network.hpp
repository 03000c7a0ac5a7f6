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

/// Boolean networks: gates with truth tables, inverting links, pinned nodes.
///
/// Text format (one statement per line, '#' starts a comment):
///
///     nodes a b c d
///     gate g1 in(a,b) out(c) { 00->0; 01->1; 10->1; 11->0 }
///     link c -> d
///     fix a=1            # kind inferred: "output" if a is some gate's output
///     fix d=0 output
///     drive d
///
/// A gate body may span several lines. Links become two-node NOT gates named
/// "link_<from>_<to>". Table bitstrings follow the gate's in/out node order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace statnet {

/// One row maps an input pattern to an output pattern. Patterns are packed
/// with the first listed node as the most significant bit.
struct TableRow {
    std::uint32_t in = 0;
    std::uint32_t out = 0;
    bool operator==(const TableRow &) const = default;
};

/// A (possibly partial) function from input patterns to output patterns.
/// Input patterns absent from the table admit no output at all.
class TruthTable {
   public:
    TruthTable() = default;
    /// Throws InputError if rows is empty, an input pattern repeats, or a
    /// pattern does not fit its arity.
    TruthTable(std::size_t in_arity, std::size_t out_arity, std::vector<TableRow> rows);

    std::size_t in_arity() const {
        return in_arity_;
    }
    std::size_t out_arity() const {
        return out_arity_;
    }
    const std::vector<TableRow> &rows() const {
        return rows_;
    }
    /// Output pattern for `in`, if the table defines one.
    std::optional<std::uint32_t> output_for(std::uint32_t in) const;
    bool contains(std::uint32_t in, std::uint32_t out) const;

    /// The inverting wire {0->1, 1->0}.
    static TruthTable inverter();

    bool operator==(const TruthTable &) const = default;

   private:
    std::size_t in_arity_ = 0;
    std::size_t out_arity_ = 0;
    std::vector<TableRow> rows_;
    std::vector<std::int64_t> lookup_;  // indexed by input pattern, -1 when absent
};

struct Gate {
    std::string name;
    std::vector<std::string> in_nodes;
    std::vector<std::string> out_nodes;
    TruthTable table;

    /// in_nodes followed by out_nodes.
    std::vector<std::string> nodes() const;
    bool operator==(const Gate &) const = default;
};

enum class PinKind { input, output };

std::string_view to_string(PinKind kind);

struct Pin {
    std::string node;
    int value = 0;
    PinKind kind = PinKind::input;
    bool operator==(const Pin &) const = default;
};

class Network {
   public:
    Network() = default;
    /// Validates every invariant; throws InputError on a violation.
    Network(std::vector<std::string> nodes, std::vector<Gate> gates, std::vector<Pin> pins,
            std::optional<std::string> drive_node = std::nullopt);

    const std::vector<std::string> &nodes() const {
        return nodes_;
    }
    std::size_t num_nodes() const {
        return nodes_.size();
    }
    std::size_t dim() const {
        return std::size_t{1} << nodes_.size();
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::vector<Pin> &pins() const {
        return pins_;
    }
    const std::optional<std::string> &drive_node() const {
        return drive_node_;
    }

    /// Position in the node order. Throws InputError for unknown names.
    std::size_t node_position(std::string_view node) const;
    const Gate &gate(std::string_view name) const;
    /// Pin on `node`, if any.
    const Pin *pin_on(std::string_view node) const;
    /// True if some gate lists `node` among its outputs.
    bool is_gate_output(std::string_view node) const;

    /// Copy with the given pins replacing the current ones. The drive node
    /// is kept when it still carries an output pin and dropped otherwise.
    Network with_pins(std::vector<Pin> pins) const;

    bool operator==(const Network &) const = default;

   private:
    std::vector<std::string> nodes_;
    std::vector<Gate> gates_;
    std::vector<Pin> pins_;
    std::optional<std::string> drive_node_;
};

/// Parses the text format above. Errors are ParseError with a line number.
Network parse_network(std::string_view text);

/// Text form accepted by parse_network. parse_network(render_network(n)) == n.
std::string render_network(const Network &net);

/// The eight-node example network: a 2-in/2-out gate, an inverting link d->e,
/// a second copy of the gate, inputs b=1 and f=0, output h=1 driven.
Network builtin_fig1();

/// fig1 with the extra output pin g=0, which makes it unsatisfiable.
Network builtin_fig1_unsat();

/// Two-node inverting link r -> s with no pins.
Network builtin_link();

/// Three-node XOR gate in(t,u) out(v) with no pins.
Network builtin_xor();

/// Looks up "fig1", "fig1-unsat", "link" or "xor".
std::optional<Network> builtin_network(std::string_view name);

/// Default cap on exhaustive enumeration.
inline constexpr std::size_t kBruteForceNodeLimit = 24;

/// True iff every gate's in/out bits form a table row and, with
/// include_pins, every pin holds its value. Throws InputError on a bad
/// assignment string.
bool assignment_satisfies(const Network &net, std::string_view assignment, bool include_pins);
bool index_satisfies(const Network &net, std::size_t index, bool include_pins);

/// All satisfying assignments in ascending basis-index order.
/// Throws LimitError above `node_limit` nodes.
std::vector<std::string> brute_force_solutions(
    const Network &net, bool include_pins, std::size_t node_limit = kBruteForceNodeLimit);

/// 64-bit FNV-1a of render_network, as 16 lowercase hex digits.
std::string network_hash(const Network &net);

}  // namespace statnet
