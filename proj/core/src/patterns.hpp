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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "statnet/network.hpp"

namespace statnet::detail {

/// Gate with node names resolved to register positions.
struct CompiledGate {
    std::vector<std::size_t> in_pos;
    std::vector<std::size_t> out_pos;
    const TruthTable *table = nullptr;
};

inline std::uint32_t extract_pattern(std::size_t index, const std::vector<std::size_t> &positions, std::size_t n) {
    std::uint32_t p = 0;
    for (std::size_t pos : positions) {
        p = (p << 1) | static_cast<std::uint32_t>((index >> (n - 1 - pos)) & 1U);
    }
    return p;
}

inline CompiledGate compile_gate(const Network &net, const Gate &gate) {
    CompiledGate g;
    for (const auto &node : gate.in_nodes) {
        g.in_pos.push_back(net.node_position(node));
    }
    for (const auto &node : gate.out_nodes) {
        g.out_pos.push_back(net.node_position(node));
    }
    g.table = &gate.table;
    return g;
}

inline bool gate_allows(const CompiledGate &g, std::size_t index, std::size_t n) {
    return g.table->contains(extract_pattern(index, g.in_pos, n), extract_pattern(index, g.out_pos, n));
}

}  // namespace statnet::detail
