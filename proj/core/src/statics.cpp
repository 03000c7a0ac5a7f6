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

#include "statnet/statics.hpp"

#include <cmath>

#include "patterns.hpp"
#include "statnet/errors.hpp"

namespace statnet {

namespace {

void require_positive(double value, const std::string &what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InputError(what + " must be a positive finite energy");
    }
}

std::string local_pattern(const detail::CompiledGate &g, std::size_t index, std::size_t n) {
    std::string s;
    for (std::size_t pos : g.in_pos) {
        s.push_back(static_cast<char>('0' + node_bit(index, pos, n)));
    }
    for (std::size_t pos : g.out_pos) {
        s.push_back(static_cast<char>('0' + node_bit(index, pos, n)));
    }
    return s;
}

}  // namespace

void EnergyParams::validate() const {
    require_positive(penalty, "penalty E");
    for (const auto &[pattern, e] : violation_energy) {
        require_positive(e, "violation energy for '" + pattern + "'");
        if (e < penalty) {
            throw InputError("violation energy for '" + pattern + "' is below the penalty gap E");
        }
    }
    require_positive(pin_energy, "pin energy E_h");
    require_positive(effective_drive_energy(), "drive energy E_z");
}

ConstraintMask gate_mask(const Network &net, const Gate &gate) {
    auto g = detail::compile_gate(net, gate);
    const std::size_t n = net.num_nodes();
    std::vector<std::uint8_t> bits(net.dim());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        bits[k] = detail::gate_allows(g, k, n) ? 1 : 0;
    }
    return ConstraintMask(std::move(bits), "A_" + gate.name);
}

ConstraintMask pin_mask(const Network &net, const Pin &pin) {
    const std::size_t n = net.num_nodes();
    const std::size_t pos = net.node_position(pin.node);
    std::vector<std::uint8_t> bits(net.dim());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        bits[k] = node_bit(k, pos, n) == pin.value ? 1 : 0;
    }
    return ConstraintMask(std::move(bits), "P_" + pin.node);
}

ConstraintMask network_mask(const Network &net, bool include_output_pins) {
    ConstraintMask mask(net.dim(), include_output_pins ? "A_N" : "A_N[inputs]");
    std::vector<std::uint8_t> bits = mask.bits();
    auto fold = [&](const ConstraintMask &m) {
        for (std::size_t k = 0; k < bits.size(); ++k) {
            bits[k] &= m.bits()[k];
        }
    };
    for (const auto &g : net.gates()) {
        fold(gate_mask(net, g));
    }
    for (const auto &p : net.pins()) {
        if (p.kind == PinKind::input || include_output_pins) {
            fold(pin_mask(net, p));
        }
    }
    return ConstraintMask(std::move(bits), mask.label());
}

PenaltyHamiltonian gate_hamiltonian(const Network &net, const Gate &gate, const EnergyParams &params) {
    params.validate();
    auto g = detail::compile_gate(net, gate);
    const std::size_t n = net.num_nodes();
    std::vector<double> energies(net.dim(), 0.0);
    std::map<std::string, double> used{{"E", params.penalty}};
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (detail::gate_allows(g, k, n)) {
            continue;
        }
        double e = params.penalty;
        if (!params.violation_energy.empty()) {
            auto it = params.violation_energy.find(local_pattern(g, k, n));
            if (it != params.violation_energy.end()) {
                e = it->second;
                used["E[" + it->first + "]"] = e;
            }
        }
        energies[k] = e;
    }
    return PenaltyHamiltonian(std::move(energies), "H_" + gate.name, std::move(used));
}

PenaltyHamiltonian one_qubit_hamiltonian(
    const std::vector<std::string> &node_order, std::string_view node, int excited_value, double energy) {
    require_positive(energy, "one-qubit energy");
    if (excited_value != 0 && excited_value != 1) {
        throw InputError("excited value must be 0 or 1");
    }
    StateVector probe(node_order);
    const std::size_t pos = probe.node_position(node);
    const std::size_t n = node_order.size();
    std::vector<double> energies(probe.dim(), 0.0);
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (node_bit(k, pos, n) == excited_value) {
            energies[k] = energy;
        }
    }
    return PenaltyHamiltonian(std::move(energies), "H_" + std::string(node), {{"E_" + std::string(node), energy}});
}

PenaltyHamiltonian pin_hamiltonian(const Network &net, const Pin &pin, const EnergyParams &params) {
    params.validate();
    return one_qubit_hamiltonian(net.nodes(), pin.node, 1 - pin.value, params.pin_energy);
}

PenaltyHamiltonian drive_hamiltonian(const Network &net, const EnergyParams &params) {
    params.validate();
    if (!net.drive_node()) {
        throw InputError("network has no drive node");
    }
    const Pin *pin = net.pin_on(*net.drive_node());
    return one_qubit_hamiltonian(net.nodes(), *net.drive_node(), 1 - pin->value, params.effective_drive_energy());
}

PenaltyHamiltonian total_hamiltonian(std::size_t dim, std::span<const PenaltyHamiltonian> terms) {
    std::vector<double> energies(dim, 0.0);
    std::map<std::string, double> params;
    std::string label;
    for (const auto &h : terms) {
        if (h.dim() != dim) {
            throw InputError(
                "Hamiltonian '" + h.label() + "' has dimension " + std::to_string(h.dim()) + ", expected " +
                std::to_string(dim));
        }
        for (std::size_t k = 0; k < dim; ++k) {
            energies[k] += h.energy(k);
        }
        for (const auto &[name, value] : h.params()) {
            params[h.label() + "." + name] = value;
        }
        label += (label.empty() ? "" : "+") + h.label();
    }
    return PenaltyHamiltonian(std::move(energies), label.empty() ? "0" : label, std::move(params));
}

PenaltyHamiltonian network_hamiltonian(const Network &net, bool include_output_pins, const EnergyParams &params) {
    std::vector<PenaltyHamiltonian> terms;
    for (const auto &g : net.gates()) {
        terms.push_back(gate_hamiltonian(net, g, params));
    }
    for (const auto &p : net.pins()) {
        if (p.kind == PinKind::input || include_output_pins) {
            terms.push_back(pin_hamiltonian(net, p, params));
        }
    }
    return total_hamiltonian(net.dim(), terms);
}

PenaltyHamiltonian mask_penalty(const ConstraintMask &mask, double energy) {
    require_positive(energy, "mask penalty");
    std::vector<double> energies(mask.dim(), 0.0);
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (!mask.allows(k)) {
            energies[k] = energy;
        }
    }
    return PenaltyHamiltonian(std::move(energies), "H[" + mask.label() + "]", {{"E", energy}});
}

double expected_energy(const StateVector &v, const PenaltyHamiltonian &h) {
    if (v.dim() != h.dim()) {
        throw InputError(
            "Hamiltonian dimension " + std::to_string(h.dim()) + " does not match state dimension " +
            std::to_string(v.dim()));
    }
    double total = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        total += h.energy(k) * std::norm(v[k]);
    }
    return total;
}

std::vector<std::size_t> ground_space(const PenaltyHamiltonian &h) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < h.dim(); ++k) {
        if (h.energy(k) == 0.0) {
            out.push_back(k);
        }
    }
    return out;
}

}  // namespace statnet
