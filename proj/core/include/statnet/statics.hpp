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

/// Constraint projectors and penalty Hamiltonians of a Boolean network.
///
/// Every operator here is diagonal in the computational basis, so masks are
/// stored as 0/1 arrays and Hamiltonians as energy arrays. A gate's
/// Hamiltonian vanishes exactly on the support of its mask.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statnet/diagonal.hpp"
#include "statnet/hilbert.hpp"
#include "statnet/network.hpp"

namespace statnet {

struct EnergyParams {
    /// Gap E of every constraint violation.
    double penalty = 1.0;
    /// Per-violation overrides keyed by the gate-local pattern (input bits
    /// then output bits). For a link r->s, "00" and "11" play E_c and E_d.
    /// Each must be >= penalty.
    std::map<std::string, double> violation_energy;
    /// E_h of the one-qubit Hamiltonians holding pinned nodes.
    double pin_energy = 1.0;
    /// E_z of the drive Hamiltonian; defaults to 0.01 * penalty.
    std::optional<double> drive_energy;

    double effective_drive_energy() const {
        return drive_energy.value_or(0.01 * penalty);
    }
    /// Throws InputError on a nonpositive energy or an override below `penalty`.
    void validate() const;
};

ConstraintMask gate_mask(const Network &net, const Gate &gate);
ConstraintMask pin_mask(const Network &net, const Pin &pin);
/// Product of all gate masks and the input-pin masks, plus the output-pin
/// masks when requested. With everything included this is the full network
/// projector.
ConstraintMask network_mask(const Network &net, bool include_output_pins);

PenaltyHamiltonian gate_hamiltonian(const Network &net, const Gate &gate, const EnergyParams &params = {});

/// Diagonal operator `energy` on states where `node` equals `excited_value`.
PenaltyHamiltonian one_qubit_hamiltonian(
    const std::vector<std::string> &node_order, std::string_view node, int excited_value, double energy);

/// Holds a pinned node at its value: excited where the node disagrees.
PenaltyHamiltonian pin_hamiltonian(const Network &net, const Pin &pin, const EnergyParams &params = {});

/// H_z for the drive node: ground state is the output pin's value.
/// Throws InputError if the network has no drive node.
PenaltyHamiltonian drive_hamiltonian(const Network &net, const EnergyParams &params = {});

/// Pointwise sum. An empty list yields the zero operator on `dim`.
PenaltyHamiltonian total_hamiltonian(std::size_t dim, std::span<const PenaltyHamiltonian> terms);

/// Sum of all gate Hamiltonians and pin Hamiltonians (output pins optional).
PenaltyHamiltonian network_hamiltonian(const Network &net, bool include_output_pins, const EnergyParams &params = {});

/// `energy` on every basis state the mask excludes.
PenaltyHamiltonian mask_penalty(const ConstraintMask &mask, double energy = 1.0);

/// <v|H|v>.
double expected_energy(const StateVector &v, const PenaltyHamiltonian &h);

/// Sorted basis indices with exactly zero energy.
std::vector<std::size_t> ground_space(const PenaltyHamiltonian &h);

}  // namespace statnet
