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

/// Dense state vectors over an ordered register of named qubits.
///
/// Basis index convention: the first declared node is the most significant
/// bit, so for nodes (r, s) the basis order is |00>, |01>, |10>, |11>.
/// Assignments are strings of '0'/'1' characters in node order.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statnet/diagonal.hpp"

namespace statnet {

using Complex = std::complex<double>;

/// Norm and probability checks.
inline constexpr double kNormTolerance = 1e-12;

/// Integer whose binary digits (MSB first) are the assignment characters.
/// Throws InputError on a length mismatch or a character other than 0/1.
std::size_t basis_index(std::size_t num_nodes, std::string_view assignment);

/// Inverse of basis_index.
std::string assignment_of(std::size_t index, std::size_t num_nodes);

/// Bit of `node_position` (0 = first declared node) inside a basis index.
inline int node_bit(std::size_t index, std::size_t node_position, std::size_t num_nodes) {
    return static_cast<int>((index >> (num_nodes - 1 - node_position)) & 1U);
}

class StateVector {
   public:
    /// Placeholder with no register and no amplitudes.
    StateVector() = default;
    /// Zero vector over the given register. Throws InputError on duplicates
    /// or on more than 30 nodes.
    explicit StateVector(std::vector<std::string> node_order);
    /// Throws InputError unless amps.size() == 2^node_order.size().
    StateVector(std::vector<std::string> node_order, std::vector<Complex> amps);

    std::size_t dim() const {
        return amps_.size();
    }
    std::size_t num_nodes() const {
        return node_order_.size();
    }
    const std::vector<std::string> &node_order() const {
        return node_order_;
    }
    std::span<const Complex> amps() const {
        return amps_;
    }
    std::span<Complex> mutable_amps() {
        return amps_;
    }
    const Complex &operator[](std::size_t k) const {
        return amps_[k];
    }
    Complex &operator[](std::size_t k) {
        return amps_[k];
    }

    /// Position of `node` in node_order. Throws InputError if absent.
    std::size_t node_position(std::string_view node) const;

    /// Sum of |amp|^2.
    double norm_squared() const;
    double norm() const;

    bool same_space(const StateVector &other) const {
        return node_order_ == other.node_order_;
    }

    bool operator==(const StateVector &other) const = default;

   private:
    std::vector<std::string> node_order_;
    std::vector<Complex> amps_;
};

/// Drive-node sector masses.
struct SectorDiag {
    std::string node;
    double p0 = 0.0;
    double p1 = 0.0;
};

StateVector basis_state(const std::vector<std::string> &node_order, std::string_view assignment);

/// <a|b>, conjugate-linear in `a`. Throws InputError if the registers differ.
Complex inner(const StateVector &a, const StateVector &b);

/// Throws DegenerateStateError on a zero vector.
StateVector normalize(const StateVector &v);

/// Zeroes every amplitude the mask excludes. The result is not renormalized.
StateVector apply_mask(const StateVector &v, const ConstraintMask &mask);

/// Probability mass on node=0 and node=1 (diagonal of the reduced density matrix).
SectorDiag reduced_diag(const StateVector &v, std::string_view node);

/// Split v = c0 + c1 into the node=0 and node=1 components.
std::pair<StateVector, StateVector> sector_split(const StateVector &v, std::string_view node);

/// Pointwise a + b on the same register.
StateVector add(const StateVector &a, const StateVector &b);

/// Pointwise c * v.
StateVector scale(const StateVector &v, Complex c);

/// Largest |a_k - b_k|.
double max_abs_diff(const StateVector &a, const StateVector &b);

}  // namespace statnet
