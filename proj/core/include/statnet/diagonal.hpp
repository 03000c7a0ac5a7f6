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
#include <map>
#include <string>
#include <vector>

namespace statnet {

/// Diagonal 0/1 projector over the computational basis. Every gate, pin and
/// whole-network constraint is one of these; products of them are bitwise ANDs.
class ConstraintMask {
   public:
    ConstraintMask() = default;
    /// All-ones (identity) mask of the given dimension.
    ConstraintMask(std::size_t dim, std::string label);
    /// Throws InputError if any entry is not 0 or 1.
    ConstraintMask(std::vector<std::uint8_t> bits, std::string label);

    std::size_t dim() const {
        return bits_.size();
    }
    const std::vector<std::uint8_t> &bits() const {
        return bits_;
    }
    bool allows(std::size_t index) const {
        return bits_[index] != 0;
    }
    const std::string &label() const {
        return label_;
    }

    /// Number of basis states kept by the projector (its trace).
    std::size_t count() const;
    /// Sorted basis indices kept by the projector.
    std::vector<std::size_t> support() const;

    /// Product of two projectors. Both must share a dimension.
    ConstraintMask operator&(const ConstraintMask &other) const;
    /// Orthogonal complement 1 - A.
    ConstraintMask complement() const;

    bool operator==(const ConstraintMask &other) const = default;

   private:
    std::vector<std::uint8_t> bits_;
    std::string label_;
};

/// Nonnegative diagonal energy operator. Zero entries form the ground space.
class PenaltyHamiltonian {
   public:
    PenaltyHamiltonian() = default;
    /// Identically zero Hamiltonian of the given dimension.
    PenaltyHamiltonian(std::size_t dim, std::string label);
    /// Throws InputError on a negative or non-finite entry.
    PenaltyHamiltonian(std::vector<double> energies, std::string label, std::map<std::string, double> params = {});

    std::size_t dim() const {
        return energies_.size();
    }
    const std::vector<double> &energies() const {
        return energies_;
    }
    double energy(std::size_t index) const {
        return energies_[index];
    }
    const std::string &label() const {
        return label_;
    }
    /// Named energy constants the operator was built from (E, E_c, E_z, ...).
    const std::map<std::string, double> &params() const {
        return params_;
    }

    bool operator==(const PenaltyHamiltonian &other) const = default;

   private:
    std::vector<double> energies_;
    std::string label_;
    std::map<std::string, double> params_;
};

}  // namespace statnet
