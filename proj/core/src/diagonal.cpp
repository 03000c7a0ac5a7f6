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

#include "statnet/diagonal.hpp"

#include <algorithm>
#include <cmath>

#include "statnet/errors.hpp"

namespace statnet {

ConstraintMask::ConstraintMask(std::size_t dim, std::string label) : bits_(dim, 1), label_(std::move(label)) {
}

ConstraintMask::ConstraintMask(std::vector<std::uint8_t> bits, std::string label)
    : bits_(std::move(bits)), label_(std::move(label)) {
    for (auto b : bits_) {
        if (b > 1) {
            throw InputError("constraint mask entries must be 0 or 1");
        }
    }
}

std::size_t ConstraintMask::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> ConstraintMask::support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k]) {
            out.push_back(k);
        }
    }
    return out;
}

ConstraintMask ConstraintMask::operator&(const ConstraintMask &other) const {
    if (dim() != other.dim()) {
        throw InputError("mask dimension mismatch: " + std::to_string(dim()) + " vs " + std::to_string(other.dim()));
    }
    std::vector<std::uint8_t> out(dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = bits_[k] & other.bits_[k];
    }
    std::string label = label_.empty() ? other.label_ : (other.label_.empty() ? label_ : label_ + "*" + other.label_);
    return ConstraintMask(std::move(out), std::move(label));
}

ConstraintMask ConstraintMask::complement() const {
    std::vector<std::uint8_t> out(dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = bits_[k] ^ 1U;
    }
    return ConstraintMask(std::move(out), "1-" + label_);
}

PenaltyHamiltonian::PenaltyHamiltonian(std::size_t dim, std::string label)
    : energies_(dim, 0.0), label_(std::move(label)) {
}

PenaltyHamiltonian::PenaltyHamiltonian(
    std::vector<double> energies, std::string label, std::map<std::string, double> params)
    : energies_(std::move(energies)), label_(std::move(label)), params_(std::move(params)) {
    for (double e : energies_) {
        if (!std::isfinite(e) || e < 0.0) {
            throw InputError("penalty energies must be finite and nonnegative");
        }
    }
}

}  // namespace statnet
