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

#include "statnet/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "statnet/errors.hpp"

namespace statnet {

namespace {

constexpr std::size_t kMaxNodes = 30;

void check_node_order(const std::vector<std::string> &node_order) {
    if (node_order.size() > kMaxNodes) {
        throw InputError("dense state vectors support at most " + std::to_string(kMaxNodes) + " nodes");
    }
    std::unordered_set<std::string> seen;
    for (const auto &name : node_order) {
        if (!seen.insert(name).second) {
            throw InputError("duplicate node '" + name + "' in register");
        }
    }
}

void require_same_space(const StateVector &a, const StateVector &b) {
    if (!a.same_space(b)) {
        throw InputError(
            "state vectors live on different registers (dim " + std::to_string(a.dim()) + " vs " +
            std::to_string(b.dim()) + ")");
    }
}

void require_mask_dim(const StateVector &v, const ConstraintMask &mask) {
    if (v.dim() != mask.dim()) {
        throw InputError(
            "mask dimension " + std::to_string(mask.dim()) + " does not match state dimension " +
            std::to_string(v.dim()));
    }
}

}  // namespace

std::size_t basis_index(std::size_t num_nodes, std::string_view assignment) {
    if (assignment.size() != num_nodes) {
        throw InputError(
            "assignment '" + std::string(assignment) + "' has length " + std::to_string(assignment.size()) +
            ", expected " + std::to_string(num_nodes));
    }
    std::size_t index = 0;
    for (char c : assignment) {
        if (c != '0' && c != '1') {
            throw InputError("assignment '" + std::string(assignment) + "' contains a non-binary character");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return index;
}

std::string assignment_of(std::size_t index, std::size_t num_nodes) {
    std::string out(num_nodes, '0');
    for (std::size_t p = 0; p < num_nodes; ++p) {
        out[p] = static_cast<char>('0' + node_bit(index, p, num_nodes));
    }
    return out;
}

StateVector::StateVector(std::vector<std::string> node_order) : node_order_(std::move(node_order)) {
    check_node_order(node_order_);
    amps_.assign(std::size_t{1} << node_order_.size(), Complex{0.0, 0.0});
}

StateVector::StateVector(std::vector<std::string> node_order, std::vector<Complex> amps)
    : node_order_(std::move(node_order)), amps_(std::move(amps)) {
    check_node_order(node_order_);
    if (amps_.size() != (std::size_t{1} << node_order_.size())) {
        throw InputError(
            "amplitude count " + std::to_string(amps_.size()) + " is not 2^" + std::to_string(node_order_.size()));
    }
}

std::size_t StateVector::node_position(std::string_view node) const {
    auto it = std::find(node_order_.begin(), node_order_.end(), node);
    if (it == node_order_.end()) {
        throw InputError("unknown node '" + std::string(node) + "'");
    }
    return static_cast<std::size_t>(it - node_order_.begin());
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

double StateVector::norm() const {
    return std::sqrt(norm_squared());
}

StateVector basis_state(const std::vector<std::string> &node_order, std::string_view assignment) {
    StateVector v(node_order);
    v[basis_index(node_order.size(), assignment)] = 1.0;
    return v;
}

Complex inner(const StateVector &a, const StateVector &b) {
    require_same_space(a, b);
    Complex total{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

StateVector normalize(const StateVector &v) {
    double n = v.norm();
    if (!(n > 0.0)) {
        throw DegenerateStateError("cannot normalize a zero vector");
    }
    return scale(v, 1.0 / n);
}

StateVector apply_mask(const StateVector &v, const ConstraintMask &mask) {
    require_mask_dim(v, mask);
    StateVector out = v;
    for (std::size_t k = 0; k < out.dim(); ++k) {
        if (!mask.allows(k)) {
            out[k] = 0.0;
        }
    }
    return out;
}

SectorDiag reduced_diag(const StateVector &v, std::string_view node) {
    std::size_t pos = v.node_position(node);
    SectorDiag d{std::string(node), 0.0, 0.0};
    for (std::size_t k = 0; k < v.dim(); ++k) {
        (node_bit(k, pos, v.num_nodes()) ? d.p1 : d.p0) += std::norm(v[k]);
    }
    return d;
}

std::pair<StateVector, StateVector> sector_split(const StateVector &v, std::string_view node) {
    std::size_t pos = v.node_position(node);
    StateVector c0(v.node_order());
    StateVector c1(v.node_order());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        (node_bit(k, pos, v.num_nodes()) ? c1 : c0)[k] = v[k];
    }
    return {std::move(c0), std::move(c1)};
}

StateVector add(const StateVector &a, const StateVector &b) {
    require_same_space(a, b);
    StateVector out = a;
    for (std::size_t k = 0; k < out.dim(); ++k) {
        out[k] += b[k];
    }
    return out;
}

StateVector scale(const StateVector &v, Complex c) {
    StateVector out = v;
    for (auto &a : out.mutable_amps()) {
        a *= c;
    }
    return out;
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    require_same_space(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

}  // namespace statnet
