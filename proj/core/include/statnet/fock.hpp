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

/// Identical spin-1/2 fermions on a small lattice of sites.
///
/// Each site carries two modes (spin 0 and spin 1). Modes are ordered
/// site-major, spin-minor: mode index = 2 * site_position + spin. A Fock
/// basis state is an occupation bitmask with bit k set when mode k is
/// occupied, and stands for a+_{i1} a+_{i2} ... a+_{in} |0> with
/// i1 < i2 < ... < in. Creation and annihilation on mode k pick up the sign
/// (-1)^(number of occupied modes below k).
///
/// When every site holds exactly one particle the state is a qubit register
/// (site -> spin), which is how gates of the network are embedded here.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statnet/hilbert.hpp"
#include "statnet/network.hpp"

namespace statnet::fock {

using Occupation = std::uint32_t;

class ModeBasis {
   public:
    /// Throws InputError on duplicate or empty site lists, or more than 8 sites.
    explicit ModeBasis(std::vector<std::string> sites);

    const std::vector<std::string> &sites() const {
        return sites_;
    }
    std::size_t num_sites() const {
        return sites_.size();
    }
    std::size_t num_modes() const {
        return 2 * sites_.size();
    }
    /// Mode index of (spin, site). Throws InputError on unknown sites.
    std::size_t mode(int spin, std::string_view site) const;
    int spin_of(std::size_t mode) const {
        return static_cast<int>(mode % 2);
    }
    std::size_t site_of(std::size_t mode) const {
        return mode / 2;
    }
    /// e.g. "0r" for spin 0 on site r.
    std::string mode_name(std::size_t mode) const;

    bool operator==(const ModeBasis &) const = default;

   private:
    std::vector<std::string> sites_;
};

/// Superposition over occupation states, dense over all 2^modes occupations.
class FockVector {
   public:
    explicit FockVector(ModeBasis basis);

    static FockVector vacuum(const ModeBasis &basis);
    static FockVector occupation_state(const ModeBasis &basis, Occupation occ);

    const ModeBasis &basis() const {
        return basis_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    const Complex &operator[](Occupation occ) const {
        return amps_[occ];
    }
    Complex &operator[](Occupation occ) {
        return amps_[occ];
    }
    std::span<const Complex> amps() const {
        return amps_;
    }

    double norm_squared() const;
    bool is_zero(double tolerance = 0.0) const;

   private:
    ModeBasis basis_;
    std::vector<Complex> amps_;
};

FockVector operator+(const FockVector &a, const FockVector &b);
FockVector operator-(const FockVector &a, const FockVector &b);
FockVector operator*(Complex c, const FockVector &v);
Complex inner(const FockVector &a, const FockVector &b);
double max_abs_diff(const FockVector &a, const FockVector &b);

/// `fermionic` is the physical convention; `ignored` drops the exchange
/// sign entirely and exists to show that the checks below detect it.
enum class Parity { fermionic, ignored };

FockVector create(std::size_t mode, const FockVector &v, Parity parity = Parity::fermionic);
FockVector annihilate(std::size_t mode, const FockVector &v, Parity parity = Parity::fermionic);

/// Qubit assignment over the sites when each site holds exactly one particle.
std::optional<std::string> embed_qubit(const ModeBasis &basis, Occupation occ);
/// Linear extension of embed_qubit. Empty if any amplitude lies outside the
/// one-particle-per-site sector.
std::optional<StateVector> embed_state(const FockVector &v);
/// Inverse of embed_qubit: a+_{spin_1, site_1} ... a+_{spin_n, site_n} |0>.
FockVector from_assignment(const ModeBasis &basis, std::string_view assignment);

/// Projector built from particle permutations on the first-quantized space
/// (single-particle dimension d, n particles, d^n total, particle 1 most
/// significant).
struct PermutationProjector {
    enum class Kind { symmetrizer, antisymmetrizer };
    Kind kind;
    std::size_t n_particles;
    std::size_t single_dim;
    Eigen::MatrixXd matrix;
};

/// Matrix of the transposition of particles i and j (1-based).
Eigen::MatrixXd transposition(std::size_t n_particles, std::size_t single_dim, std::size_t i, std::size_t j);

/// (1 + P12) / 2 on two qubits.
PermutationProjector symmetrizer_two();
/// (1 - P12) / 2 for n = 2, and
/// (1 - P12 - P13 - P23 + P13 P12 + P23 P12) / 6 for n = 3.
/// Throws InputError for other n.
PermutationProjector antisymmetrizer(std::size_t n_particles, std::size_t single_dim);

/// Slater-determinant image of the n-particle component of v on the
/// first-quantized space, single-particle index = mode index.
Eigen::VectorXcd first_quantize(const FockVector &v, std::size_t n_particles);

/// One of the six two-fermion basis states on sites (r, s).
struct NamedFockState {
    std::string label;
    FockVector second;               // built from creation operators
    Eigen::VectorXcd first;          // written out in first quantization
    std::optional<std::string> qubit;  // set for |c> and |d>
};

/// |a> ... |f>: both particles on r, both on s, |00>, |11>, and the two
/// one-per-site combinations (|01> +- |10>)/sqrt(2).
std::vector<NamedFockState> fock_basis_two();

struct HrsParams {
    double E_a = 1.0;
    double E_b = 1.0;
    double E_c = 1.0;
    double E_d = 1.0;
    /// Throws InputError on a nonpositive entry.
    void validate() const;
};

struct FockDiagonal {
    std::vector<std::string> labels;
    std::vector<FockVector> states;
    std::vector<double> energies;
};

/// E_a|a><a| + E_b|b><b| + E_c|c><c| + E_d|d><d| in the |a>..|f> basis.
FockDiagonal hrs_fock(const HrsParams &params);

/// coefficient * a+_{c1} a+_{c2} ... a_{a1} a_{a2} ..., applied right to left.
struct NormalOrderedTerm {
    double coefficient = 0.0;
    std::vector<std::size_t> creators;
    std::vector<std::size_t> annihilators;
};

FockVector apply_terms(std::span<const NormalOrderedTerm> terms, const FockVector &v, Parity parity = Parity::fermionic);

/// -(E_a a+0r a+1r a0r a1r + E_b a+0s a+1s a0s a1s + E_c a+0r a+0s a0r a0s + E_d a+1r a+1s a1r a1s)
std::vector<NormalOrderedTerm> hrs_second_quantized(const HrsParams &params);

/// True iff the second-quantized H_rs, evaluated with `parity`, maps each of
/// |a>..|f> to its hrs_fock eigenvalue times itself (within 1e-12).
bool verify_second_quantization(const HrsParams &params, Parity parity = Parity::fermionic);

/// Penalty terms of a gate whose nodes (inputs then outputs) are the sites of
/// `basis`: energy E on every n-particle occupation that is not one per site,
/// and on every one-per-site occupation that is not a table row. Each term
/// is written as coefficient * a+...a+ a...a with both lists in ascending
/// mode order.
std::vector<NormalOrderedTerm> constraint_terms(const ModeBasis &basis, const TruthTable &table, double energy);

/// Operator restricted to the fixed-particle-number sector.
struct SectorSpectrum {
    std::vector<Occupation> states;  // ascending
    std::vector<double> energies;    // diagonal elements
    double max_off_diagonal = 0.0;   // largest off-diagonal magnitude seen
};

SectorSpectrum sector_spectrum(
    const ModeBasis &basis, std::span<const NormalOrderedTerm> terms, std::size_t n_particles,
    Parity parity = Parity::fermionic);

/// Embedded assignments of the zero-energy states; states outside the
/// one-per-site sector are reported as std::nullopt.
std::vector<std::optional<std::string>> embedded_ground_space(const ModeBasis &basis, const SectorSpectrum &spectrum);

}  // namespace statnet::fock
