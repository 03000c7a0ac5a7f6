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

#include "statnet/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "statnet/errors.hpp"

namespace statnet::fock {

namespace {

constexpr std::size_t kMaxSites = 8;

void require_same_basis(const FockVector &a, const FockVector &b) {
    if (!(a.basis() == b.basis())) {
        throw InputError("Fock vectors live on different mode bases");
    }
}

double exchange_sign(Occupation occ, std::size_t mode, Parity parity) {
    if (parity == Parity::ignored) {
        return 1.0;
    }
    Occupation below = occ & ((Occupation{1} << mode) - 1);
    return (std::popcount(below) & 1) ? -1.0 : 1.0;
}

void require_mode(const FockVector &v, std::size_t mode) {
    if (mode >= v.basis().num_modes()) {
        throw InputError("mode index " + std::to_string(mode) + " out of range");
    }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        r *= base;
    }
    return r;
}

int permutation_sign(const std::vector<std::size_t> &perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) {
            if (perm[i] > perm[j]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

// Two-particle product |m1>_1 |m2>_2 in the 16-dim first-quantized space.
Eigen::VectorXcd ket2(std::size_t m1, std::size_t m2) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    v(static_cast<Eigen::Index>(m1 * 4 + m2)) = 1.0;
    return v;
}

}  // namespace

ModeBasis::ModeBasis(std::vector<std::string> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) {
        throw InputError("mode basis needs at least one site");
    }
    if (sites_.size() > kMaxSites) {
        throw InputError("mode basis is limited to " + std::to_string(kMaxSites) + " sites");
    }
    std::unordered_set<std::string> seen;
    for (const auto &s : sites_) {
        if (!seen.insert(s).second) {
            throw InputError("duplicate site '" + s + "'");
        }
    }
}

std::size_t ModeBasis::mode(int spin, std::string_view site) const {
    if (spin != 0 && spin != 1) {
        throw InputError("spin must be 0 or 1");
    }
    auto it = std::find(sites_.begin(), sites_.end(), site);
    if (it == sites_.end()) {
        throw InputError("unknown site '" + std::string(site) + "'");
    }
    return 2 * static_cast<std::size_t>(it - sites_.begin()) + static_cast<std::size_t>(spin);
}

std::string ModeBasis::mode_name(std::size_t mode) const {
    return std::to_string(spin_of(mode)) + sites_.at(site_of(mode));
}

FockVector::FockVector(ModeBasis basis)
    : basis_(std::move(basis)), amps_(std::size_t{1} << basis_.num_modes(), Complex{0.0, 0.0}) {
}

FockVector FockVector::vacuum(const ModeBasis &basis) {
    return occupation_state(basis, 0);
}

FockVector FockVector::occupation_state(const ModeBasis &basis, Occupation occ) {
    FockVector v(basis);
    if (occ >= v.dim()) {
        throw InputError("occupation outside the mode basis");
    }
    v.amps_[occ] = 1.0;
    return v;
}

double FockVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

bool FockVector::is_zero(double tolerance) const {
    return std::all_of(amps_.begin(), amps_.end(), [&](const Complex &a) { return std::abs(a) <= tolerance; });
}

FockVector operator+(const FockVector &a, const FockVector &b) {
    require_same_basis(a, b);
    FockVector out(a.basis());
    for (Occupation k = 0; k < a.dim(); ++k) {
        out[k] = a[k] + b[k];
    }
    return out;
}

FockVector operator-(const FockVector &a, const FockVector &b) {
    return a + Complex{-1.0, 0.0} * b;
}

FockVector operator*(Complex c, const FockVector &v) {
    FockVector out(v.basis());
    for (Occupation k = 0; k < v.dim(); ++k) {
        out[k] = c * v[k];
    }
    return out;
}

Complex inner(const FockVector &a, const FockVector &b) {
    require_same_basis(a, b);
    Complex total{0.0, 0.0};
    for (Occupation k = 0; k < a.dim(); ++k) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

double max_abs_diff(const FockVector &a, const FockVector &b) {
    require_same_basis(a, b);
    double m = 0.0;
    for (Occupation k = 0; k < a.dim(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

FockVector create(std::size_t mode, const FockVector &v, Parity parity) {
    require_mode(v, mode);
    FockVector out(v.basis());
    const Occupation bit = Occupation{1} << mode;
    for (Occupation k = 0; k < v.dim(); ++k) {
        if (v[k] != Complex{0.0, 0.0} && !(k & bit)) {
            out[k | bit] += exchange_sign(k, mode, parity) * v[k];
        }
    }
    return out;
}

FockVector annihilate(std::size_t mode, const FockVector &v, Parity parity) {
    require_mode(v, mode);
    FockVector out(v.basis());
    const Occupation bit = Occupation{1} << mode;
    for (Occupation k = 0; k < v.dim(); ++k) {
        if (v[k] != Complex{0.0, 0.0} && (k & bit)) {
            out[k & ~bit] += exchange_sign(k, mode, parity) * v[k];
        }
    }
    return out;
}

std::optional<std::string> embed_qubit(const ModeBasis &basis, Occupation occ) {
    std::string assignment;
    for (std::size_t site = 0; site < basis.num_sites(); ++site) {
        switch ((occ >> (2 * site)) & 3U) {
            case 1U:
                assignment.push_back('0');
                break;
            case 2U:
                assignment.push_back('1');
                break;
            default:
                return std::nullopt;
        }
    }
    if (occ >> basis.num_modes()) {
        return std::nullopt;
    }
    return assignment;
}

std::optional<StateVector> embed_state(const FockVector &v) {
    const std::size_t n = v.basis().num_sites();
    StateVector out(v.basis().sites());
    for (Occupation k = 0; k < v.dim(); ++k) {
        if (v[k] == Complex{0.0, 0.0}) {
            continue;
        }
        auto assignment = embed_qubit(v.basis(), k);
        if (!assignment) {
            return std::nullopt;
        }
        out[basis_index(n, *assignment)] = v[k];
    }
    return out;
}

FockVector from_assignment(const ModeBasis &basis, std::string_view assignment) {
    if (assignment.size() != basis.num_sites()) {
        throw InputError("assignment length does not match the number of sites");
    }
    FockVector v = FockVector::vacuum(basis);
    // Rightmost creator acts first.
    for (std::size_t k = assignment.size(); k-- > 0;) {
        char c = assignment[k];
        if (c != '0' && c != '1') {
            throw InputError("assignment characters must be 0 or 1");
        }
        v = create(2 * k + static_cast<std::size_t>(c - '0'), v);
    }
    return v;
}

Eigen::MatrixXd transposition(std::size_t n_particles, std::size_t single_dim, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n_particles || j > n_particles || i == j) {
        throw InputError("transposition indices must be distinct particles in 1..n");
    }
    const std::size_t dim = ipow(single_dim, n_particles);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<std::size_t> digits(n_particles);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = n_particles; k-- > 0;) {
            digits[k] = rest % single_dim;
            rest /= single_dim;
        }
        std::swap(digits[i - 1], digits[j - 1]);
        std::size_t target = 0;
        for (std::size_t d : digits) {
            target = target * single_dim + d;
        }
        p(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return p;
}

PermutationProjector symmetrizer_two() {
    Eigen::MatrixXd one = Eigen::MatrixXd::Identity(4, 4);
    return {PermutationProjector::Kind::symmetrizer, 2, 2, 0.5 * (one + transposition(2, 2, 1, 2))};
}

PermutationProjector antisymmetrizer(std::size_t n_particles, std::size_t single_dim) {
    if (single_dim < 1) {
        throw InputError("single-particle dimension must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(ipow(single_dim, n_particles));
    Eigen::MatrixXd one = Eigen::MatrixXd::Identity(dim, dim);
    if (n_particles == 2) {
        return {PermutationProjector::Kind::antisymmetrizer, 2, single_dim,
                0.5 * (one - transposition(2, single_dim, 1, 2))};
    }
    if (n_particles == 3) {
        Eigen::MatrixXd p12 = transposition(3, single_dim, 1, 2);
        Eigen::MatrixXd p13 = transposition(3, single_dim, 1, 3);
        Eigen::MatrixXd p23 = transposition(3, single_dim, 2, 3);
        Eigen::MatrixXd m = (one - p12 - p13 - p23 + p13 * p12 + p23 * p12) / 6.0;
        return {PermutationProjector::Kind::antisymmetrizer, 3, single_dim, std::move(m)};
    }
    throw InputError("antisymmetrizer is available for 2 or 3 particles only");
}

Eigen::VectorXcd first_quantize(const FockVector &v, std::size_t n_particles) {
    const std::size_t d = v.basis().num_modes();
    if (n_particles < 1 || n_particles > 4) {
        throw InputError("first quantization is available for 1 to 4 particles");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ipow(d, n_particles)));
    double factorial = 1.0;
    for (std::size_t k = 2; k <= n_particles; ++k) {
        factorial *= static_cast<double>(k);
    }
    const double norm = 1.0 / std::sqrt(factorial);
    for (Occupation occ = 0; occ < v.dim(); ++occ) {
        if (v[occ] == Complex{0.0, 0.0} || static_cast<std::size_t>(std::popcount(occ)) != n_particles) {
            continue;
        }
        std::vector<std::size_t> modes;
        for (std::size_t m = 0; m < d; ++m) {
            if (occ >> m & 1U) {
                modes.push_back(m);
            }
        }
        std::vector<std::size_t> perm(n_particles);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::size_t idx = 0;
            for (std::size_t p : perm) {
                idx = idx * d + modes[p];
            }
            out(static_cast<Eigen::Index>(idx)) += norm * permutation_sign(perm) * v[occ];
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::vector<NamedFockState> fock_basis_two() {
    ModeBasis basis({"r", "s"});
    const std::size_t m0r = basis.mode(0, "r");
    const std::size_t m1r = basis.mode(1, "r");
    const std::size_t m0s = basis.mode(0, "s");
    const std::size_t m1s = basis.mode(1, "s");
    const FockVector vac = FockVector::vacuum(basis);
    auto pair = [&](std::size_t first, std::size_t second) { return create(first, create(second, vac)); };
    const double h = 1.0 / std::sqrt(2.0);

    std::vector<NamedFockState> out;
    // Spin singlet on a single site.
    out.push_back({"a", pair(m0r, m1r), h * (ket2(m0r, m1r) - ket2(m1r, m0r)), std::nullopt});
    out.push_back({"b", pair(m0s, m1s), h * (ket2(m0s, m1s) - ket2(m1s, m0s)), std::nullopt});
    // Parallel spins on different sites.
    out.push_back({"c", pair(m0r, m0s), h * (ket2(m0r, m0s) - ket2(m0s, m0r)), "00"});
    out.push_back({"d", pair(m1r, m1s), h * (ket2(m1r, m1s) - ket2(m1s, m1r)), "11"});
    // (|01> + |10>)(|rs> - |sr>) / 2 and (|01> - |10>)(|rs> + |sr>) / 2.
    Eigen::VectorXcd e_first =
        0.5 * (ket2(m0r, m1s) - ket2(m0s, m1r) + ket2(m1r, m0s) - ket2(m1s, m0r));
    Eigen::VectorXcd f_first =
        0.5 * (ket2(m0r, m1s) + ket2(m0s, m1r) - ket2(m1r, m0s) - ket2(m1s, m0r));
    out.push_back({"e", Complex{h, 0.0} * (pair(m0r, m1s) + pair(m1r, m0s)), e_first, std::nullopt});
    out.push_back({"f", Complex{h, 0.0} * (pair(m0r, m1s) - pair(m1r, m0s)), f_first, std::nullopt});
    return out;
}

void HrsParams::validate() const {
    for (double e : {E_a, E_b, E_c, E_d}) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw InputError("H_rs energies must be positive and finite");
        }
    }
}

FockDiagonal hrs_fock(const HrsParams &params) {
    params.validate();
    FockDiagonal out;
    const double energies[] = {params.E_a, params.E_b, params.E_c, params.E_d, 0.0, 0.0};
    auto states = fock_basis_two();
    for (std::size_t k = 0; k < states.size(); ++k) {
        out.labels.push_back(states[k].label);
        out.states.push_back(std::move(states[k].second));
        out.energies.push_back(energies[k]);
    }
    return out;
}

FockVector apply_terms(std::span<const NormalOrderedTerm> terms, const FockVector &v, Parity parity) {
    FockVector total(v.basis());
    for (const auto &term : terms) {
        FockVector w = v;
        for (auto it = term.annihilators.rbegin(); it != term.annihilators.rend(); ++it) {
            w = annihilate(*it, w, parity);
        }
        for (auto it = term.creators.rbegin(); it != term.creators.rend(); ++it) {
            w = create(*it, w, parity);
        }
        total = total + Complex{term.coefficient, 0.0} * w;
    }
    return total;
}

std::vector<NormalOrderedTerm> hrs_second_quantized(const HrsParams &params) {
    params.validate();
    ModeBasis basis({"r", "s"});
    auto term = [&](double e, int s1, const char *l1, int s2, const char *l2) {
        std::size_t i = basis.mode(s1, l1);
        std::size_t j = basis.mode(s2, l2);
        return NormalOrderedTerm{-e, {i, j}, {i, j}};
    };
    return {
        term(params.E_a, 0, "r", 1, "r"),
        term(params.E_b, 0, "s", 1, "s"),
        term(params.E_c, 0, "r", 0, "s"),
        term(params.E_d, 1, "r", 1, "s"),
    };
}

bool verify_second_quantization(const HrsParams &params, Parity parity) {
    const auto terms = hrs_second_quantized(params);
    const FockDiagonal diag = hrs_fock(params);
    for (std::size_t k = 0; k < diag.states.size(); ++k) {
        FockVector lhs = apply_terms(terms, diag.states[k], parity);
        FockVector rhs = Complex{diag.energies[k], 0.0} * diag.states[k];
        if (max_abs_diff(lhs, rhs) > 1e-12) {
            return false;
        }
    }
    return true;
}

std::vector<NormalOrderedTerm> constraint_terms(const ModeBasis &basis, const TruthTable &table, double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InputError("constraint energy must be positive and finite");
    }
    const std::size_t n = basis.num_sites();
    if (table.in_arity() + table.out_arity() != n) {
        throw InputError("truth table arity does not match the number of sites");
    }
    // a+_{i1}..a+_{in} a_{i1}..a_{in} = (-1)^(n(n-1)/2) n_{i1}..n_{in}
    const double sign = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
    std::vector<NormalOrderedTerm> out;
    const Occupation limit = Occupation{1} << basis.num_modes();
    for (Occupation occ = 0; occ < limit; ++occ) {
        if (static_cast<std::size_t>(std::popcount(occ)) != n) {
            continue;
        }
        if (auto assignment = embed_qubit(basis, occ)) {
            std::size_t packed = basis_index(n, *assignment);
            auto in = static_cast<std::uint32_t>(packed >> table.out_arity());
            auto outbits = static_cast<std::uint32_t>(packed & ((std::size_t{1} << table.out_arity()) - 1));
            if (table.contains(in, outbits)) {
                continue;
            }
        }
        std::vector<std::size_t> modes;
        for (std::size_t m = 0; m < basis.num_modes(); ++m) {
            if (occ >> m & 1U) {
                modes.push_back(m);
            }
        }
        out.push_back(NormalOrderedTerm{sign * energy, modes, modes});
    }
    return out;
}

SectorSpectrum sector_spectrum(
    const ModeBasis &basis, std::span<const NormalOrderedTerm> terms, std::size_t n_particles, Parity parity) {
    SectorSpectrum out;
    const Occupation limit = Occupation{1} << basis.num_modes();
    for (Occupation occ = 0; occ < limit; ++occ) {
        if (static_cast<std::size_t>(std::popcount(occ)) != n_particles) {
            continue;
        }
        FockVector image = apply_terms(terms, FockVector::occupation_state(basis, occ), parity);
        out.states.push_back(occ);
        out.energies.push_back(image[occ].real());
        for (Occupation k = 0; k < image.dim(); ++k) {
            if (k != occ) {
                out.max_off_diagonal = std::max(out.max_off_diagonal, std::abs(image[k]));
            }
        }
    }
    return out;
}

std::vector<std::optional<std::string>> embedded_ground_space(const ModeBasis &basis, const SectorSpectrum &spectrum) {
    std::vector<std::optional<std::string>> out;
    for (std::size_t k = 0; k < spectrum.states.size(); ++k) {
        if (spectrum.energies[k] == 0.0) {
            out.push_back(embed_qubit(basis, spectrum.states[k]));
        }
    }
    return out;
}

}  // namespace statnet::fock
