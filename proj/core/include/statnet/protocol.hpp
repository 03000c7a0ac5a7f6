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

/// Prepare, drive, measure, check, repeat.
///
/// The starting state is built directly as a superposition over the
/// assignments that satisfy every gate and every input pin; output pins are
/// left free. The drive then pulls the drive node to its pinned value and the
/// network is measured in the computational basis. Samples are checked
/// against all pins classically.

#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statnet/dynamics.hpp"
#include "statnet/hilbert.hpp"
#include "statnet/network.hpp"
#include "statnet/rng.hpp"

namespace statnet {

/// Nonnegative amplitude for an assignment in the preparation.
using WeightFn = std::function<double(std::string_view assignment)>;

struct Preparation {
    StateVector state;
    /// Assignments in the support, ascending.
    std::vector<std::string> support;
    /// Support sizes with the drive node at 0 and at 1. Without a drive node
    /// everything is counted in sector 0.
    std::size_t n_sector0 = 0;
    std::size_t n_sector1 = 0;
    /// sin^2(theta) is the drive-node-1 probability of `state`.
    double theta = 0.0;
};

/// Uniform equal-phase superposition (or `weights`) over the assignments that
/// satisfy all gates and input pins. Throws UnpreparableNetworkError on an
/// empty support or all-zero weights, InputError on a negative or non-finite
/// weight, LimitError above kBruteForceNodeLimit nodes.
Preparation prepare_ground(const Network &net, const WeightFn &weights = {});

/// Sampled basis assignment, probability |amp|^2. `v` must be normalized.
std::string measure_sample(const StateVector &v, Rng &rng);

struct ProtocolOptions {
    ScheduleKind kind = ScheduleKind::linear_ramp;
    double tau = 1.0;
    double dt = 1e-3;
    /// Defaults to the rotation that ends on the drive pin's value.
    std::optional<double> phi_final;
    LeakModel leak = LeakModel::none;
    /// Below this the run is reported inconclusive instead of unsatisfiable.
    double confidence_threshold = 0.99;
    WeightFn weights;
};

/// Schedule starting at the preparation angle; throws InputError if the
/// network has no drive node.
DriveSchedule protocol_schedule(const Network &net, const Preparation &prep, const ProtocolOptions &options);

struct ShotOutcome {
    /// Empty when the dynamics failed.
    std::optional<std::string> sample;
    std::optional<StateVector> final_state;
    /// Set when the drive could not be followed.
    std::optional<std::string> failure;
    /// Drive sector of the failure (-1 if none).
    int failure_sector = -1;
    /// Good-universe probability and drive-target-sector mass at tau.
    double alpha_sq_final = 0.0;
    double target_mass_final = 0.0;
};

/// Evolve from the preparation and measure once.
ShotOutcome run_once(
    const Network &net, const Preparation &prep, const DriveSchedule &schedule, LeakModel leak, Rng &rng);

enum class Decision { satisfiable, unsatisfiable, inconclusive };

std::string_view to_string(Decision d);

struct ProtocolResult {
    std::string network_hash;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    DriveSchedule schedule;
    LeakModel leak = LeakModel::none;
    std::vector<std::optional<std::string>> samples;
    std::size_t n_solutions = 0;
    Decision decision = Decision::inconclusive;
    double confidence = 0.0;
    /// Mean over shots of the final good-universe probability (0 for failed shots).
    double good_universe_prob_final = 0.0;
};

/// `shots` independent runs, shot k drawing from Rng::derived(seed, k).
///
/// Satisfiable (confidence 1) as soon as one sample passes every pin.
/// Otherwise each shot is credited with q = alpha_sq_final *
/// target_mass_final, the probability that it measured inside the
/// constrained target sector; a shot whose dynamics failed because that
/// sector is empty gets q = 1. confidence = 1 - prod(1 - q), and the decision
/// is unsatisfiable when confidence >= options.confidence_threshold.
ProtocolResult run_protocol(const Network &net, std::size_t shots, std::uint64_t seed, const ProtocolOptions &options = {});

/// Smallest n with 1 - (1 - p_good)^n >= confidence.
std::size_t repetition_bound(double p_good, double confidence);

nlohmann::ordered_json to_json(const DriveSchedule &s);
nlohmann::ordered_json to_json(const ProtocolResult &r);

}  // namespace statnet
