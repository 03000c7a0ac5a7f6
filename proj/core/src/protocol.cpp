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

#include "statnet/protocol.hpp"

#include <cmath>
#include <numbers>

#include "statnet/errors.hpp"
#include "statnet/statics.hpp"

namespace statnet {

namespace {

int drive_target_value(const Network &net) {
    if (!net.drive_node()) {
        throw InputError("network has no drive node");
    }
    return net.pin_on(*net.drive_node())->value;
}

// Evolution part of a shot; deterministic, so it can be shared by all shots.
ShotOutcome evolve_shot(const Network &net, const Preparation &prep, const DriveSchedule &schedule, LeakModel leak) {
    const int target = drive_target_value(net);
    const ConstraintMask mask = network_mask(net, false);
    const PenaltyHamiltonian energy = network_hamiltonian(net, false);
    ShotOutcome out;
    try {
        TrajectoryPoint last = evolve_final(prep.state, mask, *net.drive_node(), schedule, leak, &energy);
        out.alpha_sq_final = last.alpha_sq;
        out.target_mass_final = target == 1 ? last.p1 : last.p0;
        out.final_state = std::move(last.state);
    } catch (const DegenerateDynamicsError &e) {
        out.failure = e.what();
        out.failure_sector = e.sector();
    }
    return out;
}

}  // namespace

Preparation prepare_ground(const Network &net, const WeightFn &weights) {
    if (net.num_nodes() > kBruteForceNodeLimit) {
        throw LimitError(
            "preparation over " + std::to_string(net.num_nodes()) + " nodes exceeds the limit of " +
            std::to_string(kBruteForceNodeLimit));
    }
    const ConstraintMask mask = network_mask(net, false);
    const std::size_t n = net.num_nodes();
    StateVector state(net.nodes());
    Preparation prep;
    for (std::size_t k : mask.support()) {
        std::string assignment = assignment_of(k, n);
        const double w = weights ? weights(assignment) : 1.0;
        if (!std::isfinite(w) || w < 0.0) {
            throw InputError("preparation weight for " + assignment + " must be finite and nonnegative");
        }
        state[k] = w;
        prep.support.push_back(std::move(assignment));
    }
    if (prep.support.empty()) {
        throw UnpreparableNetworkError("no assignment satisfies the gates and input pins");
    }
    if (state.norm_squared() == 0.0) {
        throw UnpreparableNetworkError("all preparation weights are zero");
    }
    prep.state = normalize(state);

    if (net.drive_node()) {
        const std::size_t pos = net.node_position(*net.drive_node());
        for (std::size_t k : mask.support()) {
            (node_bit(k, pos, n) ? prep.n_sector1 : prep.n_sector0) += 1;
        }
        SectorDiag diag = reduced_diag(prep.state, *net.drive_node());
        prep.theta = std::atan2(std::sqrt(diag.p1), std::sqrt(diag.p0));
    } else {
        prep.n_sector0 = prep.support.size();
    }
    return prep;
}

std::string measure_sample(const StateVector &v, Rng &rng) {
    if (v.dim() == 0) {
        throw InputError("cannot measure an empty register");
    }
    const double u = rng.uniform() * v.norm_squared();
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        const double p = std::norm(v[k]);
        if (p == 0.0) {
            continue;
        }
        last_nonzero = k;
        acc += p;
        if (u < acc) {
            return assignment_of(k, v.num_nodes());
        }
    }
    return assignment_of(last_nonzero, v.num_nodes());
}

DriveSchedule protocol_schedule(const Network &net, const Preparation &prep, const ProtocolOptions &options) {
    const int target = drive_target_value(net);
    DriveSchedule s;
    s.kind = options.kind;
    s.tau = options.tau;
    s.dt = options.dt;
    s.theta0 = prep.theta;
    s.phi_final = options.phi_final.value_or((target == 1 ? std::numbers::pi / 2 : 0.0) - prep.theta);
    s.validate();
    return s;
}

ShotOutcome run_once(
    const Network &net, const Preparation &prep, const DriveSchedule &schedule, LeakModel leak, Rng &rng) {
    ShotOutcome out = evolve_shot(net, prep, schedule, leak);
    if (out.final_state) {
        out.sample = measure_sample(*out.final_state, rng);
    }
    return out;
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::satisfiable:
            return "satisfiable";
        case Decision::unsatisfiable:
            return "unsatisfiable";
        case Decision::inconclusive:
            return "inconclusive";
    }
    return "?";
}

ProtocolResult run_protocol(const Network &net, std::size_t shots, std::uint64_t seed, const ProtocolOptions &options) {
    if (shots == 0) {
        throw InputError("shots must be at least 1");
    }
    if (!(options.confidence_threshold > 0.0 && options.confidence_threshold < 1.0)) {
        throw InputError("confidence threshold must lie in (0, 1)");
    }
    const Preparation prep = prepare_ground(net, options.weights);
    const DriveSchedule schedule = protocol_schedule(net, prep, options);
    const int target = drive_target_value(net);

    ProtocolResult r;
    r.network_hash = network_hash(net);
    r.shots = shots;
    r.seed = seed;
    r.schedule = schedule;
    r.leak = options.leak;

    // The evolution does not consume randomness, so it is shared; only the
    // measurement differs between shots.
    const ShotOutcome evolved = evolve_shot(net, prep, schedule, options.leak);
    double q = 0.0;
    if (evolved.final_state) {
        q = evolved.alpha_sq_final * evolved.target_mass_final;
        r.good_universe_prob_final = evolved.alpha_sq_final;
    } else if (evolved.failure_sector == target) {
        q = 1.0;
    }
    double miss = 1.0;
    for (std::size_t shot = 0; shot < shots; ++shot) {
        if (!evolved.final_state) {
            r.samples.emplace_back(std::nullopt);
        } else {
            Rng rng = Rng::derived(seed, shot);
            std::string sample = measure_sample(*evolved.final_state, rng);
            if (assignment_satisfies(net, sample, true)) {
                ++r.n_solutions;
            }
            r.samples.emplace_back(std::move(sample));
        }
        miss *= 1.0 - q;
    }

    if (r.n_solutions > 0) {
        r.decision = Decision::satisfiable;
        r.confidence = 1.0;
    } else {
        r.confidence = 1.0 - miss;
        r.decision = r.confidence >= options.confidence_threshold ? Decision::unsatisfiable : Decision::inconclusive;
    }
    return r;
}

std::size_t repetition_bound(double p_good, double confidence) {
    if (!(p_good > 0.0 && p_good <= 1.0)) {
        throw InputError("p_good must lie in (0, 1]");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InputError("confidence must lie in (0, 1)");
    }
    if (p_good == 1.0) {
        return 1;
    }
    auto reached = [&](std::size_t n) { return 1.0 - std::pow(1.0 - p_good, static_cast<double>(n)) >= confidence; };
    auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log1p(-confidence) / std::log1p(-p_good))));
    while (!reached(n)) {
        ++n;
    }
    while (n > 1 && reached(n - 1)) {
        --n;
    }
    return n;
}

nlohmann::ordered_json to_json(const DriveSchedule &s) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(s.kind));
    j["theta0"] = s.theta0;
    j["phi_final"] = s.phi_final;
    j["tau"] = s.tau;
    j["dt"] = s.dt;
    return j;
}

nlohmann::ordered_json to_json(const ProtocolResult &r) {
    nlohmann::ordered_json j;
    j["network_hash"] = r.network_hash;
    j["shots"] = r.shots;
    j["seed"] = r.seed;
    j["schedule"] = to_json(r.schedule);
    j["schedule"]["leak"] = std::string(to_string(r.leak));
    j["decision"] = std::string(to_string(r.decision));
    j["confidence"] = r.confidence;
    j["n_solutions"] = r.n_solutions;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto &s : r.samples) {
        if (s) {
            samples.push_back(*s);
        } else {
            samples.push_back(nullptr);
        }
    }
    j["samples"] = std::move(samples);
    j["good_universe_prob_final"] = r.good_universe_prob_final;
    return j;
}

}  // namespace statnet
