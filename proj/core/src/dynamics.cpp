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

#include "statnet/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "statnet/errors.hpp"
#include "statnet/statics.hpp"

namespace statnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double masked_mass(const StateVector &v, const ConstraintMask &mask) {
    double total = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        if (mask.allows(k)) {
            total += std::norm(v[k]);
        }
    }
    return total;
}

// Uniform equal-phase placement of `mass` on the basis states of one sector
// that pass `keep`. Returns false if there are none.
template <typename Keep>
bool fill_uniform(StateVector &out, std::size_t pos, int sector, double mass, Keep keep) {
    const std::size_t n = out.num_nodes();
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < out.dim(); ++k) {
        if (node_bit(k, pos, n) == sector && keep(k)) {
            chosen.push_back(k);
        }
    }
    if (chosen.empty()) {
        return false;
    }
    const double amp = std::sqrt(mass / static_cast<double>(chosen.size()));
    for (std::size_t k : chosen) {
        out[k] = amp;
    }
    return true;
}

TrajectoryPoint make_point(
    double t, double phi, StateVector state, std::string_view node, const ConstraintMask &mask,
    const PenaltyHamiltonian &energy, const StateVector *prev) {
    TrajectoryPoint p;
    p.t = t;
    p.phi = phi;
    SectorDiag diag = reduced_diag(state, node);
    p.p0 = diag.p0;
    p.p1 = diag.p1;
    p.alpha_sq = masked_mass(state, mask);
    p.beta_sq = state.norm_squared() - p.alpha_sq;
    p.energy = expected_energy(state, energy);
    p.step_overlap = prev ? std::min(1.0, std::abs(inner(*prev, state))) : 1.0;
    p.state = std::move(state);
    return p;
}

Eigen::VectorXcd to_eigen(const StateVector &v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.dim()));
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out(static_cast<Eigen::Index>(k)) = v[k];
    }
    return out;
}

StateVector from_eigen(const std::vector<std::string> &nodes, const Eigen::VectorXcd &v) {
    std::vector<Complex> amps(v.data(), v.data() + v.size());
    return StateVector(nodes, std::move(amps));
}

const std::vector<std::string> &triplet_nodes() {
    static const std::vector<std::string> nodes{"1", "2"};
    return nodes;
}

}  // namespace

std::string_view to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::linear_ramp:
            return "linear-ramp";
        case ScheduleKind::cosine_ramp:
            return "cosine-ramp";
        case ScheduleKind::exponential_relax:
            return "exponential-relax";
    }
    return "?";
}

ScheduleKind parse_schedule_kind(std::string_view text) {
    for (auto kind : {ScheduleKind::linear_ramp, ScheduleKind::cosine_ramp, ScheduleKind::exponential_relax}) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw InputError("unknown schedule '" + std::string(text) + "'");
}

std::string_view to_string(LeakModel leak) {
    return leak == LeakModel::none ? "none" : "uniform-excited";
}

LeakModel parse_leak_model(std::string_view text) {
    if (text == "none") {
        return LeakModel::none;
    }
    if (text == "uniform-excited") {
        return LeakModel::uniform_excited;
    }
    throw InputError("unknown leak model '" + std::string(text) + "'");
}

void DriveSchedule::validate() const {
    if (!std::isfinite(theta0) || !std::isfinite(phi_final) || !std::isfinite(tau) || !std::isfinite(dt)) {
        throw InputError("schedule parameters must be finite");
    }
    if (!(dt > 0.0)) {
        throw InputError("dt must be positive");
    }
    if (tau < dt) {
        throw InputError("tau must be at least dt");
    }
    const double ratio = tau / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6) {
        throw InputError("tau must be an integer multiple of dt");
    }
}

std::size_t DriveSchedule::num_steps() const {
    validate();
    return static_cast<std::size_t>(std::llround(tau / dt));
}

double DriveSchedule::time_at(std::size_t step) const {
    const std::size_t n = num_steps();
    return step == n ? tau : tau * static_cast<double>(step) / static_cast<double>(n);
}

double DriveSchedule::phi(double t) const {
    if (!(t >= -1e-12 * tau && t <= tau * (1.0 + 1e-12))) {
        throw InputError("time " + std::to_string(t) + " lies outside the schedule");
    }
    const double x = std::clamp(t / tau, 0.0, 1.0);
    switch (kind) {
        case ScheduleKind::linear_ramp:
            return phi_final * x;
        case ScheduleKind::cosine_ramp:
            return phi_final * 0.5 * (1.0 - std::cos(std::numbers::pi * x));
        case ScheduleKind::exponential_relax:
            return phi_final * (1.0 - std::exp(-5.0 * x));
    }
    return 0.0;
}

std::pair<double, double> schedule_targets(const DriveSchedule &s, double t) {
    const double angle = s.theta0 + s.phi(t);
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    return {c * c, sn * sn};
}

StateVector watchdog_step(
    const StateVector &prev,
    const ConstraintMask &mask,
    std::string_view drive_node,
    std::pair<double, double> targets,
    LeakModel leak_model) {
    if (mask.dim() != prev.dim()) {
        throw InputError("mask dimension does not match the state");
    }
    const auto [p0, p1] = targets;
    if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > kNormTolerance) {
        throw InputError("drive targets must be nonnegative and sum to 1");
    }
    const std::size_t pos = prev.node_position(drive_node);
    auto [c0, c1] = sector_split(apply_mask(prev, mask), drive_node);

    StateVector out(prev.node_order());
    const double target[2] = {p0, p1};
    const StateVector *part[2] = {&c0, &c1};
    for (int sector = 0; sector < 2; ++sector) {
        const double want = target[sector];
        if (want == 0.0) {
            continue;
        }
        // Any nonzero mass, however small, fixes the direction.
        const double have = part[sector]->norm_squared();
        if (have > 0.0) {
            const double gain = std::sqrt(want) / std::sqrt(have);
            for (std::size_t k = 0; k < out.dim(); ++k) {
                out[k] += gain * (*part[sector])[k];
            }
            continue;
        }
        if (want <= kNegligibleMass) {
            continue;  // rounding residue, e.g. cos^2(pi/2)
        }
        if (fill_uniform(out, pos, sector, want, [&](std::size_t k) { return mask.allows(k); })) {
            continue;
        }
        const std::string where =
            "drive node '" + std::string(drive_node) + "' sector " + std::to_string(sector);
        if (leak_model == LeakModel::none) {
            throw DegenerateDynamicsError(kNaN, sector, "no constrained state available in " + where);
        }
        if (!fill_uniform(out, pos, sector, want, [&](std::size_t k) { return !mask.allows(k); })) {
            throw DegenerateDynamicsError(kNaN, sector, "no state at all available in " + where);
        }
    }
    return out;
}

namespace {

template <typename Sink>
void run_evolution(
    const StateVector &psi0,
    const ConstraintMask &mask,
    std::string_view drive_node,
    const DriveSchedule &schedule,
    LeakModel leak_model,
    const PenaltyHamiltonian *energy,
    Sink sink) {
    schedule.validate();
    if (std::abs(psi0.norm_squared() - 1.0) > kNormTolerance) {
        throw InputError("initial state is not normalized");
    }
    if (mask.dim() != psi0.dim()) {
        throw InputError("mask dimension does not match the state");
    }
    if (leak_model == LeakModel::none && std::abs(masked_mass(psi0, mask) - 1.0) > kNormTolerance) {
        throw InputError("initial state leaves the constrained subspace");
    }
    const PenaltyHamiltonian fallback = energy ? PenaltyHamiltonian() : mask_penalty(mask);
    const PenaltyHamiltonian &h = energy ? *energy : fallback;

    const std::size_t steps = schedule.num_steps();
    TrajectoryPoint current = make_point(0.0, schedule.phi(0.0), psi0, drive_node, mask, h, nullptr);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = schedule.time_at(k);
        StateVector next = [&] {
            try {
                return watchdog_step(current.state, mask, drive_node, schedule_targets(schedule, t), leak_model);
            } catch (const DegenerateDynamicsError &e) {
                throw DegenerateDynamicsError(t, e.sector(), std::string(e.what()) + " at t=" + std::to_string(t));
            }
        }();
        TrajectoryPoint point = make_point(t, schedule.phi(t), std::move(next), drive_node, mask, h, &current.state);
        sink(std::move(current));
        current = std::move(point);
    }
    sink(std::move(current));
}

}  // namespace

Trajectory evolve(
    const StateVector &psi0,
    const ConstraintMask &mask,
    std::string_view drive_node,
    const DriveSchedule &schedule,
    LeakModel leak_model,
    const PenaltyHamiltonian *energy) {
    Trajectory traj{schedule, leak_model, {}};
    traj.points.reserve(schedule.num_steps() + 1);
    run_evolution(psi0, mask, drive_node, schedule, leak_model, energy,
                  [&](TrajectoryPoint &&p) { traj.points.push_back(std::move(p)); });
    return traj;
}

TrajectoryPoint evolve_final(
    const StateVector &psi0,
    const ConstraintMask &mask,
    std::string_view drive_node,
    const DriveSchedule &schedule,
    LeakModel leak_model,
    const PenaltyHamiltonian *energy) {
    TrajectoryPoint last;
    run_evolution(psi0, mask, drive_node, schedule, leak_model, energy,
                  [&](TrajectoryPoint &&p) { last = std::move(p); });
    return last;
}

StateVector closed_form_link(double theta, double phi) {
    StateVector v({"r", "s"});
    v[0b01] = std::cos(theta + phi);
    v[0b10] = std::sin(theta + phi);
    return v;
}

StateVector closed_form_triplet(double theta, double phi) {
    const double c = std::cos(theta + phi);
    const double s = std::sin(theta + phi);
    StateVector v(triplet_nodes());
    v[0b00] = c * c;
    v[0b01] = s * c;
    v[0b10] = s * c;
    v[0b11] = s * s;
    return v;
}

StateVector q_rs_apply(double phi, const StateVector &v) {
    if (v.num_nodes() != 2) {
        throw InputError("Q_rs acts on exactly two qubits");
    }
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    StateVector out = v;
    out[0b01] = c * v[0b01] - s * v[0b10];
    out[0b10] = s * v[0b01] + c * v[0b10];
    return out;
}

Complex singlet_amplitude(const StateVector &v) {
    if (v.num_nodes() != 2) {
        throw InputError("singlet amplitude needs exactly two qubits");
    }
    return (v[0b01] - v[0b10]) / std::sqrt(2.0);
}

Trajectory triplet_watchdog_demo(const DriveSchedule &schedule, TripletDrive drive) {
    schedule.validate();
    Eigen::VectorXd d(4);
    switch (drive) {
        case TripletDrive::first:
            d << 1.0, 1.0, 0.0, 0.0;
            break;
        case TripletDrive::second:
            d << 1.0, 0.0, 1.0, 0.0;
            break;
        case TripletDrive::both:
            d << 1.0, 0.5, 0.5, 0.0;
            break;
    }
    Eigen::MatrixXd sym(4, 4);
    sym << 1.0, 0.0, 0.0, 0.0,  //
        0.0, 0.5, 0.5, 0.0,     //
        0.0, 0.5, 0.5, 0.0,     //
        0.0, 0.0, 0.0, 1.0;

    const StateVector psi0 = closed_form_triplet(schedule.theta0, 0.0);
    ProjectedDriveFlow flow(sym, d, to_eigen(psi0));

    std::vector<std::uint8_t> bits{1, 1, 1, 1};
    const ConstraintMask everything(std::move(bits), "1");
    // Report the singlet probability as the energy column.
    auto point = [&](double t, StateVector state, const StateVector *prev) {
        TrajectoryPoint p = make_point(t, schedule.phi(t), std::move(state), "1", everything,
                                       PenaltyHamiltonian(4, "0"), prev);
        p.energy = std::norm(singlet_amplitude(p.state));
        p.alpha_sq = p.state.norm_squared() - p.energy;
        p.beta_sq = p.energy;
        return p;
    };

    Trajectory traj{schedule, LeakModel::none, {}};
    const std::size_t steps = schedule.num_steps();
    traj.points.push_back(point(0.0, psi0, nullptr));
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = schedule.time_at(k);
        const double target = schedule_targets(schedule, t).first;
        StateVector next = [&] {
            try {
                return from_eigen(triplet_nodes(), flow.at_expectation(target));
            } catch (const DegenerateDynamicsError &e) {
                throw DegenerateDynamicsError(t, 0, std::string(e.what()) + " at t=" + std::to_string(t));
            }
        }();
        const StateVector &prev = traj.points.back().state;
        traj.points.push_back(point(t, std::move(next), &prev));
    }
    return traj;
}

Trajectory rotate_and_symmetrize_demo(const DriveSchedule &schedule) {
    schedule.validate();
    Trajectory traj{schedule, LeakModel::none, {}};
    const std::size_t steps = schedule.num_steps();
    const ConstraintMask everything(4, "1");
    const PenaltyHamiltonian zero(4, "0");
    StateVector state = closed_form_triplet(schedule.theta0, 0.0);
    traj.points.push_back(make_point(0.0, schedule.phi(0.0), state, "1", everything, zero, nullptr));
    double phi_prev = schedule.phi(0.0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = schedule.time_at(k);
        const double phi = schedule.phi(t);
        const double c = std::cos(phi - phi_prev);
        const double s = std::sin(phi - phi_prev);
        phi_prev = phi;
        const StateVector &prev = traj.points.back().state;
        StateVector rotated(triplet_nodes());
        // Particle 1 is the high bit.
        for (std::size_t low = 0; low < 2; ++low) {
            rotated[low] = c * prev[low] - s * prev[2 + low];
            rotated[2 + low] = s * prev[low] + c * prev[2 + low];
        }
        const Complex sym = 0.5 * (rotated[0b01] + rotated[0b10]);
        rotated[0b01] = sym;
        rotated[0b10] = sym;
        TrajectoryPoint p = make_point(t, phi, normalize(rotated), "1", everything, zero, &prev);
        p.energy = std::norm(singlet_amplitude(p.state));
        traj.points.push_back(std::move(p));
    }
    return traj;
}

}  // namespace statnet
