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

/// Watchdog evolution: a drive steers the reduced diagonal of one node while
/// the state stays inside a constrained subspace and changes as little as
/// possible between steps.
///
/// For diagonal constraints (everything built by statics) one step is a
/// positive rescaling of the two drive sectors of the projected previous
/// state. ProjectedDriveFlow handles a dense projector such as the
/// two-particle symmetrizer, where the drive and the projector do not commute.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statnet/diagonal.hpp"
#include "statnet/hilbert.hpp"

namespace statnet {

/// Masses at or below this are rounding residue (cos^2(pi/2) is about
/// 3.7e-33 in double precision). A watchdog target this small never forces
/// a fill into an empty sector; existing mass is still rescaled, however
/// small, so the direction survives passes through a pole.
inline constexpr double kNegligibleMass = 1e-30;

enum class ScheduleKind { linear_ramp, cosine_ramp, exponential_relax };

std::string_view to_string(ScheduleKind kind);
/// Accepts "linear-ramp", "cosine-ramp", "exponential-relax". Throws InputError.
ScheduleKind parse_schedule_kind(std::string_view text);

struct DriveSchedule {
    ScheduleKind kind = ScheduleKind::linear_ramp;
    double theta0 = 0.0;
    double phi_final = 0.0;
    double tau = 1.0;
    double dt = 1e-3;

    /// Throws InputError unless dt > 0, tau >= dt, everything is finite and
    /// tau is an integer multiple of dt (to 1e-6 steps).
    void validate() const;
    std::size_t num_steps() const;
    /// Grid time of step k, k * tau / num_steps().
    double time_at(std::size_t step) const;
    /// phi(t). Throws InputError for t outside [0, tau].
    double phi(double t) const;
};

/// (cos^2[theta0 + phi(t)], sin^2[theta0 + phi(t)]).
std::pair<double, double> schedule_targets(const DriveSchedule &s, double t);

enum class LeakModel { none, uniform_excited };

std::string_view to_string(LeakModel leak);
/// Accepts "none" and "uniform-excited". Throws InputError.
LeakModel parse_leak_model(std::string_view text);

struct TrajectoryPoint {
    double t = 0.0;
    double phi = 0.0;
    StateVector state;
    double p0 = 0.0;
    double p1 = 0.0;
    /// Probability inside the constraint mask, and outside it.
    double alpha_sq = 0.0;
    double beta_sq = 0.0;
    double energy = 0.0;
    /// |<state(t)|state(t - dt)>|, 1 at t = 0.
    double step_overlap = 1.0;
};

struct Trajectory {
    DriveSchedule schedule;
    LeakModel leak_model = LeakModel::none;
    std::vector<TrajectoryPoint> points;
};

/// One watchdog step. Sectors of the masked previous state are rescaled to
/// the targets. A sector that must receive mass but has none inside the mask
/// is filled with the uniform superposition of its constrained states; if
/// there are none, the leak model decides (uniform over the excited states
/// of the sector, or DegenerateDynamicsError).
StateVector watchdog_step(
    const StateVector &prev,
    const ConstraintMask &mask,
    std::string_view drive_node,
    std::pair<double, double> targets,
    LeakModel leak_model);

/// Repeated watchdog_step over the schedule grid. `energy` defaults to the
/// mask's own penalty (1 on every excluded state). DegenerateDynamicsError
/// carries the grid time of the failing step.
Trajectory evolve(
    const StateVector &psi0,
    const ConstraintMask &mask,
    std::string_view drive_node,
    const DriveSchedule &schedule,
    LeakModel leak_model,
    const PenaltyHamiltonian *energy = nullptr);

/// Same stepping as evolve but keeps only the last point.
TrajectoryPoint evolve_final(
    const StateVector &psi0,
    const ConstraintMask &mask,
    std::string_view drive_node,
    const DriveSchedule &schedule,
    LeakModel leak_model,
    const PenaltyHamiltonian *energy = nullptr);

/// cos[theta + phi]|01> + sin[theta + phi]|10> on nodes (r, s).
StateVector closed_form_link(double theta, double phi);

/// (cos[theta + phi]|0> + sin[theta + phi]|1>)^{(x)2} on nodes ("1", "2").
StateVector closed_form_triplet(double theta, double phi);

/// Identity on |00>, |11>; |01> -> cos(phi)|01> + sin(phi)|10>,
/// |10> -> -sin(phi)|01> + cos(phi)|10>.
StateVector q_rs_apply(double phi, const StateVector &v);

/// Gradient flow of <D> on the unit sphere of range(P):
/// psi(s) = normalize(exp(s P D P) P psi0). Each call to `at_expectation`
/// returns the point on this curve with <D> equal to the target. For a
/// diagonal P and a sector indicator D this is exactly the sector rescaling
/// of watchdog_step, and it is the dt -> 0 limit of the overlap-maximizing
/// step when P and D do not commute.
class ProjectedDriveFlow {
   public:
    /// `projector` must be real symmetric and idempotent (to 1e-12);
    /// `drive` holds the diagonal of D. Throws DegenerateStateError if
    /// P psi0 vanishes.
    ProjectedDriveFlow(const Eigen::MatrixXd &projector, const Eigen::VectorXd &drive, const Eigen::VectorXcd &psi0);

    /// <D> reachable on the curve: open interval (min, max) plus the limits.
    double min_expectation() const {
        return lo_;
    }
    double max_expectation() const {
        return hi_;
    }
    /// Throws DegenerateDynamicsError (t = NaN, sector = -1) when the target
    /// is out of reach.
    Eigen::VectorXcd at_expectation(double target) const;

   private:
    double expectation(double s) const;
    Eigen::VectorXcd state(double s) const;
    Eigen::VectorXcd limit_state(bool upper) const;

    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXd eigvals_;
    Eigen::VectorXcd weights_;  // eigenbasis coefficients of P psi0
    std::vector<Eigen::Index> support_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Which particle's reduced diagonal is steered in the two-particle demo.
enum class TripletDrive { first, second, both };

/// Two spin-1/2 particles, watchdog projector = symmetrizer (1 + P12)/2,
/// drive = probability that the chosen particle (or the mean of both) is 0.
/// Starts from closed_form_triplet(theta0, 0) and follows ProjectedDriveFlow.
/// Point diagnostics use node "1"; alpha_sq is the symmetric-subspace
/// probability and energy is the singlet probability.
Trajectory triplet_watchdog_demo(const DriveSchedule &schedule, TripletDrive drive = TripletDrive::both);

/// Amplitude on the singlet (|01> - |10>)/sqrt(2).
Complex singlet_amplitude(const StateVector &v);

/// Rotate particle 1 alone by each schedule increment, then symmetrize and
/// renormalize. Kept as a contrast to triplet_watchdog_demo.
Trajectory rotate_and_symmetrize_demo(const DriveSchedule &schedule);

}  // namespace statnet
