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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "statnet/errors.hpp"
#include "statnet/protocol.hpp"
#include "statnet/statics.hpp"

using namespace statnet;

namespace {

constexpr double kPi = std::numbers::pi;

DriveSchedule schedule(ScheduleKind kind, double theta, double phi_final, double dt = 1e-3, double tau = 1.0) {
    DriveSchedule s;
    s.kind = kind;
    s.theta0 = theta;
    s.phi_final = phi_final;
    s.tau = tau;
    s.dt = dt;
    return s;
}

ConstraintMask link_mask() {
    auto net = builtin_link();
    return network_mask(net, true);
}

double max_link_deviation(const Trajectory &traj) {
    double worst = 0.0;
    for (const auto &p : traj.points) {
        worst = std::max(worst, max_abs_diff(p.state, closed_form_link(traj.schedule.theta0, p.phi)));
    }
    return worst;
}

// Q_rs typed row by row from its action on the basis (columns = inputs).
Eigen::Matrix4d q_rs_matrix(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix4d q;
    q << 1, 0, 0, 0,  //
        0, c, -s, 0,  //
        0, s, c, 0,   //
        0, 0, 0, 1;
    return q;
}

StateVector random_state(std::mt19937_64 &rng, const std::vector<std::string> &nodes) {
    std::normal_distribution<double> g;
    StateVector v(nodes);
    for (std::size_t k = 0; k < v.dim(); ++k) {
        v[k] = Complex{g(rng), g(rng)};
    }
    return normalize(v);
}

}  // namespace

TEST(schedule, targets_follow_the_angle) {
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 6, kPi / 3);
    auto [a0, a1] = schedule_targets(s, 0.0);
    EXPECT_NEAR(a0, 0.75, 1e-15);
    EXPECT_NEAR(a1, 0.25, 1e-15);
    auto [b0, b1] = schedule_targets(s, 1.0);
    EXPECT_NEAR(b0, 0.0, 1e-15);
    EXPECT_NEAR(b1, 1.0, 1e-15);
    auto q = schedule(ScheduleKind::cosine_ramp, kPi / 4, 1.0);
    EXPECT_NEAR(schedule_targets(q, 0.0).first, 0.5, 1e-15);
    EXPECT_THROW(schedule_targets(s, 1.5), InputError);
    EXPECT_THROW(schedule_targets(s, -0.1), InputError);
}

TEST(schedule, kinds_share_endpoints) {
    for (auto kind : {ScheduleKind::linear_ramp, ScheduleKind::cosine_ramp, ScheduleKind::exponential_relax}) {
        auto s = schedule(kind, 0.0, 2.0);
        EXPECT_EQ(s.phi(0.0), 0.0);
        EXPECT_EQ(parse_schedule_kind(to_string(kind)), kind);
    }
    EXPECT_NEAR(schedule(ScheduleKind::linear_ramp, 0, 2.0).phi(0.25), 0.5, 1e-15);
    EXPECT_NEAR(schedule(ScheduleKind::cosine_ramp, 0, 2.0).phi(0.5), 1.0, 1e-15);
    EXPECT_NEAR(schedule(ScheduleKind::exponential_relax, 0, 2.0).phi(1.0), 2.0 * (1 - std::exp(-5.0)), 1e-15);
    EXPECT_THROW(parse_schedule_kind("zigzag"), InputError);
}

TEST(schedule, validation) {
    EXPECT_THROW(schedule(ScheduleKind::linear_ramp, 0, 1, 0.0).validate(), InputError);
    EXPECT_THROW(schedule(ScheduleKind::linear_ramp, 0, 1, 2.0).validate(), InputError);
    EXPECT_THROW(schedule(ScheduleKind::linear_ramp, 0, 1, 0.3).validate(), InputError);
    EXPECT_EQ(schedule(ScheduleKind::linear_ramp, 0, 1, 1e-3).num_steps(), 1000u);
    EXPECT_EQ(schedule(ScheduleKind::linear_ramp, 0, 1, 1e-3).time_at(1000), 1.0);
}

TEST(watchdog_step, link_step_is_a_rotation) {
    const double theta = 0.3;
    const double delta = 0.01;
    auto prev = closed_form_link(theta, 0.0);
    const double c = std::cos(theta + delta);
    const double s = std::sin(theta + delta);
    auto next = watchdog_step(prev, link_mask(), "r", {c * c, s * s}, LeakModel::none);
    EXPECT_LT(max_abs_diff(next, closed_form_link(theta, delta)), 1e-15);
}

TEST(watchdog_step, forbidden_state_never_appears_from_a_basis_state) {
    auto prev = closed_form_link(0.0, 0.0);
    const double s = std::sin(0.01);
    auto next = watchdog_step(prev, link_mask(), "r", {1 - s * s, s * s}, LeakModel::none);
    EXPECT_EQ(next[0b11], Complex(0.0));
    EXPECT_EQ(next[0b00], Complex(0.0));
    EXPECT_NEAR(std::norm(next[0b10]), s * s, 1e-16);
}

TEST(watchdog_step, current_masses_are_a_fixed_point) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto v = random_state(rng, {"a", "b", "c"});
        auto d = reduced_diag(v, "b");
        auto next = watchdog_step(v, ConstraintMask(8, "1"), "b", {d.p0, d.p1}, LeakModel::none);
        EXPECT_LT(max_abs_diff(next, v), 1e-15);
    }
}

TEST(watchdog_step, rejects_bad_targets) {
    auto v = closed_form_link(0.2, 0.0);
    EXPECT_THROW(watchdog_step(v, link_mask(), "r", {0.5, 0.6}, LeakModel::none), InputError);
    EXPECT_THROW(watchdog_step(v, link_mask(), "r", {-0.1, 1.1}, LeakModel::none), InputError);
    EXPECT_THROW(watchdog_step(v, ConstraintMask(8, "1"), "r", {0.5, 0.5}, LeakModel::none), InputError);
}

TEST(watchdog_step, attains_the_maximum_overlap) {
    // Numerical oracle: random-restart hill climbing over all states that
    // satisfy the mask and the sector targets.
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const std::vector<std::string> nodes{"a", "b", "c"};
    int checked = 0;
    while (checked < 8) {
        std::vector<std::uint8_t> bits(8);
        for (auto &b : bits) {
            b = rng() % 4 != 0;
        }
        ConstraintMask mask(bits, "M");
        auto prev = random_state(rng, nodes);
        prev = apply_mask(prev, mask);
        auto [c0, c1] = sector_split(prev, "b");
        if (c0.norm_squared() < 1e-3 || c1.norm_squared() < 1e-3) {
            continue;
        }
        prev = normalize(prev);
        const double p0 = u(rng);
        const std::pair<double, double> targets{p0, 1 - p0};
        auto produced = watchdog_step(prev, mask, "b", targets, LeakModel::none);
        const double best_claimed = std::abs(inner(produced, prev));

        auto project = [&](StateVector v) {
            v = apply_mask(v, mask);
            auto [s0, s1] = sector_split(v, "b");
            return add(scale(normalize(s0), std::sqrt(targets.first)), scale(normalize(s1), std::sqrt(targets.second)));
        };
        double best_found = 0.0;
        for (int restart = 0; restart < 4; ++restart) {
            auto x = project(random_state(rng, nodes));
            double fx = std::abs(inner(x, prev));
            double step = 0.5;
            for (int it = 0; it < 4000; ++it) {
                StateVector y = x;
                for (std::size_t k = 0; k < y.dim(); ++k) {
                    y[k] += step * Complex{g(rng), g(rng)};
                }
                y = project(y);
                const double fy = std::abs(inner(y, prev));
                if (fy > fx) {
                    x = y;
                    fx = fy;
                } else {
                    step = std::max(step * 0.995, 1e-4);
                }
            }
            best_found = std::max(best_found, fx);
        }
        EXPECT_LE(best_found, best_claimed + 1e-12);
        EXPECT_GE(best_found, best_claimed - 1e-4);
        ++checked;
    }
}

TEST(watchdog_step, empty_constrained_sector_is_filled_uniformly) {
    // Previous state has no drive=1 component but the mask allows two.
    std::vector<std::uint8_t> bits{1, 1, 1, 0, 1, 1, 0, 0};
    ConstraintMask mask(bits, "M");
    auto prev = basis_state({"z", "x", "y"}, "000");
    auto next = watchdog_step(prev, mask, "z", {0.5, 0.5}, LeakModel::none);
    EXPECT_NEAR(std::norm(next[0b100]), 0.25, 1e-15);
    EXPECT_NEAR(std::norm(next[0b101]), 0.25, 1e-15);
    EXPECT_EQ(next[0b110], Complex(0.0));
}

TEST(watchdog_step, leak_models_on_an_empty_sector) {
    std::vector<std::uint8_t> bits{1, 1, 0, 0};
    ConstraintMask mask(bits, "z=0");
    auto prev = basis_state({"z", "x"}, "00");
    try {
        watchdog_step(prev, mask, "z", {0.5, 0.5}, LeakModel::none);
        FAIL() << "expected degenerate dynamics";
    } catch (const DegenerateDynamicsError &e) {
        EXPECT_EQ(e.sector(), 1);
    }
    auto leaked = watchdog_step(prev, mask, "z", {0.5, 0.5}, LeakModel::uniform_excited);
    EXPECT_NEAR(std::norm(leaked[0b10]), 0.25, 1e-15);
    EXPECT_NEAR(std::norm(leaked[0b11]), 0.25, 1e-15);
    EXPECT_NEAR(leaked.norm_squared(), 1.0, 1e-15);
}

TEST(evolve, link_matches_closed_form_for_every_schedule) {
    for (auto kind : {ScheduleKind::linear_ramp, ScheduleKind::cosine_ramp, ScheduleKind::exponential_relax}) {
        auto s = schedule(kind, kPi / 6, kPi / 3);
        auto traj = evolve(closed_form_link(s.theta0, 0.0), link_mask(), "r", s, LeakModel::none);
        EXPECT_EQ(traj.points.size(), 1001u);
        EXPECT_LT(max_link_deviation(traj), 1e-9) << to_string(kind);
        auto [p0, p1] = schedule_targets(s, s.tau);
        EXPECT_NEAR(traj.points.back().p0, p0, 1e-9);
        EXPECT_NEAR(traj.points.back().p1, p1, 1e-9);
    }
}

TEST(evolve, halving_dt_does_not_increase_the_error) {
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 6, kPi / 3);
    auto half = s;
    half.dt = s.dt / 2;
    const double e_full = max_link_deviation(evolve(closed_form_link(s.theta0, 0), link_mask(), "r", s, LeakModel::none));
    const double e_half =
        max_link_deviation(evolve(closed_form_link(s.theta0, 0), link_mask(), "r", half, LeakModel::none));
    EXPECT_LE(e_half, e_full + 1e-12);
}

TEST(evolve, trajectory_invariants) {
    auto net = builtin_link();
    auto h_rs = gate_hamiltonian(net, net.gates()[0]);
    auto s = schedule(ScheduleKind::cosine_ramp, 0.4, 0.9);
    auto traj = evolve(closed_form_link(s.theta0, 0), link_mask(), "r", s, LeakModel::none, &h_rs);
    ASSERT_FALSE(traj.points.empty());
    EXPECT_EQ(traj.points[0].t, 0.0);
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
        const auto &p = traj.points[k];
        EXPECT_NEAR(p.state.norm_squared(), 1.0, 1e-12);
        EXPECT_EQ(apply_mask(p.state, link_mask()), p.state);
        EXPECT_NEAR(p.alpha_sq + p.beta_sq, 1.0, 1e-12);
        EXPECT_EQ(p.energy, 0.0);
        EXPECT_GE(p.step_overlap, 0.0);
        EXPECT_LE(p.step_overlap, 1.0);
        if (k > 0) {
            EXPECT_NEAR(p.t - traj.points[k - 1].t, s.dt, 1e-12);
        }
    }
}

TEST(evolve, q_rs_reproduces_the_trajectory) {
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 6, kPi / 3);
    auto psi0 = closed_form_link(s.theta0, 0);
    auto traj = evolve(psi0, link_mask(), "r", s, LeakModel::none);
    for (const auto &p : traj.points) {
        EXPECT_LT(max_abs_diff(p.state, q_rs_apply(p.phi, psi0)), 1e-9);
    }
}

TEST(evolve, mask_is_redundant_away_from_the_poles) {
    // theta + phi_final passes pi/2, where the drive=0 sector momentarily
    // holds only rounding residue.
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 5, kPi / 3);
    auto psi0 = closed_form_link(s.theta0, 0);
    auto with = evolve(psi0, link_mask(), "r", s, LeakModel::none);
    auto without = evolve(psi0, ConstraintMask(4, "1"), "r", s, LeakModel::none);
    for (std::size_t k = 0; k < with.points.size(); ++k) {
        EXPECT_LT(max_abs_diff(with.points[k].state, without.points[k].state), 1e-9);
    }
}

TEST(evolve, mask_is_needed_at_theta_zero) {
    auto s = schedule(ScheduleKind::linear_ramp, 0.0, kPi / 3);
    auto psi0 = closed_form_link(0.0, 0);
    auto with = evolve(psi0, link_mask(), "r", s, LeakModel::none);
    auto without = evolve(psi0, ConstraintMask(4, "1"), "r", s, LeakModel::none);
    double forbidden = 0.0;
    for (const auto &p : with.points) {
        EXPECT_EQ(p.state[0b11], Complex(0.0));
    }
    for (const auto &p : without.points) {
        forbidden = std::max(forbidden, std::norm(p.state[0b11]));
        auto [c0, c1] = sector_split(p.state, "r");
        (void)c0;
        EXPECT_NEAR(c1.norm_squared(), schedule_targets(s, p.t).second, 1e-12);
    }
    EXPECT_GT(forbidden, 0.1);
}

TEST(evolve, zero_length_schedule_keeps_the_state) {
    auto s = schedule(ScheduleKind::linear_ramp, 0.7, 0.0, 1.0, 1.0);
    auto psi0 = closed_form_link(0.7, 0);
    auto traj = evolve(psi0, link_mask(), "r", s, LeakModel::none);
    ASSERT_EQ(traj.points.size(), 2u);
    EXPECT_LT(max_abs_diff(traj.points[1].state, psi0), 1e-15);
}

TEST(evolve, rejects_bad_initial_states) {
    auto s = schedule(ScheduleKind::linear_ramp, 0.0, 1.0);
    EXPECT_THROW(evolve(StateVector({"r", "s"}), link_mask(), "r", s, LeakModel::none), InputError);
    EXPECT_THROW(evolve(basis_state({"r", "s"}, "11"), link_mask(), "r", s, LeakModel::none), InputError);
}

TEST(evolve, degenerate_error_reports_the_time) {
    std::vector<std::uint8_t> bits{1, 1, 0, 0};
    ConstraintMask mask(bits, "z=0");
    auto s = schedule(ScheduleKind::linear_ramp, 0.0, 1.0, 0.01);
    try {
        evolve(basis_state({"z", "x"}, "00"), mask, "z", s, LeakModel::none);
        FAIL();
    } catch (const DegenerateDynamicsError &e) {
        EXPECT_NEAR(e.t(), 0.01, 1e-15);
        EXPECT_EQ(e.sector(), 1);
    }
    auto leaked = evolve(basis_state({"z", "x"}, "00"), mask, "z", s, LeakModel::uniform_excited);
    EXPECT_NEAR(leaked.points.back().beta_sq, std::pow(std::sin(1.0), 2), 1e-12);
    for (const auto &p : leaked.points) {
        EXPECT_NEAR(p.alpha_sq + p.beta_sq, 1.0, 1e-12);
    }
}

TEST(evolve, fig1_preparation_relaxes_onto_the_solution) {
    auto net = builtin_fig1();
    auto prep = prepare_ground(net);
    auto s = schedule(ScheduleKind::linear_ramp, prep.theta, kPi / 2 - prep.theta);
    auto last = evolve_final(prep.state, network_mask(net, false), "h", s, LeakModel::none);
    EXPECT_LT(max_abs_diff(last.state, basis_state(net.nodes(), "11101011")), 1e-9);
    auto full = evolve(prep.state, network_mask(net, false), "h", s, LeakModel::none);
    EXPECT_EQ(full.points.back().state, last.state);
}

TEST(closed_forms, examples) {
    EXPECT_LT(max_abs_diff(closed_form_link(0, 0), basis_state({"r", "s"}, "01")), 1e-15);
    EXPECT_LT(max_abs_diff(closed_form_link(0, kPi / 2), basis_state({"r", "s"}, "10")), 1e-15);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(closed_form_link(kPi / 4, 0), StateVector({"r", "s"}, {0, h, h, 0})), 1e-15);
    EXPECT_LT(max_abs_diff(closed_form_triplet(0, 0), basis_state({"1", "2"}, "00")), 1e-15);
    EXPECT_LT(max_abs_diff(closed_form_triplet(0, kPi / 2), basis_state({"1", "2"}, "11")), 1e-15);
    EXPECT_LT(max_abs_diff(closed_form_triplet(0.1, kPi / 4 - 0.1), StateVector({"1", "2"}, {0.5, 0.5, 0.5, 0.5})),
              1e-15);
}

TEST(q_rs, matches_the_matrix_and_is_unitary) {
    std::mt19937_64 rng(12);
    for (double phi : {0.0, 0.3, kPi / 2, -1.1}) {
        auto v = random_state(rng, {"r", "s"});
        Eigen::Vector4cd x;
        for (int k = 0; k < 4; ++k) {
            x(k) = v[static_cast<std::size_t>(k)];
        }
        Eigen::Vector4cd y = q_rs_matrix(phi).cast<Complex>() * x;
        auto w = q_rs_apply(phi, v);
        for (int k = 0; k < 4; ++k) {
            EXPECT_LT(std::abs(w[static_cast<std::size_t>(k)] - y(k)), 1e-15);
        }
        EXPECT_LT(max_abs_diff(q_rs_apply(-phi, w), v), 1e-15);
    }
    EXPECT_LT(max_abs_diff(q_rs_apply(kPi / 2, basis_state({"r", "s"}, "01")), basis_state({"r", "s"}, "10")), 1e-15);
    EXPECT_THROW(q_rs_apply(0.1, StateVector({"a"})), InputError);
}

TEST(projected_flow, equals_the_sector_rescaling_for_diagonal_projectors) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const std::vector<std::string> nodes{"z", "a", "b"};
    int checked = 0;
    while (checked < 50) {
        std::vector<std::uint8_t> bits(8);
        for (auto &b : bits) {
            b = rng() % 3 != 0;
        }
        ConstraintMask mask(bits, "M");
        auto psi = apply_mask(random_state(rng, nodes), mask);
        auto [c0, c1] = sector_split(psi, "z");
        if (c0.norm_squared() < 1e-6 || c1.norm_squared() < 1e-6) {
            continue;
        }
        psi = normalize(psi);
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(8, 8);
        Eigen::VectorXd d(8);
        Eigen::VectorXcd x(8);
        for (int k = 0; k < 8; ++k) {
            p(k, k) = bits[static_cast<std::size_t>(k)];
            d(k) = node_bit(static_cast<std::size_t>(k), 0, 3) == 0 ? 1.0 : 0.0;
            x(k) = psi[static_cast<std::size_t>(k)];
        }
        ProjectedDriveFlow flow(p, d, x);
        const double p0 = u(rng);
        auto dense = flow.at_expectation(p0);
        auto diag = watchdog_step(psi, mask, "z", {p0, 1 - p0}, LeakModel::none);
        for (int k = 0; k < 8; ++k) {
            EXPECT_LT(std::abs(dense(k) - diag[static_cast<std::size_t>(k)]), 1e-12);
        }
        ++checked;
    }
}

TEST(projected_flow, validates_inputs) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(2, 2);
    p(0, 1) = 0.5;
    Eigen::VectorXd d(2);
    d << 1, 0;
    Eigen::VectorXcd x(2);
    x << 1, 0;
    EXPECT_THROW(ProjectedDriveFlow(p, d, x), InputError);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
    q(1, 1) = 1.0;
    EXPECT_THROW(ProjectedDriveFlow(q, d, x), DegenerateStateError);
    ProjectedDriveFlow flat(Eigen::MatrixXd::Identity(2, 2), d, x);
    EXPECT_THROW(flat.at_expectation(0.5), DegenerateDynamicsError);
}

TEST(triplet, matches_closed_form_with_zero_singlet) {
    for (auto kind : {ScheduleKind::linear_ramp, ScheduleKind::cosine_ramp, ScheduleKind::exponential_relax}) {
        auto s = schedule(kind, kPi / 6, kPi / 3);
        auto traj = triplet_watchdog_demo(s, TripletDrive::first);
        for (const auto &p : traj.points) {
            EXPECT_LT(max_abs_diff(p.state, closed_form_triplet(s.theta0, p.phi)), 1e-9);
            EXPECT_LT(std::abs(singlet_amplitude(p.state)), 1e-15);
            EXPECT_NEAR(p.state.norm_squared(), 1.0, 1e-12);
        }
    }
}

TEST(triplet, either_particle_or_both_give_the_same_trajectory) {
    auto s = schedule(ScheduleKind::linear_ramp, 0.2, 1.2);
    auto both = triplet_watchdog_demo(s, TripletDrive::both);
    auto first = triplet_watchdog_demo(s, TripletDrive::first);
    auto second = triplet_watchdog_demo(s, TripletDrive::second);
    ASSERT_EQ(both.points.size(), first.points.size());
    for (std::size_t k = 0; k < both.points.size(); ++k) {
        EXPECT_EQ(first.points[k].state, both.points[k].state);
        EXPECT_EQ(second.points[k].state, both.points[k].state);
    }
}

TEST(triplet, no_rotation_means_constant_state) {
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 4, 0.0, 0.01);
    auto traj = triplet_watchdog_demo(s);
    for (const auto &p : traj.points) {
        EXPECT_LT(max_abs_diff(p.state, traj.points[0].state), 1e-15);
    }
}

TEST(triplet, pole_start_cannot_be_driven) {
    auto s = schedule(ScheduleKind::linear_ramp, 0.0, 0.5, 0.01);
    EXPECT_THROW(triplet_watchdog_demo(s), DegenerateDynamicsError);
}

TEST(triplet, rotating_one_particle_then_symmetrizing_lags_behind) {
    auto s = schedule(ScheduleKind::linear_ramp, kPi / 6, kPi / 3);
    auto traj = rotate_and_symmetrize_demo(s);
    const auto &last = traj.points.back();
    EXPECT_GT(max_abs_diff(last.state, closed_form_triplet(s.theta0, s.phi_final)), 0.1);
    // Each step moves the pair by half the single-particle increment.
    EXPECT_LT(max_abs_diff(last.state, closed_form_triplet(s.theta0, s.phi_final / 2)), 1e-3);
    for (const auto &p : traj.points) {
        EXPECT_LT(std::abs(singlet_amplitude(p.state)), 1e-15);
    }
}
