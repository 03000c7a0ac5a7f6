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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "statnet/commands.hpp"
#include "statnet/dynamics.hpp"
#include "statnet/fock.hpp"
#include "statnet/network.hpp"
#include "statnet/protocol.hpp"
#include "statnet/statics.hpp"

using namespace statnet;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

// Collects failures for one criterion.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string &what) {
        if (!ok && std::find(failures.begin(), failures.end(), what) == failures.end()) {
            failures.push_back(what);
        }
    }
    void within(double value, double bound, const std::string &what) {
        if (!(value <= bound)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " (%.3g > %.3g)", value, bound);
            failures.push_back(what + buf);
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

DriveSchedule link_schedule(double theta, double phi_final, double dt) {
    DriveSchedule s;
    s.theta0 = theta;
    s.phi_final = phi_final;
    s.dt = dt;
    return s;
}

double link_error(const Trajectory &traj) {
    double worst = 0.0;
    for (const auto &p : traj.points) {
        worst = std::max(worst, max_abs_diff(p.state, closed_form_link(traj.schedule.theta0, p.phi)));
    }
    return worst;
}

void fig1_ground_truth(Check &c) {
    auto start = Clock::now();
    auto got = brute_force_solutions(builtin_fig1(), true);
    c.within(seconds_since(start), 1.0, "runtime");
    c.expect(got == std::vector<std::string>{"11101011"}, "solution set");
}

void link_closed_form(Check &c) {
    auto start = Clock::now();
    auto mask = network_mask(builtin_link(), true);
    auto s = link_schedule(kPi / 6, kPi / 3, 1e-3);
    auto full = evolve(closed_form_link(s.theta0, 0), mask, "r", s, LeakModel::none);
    c.within(seconds_since(start), 1.0, "runtime");
    const double e_full = link_error(full);
    c.within(e_full, 1e-9, "pointwise error");
    auto h = s;
    h.dt = s.dt / 2;
    const double e_half = link_error(evolve(closed_form_link(s.theta0, 0), mask, "r", h, LeakModel::none));
    // Both errors sit at rounding level; allow that much slack.
    c.within(e_half, e_full + 1e-12, "error after halving dt");
}

void q_rs_equivalence(Check &c) {
    auto mask = network_mask(builtin_link(), true);
    auto s = link_schedule(kPi / 6, kPi / 3, 1e-3);
    auto psi0 = closed_form_link(s.theta0, 0);
    double worst = 0.0;
    for (const auto &p : evolve(psi0, mask, "r", s, LeakModel::none).points) {
        worst = std::max(worst, max_abs_diff(p.state, q_rs_apply(p.phi, psi0)));
    }
    c.within(worst, 1e-9, "Q_rs deviation");
}

void triplet_demo(Check &c) {
    auto s = link_schedule(kPi / 6, kPi / 3, 1e-3);
    auto first = triplet_watchdog_demo(s, TripletDrive::first);
    auto second = triplet_watchdog_demo(s, TripletDrive::second);
    auto both = triplet_watchdog_demo(s, TripletDrive::both);
    double worst = 0.0;
    double singlet = 0.0;
    double spread = 0.0;
    for (std::size_t k = 0; k < first.points.size(); ++k) {
        const auto &p = first.points[k];
        worst = std::max(worst, max_abs_diff(p.state, closed_form_triplet(s.theta0, p.phi)));
        for (const auto *t : {&first, &second, &both}) {
            singlet = std::max(singlet, std::abs(singlet_amplitude(t->points[k].state)));
        }
        spread = std::max(spread, max_abs_diff(p.state, second.points[k].state));
        spread = std::max(spread, max_abs_diff(p.state, both.points[k].state));
    }
    c.within(worst, 1e-9, "closed-form deviation");
    c.expect(spread == 0.0, "drive choice changes the trajectory");
    c.expect(singlet == 0.0, "singlet amplitude nonzero");
}

void redundancy(Check &c) {
    auto net = builtin_link();
    auto mask = network_mask(net, true);
    ConstraintMask none(net.dim(), "1");
    auto s = link_schedule(kPi / 5, kPi / 3, 1e-3);
    auto with = evolve(closed_form_link(s.theta0, 0), mask, "r", s, LeakModel::none);
    auto without = evolve(closed_form_link(s.theta0, 0), none, "r", s, LeakModel::none);
    double worst = 0.0;
    for (std::size_t k = 0; k < with.points.size(); ++k) {
        worst = std::max(worst, max_abs_diff(with.points[k].state, without.points[k].state));
    }
    c.within(worst, 1e-9, "theta=pi/5 mask effect");
    auto z = link_schedule(0.0, kPi / 3, 1e-3);
    bool exact_zero = true;
    for (const auto &p : evolve(closed_form_link(0, 0), mask, "r", z, LeakModel::none).points) {
        exact_zero = exact_zero && p.state[0b11] == Complex(0.0);
    }
    c.expect(exact_zero, "|11> amplitude at theta=0");
}

void ground_spaces(Check &c) {
    auto link = builtin_link();
    auto zeros = ground_space(gate_hamiltonian(link, link.gates()[0]));
    c.expect(zeros == std::vector<std::size_t>{basis_index(2, "01"), basis_index(2, "10")}, "H_rs ground space");
    auto x = builtin_xor();
    c.expect(ground_space(gate_hamiltonian(x, x.gates()[0])).size() == 4, "XOR zero set size");
    c.expect(fock::verify_second_quantization(fock::HrsParams{}), "second quantization");
}

void fock_counts(Check &c) {
    auto two = fock::antisymmetrizer(2, 4).matrix;
    auto three = fock::antisymmetrizer(3, 6).matrix;
    c.within(std::abs(two.trace() - 6.0), 1e-12, "two-fermion trace");
    c.within(std::abs(three.trace() - 20.0), 1e-12, "three-fermion trace");
    const Eigen::MatrixXcd a = two.cast<Complex>();
    fock::ModeBasis b({"r", "s"});
    double worst = 0.0;
    for (const char *q : {"00", "01", "10", "11"}) {
        auto v = fock::first_quantize(fock::from_assignment(b, q), 2);
        worst = std::max(worst, (a * v - v).norm());
    }
    auto named = fock::fock_basis_two();
    for (const auto &s : named) {
        if (s.label == "c" || s.label == "d") {
            worst = std::max(worst, (a * s.first - s.first).norm());
        }
    }
    c.within(worst, 1e-12, "antisymmetrizer on embedded qubits");
}

void end_to_end(Check &c) {
    auto start = Clock::now();
    auto sat = run_protocol(builtin_fig1(), 100, 0);
    c.within(seconds_since(start), 5.0, "fig1 runtime");
    c.expect(sat.decision == Decision::satisfiable, "fig1 decision");
    std::size_t hits = 0;
    for (const auto &s : sat.samples) {
        hits += s == std::optional<std::string>("11101011");
    }
    c.expect(hits == 100, "fig1 samples");
    start = Clock::now();
    auto unsat = run_protocol(builtin_fig1_unsat(), 100, 0);
    c.within(seconds_since(start), 5.0, "unsat runtime");
    c.expect(unsat.decision == Decision::unsatisfiable, "unsat decision");
    c.expect(unsat.n_solutions == 0, "unsat solutions");
}

void sampling(Check &c) {
    const double h = 1 / std::sqrt(2.0);
    StateVector bell({"x", "y"}, {h, 0.0, 0.0, h});
    for (std::uint64_t seed : {0, 1, 2, 3, 4}) {
        std::size_t zeros = 0;
        std::size_t ones = 0;
        for (std::uint64_t k = 0; k < 10000; ++k) {
            auto rng = Rng::derived(seed, k);
            auto s = measure_sample(bell, rng);
            zeros += s == "00";
            ones += s == "11";
        }
        const std::string tag = "seed " + std::to_string(seed);
        c.expect(zeros + ones == 10000, tag + ": impossible outcome");
        c.within(std::abs(static_cast<double>(zeros) - 5000.0), 150.0, tag + ": |00> count");
        c.within(std::abs(static_cast<double>(ones) - 5000.0), 150.0, tag + ": |11> count");
    }
}

void property_suites(Check &c) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        auto net = oracle::random_network(rng, 2 + trial % 5);
        const std::size_t n = net.num_nodes();
        std::vector<ConstraintMask> masks;
        for (const auto &g : net.gates()) {
            masks.push_back(gate_mask(net, g));
        }
        for (const auto &p : net.pins()) {
            masks.push_back(pin_mask(net, p));
        }
        // Diagonal projectors: P^2 = P entrywise, PQ = QP as products.
        for (const auto &a : masks) {
            for (std::size_t k = 0; k < a.dim(); ++k) {
                const int x = a.bits()[k];
                c.expect(x * x == x, "idempotence");
            }
            for (const auto &b : masks) {
                c.expect((a & b).bits() == (b & a).bits(), "commutation");
            }
        }
        std::set<std::string> got;
        for (auto k : network_mask(net, true).support()) {
            got.insert(assignment_of(k, n));
        }
        c.expect(got == oracle::solutions(net, true, true), "mask support vs oracle");
    }

    auto mask = network_mask(builtin_link(), true);
    for (auto kind : {ScheduleKind::linear_ramp, ScheduleKind::cosine_ramp, ScheduleKind::exponential_relax}) {
        auto s = link_schedule(0.4, 1.0, 1e-3);
        s.kind = kind;
        double drift = 0.0;
        for (const auto &p : evolve(closed_form_link(s.theta0, 0), mask, "r", s, LeakModel::none).points) {
            drift = std::max(drift, std::abs(p.state.norm_squared() - 1.0));
        }
        c.within(drift, 1e-12, "norm preservation");
    }

    const std::vector<std::vector<std::string>> commands{
        {"check", "--network", "fig1"},
        {"solve-brute", "--network", "fig1"},
        {"simulate-link", "--dt", "0.01"},
        {"simulate-triplet", "--dt", "0.01", "--format", "json"},
        {"run", "--network", "fig1", "--shots", "10", "--seed", "3", "--dt", "0.01"},
    };
    for (const auto &args : commands) {
        std::ostringstream a;
        std::ostringstream b;
        std::ostringstream err;
        const int ca = cli::run_cli(args, a, err);
        const int cb = cli::run_cli(args, b, err);
        c.expect(ca == cb && a.str() == b.str() && !a.str().empty(), "CLI determinism: " + args[0]);
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<void(Check &)> run;
    };
    const std::vector<Criterion> criteria{
        {"fig1 ground truth", fig1_ground_truth},
        {"link closed form", link_closed_form},
        {"Q_rs equivalence", q_rs_equivalence},
        {"triplet demo", triplet_demo},
        {"redundancy dichotomy", redundancy},
        {"ground spaces", ground_spaces},
        {"fock counts", fock_counts},
        {"end-to-end SAT", end_to_end},
        {"sampling statistics", sampling},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (const auto &criterion : criteria) {
        Check check;
        auto start = Clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception &e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(start);
        const bool ok = check.failures.empty();
        failed += !ok;
        std::printf("[%s] %s (%.3f s)\n", ok ? "PASS" : "FAIL", criterion.name, secs);
        for (const auto &f : check.failures) {
            std::printf("    %s\n", f.c_str());
        }
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
