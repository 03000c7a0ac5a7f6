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

#include <cmath>
#include <limits>

#include "statnet/dynamics.hpp"
#include "statnet/errors.hpp"

namespace statnet {

namespace {

constexpr double kLevelTolerance = 1e-12;

}  // namespace

ProjectedDriveFlow::ProjectedDriveFlow(
    const Eigen::MatrixXd &projector, const Eigen::VectorXd &drive, const Eigen::VectorXcd &psi0) {
    const Eigen::Index n = projector.rows();
    if (projector.cols() != n || drive.size() != n || psi0.size() != n) {
        throw InputError("projector, drive and state dimensions disagree");
    }
    if ((projector - projector.transpose()).cwiseAbs().maxCoeff() > kLevelTolerance ||
        (projector * projector - projector).cwiseAbs().maxCoeff() > kLevelTolerance) {
        throw InputError("projector must be symmetric and idempotent");
    }
    const Eigen::MatrixXd a = projector * drive.asDiagonal() * projector;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed");
    }
    eigvecs_ = solver.eigenvectors();
    eigvals_ = solver.eigenvalues();

    const Eigen::VectorXcd projected = projector.cast<Complex>() * psi0;
    const double total = projected.squaredNorm();
    if (total <= kNegligibleMass) {
        throw DegenerateStateError("initial state has no component in the projector's range");
    }
    weights_ = eigvecs_.transpose().cast<Complex>() * projected;
    lo_ = std::numeric_limits<double>::infinity();
    hi_ = -lo_;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::norm(weights_(k)) > kNegligibleMass * total) {
            support_.push_back(k);
            lo_ = std::min(lo_, eigvals_(k));
            hi_ = std::max(hi_, eigvals_(k));
        }
    }
}

double ProjectedDriveFlow::expectation(double s) const {
    double shift = -std::numeric_limits<double>::infinity();
    for (auto k : support_) {
        shift = std::max(shift, 2.0 * s * eigvals_(k));
    }
    double num = 0.0;
    double den = 0.0;
    for (auto k : support_) {
        const double w = std::norm(weights_(k)) * std::exp(2.0 * s * eigvals_(k) - shift);
        num += w * eigvals_(k);
        den += w;
    }
    return num / den;
}

Eigen::VectorXcd ProjectedDriveFlow::state(double s) const {
    double shift = -std::numeric_limits<double>::infinity();
    for (auto k : support_) {
        shift = std::max(shift, s * eigvals_(k));
    }
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(weights_.size());
    for (auto k : support_) {
        coeffs(k) = weights_(k) * std::exp(s * eigvals_(k) - shift);
    }
    Eigen::VectorXcd v = eigvecs_.cast<Complex>() * coeffs;
    return v / v.norm();
}

Eigen::VectorXcd ProjectedDriveFlow::limit_state(bool upper) const {
    const double level = upper ? hi_ : lo_;
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(weights_.size());
    for (auto k : support_) {
        if (std::abs(eigvals_(k) - level) <= kLevelTolerance) {
            coeffs(k) = weights_(k);
        }
    }
    Eigen::VectorXcd v = eigvecs_.cast<Complex>() * coeffs;
    return v / v.norm();
}

Eigen::VectorXcd ProjectedDriveFlow::at_expectation(double target) const {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (target < lo_ - kLevelTolerance || target > hi_ + kLevelTolerance) {
        throw DegenerateDynamicsError(
            nan, -1, "drive target " + std::to_string(target) + " is outside the reachable range");
    }
    if (hi_ - lo_ <= kLevelTolerance) {
        return state(0.0);
    }
    if (target <= lo_) {
        return limit_state(false);
    }
    if (target >= hi_) {
        return limit_state(true);
    }

    // <D>(s) is nondecreasing in s; bracket the root and bisect.
    double s_lo = -1.0;
    double s_hi = 1.0;
    for (int k = 0; k < 2000 && expectation(s_lo) > target; ++k) {
        s_lo *= 2.0;
        if (!std::isfinite(s_lo)) {
            return limit_state(false);
        }
    }
    for (int k = 0; k < 2000 && expectation(s_hi) < target; ++k) {
        s_hi *= 2.0;
        if (!std::isfinite(s_hi)) {
            return limit_state(true);
        }
    }
    for (int k = 0; k < 400; ++k) {
        const double mid = 0.5 * (s_lo + s_hi);
        if (mid <= s_lo || mid >= s_hi) {
            break;
        }
        if (expectation(mid) < target) {
            s_lo = mid;
        } else {
            s_hi = mid;
        }
    }
    return state(0.5 * (s_lo + s_hi));
}

}  // namespace statnet
