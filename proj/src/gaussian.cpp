// Copyright 2026 The gbsgraph Authors
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

#include "gbsgraph/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbsgraph/error.hpp"
#include "gbsgraph/graph.hpp"
#include "gbsgraph/linalg.hpp"
#include "gbsgraph/matfn.hpp"

namespace gbsgraph {
namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kPhysicalTolerance = 1e-8;
constexpr double kUnitaryTolerance = 1e-9;
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kProbabilityTolerance = 1e-8;

void require_unitary(const ComplexMatrix& u, std::size_t modes) {
    if (u.rows() != modes || u.cols() != modes) {
        throw ValidationError("interferometer must be " + std::to_string(modes) + "x" + std::to_string(modes));
    }
    const ComplexMatrix gram = u * u.adjoint();
    if ((gram - ComplexMatrix::identity(modes)).max_abs() > kUnitaryTolerance) {
        throw ValidationError("interferometer is not unitary");
    }
}

void require_squeezing(std::span<const double> squeezing) {
    for (const double r : squeezing) {
        if (!std::isfinite(r) || r < 0.0) {
            throw ValidationError("squeezing parameters must be finite and nonnegative");
        }
    }
}

// [[u, 0], [0, conj(u)]] acting on (a, a^dag).
ComplexMatrix passive_symplectic(const ComplexMatrix& u) {
    const std::size_t m = u.rows();
    return ComplexMatrix::block(u, ComplexMatrix(m, m), ComplexMatrix(m, m), u.conjugate());
}

std::vector<std::size_t> doubled_indices(std::span<const std::size_t> modes, std::size_t m) {
    std::vector<std::size_t> idx(modes.begin(), modes.end());
    for (const std::size_t i : modes) {
        idx.push_back(i + m);
    }
    return idx;
}

}  // namespace

GaussianState GaussianState::vacuum(std::size_t modes) { return GaussianState(ComplexMatrix::identity(2 * modes)); }

GaussianState::GaussianState(ComplexMatrix husimi) : husimi_(std::move(husimi)) {
    if (!husimi_.is_square() || husimi_.rows() % 2 != 0 || husimi_.rows() == 0) {
        throw ValidationError("Husimi covariance must be square with positive even dimension");
    }
    if (!husimi_.all_finite()) {
        throw NumericalError("Husimi covariance has non-finite entries");
    }
    if (!is_hermitian(husimi_, kHermitianTolerance)) {
        throw NumericalError("Husimi covariance is not Hermitian");
    }
    const std::size_t m = modes();
    const double tol = kPhysicalTolerance * std::max(1.0, husimi_.max_abs());

    const auto eig = hermitian_eigenvalues(husimi_);
    if (eig.front() < 0.5 - tol) {
        throw NumericalError("Husimi covariance violates the eigenvalue floor of 1/2");
    }
    ComplexMatrix shifted = husimi_;
    for (std::size_t i = m; i < 2 * m; ++i) {
        shifted(i, i) -= 1.0;
    }
    if (hermitian_eigenvalues(shifted).front() < -tol) {
        throw NumericalError("Husimi covariance violates the uncertainty relation");
    }
    double log_det = 0.0;
    for (const double e : eig) {
        log_det += std::log(e);
    }
    if (log_det < -kPhysicalTolerance) {
        throw NumericalError("Husimi covariance has determinant below 1");
    }
}

ComplexMatrix SamplingMatrix::full() const { return ComplexMatrix::block(a, l, l.conjugate(), a.conjugate()); }

void NoiseConfig::validate() const {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ValidationError("eta must lie in [0, 1]");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValidationError("epsilon must lie in [0, 1]");
    }
}

GaussianState state_from_device(std::span<const double> squeezing, const ComplexMatrix& interferometer) {
    const std::size_t m = squeezing.size();
    if (m == 0) {
        throw ValidationError("device needs at least one mode");
    }
    require_squeezing(squeezing);
    require_unitary(interferometer, m);

    std::vector<Complex> t(m);
    std::transform(squeezing.begin(), squeezing.end(), t.begin(), [](double r) { return Complex{std::tanh(r)}; });
    const ComplexMatrix a = interferometer * ComplexMatrix::diagonal(t) * interferometer.transpose();
    // I - X A_full = [[I, -conj(A)], [-A, I]].
    const ComplexMatrix id = ComplexMatrix::identity(m);
    const ComplexMatrix b = ComplexMatrix::block(id, a.conjugate() * Complex{-1.0}, a * Complex{-1.0}, id);
    ComplexMatrix sigma = inverse(b);
    // Remove rounding asymmetry so the Hermitian check sees an exact Hermitian matrix.
    sigma = (sigma + sigma.adjoint()) * Complex{0.5};
    return GaussianState(std::move(sigma));
}

GaussianState state_from_device(const Device& device) {
    return state_from_device(device.squeezing, device.interferometer);
}

SamplingMatrix sampling_matrix(const GaussianState& state) {
    const std::size_t m = state.modes();
    const ComplexMatrix o = ComplexMatrix::identity(2 * m) - inverse(state.husimi());
    ComplexMatrix a = o.slice(m, 0, m, m);
    if (!is_symmetric(a, kSymmetryTolerance)) {
        throw NumericalError("sampling matrix A block is not symmetric");
    }
    a = (a + a.transpose()) * Complex{0.5};
    return {std::move(a), o.slice(m, m, m, m)};
}

GaussianState apply_loss(const GaussianState& state, std::span<const double> eta) {
    const std::size_t m = state.modes();
    if (eta.size() != m) {
        throw ValidationError("loss needs one transmission per mode");
    }
    std::vector<double> d(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(eta[i] >= 0.0 && eta[i] <= 1.0)) {
            throw ValidationError("eta must lie in [0, 1]");
        }
        d[i] = d[i + m] = std::sqrt(eta[i]);
    }
    // sigma_Q' = D sigma_Q D + I - D^2.
    ComplexMatrix out = state.husimi();
    for (std::size_t r = 0; r < 2 * m; ++r) {
        for (std::size_t c = 0; c < 2 * m; ++c) {
            out(r, c) *= d[r] * d[c];
        }
        out(r, r) += 1.0 - d[r] * d[r];
    }
    return GaussianState(std::move(out));
}

GaussianState apply_loss(const GaussianState& state, double eta) {
    const std::vector<double> per_mode(state.modes(), eta);
    return apply_loss(state, per_mode);
}

GaussianState apply_thermal(const Device& device, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValidationError("epsilon must lie in [0, 1]");
    }
    const std::size_t m = device.modes();
    if (m == 0) {
        throw ValidationError("device needs at least one mode");
    }
    require_squeezing(device.squeezing);
    require_unitary(device.interferometer, m);

    ComplexMatrix input(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ch = std::cosh(device.squeezing[i]);
        const double sh = std::sinh(device.squeezing[i]);
        // Squeezed vacuum: diagonal cosh^2 r, anomalous term sinh r cosh r.
        // Thermal with nbar = sinh^2 r: diagonal nbar + 1 = cosh^2 r, no anomalous term.
        input(i, i) = ch * ch;
        input(i + m, i + m) = ch * ch;
        input(i, i + m) = (1.0 - epsilon) * sh * ch;
        input(i + m, i) = (1.0 - epsilon) * sh * ch;
    }
    const ComplexMatrix s = passive_symplectic(device.interferometer);
    ComplexMatrix sigma = s * input * s.adjoint();
    sigma = (sigma + sigma.adjoint()) * Complex{0.5};
    return GaussianState(std::move(sigma));
}

GaussianState noisy_device_state(const Device& device, const NoiseConfig& noise) {
    noise.validate();
    return apply_loss(apply_thermal(device, noise.epsilon), noise.eta);
}

ThresholdDetection::ThresholdDetection(const GaussianState& state)
    : modes_(state.modes()), inverse_(inverse(state.husimi())), sqrt_det_(0.0) {
    const Complex d = det(state.husimi());
    if (!(d.real() > 0.0)) {
        throw NumericalError("Husimi covariance determinant is not positive");
    }
    sqrt_det_ = std::sqrt(d.real());
}

double ThresholdDetection::probability(const ClickPattern& pattern, std::size_t max_clicks) const {
    if (pattern.modes() != modes_) {
        throw ValidationError("pattern has " + std::to_string(pattern.modes()) + " modes; state has " +
                              std::to_string(modes_));
    }
    if (pattern.clicks() > max_clicks) {
        throw CostGuardError("pattern has " + std::to_string(pattern.clicks()) + " clicks; the limit is " +
                             std::to_string(max_clicks));
    }
    const auto clicked = pattern.clicked_modes();
    const double p = threshold_inclusion_exclusion(inverse_, clicked) / sqrt_det_;
    if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
        throw NumericalError("pattern probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

double pattern_probability(const GaussianState& state, const ClickPattern& pattern) {
    return ThresholdDetection(state).probability(pattern, kMaxTorontonianModes);
}

GaussianState reduce(const GaussianState& state, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw ValidationError("reduce: mode subset is empty");
    }
    validate_subset(keep, state.modes());
    return GaussianState(state.husimi().principal(doubled_indices(keep, state.modes())));
}

double click_probability(const GaussianState& state, std::size_t mode) {
    const std::size_t m = state.modes();
    if (mode >= m) {
        throw ValidationError("mode index out of range");
    }
    const ComplexMatrix& s = state.husimi();
    const double d = (s(mode, mode) * s(mode + m, mode + m) - s(mode, mode + m) * s(mode + m, mode)).real();
    return std::clamp(1.0 - 1.0 / std::sqrt(d), 0.0, 1.0);
}

double expected_clicks(const GaussianState& state) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.modes(); ++i) {
        total += click_probability(state, i);
    }
    return total;
}

double mean_photon_number(const GaussianState& state, std::size_t mode) {
    if (mode >= state.modes()) {
        throw ValidationError("mode index out of range");
    }
    return state.husimi()(mode, mode).real() - 1.0;
}

}  // namespace gbsgraph
