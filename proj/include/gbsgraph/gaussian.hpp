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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gbsgraph/click_pattern.hpp"
#include "gbsgraph/matrix.hpp"

namespace gbsgraph {

/// Zero-mean M-mode Gaussian state described by its Husimi covariance matrix
/// sigma_Q in (a_1..a_M, a_1^dag..a_M^dag) ordering; the vacuum is the identity.
///
/// Construction validates physicality: sigma_Q Hermitian within 1e-10, every
/// eigenvalue >= 1/2 and sigma_Q - diag(0, I) positive semidefinite (the
/// uncertainty relation) within 1e-8, and det sigma_Q >= 1. States failing the
/// check are rejected, never projected.
class GaussianState {
   public:
    static GaussianState vacuum(std::size_t modes);
    explicit GaussianState(ComplexMatrix husimi);

    std::size_t modes() const { return husimi_.rows() / 2; }
    const ComplexMatrix& husimi() const { return husimi_; }

   private:
    ComplexMatrix husimi_;
};

/// Blocks of X (I - sigma_Q^{-1}) with X = [[0, I], [I, 0]]. `a` is the
/// symmetric top-left block and `l` the top-right one, which vanishes for pure
/// states. With sigma_Q^{-1} Hermitian, l is Hermitian and the full matrix is
/// [[a, l], [conj(l), conj(a)]].
struct SamplingMatrix {
    ComplexMatrix a;
    ComplexMatrix l;

    ComplexMatrix full() const;
};

/// Squeezed-vacuum inputs followed by a passive interferometer.
struct Device {
    std::vector<double> squeezing;
    ComplexMatrix interferometer;

    std::size_t modes() const { return squeezing.size(); }
};

/// Transmission eta and thermal-mixing level epsilon, both in [0, 1].
struct NoiseConfig {
    double eta = 1.0;
    double epsilon = 0.0;

    void validate() const;
};

/// Pure device state with sampling matrix A = U diag(tanh r) U^T, obtained as
/// sigma_Q = (I - X A_full)^{-1} with A_full = [[A, 0], [0, A^*]].
GaussianState state_from_device(std::span<const double> squeezing, const ComplexMatrix& interferometer);
GaussianState state_from_device(const Device& device);

/// Extracts X (I - sigma_Q^{-1}). The A block is symmetrized when its
/// asymmetry is below 1e-9 and rejected otherwise.
SamplingMatrix sampling_matrix(const GaussianState& state);

/// Per-mode loss channel: sigma -> D sigma D + (I - D^2)/2 on sigma = sigma_Q - I/2
/// with D = diag(sqrt(eta), sqrt(eta)).
GaussianState apply_loss(const GaussianState& state, std::span<const double> eta);
GaussianState apply_loss(const GaussianState& state, double eta);

/// Thermal noise on the device inputs: each input mode's covariance becomes
/// (1 - epsilon) * squeezed(r) + epsilon * thermal(nbar = sinh^2 r) before the
/// interferometer. epsilon = 0 reproduces state_from_device; mean photon
/// number does not depend on epsilon.
GaussianState apply_thermal(const Device& device, double epsilon);

/// Device state with thermal noise on the inputs and uniform loss at the outputs.
GaussianState noisy_device_state(const Device& device, const NoiseConfig& noise);

/// Exact threshold-detection probability Tor(O_S) / sqrt(det sigma_Q), with
/// O = I - sigma_Q^{-1} restricted to the clicked modes. At most 16 clicks.
double pattern_probability(const GaussianState& state, const ClickPattern& pattern);

/// Caches sigma_Q^{-1} and det sigma_Q for repeated pattern probabilities.
class ThresholdDetection {
   public:
    explicit ThresholdDetection(const GaussianState& state);

    std::size_t modes() const { return modes_; }
    /// Same contract as pattern_probability, with `max_clicks` as the cost guard.
    double probability(const ClickPattern& pattern, std::size_t max_clicks = 16) const;

   private:
    std::size_t modes_;
    ComplexMatrix inverse_;
    double sqrt_det_;
};

/// Marginal state on `keep` (in the given order).
GaussianState reduce(const GaussianState& state, std::span<const std::size_t> keep);

/// Probability that mode `mode` clicks, from its single-mode marginal.
double click_probability(const GaussianState& state, std::size_t mode);

/// Sum of single-mode click probabilities.
double expected_clicks(const GaussianState& state);

/// Mean photon number of mode i: sigma_Q(i, i) - 1.
double mean_photon_number(const GaussianState& state, std::size_t mode);

}  // namespace gbsgraph
