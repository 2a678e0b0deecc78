// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "logmppi/rng.hpp"

namespace logmppi {

/// Zero-mean Gaussian control perturbations, one variance per channel. A
/// zero-variance channel draws exactly zero.
struct GaussianNoiseSpec {
  Eigen::VectorXd variance;
};

/**
 * Parameters of the normal/log-normal mixture used to perturb controls,
 * one entry per control channel.
 *
 * A mixture draw is z = x * y with independent factors
 * x ~ N(0, sigma2_n) and y = exp(w), w ~ N(mu_ln, sigma2_ln).
 */
struct NlnMixtureParams {
  Eigen::VectorXd sigma2_n;    //!< variance of the normal factor
  Eigen::VectorXd mu_ln;       //!< location of the log-normal exponent
  Eigen::VectorXd sigma2_ln;   //!< squared scale of the log-normal exponent
  Eigen::VectorXd sigma2_nln;  //!< variance of the mixture draw z

  int channels() const { return static_cast<int>(sigma2_n.size()); }
};

/**
 * Derives mixture parameters from the normal-factor variances.
 *
 * With s = sqrt(sigma2_n) per channel, the log-normal exponent is given
 * location mu_ln = exp(s / 2) and squared scale
 * sigma2_ln = exp(s) * (exp(s) - 1), and the resulting mixture variance is
 * sigma2_nln = sigma2_n * exp(2 mu_ln + 2 sigma2_ln).
 *
 * Throws std::invalid_argument unless every variance is positive and finite.
 */
NlnMixtureParams match_nln_params(const Eigen::VectorXd& sigma2_n);

/// One sampled perturbation sequence. samples(k, c) is the draw for horizon
/// step k and control channel c.
struct NoiseSequence {
  Eigen::MatrixXd samples;
};

/**
 * Fills a preallocated (horizon x channels) matrix with Gaussian draws from
 * the given stream. Draw j of the sequence is a pure function of the stream
 * identity and j, so repeated calls are identical and independent of any
 * batching or threading around this call.
 */
void sample_gaussian_into(const GaussianNoiseSpec& spec, CounterRng stream,
                          Eigen::Ref<Eigen::MatrixXd> out);

/// Mixture counterpart of sample_gaussian_into.
void sample_nln_into(const NlnMixtureParams& params, CounterRng stream,
                     Eigen::Ref<Eigen::MatrixXd> out);

/// Samples a (horizon x channels) Gaussian perturbation sequence.
NoiseSequence sample_gaussian(const GaussianNoiseSpec& spec, int horizon,
                              std::uint64_t seed, std::uint64_t stream = 0);

/// Samples a (horizon x channels) normal/log-normal mixture sequence.
NoiseSequence sample_nln(const NlnMixtureParams& params, int horizon,
                         std::uint64_t seed, std::uint64_t stream = 0);

/**
 * Marginal density of one mixture channel at z, evaluated by adaptive
 * Gauss-Kronrod integration over the log-normal exponent with relative
 * tolerance 1e-8. The density is symmetric in z and integrates to one.
 */
double nln_pdf(double z, const NlnMixtureParams& params, int channel = 0);

}  // namespace logmppi
