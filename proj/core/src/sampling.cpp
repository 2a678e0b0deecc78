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

#include "logmppi/sampling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logmppi {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_variances(const Eigen::VectorXd& v, const char* what) {
  if (v.size() == 0) {
    throw std::invalid_argument(std::string(what) + ": no channels");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) +
                                  ": variances must be positive and finite");
    }
  }
}

// Gaussian draws tolerate zero variance (the channel degenerates to the
// point mass at zero), unlike the mixture whose moment matching needs a
// strictly positive scale.
void require_variances_nonneg(const Eigen::VectorXd& v, const char* what) {
  if (v.size() == 0) {
    throw std::invalid_argument(std::string(what) + ": no channels");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0 || !std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) +
                                  ": variances must be non-negative and finite");
    }
  }
}

/**
 * Produces standard-normal pairs (n0, n1) for pair indices [0, count) of a
 * stream. Pair p consumes the uniforms at positions 2p and 2p+1 and maps
 * them through the Box-Muller transform. The radius keeps full double
 * precision; the angle factor is evaluated in float so the trigonometric
 * part vectorizes, which perturbs draws by at most ~1e-7 relative and is
 * symmetric, so it cannot bias odd moments.
 */
void standard_pairs(CounterRng stream, int count, Eigen::ArrayXd& n0,
                    Eigen::ArrayXd& n1) {
  Eigen::ArrayXd u0(count);
  Eigen::ArrayXf angle(count);
  for (int p = 0; p < count; ++p) {
    u0[p] = stream.uniform(2 * static_cast<std::uint64_t>(p));
    angle[p] = static_cast<float>(
        kTwoPi * stream.uniform(2 * static_cast<std::uint64_t>(p) + 1));
  }
  const Eigen::ArrayXd radius = ((-u0).log1p() * -2.0).sqrt();
  n0 = radius * angle.cos().cast<double>();
  n1 = radius * angle.sin().cast<double>();
}

}  // namespace

NlnMixtureParams match_nln_params(const Eigen::VectorXd& sigma2_n) {
  require_variances(sigma2_n, "match_nln_params");
  NlnMixtureParams p;
  p.sigma2_n = sigma2_n;
  const Eigen::ArrayXd s = sigma2_n.array().sqrt();
  p.mu_ln = (0.5 * s).exp().matrix();
  p.sigma2_ln = (s.exp() * (s.exp() - 1.0)).matrix();
  p.sigma2_nln =
      (sigma2_n.array() * (2.0 * p.mu_ln.array() + 2.0 * p.sigma2_ln.array()).exp())
          .matrix();
  return p;
}

void sample_gaussian_into(const GaussianNoiseSpec& spec, CounterRng stream,
                          Eigen::Ref<Eigen::MatrixXd> out) {
  require_variances_nonneg(spec.variance, "sample_gaussian");
  const int horizon = static_cast<int>(out.rows());
  const int channels = static_cast<int>(spec.variance.size());
  if (out.cols() != channels) {
    throw std::invalid_argument("sample_gaussian: output column count");
  }
  if (horizon < 1) {
    throw std::invalid_argument("sample_gaussian: horizon must be positive");
  }
  Eigen::ArrayXd n0;
  Eigen::ArrayXd n1;
  standard_pairs(stream, horizon * channels, n0, n1);
  // Pair index k * channels + c belongs to step k, channel c.
  for (int c = 0; c < channels; ++c) {
    const double sigma = std::sqrt(spec.variance[c]);
    for (int k = 0; k < horizon; ++k) {
      out(k, c) = sigma * n0[k * channels + c];
    }
  }
}

void sample_nln_into(const NlnMixtureParams& params, CounterRng stream,
                     Eigen::Ref<Eigen::MatrixXd> out) {
  require_variances(params.sigma2_n, "sample_nln");
  if (params.mu_ln.size() != params.sigma2_n.size() ||
      params.sigma2_ln.size() != params.sigma2_n.size()) {
    throw std::invalid_argument("sample_nln: inconsistent channel counts");
  }
  const int horizon = static_cast<int>(out.rows());
  const int channels = params.channels();
  if (out.cols() != channels) {
    throw std::invalid_argument("sample_nln: output column count");
  }
  if (horizon < 1) {
    throw std::invalid_argument("sample_nln: horizon must be positive");
  }
  Eigen::ArrayXd n0;
  Eigen::ArrayXd n1;
  standard_pairs(stream, horizon * channels, n0, n1);
  // The two outputs of one Box-Muller pair are independent, so a single pair
  // yields both the normal factor (from n0) and the log-normal exponent
  // (from n1) of one draw.
  Eigen::ArrayXd scratch(horizon);
  for (int c = 0; c < channels; ++c) {
    const double sigma_n = std::sqrt(params.sigma2_n[c]);
    const double mu = params.mu_ln[c];
    const double sigma_ln = std::sqrt(params.sigma2_ln[c]);
    for (int k = 0; k < horizon; ++k) {
      scratch[k] = mu + sigma_ln * n1[k * channels + c];
    }
    scratch = scratch.exp();
    for (int k = 0; k < horizon; ++k) {
      out(k, c) = sigma_n * n0[k * channels + c] * scratch[k];
    }
  }
}

NoiseSequence sample_gaussian(const GaussianNoiseSpec& spec, int horizon,
                              std::uint64_t seed, std::uint64_t stream) {
  NoiseSequence seq;
  seq.samples.resize(horizon, spec.variance.size());
  sample_gaussian_into(spec, CounterRng(seed, stream), seq.samples);
  return seq;
}

NoiseSequence sample_nln(const NlnMixtureParams& params, int horizon,
                         std::uint64_t seed, std::uint64_t stream) {
  NoiseSequence seq;
  seq.samples.resize(horizon, params.channels());
  sample_nln_into(params, CounterRng(seed, stream), seq.samples);
  return seq;
}

double nln_pdf(double z, const NlnMixtureParams& params, int channel) {
  if (channel < 0 || channel >= params.channels()) {
    throw std::invalid_argument("nln_pdf: channel out of range");
  }
  if (!std::isfinite(z)) {
    throw std::invalid_argument("nln_pdf: z must be finite");
  }
  const double sigma2_n = params.sigma2_n[channel];
  const double mu = params.mu_ln[channel];
  const double sigma2_ln = params.sigma2_ln[channel];
  if (!(sigma2_n > 0.0) || !(sigma2_ln > 0.0)) {
    throw std::invalid_argument("nln_pdf: variances must be positive");
  }
  // Conditioned on the log-normal exponent w, the draw is Gaussian with
  // standard deviation sqrt(sigma2_n) * exp(w). Integrating that conditional
  // density against the Gaussian weight of w gives the marginal.
  const double sigma_n = std::sqrt(sigma2_n);
  const double sigma_ln = std::sqrt(sigma2_ln);
  const double inv_norm = 1.0 / (kTwoPi * sigma_ln);
  const auto integrand = [&](double w) {
    const double cond_sigma = sigma_n * std::exp(w);
    const double zn = z / cond_sigma;
    const double wn = (w - mu) / sigma_ln;
    return inv_norm / cond_sigma * std::exp(-0.5 * (zn * zn + wn * wn));
  };
  using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  return quad::integrate(integrand,
                         -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(),
                         15, 1e-8);
}

}  // namespace logmppi
