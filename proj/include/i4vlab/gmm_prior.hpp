#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "i4vlab/latent.hpp"
#include "i4vlab/random.hpp"
#include "i4vlab/schedule.hpp"

namespace i4vlab {

// Mixture of isotropic Gaussians over F x d latents. Each mode mean is a
// motion trajectory; the dynamics live entirely in the means, which keeps
// the optimal denoiser in closed form.
struct GmmVideoPrior {
  int mode_count = 0;  // K
  int frame_count = 0;
  int frame_dim = 0;
  std::vector<double> weights;            // K, sum to 1
  std::vector<Eigen::MatrixXd> means;     // K matrices of F x d
  double iso_var = 1.0;                   // sigma^2, shared isotropic
  std::vector<Eigen::VectorXd> embeddings;  // per-mode conditioning embedding

  Conditioning conditioning_for(int label) const {
    if (label < 0 || label >= mode_count)
      throw std::invalid_argument("unknown conditioning label " + std::to_string(label));
    return Conditioning{embeddings[static_cast<std::size_t>(label)], label};
  }

  int mode_for(const Conditioning& c) const {
    if (!c.label.has_value())
      throw std::invalid_argument("conditioning carries no label");
    const int label = *c.label;
    if (label < 0 || label >= mode_count)
      throw std::invalid_argument("unknown conditioning label " + std::to_string(label));
    return label;
  }
};

inline void validate_prior(const GmmVideoPrior& p) {
  if (p.mode_count < 1 || static_cast<int>(p.weights.size()) != p.mode_count ||
      static_cast<int>(p.means.size()) != p.mode_count ||
      static_cast<int>(p.embeddings.size()) != p.mode_count)
    throw std::invalid_argument("prior: inconsistent mode arrays");
  if (!(p.iso_var > 0.0)) throw std::invalid_argument("prior: sigma^2 must be > 0");
  double wsum = 0.0;
  for (double w : p.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("prior: weights must be positive");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("prior: weights must sum to 1 within 1e-12");
  for (const auto& m : p.means) {
    if (m.rows() != p.frame_count || m.cols() != p.frame_dim)
      throw std::invalid_argument("prior: mean shape mismatch");
    if (!m.allFinite()) throw std::invalid_argument("prior: means must be finite");
  }
}

enum class PriorFamily { kTranslatingBump, kStaticBump };

// Gaussian bump on a ring of circumference d, so trajectories wrap cleanly.
inline double ring_bump(double coord, double center, double width, double amp, int d) {
  double delta = std::fmod(coord - center, static_cast<double>(d));
  if (delta < 0) delta += d;
  if (delta > d / 2.0) delta -= d;
  return amp * std::exp(-0.5 * (delta / width) * (delta / width));
}

// Built-in prior families. Mode k is a bump whose center translates by
// velocities[k] coordinates per frame (zero for the static family). Starts
// are evenly spaced; seed != 0 jitters them for irregular instances.
inline GmmVideoPrior make_bump_prior(PriorFamily family, int K, int F, int d,
                                     double sigma2,
                                     std::vector<double> velocities = {},
                                     int embed_dim = 8,
                                     std::uint64_t seed = 0) {
  if (K < 1 || F < 1 || d < 1)
    throw std::invalid_argument("make_bump_prior: K, F, d must be >= 1");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("make_bump_prior: sigma2 must be > 0");
  if (embed_dim < 1)
    throw std::invalid_argument("make_bump_prior: embed_dim must be >= 1");
  if (velocities.empty()) {
    velocities.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
      velocities[static_cast<std::size_t>(k)] =
          (k % 2 == 0 ? 1.0 : -1.0) * (1.0 + k / 2);
  }
  if (static_cast<int>(velocities.size()) != K)
    throw std::invalid_argument("make_bump_prior: need one velocity per mode");
  if (family == PriorFamily::kStaticBump)
    std::fill(velocities.begin(), velocities.end(), 0.0);

  GmmVideoPrior p;
  p.mode_count = K;
  p.frame_count = F;
  p.frame_dim = d;
  p.iso_var = sigma2;
  p.weights.assign(static_cast<std::size_t>(K), 1.0 / K);

  RandomStream jitter(seed, {9001});
  const double width = std::max(1.0, d / 8.0);
  const double amp = 2.0;
  p.means.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    double start = static_cast<double>(d) * k / K;
    if (seed != 0) start += jitter.uniform() * d / (2.0 * K);
    Eigen::MatrixXd m(F, d);
    for (int f = 0; f < F; ++f) {
      const double center = start + f * velocities[static_cast<std::size_t>(k)];
      for (int j = 0; j < d; ++j) m(f, j) = ring_bump(j, center, width, amp, d);
    }
    p.means.push_back(std::move(m));
  }

  p.embeddings.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(embed_dim);
    if (K <= embed_dim) {
      e(k) = 1.0;
    } else {
      RandomStream es(seed, {9002, static_cast<std::uint64_t>(k)});
      e = es.normal_vector(embed_dim);
      e /= e.norm();
    }
    p.embeddings.push_back(std::move(e));
  }
  validate_prior(p);
  return p;
}

// Frame-0 marginal: the image prior underlying the video prior. Weights,
// covariance and embeddings are inherited; means are the first frames.
using ImageMarginalPrior = GmmVideoPrior;

inline ImageMarginalPrior image_marginal(const GmmVideoPrior& parent) {
  GmmVideoPrior p = parent;
  p.frame_count = 1;
  for (auto& m : p.means) m = m.row(0).eval();
  validate_prior(p);
  return p;
}

// Draws mode k (forced to c's mode when conditioned, else by weights) and
// returns means[k] + sigma * xi.
inline VideoLatent sample_video(const GmmVideoPrior& prior,
                                const std::optional<Conditioning>& c,
                                RandomStream& stream) {
  int k;
  if (c.has_value()) {
    k = prior.mode_for(*c);
  } else {
    const double u = stream.uniform();
    double acc = 0.0;
    k = prior.mode_count - 1;
    for (int i = 0; i < prior.mode_count; ++i) {
      acc += prior.weights[static_cast<std::size_t>(i)];
      if (u < acc) {
        k = i;
        break;
      }
    }
  }
  const double sigma = std::sqrt(prior.iso_var);
  return VideoLatent(prior.means[static_cast<std::size_t>(k)] +
                     sigma * stream.normal_matrix(prior.frame_count, prior.frame_dim));
}

// log N(x; mu, v I) over all F*d coordinates.
inline double iso_gauss_logpdf(const Eigen::MatrixXd& x, const Eigen::MatrixXd& mu,
                               double var) {
  const double n = static_cast<double>(x.size());
  constexpr double kLog2Pi = 1.8378770664093454835606594728112;
  return -0.5 * n * (kLog2Pi + std::log(var)) -
         0.5 * (x - mu).squaredNorm() / var;
}

// Exact mixture log-density via log-sum-exp over modes.
inline double log_likelihood(const GmmVideoPrior& prior, const VideoLatent& v) {
  if (v.frame_count() != prior.frame_count || v.frame_dim() != prior.frame_dim)
    throw std::invalid_argument("log_likelihood: shape mismatch");
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(static_cast<std::size_t>(prior.mode_count));
  for (int k = 0; k < prior.mode_count; ++k) {
    terms[static_cast<std::size_t>(k)] =
        std::log(prior.weights[static_cast<std::size_t>(k)]) +
        iso_gauss_logpdf(v.mat(), prior.means[static_cast<std::size_t>(k)], prior.iso_var);
    max_term = std::max(max_term, terms[static_cast<std::size_t>(k)]);
  }
  double s = 0.0;
  for (double t : terms) s += std::exp(t - max_term);
  return max_term + std::log(s);
}

// The minimizer of the denoising objective: eps*(z_t, t) = E[eps | z_t],
// equal to -sqrt(1 - ab_t) * grad log p_t(z_t) where p_t is the diffused
// mixture sum_k w_k N(sqrt(ab_t) mu_k, (ab_t sigma^2 + 1 - ab_t) I).
// Conditioning restricts the mixture to the labelled mode.
inline VideoLatent optimal_predict_noise(const GmmVideoPrior& prior,
                                         const VideoLatent& z_t,
                                         const std::optional<Conditioning>& c,
                                         int t, const NoiseSchedule& s) {
  if (z_t.frame_count() != prior.frame_count || z_t.frame_dim() != prior.frame_dim)
    throw std::invalid_argument("optimal_predict_noise: shape mismatch");
  const double ab = s.alpha_bar(t);
  const double var_t = ab * prior.iso_var + (1.0 - ab);
  const double root_ab = std::sqrt(ab);
  const double root_1mab = std::sqrt(1.0 - ab);

  Eigen::MatrixXd posterior_mean;
  if (c.has_value()) {
    posterior_mean = prior.means[static_cast<std::size_t>(prior.mode_for(*c))];
  } else {
    // Responsibilities of the diffused mixture, log-sum-exp normalized.
    std::vector<double> logits(static_cast<std::size_t>(prior.mode_count));
    double max_logit = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < prior.mode_count; ++k) {
      const double sq =
          (z_t.mat() - root_ab * prior.means[static_cast<std::size_t>(k)]).squaredNorm();
      logits[static_cast<std::size_t>(k)] =
          std::log(prior.weights[static_cast<std::size_t>(k)]) - 0.5 * sq / var_t;
      max_logit = std::max(max_logit, logits[static_cast<std::size_t>(k)]);
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l - max_logit);
    posterior_mean = Eigen::MatrixXd::Zero(prior.frame_count, prior.frame_dim);
    for (int k = 0; k < prior.mode_count; ++k) {
      const double r = std::exp(logits[static_cast<std::size_t>(k)] - max_logit) / z;
      posterior_mean += r * prior.means[static_cast<std::size_t>(k)];
    }
  }
  return VideoLatent(root_1mab / var_t * (z_t.mat() - root_ab * posterior_mean));
}

}  // namespace i4vlab
