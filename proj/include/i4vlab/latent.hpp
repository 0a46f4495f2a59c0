#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "i4vlab/random.hpp"

namespace i4vlab {

// F x d latent: F frames as rows, d coordinates per frame. An image latent
// is exactly the F = 1 case. Entries are finite by construction.
class VideoLatent {
 public:
  explicit VideoLatent(Eigen::MatrixXd frames) : frames_(std::move(frames)) {
    if (frames_.rows() < 1 || frames_.cols() < 1)
      throw std::invalid_argument("VideoLatent: requires F >= 1 and d >= 1");
    if (!frames_.allFinite())
      throw std::invalid_argument("VideoLatent: entries must be finite");
  }

  static VideoLatent zeros(int frame_count, int frame_dim) {
    return VideoLatent(Eigen::MatrixXd::Zero(frame_count, frame_dim));
  }

  int frame_count() const { return static_cast<int>(frames_.rows()); }
  int frame_dim() const { return static_cast<int>(frames_.cols()); }

  const Eigen::MatrixXd& mat() const { return frames_; }
  Eigen::VectorXd frame(int i) const { return frames_.row(i).transpose(); }

  bool same_shape(const VideoLatent& other) const {
    return frames_.rows() == other.frames_.rows() &&
           frames_.cols() == other.frames_.cols();
  }

  bool operator==(const VideoLatent& other) const {
    return frames_.rows() == other.frames_.rows() &&
           frames_.cols() == other.frames_.cols() && frames_ == other.frames_;
  }

 private:
  Eigen::MatrixXd frames_;
};

inline void require_same_shape(const VideoLatent& a, const VideoLatent& b,
                               const std::string& what) {
  if (!a.same_shape(b))
    throw std::invalid_argument(what + ": shape mismatch (" +
                                std::to_string(a.frame_count()) + "x" +
                                std::to_string(a.frame_dim()) + " vs " +
                                std::to_string(b.frame_count()) + "x" +
                                std::to_string(b.frame_dim()) + ")");
}

// Conditioning embedding; stands in for an encoded prompt. When label is
// set, the embedding is the prior's registered embedding for that label.
struct Conditioning {
  Eigen::VectorXd embedding;
  std::optional<int> label;
};

// Copies the single frame of x into F identical frames.
inline VideoLatent replicate_image(const VideoLatent& x, int frame_count) {
  if (x.frame_count() != 1)
    throw std::invalid_argument("replicate_image: input must have one frame");
  if (frame_count < 1)
    throw std::invalid_argument("replicate_image: F must be >= 1");
  return VideoLatent(x.mat().row(0).replicate(frame_count, 1));
}

inline VideoLatent sample_standard_noise(RandomStream& stream, int frame_count,
                                         int frame_dim) {
  if (frame_count < 1 || frame_dim < 1)
    throw std::invalid_argument("sample_standard_noise: F, d must be >= 1");
  return VideoLatent(stream.normal_matrix(frame_count, frame_dim));
}

}  // namespace i4vlab
