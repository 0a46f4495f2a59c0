#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace i4vlab {

// Splittable deterministic random stream. A stream is identified by
// (master_seed, path); an identical identity yields an identical scalar
// sequence and distinct paths yield independent sequences. Scalars come
// from mt19937_64 plus Box-Muller, both fully specified, so sequences are
// bit-reproducible across standard libraries and platforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed,
                        std::vector<std::uint64_t> path = {})
      : master_seed_(master_seed), path_(std::move(path)) {
    reseed();
  }

  // Derives the substream (master_seed, path + [id]). Pure: the parent's
  // cursor is untouched and the child starts from its own fixed origin.
  RandomStream child(std::uint64_t id) const {
    std::vector<std::uint64_t> p = path_;
    p.push_back(id);
    return RandomStream(master_seed_, std::move(p));
  }

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925287;
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Unbiased integer on [0, n) via rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  Eigen::MatrixXd normal_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

 private:
  void reseed() {
    std::vector<std::uint32_t> words;
    words.reserve(3 + 2 * path_.size());
    words.push_back(0x4e565344u);  // stream format tag, bumps on layout change
    words.push_back(static_cast<std::uint32_t>(master_seed_));
    words.push_back(static_cast<std::uint32_t>(master_seed_ >> 32));
    for (std::uint64_t p : path_) {
      words.push_back(static_cast<std::uint32_t>(p));
      words.push_back(static_cast<std::uint32_t>(p >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
    have_spare_ = false;
    spare_ = 0.0;
  }

  std::uint64_t master_seed_;
  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Single draw point for Gaussian noise consumers; lets tests count or
// replay draws.
struct NoiseSource {
  virtual ~NoiseSource() = default;
  virtual Eigen::MatrixXd draw(int rows, int cols) = 0;
};

struct StreamNoiseSource final : NoiseSource {
  explicit StreamNoiseSource(RandomStream& s) : stream(&s) {}
  Eigen::MatrixXd draw(int rows, int cols) override {
    return stream->normal_matrix(rows, cols);
  }
  RandomStream* stream;
};

}  // namespace i4vlab
