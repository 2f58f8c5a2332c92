#pragma once

#include "xot/task.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace xot {

inline constexpr int kHidden1 = 128;
inline constexpr int kHidden2 = 256;

/// f_theta: tanh trunk (input -> 128 -> 256), masked-softmax policy head and
/// tanh value head. Every tensor is stored as a matrix; biases are column vectors.
struct NetParams {
  Task task = Task::game24;
  int input_dim = 0;
  int action_dim = 0;
  Eigen::MatrixXd w1, b1, w2, b2, wp, bp, wv, bv;

  /// He-scaled normal weights, zero biases.
  static NetParams init(Task task, std::uint64_t seed);
  static NetParams zeros(Task task);

  std::size_t parameter_count() const;
  /// Tensors in checkpoint order, paired with their names.
  std::array<Eigen::MatrixXd*, 8> tensors();
  std::array<const Eigen::MatrixXd*, 8> tensors() const;
  static const std::array<std::string_view, 8>& tensor_names();

  friend bool operator==(const NetParams& a, const NetParams& b);
};

struct Prediction {
  Eigen::VectorXd policy; // zero on masked entries
  double value = 0.0;
};

struct TrainSample {
  Eigen::VectorXd features;
  std::vector<std::uint8_t> mask;
  Eigen::VectorXd target_policy;
  double target_value = 0.0;
};

/// Throws ShapeError on dimension mismatch, ContractError when the mask is empty.
Prediction forward(const NetParams& params, const Eigen::VectorXd& features,
                   std::span<const std::uint8_t> mask);

/// Mean over the batch of (v - v_theta)^2 - sum_a eps_a log P_a.
double loss(const NetParams& params, std::span<const TrainSample> batch);

/// Analytic gradient of `loss`, shaped like the parameters.
NetParams gradients(const NetParams& params, std::span<const TrainSample> batch);

/// Plain SGD with optional heavy-ball momentum.
class Sgd {
public:
  explicit Sgd(double learning_rate, double momentum = 0.0);

  /// One update; returns the loss before the update. A non-finite loss or
  /// gradient throws DivergenceError and leaves params untouched.
  double step(NetParams& params, std::span<const TrainSample> batch);

  double learning_rate() const { return lr_; }
  double momentum() const { return momentum_; }

private:
  double lr_;
  double momentum_;
  NetParams velocity_;
  bool has_velocity_ = false;
};

inline constexpr int kCheckpointVersion = 1;

void save_checkpoint(const NetParams& params, const std::filesystem::path& path);
/// Throws UnsupportedVersionError, ParseError, or TaskMismatchError when
/// `expected` is given and differs from the stored task.
NetParams load_checkpoint(const std::filesystem::path& path);
NetParams load_checkpoint(const std::filesystem::path& path, Task expected);

} // namespace xot
