#include "xot/net.hpp"

#include "xot/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

namespace xot {

namespace {

struct Shapes {
  std::array<std::pair<int, int>, 8> dims;
};

Shapes shapes_for(int input_dim, int action_dim) {
  return {{{{kHidden1, input_dim},
            {kHidden1, 1},
            {kHidden2, kHidden1},
            {kHidden2, 1},
            {action_dim, kHidden2},
            {action_dim, 1},
            {1, kHidden2},
            {1, 1}}}};
}

NetParams shaped_zeros(Task task, int input_dim, int action_dim) {
  NetParams p;
  p.task = task;
  p.input_dim = input_dim;
  p.action_dim = action_dim;
  const auto shapes = shapes_for(input_dim, action_dim);
  auto ts = p.tensors();
  for (std::size_t i = 0; i < ts.size(); ++i)
    *ts[i] = Eigen::MatrixXd::Zero(shapes.dims[i].first, shapes.dims[i].second);
  return p;
}

struct Batch {
  Eigen::MatrixXd x;      // input_dim x B
  Eigen::MatrixXd mask;   // A x B, 1 for legal
  Eigen::MatrixXd eps;    // A x B
  Eigen::RowVectorXd v;   // 1 x B
};

Batch stack(const NetParams& p, std::span<const TrainSample> batch) {
  if (batch.empty())
    throw ContractError("empty training batch");
  const auto n = static_cast<Eigen::Index>(batch.size());
  Batch b{Eigen::MatrixXd(p.input_dim, n), Eigen::MatrixXd::Zero(p.action_dim, n),
          Eigen::MatrixXd(p.action_dim, n), Eigen::RowVectorXd(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& s = batch[static_cast<std::size_t>(j)];
    if (s.features.size() != p.input_dim || s.target_policy.size() != p.action_dim ||
        static_cast<int>(s.mask.size()) != p.action_dim)
      throw ShapeError("training sample shape does not match network");
    bool any = false;
    for (int a = 0; a < p.action_dim; ++a)
      if (s.mask[static_cast<std::size_t>(a)]) {
        b.mask(a, j) = 1.0;
        any = true;
      } else if (s.target_policy[a] != 0.0) {
        throw ContractError("target policy puts mass on a masked action");
      }
    if (!any)
      throw ContractError("training sample has an all-masked policy");
    b.x.col(j) = s.features;
    b.eps.col(j) = s.target_policy;
    b.v[j] = s.target_value;
  }
  return b;
}

struct Activations {
  Eigen::MatrixXd h1, h2, policy;
  Eigen::RowVectorXd value;
};

Activations run(const NetParams& p, const Eigen::MatrixXd& x, const Eigen::MatrixXd& mask) {
  Activations a;
  a.h1 = ((p.w1 * x).colwise() + p.b1.col(0)).array().tanh().matrix();
  a.h2 = ((p.w2 * a.h1).colwise() + p.b2.col(0)).array().tanh().matrix();
  const Eigen::MatrixXd logits = (p.wp * a.h2).colwise() + p.bp.col(0);
  a.policy = Eigen::MatrixXd::Zero(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < logits.rows(); ++i)
      if (mask(i, j) != 0.0)
        hi = std::max(hi, logits(i, j));
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i)
      if (mask(i, j) != 0.0) {
        a.policy(i, j) = std::exp(logits(i, j) - hi);
        total += a.policy(i, j);
      }
    a.policy.col(j) /= total;
  }
  a.value = ((p.wv * a.h2).array() + p.bv(0, 0)).tanh().matrix();
  return a;
}

double batch_loss(const Activations& a, const Batch& b) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < b.x.cols(); ++j) {
    const double dv = b.v[j] - a.value[j];
    total += dv * dv;
    for (Eigen::Index i = 0; i < b.eps.rows(); ++i)
      if (b.eps(i, j) != 0.0)
        total -= b.eps(i, j) * std::log(a.policy(i, j));
  }
  return total / static_cast<double>(b.x.cols());
}

bool all_finite(const NetParams& p) {
  for (const auto* t : p.tensors())
    if (!t->allFinite())
      return false;
  return true;
}

} // namespace

NetParams NetParams::zeros(Task task) {
  return shaped_zeros(task, feature_width(task), action_space_size(task));
}

NetParams NetParams::init(Task task, std::uint64_t seed) {
  NetParams p = zeros(task);
  std::mt19937_64 rng(seed);
  auto fill = [&](Eigen::MatrixXd& w) {
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(w.cols())));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        w(r, c) = dist(rng);
  };
  fill(p.w1);
  fill(p.w2);
  fill(p.wp);
  fill(p.wv);
  // Start both heads close to uniform / zero so early searches lean on the prior evenly.
  p.wp *= 0.1;
  p.wv *= 0.1;
  return p;
}

std::size_t NetParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto* t : tensors())
    n += static_cast<std::size_t>(t->size());
  return n;
}

std::array<Eigen::MatrixXd*, 8> NetParams::tensors() {
  return {&w1, &b1, &w2, &b2, &wp, &bp, &wv, &bv};
}

std::array<const Eigen::MatrixXd*, 8> NetParams::tensors() const {
  return {&w1, &b1, &w2, &b2, &wp, &bp, &wv, &bv};
}

const std::array<std::string_view, 8>& NetParams::tensor_names() {
  static const std::array<std::string_view, 8> names{"w1", "b1", "w2", "b2",
                                                     "wp", "bp", "wv", "bv"};
  return names;
}

bool operator==(const NetParams& a, const NetParams& b) {
  if (a.task != b.task || a.input_dim != b.input_dim || a.action_dim != b.action_dim)
    return false;
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i]->rows() != tb[i]->rows() || ta[i]->cols() != tb[i]->cols())
      return false;
    if (*ta[i] != *tb[i])
      return false;
  }
  return true;
}

Prediction forward(const NetParams& params, const Eigen::VectorXd& features,
                   std::span<const std::uint8_t> mask) {
  if (features.size() != params.input_dim)
    throw ShapeError("feature width " + std::to_string(features.size()) + " != " +
                     std::to_string(params.input_dim));
  if (static_cast<int>(mask.size()) != params.action_dim)
    throw ShapeError("mask width " + std::to_string(mask.size()) + " != " +
                     std::to_string(params.action_dim));
  Eigen::MatrixXd m(params.action_dim, 1);
  bool any = false;
  for (int a = 0; a < params.action_dim; ++a) {
    m(a, 0) = mask[static_cast<std::size_t>(a)] ? 1.0 : 0.0;
    any = any || mask[static_cast<std::size_t>(a)];
  }
  if (!any)
    throw ContractError("forward called with an empty action mask");
  const auto act = run(params, features, m);
  return {act.policy.col(0), act.value[0]};
}

double loss(const NetParams& params, std::span<const TrainSample> batch) {
  const auto b = stack(params, batch);
  return batch_loss(run(params, b.x, b.mask), b);
}

NetParams gradients(const NetParams& params, std::span<const TrainSample> batch) {
  const auto b = stack(params, batch);
  const auto a = run(params, b.x, b.mask);
  const double inv_n = 1.0 / static_cast<double>(b.x.cols());

  // Softmax + cross-entropy: d/dlogits = P - eps on legal entries (eps sums to 1).
  const Eigen::MatrixXd d_logits = ((a.policy - b.eps).array() * b.mask.array() * inv_n).matrix();
  const Eigen::RowVectorXd d_zv =
      (2.0 * (a.value - b.v).array() * (1.0 - a.value.array().square()) * inv_n).matrix();

  NetParams g = shaped_zeros(params.task, params.input_dim, params.action_dim);
  g.wp = d_logits * a.h2.transpose();
  g.bp = d_logits.rowwise().sum();
  g.wv = d_zv * a.h2.transpose();
  g.bv(0, 0) = d_zv.sum();

  const Eigen::MatrixXd d_h2 = params.wp.transpose() * d_logits + params.wv.transpose() * d_zv;
  const Eigen::MatrixXd d_z2 = (d_h2.array() * (1.0 - a.h2.array().square())).matrix();
  g.w2 = d_z2 * a.h1.transpose();
  g.b2 = d_z2.rowwise().sum();

  const Eigen::MatrixXd d_h1 = params.w2.transpose() * d_z2;
  const Eigen::MatrixXd d_z1 = (d_h1.array() * (1.0 - a.h1.array().square())).matrix();
  g.w1 = d_z1 * b.x.transpose();
  g.b1 = d_z1.rowwise().sum();
  return g;
}

Sgd::Sgd(double learning_rate, double momentum) : lr_(learning_rate), momentum_(momentum) {
  if (learning_rate < 0.0 || !std::isfinite(learning_rate))
    throw ContractError("learning rate must be finite and non-negative");
  if (momentum < 0.0 || momentum >= 1.0)
    throw ContractError("momentum must lie in [0, 1)");
}

double Sgd::step(NetParams& params, std::span<const TrainSample> batch) {
  const double value = loss(params, batch);
  if (!std::isfinite(value))
    throw DivergenceError("non-finite loss");
  const NetParams g = gradients(params, batch);
  if (!all_finite(g))
    throw DivergenceError("non-finite gradient");
  if (lr_ == 0.0)
    return value;

  NetParams next = params;
  auto pt = next.tensors();
  const auto gt = g.tensors();
  if (momentum_ > 0.0) {
    if (!has_velocity_) {
      velocity_ = shaped_zeros(params.task, params.input_dim, params.action_dim);
      has_velocity_ = true;
    }
    auto vt = velocity_.tensors();
    for (std::size_t i = 0; i < pt.size(); ++i) {
      *vt[i] = momentum_ * *vt[i] + *gt[i];
      *pt[i] -= lr_ * *vt[i];
    }
  } else {
    for (std::size_t i = 0; i < pt.size(); ++i)
      *pt[i] -= lr_ * *gt[i];
  }
  if (!all_finite(next))
    throw DivergenceError("update produced non-finite parameters");
  params = std::move(next);
  return value;
}

void save_checkpoint(const NetParams& params, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format_version"] = kCheckpointVersion;
  j["task"] = to_string(params.task);
  j["input_dim"] = params.input_dim;
  j["A_max"] = params.action_dim;
  j["layer_dims"] = {params.input_dim, kHidden1, kHidden2};
  auto& weights = j["weights"];
  const auto names = NetParams::tensor_names();
  const auto ts = params.tensors();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = *ts[i];
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(t.size()));
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index c = 0; c < t.cols(); ++c)
        flat.push_back(t(r, c));
    weights[std::string(names[i])] = {{"rows", t.rows()}, {"cols", t.cols()}, {"data", flat}};
  }
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write checkpoint " + path.string());
  out << j.dump() << '\n';
}

NetParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "checkpoint " + path.string() + ": " + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointVersion)
      throw UnsupportedVersionError("checkpoint format_version " + std::to_string(version) +
                                    " is not supported (expected " +
                                    std::to_string(kCheckpointVersion) + ")");
    const Task task = parse_task(j.at("task").get<std::string>());
    const int input_dim = j.at("input_dim").get<int>();
    const int action_dim = j.at("A_max").get<int>();
    if (input_dim != feature_width(task) || action_dim != action_space_size(task))
      throw ShapeError("checkpoint dimensions do not match task " + std::string(to_string(task)));
    NetParams p = shaped_zeros(task, input_dim, action_dim);
    const auto names = NetParams::tensor_names();
    auto ts = p.tensors();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& w = j.at("weights").at(std::string(names[i]));
      auto& t = *ts[i];
      if (w.at("rows").get<Eigen::Index>() != t.rows() ||
          w.at("cols").get<Eigen::Index>() != t.cols())
        throw ShapeError("checkpoint tensor " + std::string(names[i]) + " has wrong shape");
      const auto data = w.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != t.size())
        throw ShapeError("checkpoint tensor " + std::string(names[i]) + " has wrong size");
      std::size_t k = 0;
      for (Eigen::Index r = 0; r < t.rows(); ++r)
        for (Eigen::Index c = 0; c < t.cols(); ++c)
          t(r, c) = data[k++];
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "checkpoint " + path.string() + ": " + e.what());
  }
}

NetParams load_checkpoint(const std::filesystem::path& path, Task expected) {
  NetParams p = load_checkpoint(path);
  if (p.task != expected)
    throw TaskMismatchError("checkpoint is for task " + std::string(to_string(p.task)) +
                            ", expected " + std::string(to_string(expected)));
  return p;
}

} // namespace xot
