#include "cpath/learn/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cpath/util/error.h"

namespace cpath::learn {
namespace {

struct Row {
  std::vector<uint32_t> active;
  double y;
};

double Margin(const Row& row, const std::vector<double>& w, double b) {
  double s = b;
  for (uint32_t j : row.active) s += w[j];
  return row.y * s;
}

double Penalty(const std::vector<double>& w, RegKind kind) {
  double r = 0.0;
  for (double v : w) r += kind == RegKind::kL1 ? std::abs(v) : 0.5 * v * v;
  return r;
}

double RowsObjective(const std::vector<Row>& rows, const std::vector<double>& w, double b,
                     const Regularization& reg) {
  double loss = 0.0;
  for (const auto& row : rows) loss += std::max(0.0, 1.0 - Margin(row, w, b));
  const double n = static_cast<double>(rows.size());
  return loss / n + Penalty(w, reg.kind) / (reg.C * n);
}

std::vector<Row> ToRows(const std::vector<LabeledVector>& data) {
  std::vector<Row> rows;
  rows.reserve(data.size());
  for (const auto& item : data) {
    Row row;
    row.y = item.malicious ? 1.0 : -1.0;
    for (size_t j = 0; j < item.x.size(); ++j) {
      if (item.x[j]) row.active.push_back(static_cast<uint32_t>(j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string_view ToString(StepSchedule schedule) {
  return schedule == StepSchedule::kConstant ? "constant" : "inverse_sqrt";
}

StepSchedule ParseStepSchedule(std::string_view text) {
  if (text == "constant") return StepSchedule::kConstant;
  if (text == "inverse_sqrt") return StepSchedule::kInverseSqrt;
  throw std::invalid_argument("unknown step schedule \"" + std::string(text) + "\"");
}

double Objective(const std::vector<LabeledVector>& data, const std::vector<double>& weights,
                 double bias, const Regularization& reg) {
  return RowsObjective(ToRows(data), weights, bias, reg);
}

LinearModel Train(const std::vector<LabeledVector>& data, const TrainOptions& options) {
  if (data.empty()) throw std::invalid_argument("training data is empty");
  if (!(options.reg.C > 0.0)) throw std::invalid_argument("regularization C must be positive");
  if (!(options.step > 0.0)) throw std::invalid_argument("step size must be positive");
  const features::SpacePtr space = data.front().x.space();
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& item : data) {
    if (!item.x.SameSpace(*space)) {
      throw std::invalid_argument("training vectors use different feature spaces");
    }
    (item.malicious ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kDegenerateData, "training data contains a single class");
  }

  const std::vector<Row> rows = ToRows(data);
  const size_t n = rows.size();
  const size_t d = space->size();
  const size_t batch = options.batch_size == 0 ? n : std::min(options.batch_size, n);
  const double alpha = 1.0 / (options.reg.C * static_cast<double>(n));

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> best_w = w;
  double best_b = b;
  double best_obj = RowsObjective(rows, w, b, options.reg);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.rng_seed);
  std::vector<double> grad(d);
  size_t t = 0;

  for (size_t epoch = 0; epoch < options.epochs; ++epoch) {
    if (batch < n) std::shuffle(order.begin(), order.end(), rng);
    for (size_t start = 0; start < n; start += batch) {
      const size_t end = std::min(n, start + batch);
      const double eta = options.schedule == StepSchedule::kConstant
                             ? options.step
                             : options.step / std::sqrt(static_cast<double>(t + 1));
      ++t;
      std::fill(grad.begin(), grad.end(), 0.0);
      double grad_b = 0.0;
      for (size_t k = start; k < end; ++k) {
        const Row& row = rows[order[k]];
        if (Margin(row, w, b) < 1.0) {
          for (uint32_t j : row.active) grad[j] -= row.y;
          grad_b -= row.y;
        }
      }
      const double scale = eta / static_cast<double>(end - start);
      const double shrink = eta * alpha;
      for (size_t j = 0; j < d; ++j) {
        double v = w[j] - scale * grad[j];
        if (options.reg.kind == RegKind::kL1) {
          v = v > shrink ? v - shrink : (v < -shrink ? v + shrink : 0.0);
        } else {
          v /= 1.0 + shrink;
        }
        w[j] = v;
      }
      b -= scale * grad_b;
    }
    const double obj = RowsObjective(rows, w, b, options.reg);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
      best_b = b;
    }
  }
  return LinearModel(space, std::move(best_w), best_b, options.reg);
}

}  // namespace cpath::learn
