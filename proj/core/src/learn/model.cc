#include "cpath/learn/model.h"

#include <cmath>
#include <stdexcept>

#include "cpath/util/error.h"
#include "json.hpp"

namespace cpath::learn {

std::string_view ToString(RegKind kind) { return kind == RegKind::kL1 ? "l1" : "l2"; }

RegKind ParseRegKind(std::string_view text) {
  if (text == "l1") return RegKind::kL1;
  if (text == "l2") return RegKind::kL2;
  throw std::invalid_argument("unknown regularizer \"" + std::string(text) + "\" (want l1 or l2)");
}

LinearModel::LinearModel(features::SpacePtr space, std::vector<double> weights, double bias,
                         Regularization reg)
    : space_(std::move(space)), weights_(std::move(weights)), bias_(bias), reg_(reg) {
  if (!space_ || space_->size() != weights_.size()) {
    throw std::invalid_argument("model weights do not match the feature space");
  }
}

double LinearModel::Score(const features::FeatureVector& x) const {
  if (!x.SameSpace(*space_)) {
    throw Error(ErrorCode::kSpaceMismatch, "vector and model use different feature spaces");
  }
  double s = bias_;
  for (size_t j = 0; j < weights_.size(); ++j) {
    if (x[j]) s += weights_[j];
  }
  return s;
}

std::string LinearModel::ToJson() const {
  nlohmann::ordered_json doc;
  doc["space_sha256"] = space_->Sha256();
  doc["weights"] = weights_;
  doc["bias"] = bias_;
  doc["reg"] = {{"kind", std::string(ToString(reg_.kind))}, {"C", reg_.C}};
  return doc.dump() + "\n";
}

LinearModel LinearModel::FromJson(std::string_view text, features::SpacePtr space) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("space_sha256") || !doc.contains("weights") ||
      !doc.contains("bias") || !doc["weights"].is_array() || !doc["bias"].is_number()) {
    throw std::invalid_argument("model file needs space_sha256, weights and bias");
  }
  if (doc["space_sha256"] != space->Sha256()) {
    throw Error(ErrorCode::kSpaceMismatch, "model was trained on a different feature space");
  }
  Regularization reg;
  if (doc.contains("reg")) {
    const json& r = doc["reg"];
    reg.kind = ParseRegKind(r.value("kind", std::string("l2")));
    reg.C = r.value("C", 1.0);
  }
  std::vector<double> weights;
  for (const auto& w : doc["weights"]) {
    if (!w.is_number()) throw std::invalid_argument("model weights must be numbers");
    weights.push_back(w.get<double>());
  }
  return LinearModel(std::move(space), std::move(weights), doc["bias"].get<double>(), reg);
}

std::vector<std::string> SelectedFeatures(const LinearModel& model, double threshold) {
  std::vector<std::string> out;
  for (size_t j = 0; j < model.weights().size(); ++j) {
    if (std::abs(model.weights()[j]) > threshold) out.push_back(model.space()->names()[j]);
  }
  return out;
}

}  // namespace cpath::learn
