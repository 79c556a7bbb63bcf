#include "stancekit/shallow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace stancekit::shallow {

Stance polarity_baseline(const corpus::Utterance& u, const lexicon::Lexicon& lex) {
  int pos = 0, neg = 0;
  for (const auto& w : u.lowercase_tokens()) {
    const int p = lex.word_polarity(w);
    pos += p > 0;
    neg += p < 0;
  }
  if (pos > neg) return Stance::Agree;
  if (neg > pos) return Stance::Disagree;
  return Stance::Neutral;
}

bool is_second_person(std::string_view w) {
  return w == "you" || w == "your" || w == "yours" || w == "yourself" || w == "yourselves";
}

DistanceStats distance_features(const corpus::Utterance& u, const lexicon::Lexicon& lex) {
  const auto words = u.lowercase_tokens();
  const double sentinel = static_cast<double>(words.size());
  std::vector<std::size_t> pronouns, sentiment;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (is_second_person(words[i]))
      pronouns.push_back(i);
    else if (lex.word_polarity(words[i]) != 0)
      sentiment.push_back(i);
  }
  if (pronouns.empty() || sentiment.empty()) return {sentinel, sentinel, sentinel};
  DistanceStats d{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (auto s : sentiment) {
    std::size_t best = words.size();
    for (auto p : pronouns) best = std::min(best, s > p ? s - p : p - s);
    const auto x = static_cast<double>(best);
    d.min = std::min(d.min, x);
    d.max = std::max(d.max, x);
    d.mean += x;
  }
  d.mean /= static_cast<double>(sentiment.size());
  return d;
}

features::FeatureVector distance_vector(const DistanceStats& d) {
  return {{std::string(kDistMax), d.max}, {std::string(kDistMean), d.mean}, {std::string(kDistMin), d.min}};
}

LinearModel::LinearModel(std::vector<std::string> classes, std::vector<std::string> feature_names)
    : classes_(std::move(classes)), names_(std::move(feature_names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::uint32_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
  params_.assign(classes_.size() * (names_.size() + 1), 0.0);
}

std::optional<std::uint32_t> LinearModel::feature_id(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LinearModel::class_index(std::string_view name) const {
  for (std::size_t k = 0; k < classes_.size(); ++k)
    if (classes_[k] == name) return k;
  return std::nullopt;
}

nlohmann::json LogisticConfig::to_json() const {
  return {{"l2", l2}, {"epochs", epochs}, {"seed", seed}};
}

LogisticConfig LogisticConfig::from_json(const nlohmann::json& j) {
  LogisticConfig c;
  c.l2 = j.value("l2", c.l2);
  c.epochs = j.value("epochs", c.epochs);
  c.seed = j.value("seed", c.seed);
  return c;
}

SparseRow compile_row(const LinearModel& m, const features::FeatureVector& x) {
  SparseRow row;
  for (const auto& [name, v] : x)
    if (v != 0.0)
      if (auto id = m.feature_id(name)) row.emplace_back(*id, v);
  return row;
}

namespace {

std::vector<double> softmax_scores(const LinearModel& m, const SparseRow& row) {
  std::vector<double> z(m.num_classes());
  for (std::size_t k = 0; k < z.size(); ++k) {
    double s = m.bias(k);
    for (const auto& [f, v] : row) s += m.weight(k, f) * v;
    z[k] = s;
  }
  const double hi = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (auto& x : z) {
    x = std::exp(x - hi);
    total += x;
  }
  for (auto& x : z) x /= total;
  return z;
}

}  // namespace

double logistic_nll_and_gradient(const LinearModel& m, std::span<const SparseRow> rows,
                                 std::span<const std::size_t> labels, double l2,
                                 std::vector<double>& grad) {
  if (rows.size() != labels.size()) throw std::invalid_argument("row/label count mismatch");
  if (rows.empty()) throw std::invalid_argument("empty training set");
  const std::size_t k_count = m.num_classes();
  const std::size_t f_count = m.num_features();
  grad.assign(m.params().size(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto p = softmax_scores(m, rows[i]);
    loss -= std::log(std::max(p[labels[i]], std::numeric_limits<double>::min()));
    for (std::size_t k = 0; k < k_count; ++k) {
      const double d = p[k] - (k == labels[i] ? 1.0 : 0.0);
      grad[k_count * f_count + k] += d;
      for (const auto& [f, v] : rows[i]) grad[k * f_count + f] += d * v;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (auto& g : grad) g *= inv_n;
  loss *= inv_n;
  const auto w = m.params();
  for (std::size_t j = 0; j < k_count * f_count; ++j) {
    grad[j] += l2 * w[j];
    loss += 0.5 * l2 * w[j] * w[j];
  }
  return loss;
}

LogisticResult logistic_train(std::span<const features::FeatureVector> xs,
                              std::span<const std::string> labels, const LogisticConfig& cfg,
                              std::vector<std::string> classes) {
  if (xs.size() != labels.size()) throw std::invalid_argument("vector/label count mismatch");
  if (cfg.l2 < 0.0) throw std::invalid_argument("l2 must be non-negative");
  std::set<std::string> present(labels.begin(), labels.end());
  if (present.size() < 2)
    throw std::invalid_argument("logistic regression needs at least two classes in the training data");
  if (classes.empty()) classes.assign(present.begin(), present.end());

  std::vector<std::string> names;
  for (const auto& x : xs)
    for (const auto& [name, v] : x)
      if (v != 0.0) names.push_back(name);
  LogisticResult result{LinearModel(std::move(classes), std::move(names)), {}};
  LinearModel& m = result.model;

  std::vector<SparseRow> rows;
  std::vector<std::size_t> y;
  double max_sq = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rows.push_back(compile_row(m, xs[i]));
    auto k = m.class_index(labels[i]);
    if (!k) throw std::invalid_argument("label '" + labels[i] + "' is not in the class list");
    y.push_back(*k);
    double sq = 1.0;
    for (const auto& [f, v] : rows.back()) sq += v * v;
    max_sq = std::max(max_sq, sq);
  }
  // Softmax NLL curvature is bounded by half the squared row norm (with the
  // bias input), so 1/L is a descent step for the mean objective.
  const double step = 1.0 / (0.5 * max_sq + cfg.l2);
  std::vector<double> grad;
  auto w = m.params();
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    logistic_nll_and_gradient(m, rows, y, cfg.l2, grad);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= step * grad[j];
    result.epoch_loss.push_back(logistic_nll_and_gradient(m, rows, y, cfg.l2, grad));
  }
  m.config["training"] = cfg.to_json();
  return result;
}

ClassPrediction logistic_predict(const LinearModel& m, const SparseRow& row) {
  ClassPrediction p;
  p.probabilities = softmax_scores(m, row);
  for (std::size_t k = 1; k < p.probabilities.size(); ++k)
    if (p.probabilities[k] > p.probabilities[p.index]) p.index = k;
  p.label = m.classes()[p.index];
  return p;
}

ClassPrediction logistic_predict(const LinearModel& m, const features::FeatureVector& x) {
  return logistic_predict(m, compile_row(m, x));
}

nlohmann::json linear_model_to_json(const LinearModel& m) {
  nlohmann::json weights = nlohmann::json::object();
  for (std::uint32_t f = 0; f < m.num_features(); ++f) {
    std::vector<double> w;
    for (std::size_t k = 0; k < m.num_classes(); ++k) w.push_back(m.weight(k, f));
    weights[m.feature_names()[f]] = w;
  }
  std::vector<double> bias;
  for (std::size_t k = 0; k < m.num_classes(); ++k) bias.push_back(m.bias(k));
  return {{"format_version", kLogisticFormatVersion},
          {"model_kind", "logistic"},
          {"classes", m.classes()},
          {"weights", weights},
          {"bias", bias},
          {"config", m.config}};
}

LinearModel linear_model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != kLogisticFormatVersion)
      throw std::runtime_error("unsupported logistic model format_version");
    if (j.at("model_kind").get<std::string>() != "logistic")
      throw std::runtime_error("model file is not a logistic model");
    const auto classes = j.at("classes").get<std::vector<std::string>>();
    const auto& weights = j.at("weights");
    std::vector<std::string> names;
    for (auto it = weights.begin(); it != weights.end(); ++it) names.push_back(it.key());
    LinearModel m(classes, names);
    for (std::uint32_t f = 0; f < m.num_features(); ++f) {
      const auto w = weights.at(m.feature_names()[f]).get<std::vector<double>>();
      if (w.size() != classes.size()) throw std::runtime_error("weight row has wrong length");
      for (std::size_t k = 0; k < classes.size(); ++k) m.weight(k, f) = w[k];
    }
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (bias.size() != classes.size()) throw std::runtime_error("bias has wrong length");
    for (std::size_t k = 0; k < classes.size(); ++k) m.bias(k) = bias[k];
    m.config = j.value("config", nlohmann::json::object());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed logistic model: ") + e.what());
  }
}

void save_linear_model(const LinearModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << linear_model_to_json(m).dump(1) << '\n';
}

LinearModel load_linear_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed logistic model: ") + e.what());
  }
  return linear_model_from_json(j);
}

}  // namespace stancekit::shallow
