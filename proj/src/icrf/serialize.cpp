#include <fstream>

#include "stancekit/icrf.hpp"

namespace stancekit::icrf {

namespace {

const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::Increasing:
      return "inc";
    case Constraint::Decreasing:
      return "dec";
    case Constraint::None:
      break;
  }
  return nullptr;
}

}  // namespace

nlohmann::json model_to_json(const Model& m) {
  nlohmann::json labels = nlohmann::json::array();
  for (auto l : kAllLabels) labels.push_back(to_string(l));
  nlohmann::json feats = nlohmann::json::object();
  for (std::uint32_t f = 0; f < m.num_features(); ++f) {
    const auto v = m.mu_vector(f);
    nlohmann::json entry{{"mu", std::vector<double>(v.begin(), v.end())}};
    const char* c = constraint_name(m.constraint(f));
    entry["constraint"] = c ? nlohmann::json(c) : nlohmann::json(nullptr);
    feats[m.features().name(f)] = std::move(entry);
  }
  nlohmann::json trans = nlohmann::json::array();
  for (std::size_t a = 0; a < kNumLabels; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < kNumLabels; ++b) row.push_back(m.transition(a, b));
    trans.push_back(std::move(row));
  }
  nlohmann::json bias = nlohmann::json::array();
  for (std::size_t l = 0; l < kNumLabels; ++l) bias.push_back(m.bias(l));
  return {{"format_version", kModelFormatVersion},
          {"model_kind", "icrf"},
          {"labels", labels},
          {"features", feats},
          {"transitions", trans},
          {"bias", bias},
          {"config", m.config}};
}

Model model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("format_version"))
      throw ModelFormatError("model file has no format_version");
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw ModelVersionError("unsupported model format_version " + std::to_string(version) +
                              " (expected " + std::to_string(kModelFormatVersion) + ")");
    if (j.value("model_kind", std::string()) != "icrf")
      throw ModelFormatError("model file is not an icrf model");
    const auto& labels = j.at("labels");
    if (labels.size() != kNumLabels) throw ModelFormatError("model file has wrong label set");
    for (std::size_t l = 0; l < kNumLabels; ++l)
      if (labels[l].get<std::string>() != to_string(kAllLabels[l]))
        throw ModelFormatError("model file has wrong label order");

    const auto& feats = j.at("features");
    std::vector<std::string> names;
    for (auto it = feats.begin(); it != feats.end(); ++it) names.push_back(it.key());
    FeatureIndex index(names);
    std::vector<Constraint> constraints(index.size(), Constraint::None);
    for (std::uint32_t f = 0; f < index.size(); ++f) {
      const auto& c = feats.at(index.name(f)).at("constraint");
      if (c.is_null()) continue;
      const auto s = c.get<std::string>();
      if (s == "inc")
        constraints[f] = Constraint::Increasing;
      else if (s == "dec")
        constraints[f] = Constraint::Decreasing;
      else
        throw ModelFormatError("unknown constraint '" + s + "'");
    }
    Model m(std::move(index), std::move(constraints));
    for (std::uint32_t f = 0; f < m.num_features(); ++f) {
      const auto mu = feats.at(m.features().name(f)).at("mu").get<std::vector<double>>();
      if (mu.size() != kNumLabels) throw ModelFormatError("mu vector has wrong length");
      for (std::size_t l = 0; l < kNumLabels; ++l) m.mu(f, l) = mu[l];
    }
    const auto& trans = j.at("transitions");
    if (trans.size() != kNumLabels) throw ModelFormatError("transition matrix has wrong shape");
    for (std::size_t a = 0; a < kNumLabels; ++a) {
      const auto row = trans.at(a).get<std::vector<double>>();
      if (row.size() != kNumLabels) throw ModelFormatError("transition matrix has wrong shape");
      for (std::size_t b = 0; b < kNumLabels; ++b) m.transition(a, b) = row[b];
    }
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (bias.size() != kNumLabels) throw ModelFormatError("bias has wrong length");
    for (std::size_t l = 0; l < kNumLabels; ++l) m.bias(l) = bias[l];
    m.config = j.value("config", nlohmann::json::object());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const Model& m, std::ostream& out) {
  out << model_to_json(m).dump(1) << '\n';
  if (!out) throw std::runtime_error("failed to write model");
}

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save_model(m, out);
}

Model load_model(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("malformed model file: ") + e.what());
  }
  return model_from_json(j);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_model(in);
}

}  // namespace stancekit::icrf
