#ifndef FDP_MODELS_SPEC_HPP_
#define FDP_MODELS_SPEC_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/text.hpp"

namespace fdp::models {

enum class ClassifierKind { kLR, kSVM, kBP, kDT };

inline std::string_view to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::kLR: return "LR";
    case ClassifierKind::kSVM: return "SVM";
    case ClassifierKind::kBP: return "BP";
    case ClassifierKind::kDT: return "DT";
  }
  return "?";
}

inline ClassifierKind parse_kind(std::string_view s) {
  const std::string t = text::trim(s);
  if (t == "LR") return ClassifierKind::kLR;
  if (t == "SVM") return ClassifierKind::kSVM;
  if (t == "BP") return ClassifierKind::kBP;
  if (t == "DT") return ClassifierKind::kDT;
  fail(ErrorKind::kConfig, "unknown classifier '" + t + "' (expected LR, SVM, BP or DT)");
}

struct HyperParameter {
  const char* key;
  double default_value;
  double min_value;
  bool integer;
  bool min_exclusive;
};

/// Documented defaults per classifier. Every kind also takes "seed".
inline const std::vector<HyperParameter>& hyperparameters(ClassifierKind kind) {
  static const std::vector<HyperParameter> kLr = {
      {"learning_rate", 0.1, 0.0, false, true},
      {"l2", 1e-3, 0.0, false, false},
      {"epochs", 500, 1, true, false},
      {"tolerance", 1e-6, 0.0, false, true},
      {"seed", 0, 0, true, false},
  };
  static const std::vector<HyperParameter> kSvm = {
      {"c", 1.0, 0.0, false, true},
      {"tolerance", 1e-6, 0.0, false, true},
      {"max_iterations", 1e7, 1, true, false},
      {"seed", 0, 0, true, false},
  };
  static const std::vector<HyperParameter> kBp = {
      {"hidden", 16, 1, true, false},
      {"learning_rate", 0.05, 0.0, false, true},
      {"epochs", 2000, 1, true, false},
      {"seed", 0, 0, true, false},
  };
  static const std::vector<HyperParameter> kDt = {
      {"max_depth", 5, 0, true, false},
      {"min_leaf", 2, 1, true, false},
      {"seed", 0, 0, true, false},
  };
  switch (kind) {
    case ClassifierKind::kLR: return kLr;
    case ClassifierKind::kSVM: return kSvm;
    case ClassifierKind::kBP: return kBp;
    case ClassifierKind::kDT: return kDt;
  }
  return kLr;
}

class ClassifierSpec {
 public:
  explicit ClassifierSpec(ClassifierKind kind = ClassifierKind::kLR) : kind_(kind) {
    for (const auto& h : hyperparameters(kind)) values_[h.key] = h.default_value;
  }

  ClassifierKind kind() const noexcept { return kind_; }

  /// Rejects unknown keys and out-of-range values.
  ClassifierSpec& set(const std::string& key, double value) {
    const HyperParameter* hp = nullptr;
    for (const auto& h : hyperparameters(kind_)) {
      if (key == h.key) hp = &h;
    }
    const std::string who = std::string(to_string(kind_)) + "." + key;
    if (hp == nullptr) fail(ErrorKind::kArgument, "unknown hyperparameter '" + who + "'");
    if (!std::isfinite(value) || value < hp->min_value ||
        (hp->min_exclusive && value == hp->min_value)) {
      fail(ErrorKind::kArgument, "hyperparameter '" + who + "' out of range");
    }
    if (hp->integer && std::floor(value) != value) {
      fail(ErrorKind::kArgument, "hyperparameter '" + who + "' must be an integer");
    }
    values_[key] = value;
    return *this;
  }

  double get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      fail(ErrorKind::kArgument,
           "hyperparameter '" + key + "' does not apply to " + std::string(to_string(kind_)));
    }
    return it->second;
  }

  std::size_t get_count(const std::string& key) const {
    return static_cast<std::size_t>(get(key));
  }

  std::uint64_t seed() const { return static_cast<std::uint64_t>(get("seed")); }

  const std::map<std::string, double>& values() const noexcept { return values_; }

 private:
  ClassifierKind kind_;
  std::map<std::string, double> values_;
};

}  // namespace fdp::models

#endif  // FDP_MODELS_SPEC_HPP_
