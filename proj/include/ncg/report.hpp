#pragma once
// named assertions and stage timings shared by the model reports

#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ncg {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0;     // measured residual or quantity
  double expected = 0;  // target when the check compares a number
  double tol = 0;
  std::string detail;
};

using Progress = std::function<void(const std::string&)>;

struct ModelReport {
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check& check(const std::string& name) const;
  // |value - expected| <= tol
  void near(const std::string& name, double value, double expected, double tol, std::string detail = {});
  // value <= tol
  void small(const std::string& name, double value, double tol, std::string detail = {});
  void flag(const std::string& name, bool ok, std::string detail = {});
};

class StageTimer {
 public:
  StageTimer(ModelReport& rep, Progress progress) : rep_(rep), progress_(std::move(progress)) {}
  void start(const std::string& stage);
  void stop();
  ~StageTimer() { stop(); }

 private:
  ModelReport& rep_;
  Progress progress_;
  std::string stage_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace ncg
