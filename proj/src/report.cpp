#include "ncg/report.hpp"

#include <cmath>
#include <stdexcept>

namespace ncg {

const Check& ModelReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("report has no check '" + name + "'");
}

void ModelReport::near(const std::string& name, double value, double expected, double tol,
                       std::string detail) {
  Check c{name, std::abs(value - expected) <= tol, value, expected, tol, std::move(detail)};
  checks.push_back(std::move(c));
}

void ModelReport::small(const std::string& name, double value, double tol, std::string detail) {
  Check c{name, value <= tol, value, 0.0, tol, std::move(detail)};
  checks.push_back(std::move(c));
}

void ModelReport::flag(const std::string& name, bool ok, std::string detail) {
  Check c{name, ok, ok ? 1.0 : 0.0, 1.0, 0.0, std::move(detail)};
  checks.push_back(std::move(c));
}

void StageTimer::start(const std::string& stage) {
  stop();
  stage_ = stage;
  if (progress_) progress_(stage);
  t0_ = std::chrono::steady_clock::now();
}

void StageTimer::stop() {
  if (stage_.empty()) return;
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  rep_.timings.emplace_back(stage_, s);
  stage_.clear();
}

}  // namespace ncg
