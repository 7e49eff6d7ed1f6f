#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace irmen {

/// Classical fourth-order Runge-Kutta on a flat state vector. Owns its stage
/// buffers so repeated steps do not allocate.
///
/// The right-hand side is called as f(std::span<const double> y,
/// std::span<double> dydt).
class Rk4 {
 public:
  explicit Rk4(std::size_t n = 0) { resize(n); }

  void resize(std::size_t n) {
    k1_.assign(n, 0.0);
    k2_.assign(n, 0.0);
    k3_.assign(n, 0.0);
    k4_.assign(n, 0.0);
    tmp_.assign(n, 0.0);
  }

  std::size_t size() const { return k1_.size(); }

  /// Slopes at the start of the last step.
  std::span<const double> first_stage() const { return k1_; }

  template <class Rhs>
  void step(std::span<double> y, double dt, Rhs&& f) {
    if (y.size() != k1_.size()) resize(y.size());
    const std::size_t n = y.size();
    const double half = 0.5 * dt;

    f(std::span<const double>(y), std::span<double>(k1_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k1_[i];
    f(std::span<const double>(tmp_), std::span<double>(k2_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k2_[i];
    f(std::span<const double>(tmp_), std::span<double>(k3_));
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    f(std::span<const double>(tmp_), std::span<double>(k4_));

    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += sixth * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
    }
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace irmen
