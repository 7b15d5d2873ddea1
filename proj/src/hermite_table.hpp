#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace rbm::detail {

// Piecewise cubic Hermite interpolant of g(r) on a uniform grid over
// [0, r_max], built from exact values and derivatives at the nodes. The
// table checks itself at every cell midpoint; accurate() is false when
// the worst midpoint error exceeds the requested tolerance, in which
// case callers should evaluate g directly.
class HermiteTable {
public:
  HermiteTable(const std::function<double(double)>& value, const std::function<double(double)>& deriv, double r_max,
               std::size_t cells, double tol)
      : h_(r_max / static_cast<double>(cells)), inv_h_(static_cast<double>(cells) / r_max), cells_(cells) {
    data_.resize(2 * (cells + 1));
    for (std::size_t i = 0; i <= cells; ++i) {
      const double r = static_cast<double>(i) * h_;
      data_[2 * i] = value(r);
      data_[2 * i + 1] = deriv(r) * h_;
    }
    max_error_ = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      const double r = (static_cast<double>(i) + 0.5) * h_;
      max_error_ = std::max(max_error_, std::abs(at(r) - value(r)));
      if (!(max_error_ <= tol)) break;
    }
    accurate_ = max_error_ <= tol;
  }

  bool accurate() const noexcept { return accurate_; }
  double max_error() const noexcept { return max_error_; }

  double at(double r) const noexcept {
    double x = r * inv_h_;
    if (x <= 0.0) return data_[0];
    auto i = static_cast<std::size_t>(x);
    if (i >= cells_) return data_[2 * cells_];
    const double t = x - static_cast<double>(i);
    const double* p = &data_[2 * i];
    const double y0 = p[0], m0 = p[1], y1 = p[2], m1 = p[3];
    // Hermite basis in nested form.
    const double t2 = t * t;
    const double t3 = t2 * t;
    return y0 + m0 * t + (3.0 * (y1 - y0) - 2.0 * m0 - m1) * t2 + (2.0 * (y0 - y1) + m0 + m1) * t3;
  }

private:
  double h_;
  double inv_h_;
  std::size_t cells_;
  std::vector<double> data_;
  double max_error_ = 0.0;
  bool accurate_ = false;
};

}  // namespace rbm::detail
