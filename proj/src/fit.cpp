#include "clasym/fit.hpp"

#include <cmath>

#include "clasym/common.hpp"

namespace clasym {

LogLogFit fit_loglog(std::span<const double> times,
                     std::span<const double> errors, double floor,
                     double exact_floor) {
  require(times.size() == errors.size(), "fit_loglog: size mismatch");
  LogLogFit fit;
  bool all_exact = !errors.empty();
  for (double e : errors)
    if (e >= exact_floor) all_exact = false;
  if (all_exact) {
    fit.status = FitStatus::exact;
    return fit;
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (errors[i] > floor && times[i] > 0.0) {
      xs.push_back(std::log(times[i]));
      ys.push_back(std::log(errors[i]));
    }
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    fit.status = FitStatus::insufficient;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) {
    fit.status = FitStatus::insufficient;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.constant = std::exp(my - fit.slope * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.status = FitStatus::ok;
  return fit;
}

}  // namespace clasym
