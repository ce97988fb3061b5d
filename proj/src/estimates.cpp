#include "wcurve/estimates.hpp"

#include <cmath>
#include <stdexcept>

namespace wcurve {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const size_t m = x.size();
  if (m != y.size() || m < 2) {
    throw std::domain_error("fit_line needs two or more paired points");
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);

  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_line abscissae are all equal");

  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;

  if (m > 2) {
    double rss = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      rss += r * r;
    }
    f.slope_stderr = std::sqrt(rss / (static_cast<double>(m - 2) * sxx));
  }
  return f;
}

}  // namespace wcurve
