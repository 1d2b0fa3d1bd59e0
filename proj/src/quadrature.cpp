#include "pinsker/quadrature.hpp"

#include <stdexcept>

namespace pinsker {

double simpson(const std::function<double(double)>& f, double a, double b,
               int nodes) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw std::invalid_argument("simpson: node count must be odd and >= 3");
  }
  if (!(b > a)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("simpson: empty interval");
  }
  const int intervals = nodes - 1;
  const double h = (b - a) / intervals;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < intervals; i += 2) odd += f(a + i * h);
  for (int i = 2; i < intervals; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace pinsker
