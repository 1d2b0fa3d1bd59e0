#pragma once

#include <functional>

namespace pinsker {

// Composite Simpson rule on [a, b] with an odd number of equally spaced
// nodes. 4097 nodes is the project-wide default: our integrands are smooth,
// so the quadrature error is far below every test tolerance.
double simpson(const std::function<double(double)>& f, double a, double b,
               int nodes = 4097);

}  // namespace pinsker
