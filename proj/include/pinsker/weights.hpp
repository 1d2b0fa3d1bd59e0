#pragma once

#include <vector>

namespace pinsker {

// Index alpha = (beta, t) into the weight family, with t = i * eps on the
// grid A_eps and eps = 1/ln n.
struct WeightIndex {
  int beta = 1;
  int t_index = 1;  // i >= 1
  double t = 0.0;   // i * eps
};

// A_beta = (beta + 1)(2 beta + 1) / (pi^{2 beta} beta)
double a_beta(int beta);

// omega(alpha) = (A_beta t n)^{1/(2 beta + 1)}
double omega(const WeightIndex& alpha, int n);

struct WeightGrid {
  int n = 0;
  double eps = 0.0;  // 1 / ln n
  int k_star = 0;    // floor(1/sqrt(eps))
  int m = 0;         // floor(1/eps^2)
  std::vector<WeightIndex> indices;  // lexicographic in (beta, t_index)
};

// A_eps = {1..k_star} x {eps, 2 eps, ..., m eps}. Cardinality k_star * m is
// capped at 10^6 as a guardrail against pathological n.
WeightGrid weight_grid(int n);

// lambda_alpha(j) = 1 for j <= j0, 1 - (j/omega)^beta for j0 < j <= omega,
// 0 beyond; j0 = floor(omega / ln n). Entries are clamped to [0,1] and the
// vector is truncated at j = n (weights past n would multiply coefficients
// that do not exist).
struct WeightVector {
  std::vector<double> values;  // values[j-1], length n
  WeightIndex index;
  double omega = 0.0;
  int j0 = 0;

  double sq_norm() const;  // |lambda|^2 = sum_j lambda(j)^2
};

WeightVector weight_vector(const WeightIndex& alpha, int n);

}  // namespace pinsker
