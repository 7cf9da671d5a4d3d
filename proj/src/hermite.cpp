#include "wickchaos/hermite.hpp"

#include <stdexcept>
#include <string>

#include "wickchaos/multi_index.hpp"

namespace wickchaos {

double hermite_eval(int k, double x) {
  if (k < 0 || k > kMaxDegree)
    throw std::domain_error("hermite_eval: order " + std::to_string(k) + " out of range");
  double prev = 1.0;  // He_0
  if (k == 0) return prev;
  double cur = x;  // He_1
  for (int n = 1; n < k; ++n) {
    const double next = x * cur - n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_values(int kmax, double x) {
  if (kmax < 0 || kmax > kMaxDegree) throw std::domain_error("hermite_values: order out of range");
  std::vector<double> v(static_cast<size_t>(kmax) + 1);
  v[0] = 1.0;
  if (kmax >= 1) v[1] = x;
  for (int n = 1; n < kmax; ++n)
    v[static_cast<size_t>(n) + 1] = x * v[static_cast<size_t>(n)] - n * v[static_cast<size_t>(n) - 1];
  return v;
}

double hermite_product_coeff(int j, int k, int r) {
  if (r < 0 || r > j || r > k) return 0.0;
  return binomial(j, r) * binomial(k, r) * factorial(r);
}

}  // namespace wickchaos
