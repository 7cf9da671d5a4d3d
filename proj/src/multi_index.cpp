#include "wickchaos/multi_index.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace wickchaos {

namespace {

const std::array<double, kMaxDegree + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxDegree + 1> t{};
    t[0] = 1.0;
    for (int n = 1; n <= kMaxDegree; ++n) t[static_cast<size_t>(n)] = t[static_cast<size_t>(n - 1)] * n;
    return t;
  }();
  return table;
}

}  // namespace

double factorial(int n) {
  if (n < 0 || n > kMaxDegree)
    throw std::domain_error("factorial: degree " + std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxDegree) + "]");
  return factorial_table()[static_cast<size_t>(n)];
}

double gaussian_moment(int n) {
  if (n < 0) throw std::domain_error("gaussian_moment: negative order");
  if (n % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = n - 1; k > 1; k -= 2) m *= k;
  return m;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double num = 1.0, den = 1.0;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
}

MultiIndex MultiIndex::zeros(int dim) {
  if (dim < 1) throw std::invalid_argument("MultiIndex: dimension must be positive");
  return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  MultiIndex m = zeros(dim);
  if (axis < 0 || axis >= dim) throw std::invalid_argument("MultiIndex::unit: axis out of range");
  m.entries_[static_cast<size_t>(axis)] = 1;
  return m;
}

int MultiIndex::degree() const {
  int d = 0;
  for (int e : entries_) d += e;
  return d;
}

double MultiIndex::index_factorial() const {
  if (degree() > kMaxDegree)
    throw std::domain_error("MultiIndex: degree " + std::to_string(degree()) +
                            " exceeds factorial cap " + std::to_string(kMaxDegree));
  double f = 1.0;
  for (int e : entries_) f *= factorial(e);
  return f;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("MultiIndex::plus: dimension mismatch");
  std::vector<int> out(entries_);
  for (size_t i = 0; i < out.size(); ++i) out[i] += other.entries_[i];
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::lowered(int axis) const {
  if (axis < 0 || axis >= dim() || entries_[static_cast<size_t>(axis)] < 1)
    throw std::invalid_argument("MultiIndex::lowered: entry already zero");
  std::vector<int> out(entries_);
  --out[static_cast<size_t>(axis)];
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::raised(int axis) const {
  if (axis < 0 || axis >= dim()) throw std::invalid_argument("MultiIndex::raised: axis out of range");
  std::vector<int> out(entries_);
  ++out[static_cast<size_t>(axis)];
  return MultiIndex(std::move(out));
}

double MultiIndex::monomial(std::span<const double> h) const {
  if (static_cast<int>(h.size()) != dim())
    throw std::invalid_argument("MultiIndex::monomial: dimension mismatch");
  double p = 1.0;
  for (size_t i = 0; i < entries_.size(); ++i)
    for (int k = 0; k < entries_[i]; ++k) p *= h[i];
  return p;
}

bool MultiIndex::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.entries() < b.entries();
}

namespace {

// Ascending head yields lexicographic order within one total degree.
void enumerate_exact(int dim, int degree, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (dim == 1) {
    prefix.push_back(degree);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int head = 0; head <= degree; ++head) {
    prefix.push_back(head);
    enumerate_exact(dim - 1, degree - head, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree) {
  if (dim < 1) throw std::invalid_argument("multi_indices_up_to: dimension must be positive");
  if (max_degree < 0) return {};
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int d = 0; d <= max_degree; ++d) enumerate_exact(dim, d, prefix, out);
  return out;
}

}  // namespace wickchaos
