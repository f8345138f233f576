#include "skt/invariant_form.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace skt {

int sort_with_sign(std::span<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

void for_each_increasing_tuple(int n, int k, const std::function<void(std::span<const int>)>& fn) {
  if (k == 0) {
    fn({});
    return;
  }
  if (k > n) return;
  std::vector<int> t(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(t);
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
}

InvariantForm::InvariantForm(int degree, int dim) : degree_(degree), dim_(dim) {
  if (degree < 0 || degree > kMaxDegree) throw std::invalid_argument("InvariantForm: degree out of range");
  if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("InvariantForm: dimension out of range");
}

std::uint64_t InvariantForm::key(std::span<const int> sorted) const {
  std::uint64_t k = 0;
  for (int v : sorted) k = (k << 12) | static_cast<std::uint64_t>(v);
  return k;
}

InvariantForm::Scalar InvariantForm::operator()(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("InvariantForm: wrong arity");
  std::array<int, kMaxDegree> buf{};
  std::copy(idx.begin(), idx.end(), buf.begin());
  std::span<int> s(buf.data(), idx.size());
  const int sign = sort_with_sign(s);
  if (sign == 0) return 0.0;
  auto it = data_.find(key(s));
  if (it == data_.end()) return 0.0;
  return static_cast<double>(sign) * it->second;
}

void InvariantForm::set(std::span<const int> idx, Scalar v) {
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("InvariantForm: wrong arity");
  std::array<int, kMaxDegree> buf{};
  std::copy(idx.begin(), idx.end(), buf.begin());
  std::span<int> s(buf.data(), idx.size());
  for (int v2 : s)
    if (v2 < 0 || v2 >= dim_) throw std::out_of_range("InvariantForm: basis index out of range");
  const int sign = sort_with_sign(s);
  if (sign == 0) {
    if (v != Scalar(0.0)) throw std::invalid_argument("InvariantForm: nonzero value on repeated index");
    return;
  }
  if (v == Scalar(0.0)) {
    data_.erase(key(s));
    return;
  }
  data_[key(s)] = static_cast<double>(sign) * v;
}

InvariantForm::Scalar InvariantForm::eval_first(const std::vector<Term>& first, std::span<const int> rest) const {
  std::array<int, kMaxDegree> buf{};
  std::copy(rest.begin(), rest.end(), buf.begin() + 1);
  Scalar s = 0.0;
  for (const Term& t : first) {
    buf[0] = t.index;
    s += t.coeff * (*this)(std::span<const int>(buf.data(), rest.size() + 1));
  }
  return s;
}

void InvariantForm::for_each(const std::function<void(std::span<const int>, Scalar)>& fn) const {
  std::array<int, kMaxDegree> buf{};
  for (const auto& [k, v] : data_) {
    std::uint64_t rest = k;
    for (int i = degree_ - 1; i >= 0; --i) {
      buf[static_cast<std::size_t>(i)] = static_cast<int>(rest & 0xFFF);
      rest >>= 12;
    }
    fn(std::span<const int>(buf.data(), static_cast<std::size_t>(degree_)), v);
  }
}

double InvariantForm::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : data_) m = std::max(m, std::abs(v));
  return m;
}

InvariantForm exterior_derivative(const GroupSpec& gs, const InvariantForm& f) {
  if (f.dim() != gs.dim()) throw std::invalid_argument("exterior_derivative: form/group dimension mismatch");
  const int k = f.degree();
  InvariantForm df(k + 1, f.dim());
  if (k == 0) return df;
  std::array<int, InvariantForm::kMaxDegree> rest{};
  for_each_increasing_tuple(gs.dim(), k + 1, [&](std::span<const int> x) {
    InvariantForm::Scalar v = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const std::vector<Term> br = gs.bracket(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
        if (br.empty()) continue;
        std::size_t m = 0;
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) rest[m++] = x[static_cast<std::size_t>(l)];
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        v += sign * f.eval_first(br, std::span<const int>(rest.data(), m));
      }
    if (v != InvariantForm::Scalar(0.0)) df.set(x, v);
  });
  return df;
}

}  // namespace skt
