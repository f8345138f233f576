#include "skt/root_system.hpp"

#include "skt/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace skt {

namespace {

bool is_multiply_laced(char family) {
  return family == 'B' || family == 'C' || family == 'F' || family == 'G';
}

// Edges of the Dynkin diagram (0-based, Bourbaki labels).
std::vector<std::pair<int, int>> dynkin_edges(const SimpleType& t) {
  std::vector<std::pair<int, int>> edges;
  const int n = t.rank;
  switch (t.family) {
    case 'A':
    case 'B':
    case 'C':
    case 'F':
    case 'G':
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 3, n - 1);
      break;
    case 'E':
      edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
      for (int i = 4; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    default:
      break;
  }
  return edges;
}

// Squared lengths of the simple roots when long roots have length 2.
std::vector<Rational> long2_lengths(const SimpleType& t) {
  const int n = t.rank;
  std::vector<Rational> len(static_cast<std::size_t>(n), Rational(2));
  switch (t.family) {
    case 'B':
      len.back() = Rational(1);
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) len[static_cast<std::size_t>(i)] = Rational(1);
      break;
    case 'F':
      len[2] = len[3] = Rational(1);
      break;
    case 'G':
      len[0] = Rational(2, 3);
      break;
    default:
      break;
  }
  return len;
}

Rational inner_product(const std::vector<Rational>& gram, int n, const std::vector<int>& a,
                       const std::vector<int>& b) {
  Rational s(0);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      s += gram[static_cast<std::size_t>(i * n + j)] *
           Rational(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]);
    }
  }
  return s;
}

// Positive roots by closure: beta + alpha_j is a root iff q > 0 in the alpha_j-string.
std::vector<std::vector<int>> positive_roots(int n, const std::vector<int>& cartan) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    seen.insert(e);
    out.push_back(e);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::vector<int> beta = out[k];
    for (int j = 0; j < n; ++j) {
      int p = 0;
      std::vector<int> down = beta;
      while (true) {
        down[static_cast<std::size_t>(j)] -= 1;
        if (!seen.count(down)) break;
        ++p;
      }
      int pairing = 0;  // <beta, alpha_j^vee>
      for (int i = 0; i < n; ++i)
        pairing += beta[static_cast<std::size_t>(i)] * cartan[static_cast<std::size_t>(i * n + j)];
      const int q = p - pairing;
      if (q > 0) {
        std::vector<int> up = beta;
        up[static_cast<std::size_t>(j)] += 1;
        if (seen.insert(up).second) out.push_back(up);
      }
    }
  }
  return out;
}

// c = (alpha_i, alpha_i) / sum_gamma (gamma, alpha_i)^2, required to agree for every i.
Rational killing_constant(const std::vector<Rational>& gram, int n, const std::vector<Root>& roots,
                          const std::string& name) {
  std::optional<Rational> c;
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& ai = roots[static_cast<std::size_t>(i)].coeffs;
    Rational s(0);
    for (const Root& g : roots) {
      const Rational v = inner_product(gram, n, g.coeffs, ai);
      s += v * v;
    }
    const Rational ci = gram[static_cast<std::size_t>(i * n + i)] / s;
    if (c && *c != ci) throw ConsistencyError("killing normalization differs across simple roots of " + name);
    c = ci;
  }
  return *c;
}

}  // namespace

void SimpleType::validate() const {
  const std::string n = name();
  if (rank < 1) throw InvalidTypeError(n + ": rank must be positive");
  switch (family) {
    case 'A':
      return;
    case 'B':
      if (rank < 2) throw InvalidTypeError("B requires rank >= 2");
      return;
    case 'C':
      if (rank < 2) throw InvalidTypeError("C requires rank >= 2");
      return;
    case 'D':
      if (rank < 3) throw InvalidTypeError("D requires rank >= 3");
      return;
    case 'E':
      if (rank < 6 || rank > 8) throw InvalidTypeError("E requires rank 6, 7 or 8");
      return;
    case 'F':
      if (rank != 4) throw InvalidTypeError("F requires rank 4");
      return;
    case 'G':
      if (rank != 2) throw InvalidTypeError("G requires rank 2");
      return;
    default:
      throw InvalidTypeError(std::string("unknown family '") + family + "'");
  }
}

std::string SimpleType::name() const { return std::string(1, family) + std::to_string(rank); }

SimpleType SimpleType::parse(std::string_view text) {
  if (text.size() < 2) throw InvalidTypeError("malformed type '" + std::string(text) + "'");
  SimpleType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  int r = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidTypeError("malformed type '" + std::string(text) + "'");
    r = r * 10 + (c - '0');
    if (r > 1000) throw InvalidTypeError("rank too large in '" + std::string(text) + "'");
  }
  t.rank = r;
  t.validate();
  return t;
}

SimpleType make_type(char family, int rank) {
  SimpleType t{static_cast<char>(std::toupper(static_cast<unsigned char>(family))), rank};
  t.validate();
  return t;
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::long2:
      return "long2";
    case Normalization::short2:
      return "short2";
    case Normalization::killing:
      return "killing";
  }
  return "?";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "long2") return Normalization::long2;
  if (text == "short2") return Normalization::short2;
  if (text == "killing") return Normalization::killing;
  throw ParseError("unknown normalization '" + std::string(text) + "'");
}

int Root::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

std::optional<int> RootSystem::find(std::span<const int> coeffs) const {
  auto it = lookup_.find(std::vector<int>(coeffs.begin(), coeffs.end()));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::MatrixXd RootSystem::gram() const {
  const int n = rank();
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = to_double(gram_exact_[static_cast<std::size_t>(i * n + j)]);
  return q;
}

int RootSystem::cartan(int i, int j) const {
  const int n = rank();
  const Rational a = Rational(2) * gram_exact_[static_cast<std::size_t>(i * n + j)] /
                     gram_exact_[static_cast<std::size_t>(j * n + j)];
  return static_cast<int>(a.numerator());
}

RootSystem build_root_system(SimpleType type, Normalization norm) {
  type.validate();
  const int n = type.rank;

  std::vector<Rational> len = long2_lengths(type);
  std::vector<Rational> gram(static_cast<std::size_t>(n * n), Rational(0));
  auto fill_gram = [&] {
    for (int i = 0; i < n; ++i) gram[static_cast<std::size_t>(i * n + i)] = len[static_cast<std::size_t>(i)];
    for (auto [i, j] : dynkin_edges(type)) {
      const Rational v = -std::max(len[static_cast<std::size_t>(i)], len[static_cast<std::size_t>(j)]) / 2;
      gram[static_cast<std::size_t>(i * n + j)] = v;
      gram[static_cast<std::size_t>(j * n + i)] = v;
    }
  };
  fill_gram();

  std::vector<int> cartan(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational a = Rational(2) * gram[static_cast<std::size_t>(i * n + j)] /
                         gram[static_cast<std::size_t>(j * n + j)];
      cartan[static_cast<std::size_t>(i * n + j)] = static_cast<int>(a.numerator());
    }

  std::vector<std::vector<int>> pos = positive_roots(n, cartan);
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });

  RootSystem rs;
  rs.type_ = type;
  rs.norm_ = norm;
  const std::size_t P = pos.size();
  rs.roots_.reserve(2 * P);
  for (const auto& c : pos) rs.roots_.push_back(Root{c, 1});
  for (const auto& c : pos) {
    std::vector<int> neg(c.size());
    std::transform(c.begin(), c.end(), neg.begin(), [](int v) { return -v; });
    rs.roots_.push_back(Root{neg, -1});
  }
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.lookup_[rs.roots_[i].coeffs] = static_cast<int>(i);

  const std::size_t N = rs.roots_.size();
  rs.sum_.assign(N * N, -1);
  std::vector<int> buf(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      for (int i = 0; i < n; ++i)
        buf[static_cast<std::size_t>(i)] =
            rs.roots_[a].coeffs[static_cast<std::size_t>(i)] + rs.roots_[b].coeffs[static_cast<std::size_t>(i)];
      auto it = rs.lookup_.find(buf);
      if (it != rs.lookup_.end()) rs.sum_[a * N + b] = it->second;
    }

  // Rescale the simple-root lengths for the requested normalization.
  if (norm == Normalization::short2 && is_multiply_laced(type.family)) {
    const Rational shortest = *std::min_element(len.begin(), len.end());
    for (auto& l : len) l = l * Rational(2) / shortest;
    fill_gram();
  }
  rs.gram_exact_ = gram;
  if (norm == Normalization::killing) {
    const Rational c = killing_constant(gram, n, rs.roots_, type.name());
    for (auto& g : rs.gram_exact_) g *= c;
  }

  rs.inner_exact_.resize(N * N);
  rs.inner_.resize(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b) {
      const Rational v = inner_product(rs.gram_exact_, n, rs.roots_[a].coeffs, rs.roots_[b].coeffs);
      rs.inner_exact_[a * N + b] = rs.inner_exact_[b * N + a] = v;
      rs.inner_[a * N + b] = rs.inner_[b * N + a] = to_double(v);
    }

  int best = 0;
  for (int i = 0; i < static_cast<int>(P); ++i)
    if (rs.height(i) > rs.height(best)) best = i;
  rs.maximal_ = best;
  return rs;
}

RootString root_string(const RootSystem& rs, int alpha, int beta) {
  if (beta == alpha || beta == rs.negative(alpha))
    throw std::invalid_argument("root string undefined for beta = +-alpha");
  const auto& a = rs.root(alpha).coeffs;
  std::vector<int> v = rs.root(beta).coeffs;
  auto shift = [&](int s) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * a[i];
  };
  RootString out;
  v = rs.root(beta).coeffs;
  while (true) {
    shift(-1);
    if (!rs.find(v)) break;
    --out.p;
  }
  v = rs.root(beta).coeffs;
  while (true) {
    shift(+1);
    if (!rs.find(v)) break;
    ++out.q;
  }
  return out;
}

Rational killing_normalization_exact(const RootSystem& rs) {
  if (rs.normalization() == Normalization::killing) return Rational(1);
  return killing_constant(rs.gram_exact(), rs.rank(), rs.roots(), rs.type().name());
}

double killing_normalization_constant(const RootSystem& rs) {
  return to_double(killing_normalization_exact(rs));
}

ModuliDimensions moduli_dimensions(int d, int num_positive) {
  if (d < 1) throw std::invalid_argument("moduli_dimensions: d must be >= 1");
  if (num_positive < 0) throw std::invalid_argument("moduli_dimensions: negative root count");
  return {d * (d + 1) / 2 + num_positive, 2 * d * d, d * d + num_positive, d * (d - 1),
          3 * d * d + num_positive};
}

}  // namespace skt
