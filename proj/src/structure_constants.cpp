#include "skt/structure_constants.hpp"

#include "skt/error.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

namespace skt {

namespace {

std::string root_label(const RootSystem& rs, int i) {
  std::ostringstream os;
  os << (rs.sign(i) > 0 ? "+" : "-") << "(";
  const auto& c = rs.root(i).coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << std::abs(c[k]);
  os << ")";
  return os.str();
}

// Packs a coefficient vector (entries in [-7, 7]) into one integer key.
std::int64_t pack(const std::vector<int>& c) {
  std::int64_t key = 0;
  for (int v : c) key = key * 16 + (v + 8);
  return key;
}

}  // namespace

StructureConstants structure_constants(const RootSystem& rs) {
  const int N = rs.num_roots();
  const int P = rs.num_positive();
  StructureConstants sc;
  sc.size_ = N;
  sc.squared_.assign(static_cast<std::size_t>(N) * static_cast<std::size_t>(N), Rational(0));
  sc.sign_.assign(sc.squared_.size(), 0);
  sc.value_.assign(sc.squared_.size(), 0.0);

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (rs.sum(a, b) < 0) continue;
      const RootString s = root_string(rs, a, b);
      sc.squared_[sc.flat(a, b)] = Rational(s.q * (1 - s.p), 2) * rs.inner_exact(a, a);
    }

  auto magnitude = [&](int a, int b) { return std::sqrt(to_double(sc.squared(a, b))); };
  auto set_sign = [&](int a, int b, int s) {
    sc.sign_[sc.flat(a, b)] = static_cast<std::int8_t>(s);
    sc.sign_[sc.flat(b, a)] = static_cast<std::int8_t>(-s);
  };

  // Signed N for any pair whose sum has height below the current level,
  // reduced to a pair of positive roots that has already been assigned.
  auto signed_value = [&](auto&& self, int a, int b) -> double {
    const int s = rs.sum(a, b);
    if (s < 0) return 0.0;
    const bool pa = rs.sign(a) > 0;
    const bool pb = rs.sign(b) > 0;
    if (pa && pb) return sc.sign(a, b) * magnitude(a, b);
    if (!pa && !pb) return -self(self, rs.negative(a), rs.negative(b));
    if (!pa) return -self(self, b, a);
    // a > 0 > b. Cyclic identity on (a, b, -s).
    if (rs.sign(s) > 0) return -self(self, rs.negative(b), s);  // N_{a,b} = N_{b,-s} = -N_{-b,s}
    return self(self, rs.negative(s), a);                        // N_{a,b} = N_{-s,a}
  };

  for (int g = rs.rank(); g < P; ++g) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < P; ++a) {
      for (int b = 0; b < P; ++b)
        if (rs.sum(a, b) == g) pairs.emplace_back(a, b);
    }
    if (pairs.empty()) throw ConsistencyError("non-simple root without a decomposition");
    const auto [ea, eb] = pairs.front();  // extraspecial: smallest first entry
    set_sign(ea, eb, +1);
    const double n_ext = magnitude(ea, eb);
    for (auto [a, b] : pairs) {
      if ((a == ea && b == eb) || (a == eb && b == ea)) continue;
      if (sc.sign(a, b) != 0) continue;
      // Four-root identity on (ea, eb, -a, -b) with N_{-a,-b} = -N_{a,b}.
      const double v = (signed_value(signed_value, ea, rs.negative(b)) *
                            signed_value(signed_value, eb, rs.negative(a)) -
                        signed_value(signed_value, ea, rs.negative(a)) *
                            signed_value(signed_value, eb, rs.negative(b))) /
                       n_ext;
      const double m = magnitude(a, b);
      if (std::abs(std::abs(v) - m) > 1e-9 * std::max(1.0, m))
        throw ConsistencyError("sign propagation produced |N| = " + std::to_string(std::abs(v)) +
                               " instead of " + std::to_string(m) + " for " + root_label(rs, a) + " + " +
                               root_label(rs, b));
      set_sign(a, b, v > 0 ? 1 : -1);
    }
  }

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (rs.sum(a, b) < 0) continue;
      const double v = signed_value(signed_value, a, b);
      sc.sign_[sc.flat(a, b)] = static_cast<std::int8_t>(v > 0 ? 1 : -1);
    }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) sc.value_[sc.flat(a, b)] = sc.sign(a, b) * magnitude(a, b);
  return sc;
}

bool IdentityReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

IdentityReport verify_identities(const RootSystem& rs, const StructureConstants& sc, double tol) {
  const int N = rs.num_roots();
  auto named = [](const char* name) {
    IdentityCheck c;
    c.name = name;
    return c;
  };
  IdentityCheck anti = named("antisymmetry"), negation = named("negation"), cyclic = named("cyclic"),
                quadratic = named("quadratic"), string_formula = named("n_squared_string"),
                minus = named("n_minus_squared");

  auto record = [&](IdentityCheck& c, double r, const std::string& w) {
    ++c.cases;
    if (r > c.max_residual) {
      c.max_residual = r;
      c.witness = w;
    }
  };
  auto exact = [&](IdentityCheck& c, bool ok, double r, const std::string& w) {
    ++c.cases;
    if (!ok) {
      c.passed = false;
      if (r >= c.max_residual) {
        c.max_residual = r;
        c.witness = w;
      }
    }
  };

  std::unordered_map<std::int64_t, int> index;
  for (int i = 0; i < N; ++i) index[pack(rs.root(i).coeffs)] = i;

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (b == a || b == rs.negative(a)) continue;
      const std::string w = root_label(rs, a) + "," + root_label(rs, b);
      record(anti, std::abs(sc(b, a) + sc(a, b)), w);
      record(negation, std::abs(sc(rs.negative(a), rs.negative(b)) + sc(a, b)), w);

      const RootString s = root_string(rs, a, b);
      const Rational expect = rs.sum(a, b) >= 0 ? Rational(s.q * (1 - s.p), 2) * rs.inner_exact(a, a) : Rational(0);
      exact(string_formula, sc.squared(a, b) == expect, to_double(abs(sc.squared(a, b) - expect)), w);

      const Rational lhs = sc.squared(a, rs.negative(b));
      const Rational rhs = sc.squared(a, b) + rs.inner_exact(a, b);
      exact(minus, lhs == rhs, to_double(abs(lhs - rhs)), w);

      const int s_ab = rs.sum(a, b);
      if (s_ab >= 0) {
        const int c = rs.negative(s_ab);  // a + b + c = 0
        record(cyclic, std::max(std::abs(sc(a, b) - sc(b, c)), std::abs(sc(b, c) - sc(c, a))), w);
      }
    }

  std::vector<int> buf(static_cast<std::size_t>(rs.rank()));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (b == a || b == rs.negative(a)) continue;
      for (int c = 0; c < N; ++c) {
        if (c == a || c == b || c == rs.negative(a) || c == rs.negative(b)) continue;
        for (std::size_t k = 0; k < buf.size(); ++k)
          buf[k] = -(rs.root(a).coeffs[k] + rs.root(b).coeffs[k] + rs.root(c).coeffs[k]);
        bool in_range = true;
        for (int v : buf) in_range = in_range && v >= -7 && v <= 7;
        if (!in_range) continue;
        auto it = index.find(pack(buf));
        if (it == index.end()) continue;
        const int d = it->second;
        if (d == rs.negative(a) || d == rs.negative(b) || d == rs.negative(c)) continue;
        const double r = sc(a, b) * sc(c, d) - sc(a, c) * sc(b, d) + sc(a, d) * sc(b, c);
        record(quadratic, std::abs(r),
               root_label(rs, a) + "," + root_label(rs, b) + "," + root_label(rs, c) + "," + root_label(rs, d));
      }
    }

  IdentityReport report;
  for (IdentityCheck* c : {&anti, &negation, &cyclic, &quadratic}) {
    c->passed = c->max_residual < tol;
    report.checks.push_back(*c);
  }
  report.checks.push_back(string_formula);
  report.checks.push_back(minus);
  return report;
}

}  // namespace skt
