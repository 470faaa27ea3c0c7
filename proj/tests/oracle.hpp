#pragma once

// Brute-force reference for coboundary expansion, built directly from a facet
// list with no use of the library. Cochains are bit masks over the faces of
// one dimension, so every enumerated dimension must have at most 63 faces.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Face = std::vector<int>;

struct Complex {
  int n = -1;
  std::vector<std::vector<Face>> faces;           // [k+1]
  std::vector<std::vector<std::uint64_t>> c;      // [k+1]
  std::vector<std::uint64_t> denominator;         // [k+1]
  std::vector<std::map<Face, std::size_t>> index; // [k+1]

  std::size_t count(int k) const { return faces[k + 1].size(); }
};

inline std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline Complex from_facets(std::vector<Face> facets) {
  Complex X;
  for (auto& f : facets) std::sort(f.begin(), f.end());
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  X.n = static_cast<int>(facets.front().size()) - 1;
  X.faces.resize(X.n + 2);
  X.c.resize(X.n + 2);
  X.index.resize(X.n + 2);
  std::vector<std::map<Face, std::uint64_t>> counts(X.n + 2);
  for (const auto& f : facets) {
    if (static_cast<int>(f.size()) != X.n + 1) throw std::runtime_error("oracle: not pure");
    for (std::uint32_t mask = 0; mask < (1u << f.size()); ++mask) {
      Face sub;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1u) sub.push_back(f[i]);
      ++counts[sub.size()][sub];
    }
  }
  for (int k = -1; k <= X.n; ++k) {
    for (const auto& [face, cnt] : counts[k + 1]) {
      X.index[k + 1][face] = X.faces[k + 1].size();
      X.faces[k + 1].push_back(face);
      X.c[k + 1].push_back(cnt);
    }
    X.denominator.push_back(choose(X.n + 1, k + 1) * facets.size());
  }
  return X;
}

inline std::uint64_t weighted(const Complex& X, int k, std::uint64_t phi) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < X.count(k); ++i)
    if (phi >> i & 1u) s += X.c[k + 1][i];
  return s;
}

inline Rational norm(const Complex& X, int k, std::uint64_t phi) {
  return Rational(weighted(X, k, phi)) / Rational(X.denominator[k + 1]);
}

/// d phi evaluated face by face: (d phi)(eta) = sum of phi over the facets of eta.
inline std::uint64_t coboundary(const Complex& X, int k, std::uint64_t phi) {
  std::uint64_t out = 0;
  for (std::size_t e = 0; e < X.count(k + 1); ++e) {
    const Face& eta = X.faces[k + 2][e];
    bool parity = false;
    for (std::size_t drop = 0; drop < eta.size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < eta.size(); ++i)
        if (i != drop) sub.push_back(eta[i]);
      parity ^= (phi >> X.index[k + 1].at(sub)) & 1u;
    }
    if (parity) out |= std::uint64_t{1} << e;
  }
  return out;
}

/// Every element of B^k, by applying d to each of the 2^{f_{k-1}} cochains.
inline std::vector<std::uint64_t> coboundaries(const Complex& X, int k) {
  if (X.count(k) > 63 || X.count(k - 1) > 30) throw std::runtime_error("oracle: too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t psi = 0; psi < (std::uint64_t{1} << X.count(k - 1)); ++psi) out.push_back(coboundary(X, k - 1, psi));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Rational coset_norm(const Complex& X, int k, std::uint64_t phi, const std::vector<std::uint64_t>& B) {
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t b : B) best = std::min(best, weighted(X, k, phi ^ b));
  return Rational(best) / Rational(X.denominator[k + 1]);
}

/// min over phi not in B^k of ||d phi|| / ||[phi]||, by enumerating all of C^k.
inline Rational h(const Complex& X, int k) {
  if (X.count(k) > 24) throw std::runtime_error("oracle: C^k too large");
  const auto B = coboundaries(X, k);
  std::vector<bool> in_b(std::size_t{1} << X.count(k), false);
  for (std::uint64_t b : B) in_b[b] = true;
  bool found = false;
  Rational best;
  for (std::uint64_t phi = 0; phi < (std::uint64_t{1} << X.count(k)); ++phi) {
    if (in_b[phi]) continue;
    const Rational r = norm(X, k + 1, coboundary(X, k, phi)) / coset_norm(X, k, phi, B);
    if (!found || r < best) best = r;
    found = true;
  }
  if (!found) throw std::runtime_error("oracle: C^k = B^k");
  return best;
}

inline std::vector<Face> simplex_facets(int n) {
  Face f;
  for (int v = 0; v <= n; ++v) f.push_back(v);
  return {f};
}

/// Vertex (part i, element j) is i*m + j.
inline std::vector<Face> partition_facets(int n, int m) {
  std::vector<Face> out;
  std::uint64_t total = 1;
  for (int i = 0; i <= n; ++i) total *= static_cast<std::uint64_t>(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    Face f;
    std::uint64_t c = code;
    for (int i = 0; i <= n; ++i, c /= static_cast<std::uint64_t>(m)) f.push_back(i * m + static_cast<int>(c % m));
    out.push_back(f);
  }
  return out;
}

/// The 6-vertex real projective plane, vertices 1..6.
inline std::vector<Face> rp2_facets() {
  return {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
          {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
}

/// Points and lines of the Fano plane with incidence as edges; points are
/// 0..6 and line l is 7 + l.
inline std::vector<Face> fano_facets() {
  const int lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<Face> out;
  for (int l = 0; l < 7; ++l)
    for (int p : lines[l]) out.push_back({p, 7 + l});
  return out;
}

}  // namespace oracle
