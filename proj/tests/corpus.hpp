#pragma once

#include <memory>
#include <vector>

#include "cobound/complex.hpp"
#include "oracle.hpp"

namespace corpus {

inline cobound::PureComplex from_oracle_facets(const std::vector<oracle::Face>& facets) {
  std::vector<std::vector<cobound::VertexId>> out;
  for (const auto& f : facets) out.emplace_back(f.begin(), f.end());
  return cobound::PureComplex::from_facets(out);
}

inline cobound::PureComplex rp2() { return from_oracle_facets(oracle::rp2_facets()); }

/// Library facets re-expressed for the oracle.
inline oracle::Complex to_oracle(const cobound::PureComplex& X) {
  std::vector<oracle::Face> facets;
  for (const auto& f : X.faces(X.dimension())) facets.emplace_back(f.begin(), f.end());
  return oracle::from_facets(facets);
}

/// A library cochain as an oracle mask (the oracle indexes faces independently).
inline std::uint64_t to_mask(const cobound::PureComplex& X, const oracle::Complex& O, int k,
                             const std::vector<std::size_t>& support) {
  std::uint64_t mask = 0;
  for (std::size_t i : support) {
    const auto& f = X.face(k, i);
    mask |= std::uint64_t{1} << O.index[k + 1].at(oracle::Face(f.begin(), f.end()));
  }
  return mask;
}

}  // namespace corpus
