#pragma once

#include "ctv/complex.hpp"
#include "oracles.hpp"

// Face set of a library complex, via its own closure.
inline oracle::FaceSet face_set(const ctv::SimplicialComplex& x) {
  oracle::FaceSet out;
  for (int k = -1; k <= x.dim(); ++k)
    for (const auto& f : ctv::faces_of(x, k)) out.insert(f);
  return out;
}

inline std::vector<oracle::Face> as_list(const oracle::FaceSet& s) { return {s.begin(), s.end()}; }
