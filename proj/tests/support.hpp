#pragma once

#include "seifert/lie.hpp"

#include <random>

namespace testing_support {

/// Random rational point of the fundamental alcove: barycentric weights
/// c_0..c_r in [0, den] on the vertices 0 and e_i / m_i.
inline seifert::lie::AlcoveClass random_alcove_point(const seifert::lie::RootSystem& rs, std::mt19937_64& rng,
                                                     long den = 60) {
  std::uniform_int_distribution<long> pick(0, den);
  std::vector<long> c(rs.rank + 1);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : c) total += (w = pick(rng));
  }
  seifert::RationalVector x;
  for (int i = 0; i < rs.rank; ++i) x.push_back(seifert::Rational(c[i + 1]) / (rs.highest_root[i] * total));
  return {x};
}

inline std::vector<double> as_doubles(const seifert::RationalVector& v) {
  std::vector<double> out;
  for (const auto& q : v) out.push_back(seifert::to_double(q));
  return out;
}

}  // namespace testing_support
