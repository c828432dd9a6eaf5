#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>

#include "kmw/coeff.hpp"
#include "kmw/series.hpp"

namespace kmw::test {

// Seed for randomized tests: KMW_TEST_SEED when set, else a fixed default.
inline uint64_t seed() {
  if (const char* s = std::getenv("KMW_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

// Rank-one Laurent polynomials over Coeff, keyed by the a^vee coordinate.
using Line = std::map<int64_t, Coeff>;

inline void add_to(Line& l, int64_t k, const Coeff& c) {
  auto it = l.find(k);
  if (it == l.end()) {
    if (!c.is_zero()) l.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) l.erase(it);
}

inline Line mul(const Line& a, const Line& b) {
  Line out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_to(out, i + j, x * y);
  return out;
}

inline Line add(Line a, const Line& b) {
  for (const auto& [k, c] : b) add_to(a, k, c);
  return a;
}

inline Line from_series(const LatticeSeries& s) {
  Line out;
  for (const auto& [mu, c] : s.terms()) add_to(out, mu[0], c);
  return out;
}

inline std::string str(const Line& l) {
  std::string s;
  for (const auto& [k, c] : l) s += "(" + c.str() + ")e^" + std::to_string(k) + " ";
  return s.empty() ? "0" : s;
}

}  // namespace kmw::test
