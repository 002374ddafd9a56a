#pragma once

#include <random>
#include <string>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"
#include "cantor/system.hpp"

namespace testing {

inline cantor::System odo(std::vector<int> period, std::vector<int> prefix = {}) {
  return cantor::System::odometer(std::move(prefix), std::move(period));
}

inline cantor::System bv11() { return cantor::System::stationary({{1, 1}, {1, 1}}); }

inline cantor::Clopen lit(const cantor::System& s, const std::string& text) {
  return cantor::parse_clopen(s.space(), text);
}

inline cantor::Point pt(const cantor::System& s, const std::string& text) {
  return cantor::parse_point(s.space(), text);
}

/// Random admissible word of length n, uniform over children at each step.
inline cantor::Word random_word(const cantor::SpacePtr& sp, std::size_t n, std::mt19937_64& rng) {
  cantor::Word w;
  int v = 0;
  for (std::size_t l = 0; l < n; ++l) {
    auto kids = sp->children(l, v);
    std::uniform_int_distribution<std::size_t> d(0, kids.size() - 1);
    w.push_back(kids[d(rng)]);
    v = sp->edge(l, w.back()).dst;
  }
  return w;
}

inline cantor::Point random_point(const cantor::SpacePtr& sp, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> plen(0, 4), qlen(1, 3);
  for (;;) {
    const auto p = plen(rng);
    const auto q = qlen(rng);
    auto w = random_word(sp, p + q, rng);
    cantor::Word prefix(w.begin(), w.begin() + p), period(w.begin() + p, w.end());
    try {
      return cantor::Point(sp, prefix, period);
    } catch (const cantor::InputError&) {
    }
  }
}

/// Random clopen: each admissible depth-d word kept with probability 1/2.
inline cantor::Clopen random_clopen(const cantor::SpacePtr& sp, std::size_t d, std::mt19937_64& rng) {
  std::vector<cantor::Word> keep;
  for (auto& w : sp->words(d))
    if (rng() & 1) keep.push_back(w);
  return cantor::make_canonical(sp, d, keep);
}

/// Brute-force membership set: the depth-D words whose prefix is one of a's words.
inline std::vector<cantor::Word> expand_oracle(const cantor::Clopen& a, std::size_t D) {
  std::vector<cantor::Word> out;
  for (auto& w : a.space()->words(D))
    for (auto& u : a.words())
      if (std::equal(u.begin(), u.end(), w.begin())) {
        out.push_back(w);
        break;
      }
  return out;
}

}  // namespace testing
