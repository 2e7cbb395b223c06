#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "scoregraph/error.hpp"

namespace scoregraph {

/// Durations and onsets in quarter lengths. Exact so slice boundaries compare
/// bit-for-bit.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Decimal rendering with at most six fractional digits, trailing zeros
/// trimmed: 1 -> "1", 3/2 -> "1.5", 1/3 -> "0.333333".
inline std::string to_decimal(const Rational& r) {
  const bool negative = r < 0;
  const Rational a = negative ? -r : r;
  std::int64_t whole = a.numerator() / a.denominator();
  Rational frac = a - whole;
  // round half up at the sixth digit
  std::int64_t micro = boost::rational_cast<std::int64_t>(frac * 1000000 + Rational(1, 2));
  if (micro >= 1000000) {
    ++whole;
    micro -= 1000000;
  }
  std::string out = (negative ? "-" : "") + std::to_string(whole);
  if (micro != 0) {
    std::string digits = std::to_string(micro);
    digits.insert(0, 6 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

inline int pitch_class_of(int midi_pitch) { return ((midi_pitch % 12) + 12) % 12; }

/// Set of pitch classes 0..11. Iteration and comparison follow the sorted
/// tuple, so a PitchClassSet orders exactly like the chord tuple it names.
class PitchClassSet {
 public:
  PitchClassSet() = default;
  PitchClassSet(std::initializer_list<int> pcs) {
    for (int pc : pcs) insert(pc);
  }
  static PitchClassSet from_bits(std::uint16_t bits) {
    PitchClassSet s;
    s.bits_ = bits & 0x0FFF;
    return s;
  }

  void insert(int pc) {
    if (pc < 0 || pc > 11) throw Error(ErrorKind::MalformedFile, "pitch class out of range: " + std::to_string(pc));
    bits_ = static_cast<std::uint16_t>(bits_ | (1u << pc));
  }
  bool contains(int pc) const { return pc >= 0 && pc < 12 && (bits_ >> pc) & 1u; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(static_cast<unsigned>(bits_)); }
  std::uint16_t bits() const { return bits_; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int pc = 0; pc < 12; ++pc)
      if (contains(pc)) out.push_back(pc);
    return out;
  }

  /// "(0, 4, 7)"; a singleton renders as "(2)".
  std::string label() const {
    std::string out = "(";
    bool first = true;
    for (int pc : to_vector()) {
      if (!first) out += ", ";
      out += std::to_string(pc);
      first = false;
    }
    return out + ")";
  }

  friend bool operator==(const PitchClassSet&, const PitchClassSet&) = default;
  friend std::strong_ordering operator<=>(const PitchClassSet& a, const PitchClassSet& b) {
    const auto va = a.to_vector();
    const auto vb = b.to_vector();
    return std::lexicographical_compare_three_way(va.begin(), va.end(), vb.begin(), vb.end());
  }

 private:
  std::uint16_t bits_ = 0;
};

/// Cyclic distance folded into 1..6; 0 for a unison.
inline int interval_class(int from_pc, int to_pc) {
  const int up = ((to_pc - from_pc) % 12 + 12) % 12;
  return std::min(up, 12 - up) % 12;
}

/// Rahn normal form: the rotation of the sorted cycle with the smallest
/// outer interval, ties broken by the intervals from the first element
/// (second-to-last back towards the first), then by the lowest starting pc.
inline std::vector<int> normal_form(const PitchClassSet& pcs) {
  if (pcs.empty()) throw Error(ErrorKind::EmptyInput, "normal form of an empty pitch-class set");
  const std::vector<int> sorted = pcs.to_vector();
  const std::size_t n = sorted.size();
  auto rotation = [&](std::size_t start) {
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = sorted[(start + i) % n];
    return r;
  };
  auto span_to = [](const std::vector<int>& r, std::size_t k) { return ((r[k] - r[0]) % 12 + 12) % 12; };

  std::vector<int> best = rotation(0);
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<int> cand = rotation(s);
    int decision = 0;
    for (std::size_t k = n - 1; k >= 1 && decision == 0; --k) {
      const int a = span_to(cand, k);
      const int b = span_to(best, k);
      if (a != b) decision = a < b ? -1 : 1;
    }
    if (decision == 0) decision = cand[0] < best[0] ? -1 : 1;
    if (decision < 0) best = std::move(cand);
  }
  return best;
}

}  // namespace scoregraph
