// Copyright 2026 The dimcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIMCERT_LABELS_HPP
#define DIMCERT_LABELS_HPP

#include <cctype>
#include <cmath>
#include <string>

#include "dimcert/common.hpp"

namespace dimcert {

/// A single OAM mode |l> or an equal-weight two-mode superposition
/// (|l1> +/- |l2>)/sqrt(2). Canonical form keeps l1 < l2; swapping the
/// entries of a "-" superposition only flips a global sign, which the
/// canonicalization absorbs.
struct Superposition {
  int charge1 = 0;
  int charge2 = 0;
  int relative_sign = +1;  // meaningful only for two-mode labels
  bool two_mode = false;

  double amplitude(int charge) const {
    if (!two_mode) return charge == charge1 ? 1.0 : 0.0;
    const double r = 1.0 / std::sqrt(2.0);
    if (charge == charge1) return r;
    if (charge == charge2) return relative_sign * r;
    return 0.0;
  }

  bool operator==(const Superposition& other) const {
    if (two_mode != other.two_mode) return false;
    if (!two_mode) return charge1 == other.charge1;
    return charge1 == other.charge1 && charge2 == other.charge2 &&
           relative_sign == other.relative_sign;
  }

  void canonicalize() {
    if (!two_mode) return;
    if (charge1 > charge2) std::swap(charge1, charge2);
    // (|a> - |b>) and (|b> - |a>) are the same projector.
  }
};

namespace detail {

inline int parse_signed_charge(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-'))
    throw input_error("label '" + s + "': expected sign at position " +
                      std::to_string(pos));
  const int sign = (s[pos] == '+') ? +1 : -1;
  ++pos;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw input_error("label '" + s + "': expected digit at position " +
                      std::to_string(pos));
  int mag = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    mag = mag * 10 + (s[pos] - '0');
    ++pos;
  }
  return sign * mag;
}

}  // namespace detail

/// Parses "<sign><k>" or "<sign><k><rel><sign><m>", e.g. "+0", "-2",
/// "+1+-2" = (|+1> + |-2>)/sqrt(2), "+3--3" = (|+3> - |-3>)/sqrt(2).
/// Leading signs belong to the charges; the middle sign is the relative
/// phase. Charges must lie within [-charge_bound, charge_bound].
inline Superposition parse_label(const std::string& s, int charge_bound = 3) {
  std::size_t pos = 0;
  Superposition sup;
  sup.charge1 = detail::parse_signed_charge(s, pos);
  if (pos < s.size()) {
    if (s[pos] != '+' && s[pos] != '-')
      throw input_error("label '" + s + "': expected relative sign");
    sup.relative_sign = (s[pos] == '+') ? +1 : -1;
    ++pos;
    sup.charge2 = detail::parse_signed_charge(s, pos);
    sup.two_mode = true;
    if (pos != s.size())
      throw input_error("label '" + s + "': trailing characters");
    if (sup.charge1 == sup.charge2)
      throw input_error("label '" + s + "': repeated charge");
  }
  if (std::abs(sup.charge1) > charge_bound ||
      (sup.two_mode && std::abs(sup.charge2) > charge_bound))
    throw input_error("label '" + s + "': charge outside +/-" +
                      std::to_string(charge_bound));
  sup.canonicalize();
  return sup;
}

inline std::string format_charge(int charge) {
  return (charge < 0 ? "-" : "+") + std::to_string(std::abs(charge));
}

inline std::string format_label(const Superposition& sup) {
  if (!sup.two_mode) return format_charge(sup.charge1);
  return format_charge(sup.charge1) + (sup.relative_sign > 0 ? "+" : "-") +
         format_charge(sup.charge2);
}

/// |<a|b>|^2 in the orthonormal charge basis.
inline double overlap_probability(const Superposition& a,
                                  const Superposition& b) {
  auto charges_of = [](const Superposition& s, int out[2]) {
    out[0] = s.charge1;
    out[1] = s.two_mode ? s.charge2 : s.charge1;
    return s.two_mode ? 2 : 1;
  };
  int ca[2], cb[2];
  const int na = charges_of(a, ca);
  (void)charges_of(b, cb);
  double ip = 0.0;
  for (int i = 0; i < na; ++i) ip += a.amplitude(ca[i]) * b.amplitude(ca[i]);
  return ip * ip;
}

}  // namespace dimcert

#endif  // DIMCERT_LABELS_HPP
