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

#ifndef DIMCERT_COUNTS_HPP
#define DIMCERT_COUNTS_HPP

#include <string>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/labels.hpp"
#include "dimcert/matrix.hpp"

namespace dimcert {

/// Raw coincidence data: rows are measurement settings, columns are
/// preparation settings, both labeled by OAM superposition strings.
/// std_dev holds the per-cell sample standard deviation across runs.
struct CountMatrix {
  std::vector<std::string> labels;
  Matrix mean;
  Matrix std_dev;
  index_t runs = 1;

  index_t size() const { return labels.size(); }

  index_t index_of(const Superposition& sup) const {
    for (index_t i = 0; i < labels.size(); ++i)
      if (parse_label(labels[i]) == sup) return i;
    throw input_error("count matrix has no label matching " +
                      format_label(sup));
  }

  bool has_label(const Superposition& sup) const {
    for (const auto& l : labels)
      if (parse_label(l) == sup) return true;
    return false;
  }

  void validate() const {
    if (mean.rows() != size() || mean.cols() != size())
      throw input_error("count matrix: label/shape mismatch");
    if (!mean.all_finite() || !std_dev.all_finite())
      throw input_error("count matrix: non-finite entry");
    for (double v : mean.data())
      if (v < 0.0) throw input_error("count matrix: negative count");
  }
};

}  // namespace dimcert

#endif  // DIMCERT_COUNTS_HPP
