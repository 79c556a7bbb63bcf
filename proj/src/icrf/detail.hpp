#ifndef STANCEKIT_SRC_ICRF_DETAIL_HPP_
#define STANCEKIT_SRC_ICRF_DETAIL_HPP_

#include <utility>
#include <vector>

#include "stancekit/icrf.hpp"

namespace stancekit::icrf::detail {

/// (parameter offset, value); offsets may repeat.
using SparseGrad = std::vector<std::pair<std::size_t, double>>;

/// Potentials with effective weights theta = scale * m.params().
Potentials potentials(const Model& m, double scale, const Sequence& s);

/// -log p(y|x) at theta = scale * m.params(); appends the gradient with
/// respect to theta (expected minus empirical counts) to `out`.
double sequence_nll_grad(const Model& m, double scale, const Sequence& s, SparseGrad& out);

inline void check_labeled(const Sequence& s) {
  if (s.labels.size() != s.positions.size())
    throw std::invalid_argument("training sequence is missing gold labels");
}

}  // namespace stancekit::icrf::detail

#endif  // STANCEKIT_SRC_ICRF_DETAIL_HPP_
