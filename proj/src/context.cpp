#include "cwp/context.hpp"

#include <climits>

namespace cwp {

Context::Context(SolveConfig config)
    : config_(config), store_(std::make_shared<Store>()), eq_(config.fp_bits, config.seed, config.max_exact_len) {}

unsigned letter_bound(int a_order) {
  unsigned long long v = 2;
  for (int i = 1; i <= a_order; ++i) {
    v *= static_cast<unsigned long long>(i) * 2;
    if (v > UINT_MAX) return UINT_MAX;
  }
  return static_cast<unsigned>(v);
}

unsigned Context::depth_cap(int a_order) const {
  if (config_.max_depth) return *config_.max_depth;
  unsigned long long cap = static_cast<unsigned long long>(std::max(a_order, 1)) * letter_bound(a_order);
  return cap > UINT_MAX ? UINT_MAX : static_cast<unsigned>(cap);
}

}  // namespace cwp
