// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_LIMITS_HPP
#define HFL_LIMITS_HPP

#include <cstddef>

namespace hfl {

/// Size caps guarding the exponential constructions.
struct Limits {
    std::size_t level_cap = 5;      // v_level / lset: |V_6| = 2^65536 is out of reach
    std::size_t wellorder_cap = 4;  // l_r: dominated by the minimal-witness search
    std::size_t witness_cap = 8;    // |A| for least_witness (orbit search is |A|!)
};

} // namespace hfl

#endif
