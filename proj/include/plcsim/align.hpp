#pragma once

#include <cstddef>

#include "plcsim/signal.hpp"

namespace plcsim {

struct AlignResult {
    std::size_t lag = 0;        // samples by which `received` trails `reference`
    double peak_ncc = 0.0;      // normalized cross-correlation at the peak
};

/// Lag in [0, max_lag] maximizing the normalized cross-correlation between
/// reference and received (cosine similarity over the overlapping region).
/// Ties break toward the smallest lag. Throws std::invalid_argument for an
/// all-zero reference, empty inputs, or max_lag >= received length.
AlignResult align_delay(const DiscreteSignal& reference,
                        const DiscreteSignal& received, std::size_t max_lag);

}  // namespace plcsim
