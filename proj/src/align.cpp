#include "plcsim/align.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plcsim {

AlignResult align_delay(const DiscreteSignal& reference,
                        const DiscreteSignal& received, std::size_t max_lag) {
    const auto& ref = reference.samples;
    const auto& rx = received.samples;
    if (ref.empty() || rx.empty()) {
        throw std::invalid_argument("align_delay: signals must be nonempty");
    }
    if (max_lag >= rx.size()) {
        throw std::invalid_argument("align_delay: max_lag must be < received length");
    }
    bool ref_nonzero = false;
    for (double v : ref) {
        if (v != 0.0) { ref_nonzero = true; break; }
    }
    if (!ref_nonzero) {
        throw std::invalid_argument("align_delay: all-zero reference, correlation undefined");
    }

    // prefix sums of rx^2 for O(1) overlap norms
    std::vector<double> rx_sq(rx.size() + 1, 0.0);
    for (std::size_t i = 0; i < rx.size(); ++i) rx_sq[i + 1] = rx_sq[i] + rx[i] * rx[i];
    std::vector<double> ref_sq(ref.size() + 1, 0.0);
    for (std::size_t i = 0; i < ref.size(); ++i) ref_sq[i + 1] = ref_sq[i] + ref[i] * ref[i];

    AlignResult best;
    best.peak_ncc = -2.0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const std::size_t overlap = std::min(ref.size(), rx.size() - lag);
        if (overlap == 0) break;
        double dot = 0.0;
        const double* a = ref.data();
        const double* b = rx.data() + lag;
        for (std::size_t i = 0; i < overlap; ++i) dot += a[i] * b[i];
        const double na = ref_sq[overlap];
        const double nb = rx_sq[lag + overlap] - rx_sq[lag];
        const double denom = std::sqrt(na * nb);
        const double ncc = denom > 0.0 ? dot / denom : 0.0;
        if (ncc > best.peak_ncc) {
            best.peak_ncc = ncc;
            best.lag = lag;
        }
    }
    return best;
}

}  // namespace plcsim
