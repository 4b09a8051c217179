#pragma once

#include <vector>

#include "plcsim/signal.hpp"

namespace plcsim {

enum class WindowKind { rect, hann, hamming };

/// Single-sided magnitude spectrum. Bin k holds
///   magnitudes[k] = |DFT(x . w)[k]| / (N * coherent_gain(w)),
/// so a full-scale tone centered on a bin reads amplitude/2 regardless of
/// the window. bin_freqs[k] = k * fs / N for k = 0 .. floor(N/2);
/// resolution_hz = fs / N.
///
/// With the rect window, Parseval's relation under this normalization is
///   sum(x^2) = N * (m_0^2 + 2*sum_inner m_k^2 [+ m_{N/2}^2 if N even]).
struct Spectrum {
    std::vector<double> bin_freqs_hz;
    std::vector<double> magnitudes;
    double resolution_hz = 0.0;
    WindowKind window = WindowKind::rect;
};

/// Magnitude spectrum of a signal (length >= 2; throws otherwise).
Spectrum spectrum(const DiscreteSignal& signal, WindowKind window = WindowKind::rect);

double window_coherent_gain(WindowKind window);

}  // namespace plcsim
