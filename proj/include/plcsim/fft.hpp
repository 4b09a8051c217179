#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace plcsim::fft {

using cplx = std::complex<double>;

/// In-place iterative radix-2 FFT. data.size() must be a power of two.
/// inverse=true applies the 1/N scaling.
void transform_pow2(std::vector<cplx>& data, bool inverse);

/// DFT of arbitrary length (Bluestein's chirp algorithm for non powers of
/// two). Forward only, no scaling.
std::vector<cplx> dft(const std::vector<cplx>& in);

/// DFT of a real sequence; returns all N bins.
std::vector<cplx> dft_real(const std::vector<double>& in);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// Full linear convolution, length = x.size() + h.size() - 1.
/// Uses direct evaluation for small workloads and FFT overlap-add when
/// x.size() * h.size() is large; both paths agree to ~1e-12 relative.
std::vector<double> convolve_full(const std::vector<double>& x,
                                  const std::vector<double>& h);

}  // namespace plcsim::fft
