#include "circlens/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace circlens {

namespace {

constexpr std::size_t kDirectLimit = 256;

// FFTW's planner is not reentrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> fftw_transform(std::span<const std::complex<double>> in,
                                                 std::span<const int> dims, int sign) {
  const std::size_t total = in.size();
  auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  if (buffer == nullptr) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buffer, buffer,
                         sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  std::memcpy(buffer, in.data(), sizeof(fftw_complex) * total);
  fftw_execute(plan);
  std::vector<std::complex<double>> out(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = {buffer[i][0], buffer[i][1]};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buffer);
  return out;
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");
  const std::size_t m = in.size();
  if (m == 0) return {};
  if (m >= kDirectLimit) {
    const int dims[1] = {static_cast<int>(m)};
    return fftw_transform(in, dims, sign);
  }
  // exact twiddles from the reduced index k*l mod m
  std::vector<std::complex<double>> twiddle(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::complex<double> sum{};
    for (std::size_t l = 0; l < m; ++l) sum += in[l] * twiddle[(k * l) % m];
    out[k] = sum;
  }
  return out;
}

std::vector<std::complex<double>> dft_nd(std::span<const std::complex<double>> in,
                                         std::span<const int> dims, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft_nd: sign must be +1 or -1");
  if (dims.empty()) throw std::invalid_argument("dft_nd: no dimensions");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("dft_nd: extents must be positive");
    total *= static_cast<std::size_t>(d);
  }
  if (total != in.size()) throw std::invalid_argument("dft_nd: size does not match extents");
  if (dims.size() == 1) return dft(in, sign);
  return fftw_transform(in, dims, sign);
}

}  // namespace circlens
