#include "sgm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sgm {

namespace {

// FFTW plan creation is not thread-safe; executions on distinct buffers are.
// Plans are cached per size and reused via the new-array interface.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

PlanPair get_plans(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> buf(n), out(n);
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n),
                           reinterpret_cast<fftw_complex*>(buf.data()),
                           reinterpret_cast<fftw_complex*>(out.data()),
                           FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n),
                           reinterpret_cast<fftw_complex*>(buf.data()),
                           reinterpret_cast<fftw_complex*>(out.data()),
                           FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

void check_size(std::size_t n) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("fft: grid size must be even and >= 8");
}

}  // namespace

SpectralField::SpectralField(std::vector<std::complex<double>> coeffs, double period)
    : coeffs_(std::move(coeffs)), period_(period) {
  if (coeffs_.empty()) throw std::invalid_argument("SpectralField: empty");
}

SpectralField fft_forward(const GridField& f) {
  const std::size_t n = f.size();
  check_size(n);
  std::vector<std::complex<double>> in(n), out(n);
  for (std::size_t j = 0; j < n; ++j) in[j] = f[j];
  PlanPair p = get_plans(n);
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= scale;
  return SpectralField(std::move(out), f.period());
}

GridField fft_inverse(const SpectralField& c) {
  const std::size_t n = c.size();
  check_size(n);
  std::vector<std::complex<double>> in(c.coeffs()), out(n);
  PlanPair p = get_plans(n);
  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> re(n);
  for (std::size_t j = 0; j < n; ++j) re[j] = out[j].real();
  return GridField(std::move(re), c.period());
}

}  // namespace sgm
