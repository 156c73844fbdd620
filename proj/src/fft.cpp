#include "fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace polariton::detail {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex plan_mutex;
}  // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(x), out(x.size());
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace polariton::detail
