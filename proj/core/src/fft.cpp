#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fft_internal.hpp"
#include "tfmod/error.hpp"

namespace tfmod::detail {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (shape, direction) and kept.
class PlanCache {
 public:
  fftw_plan get(std::span<const std::size_t> n, FftDirection dir) {
    std::vector<int> dims(n.begin(), n.end());
    const Key key{dims, dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    std::vector<cplx> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, key.second,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error(ErrorCode::invalid_argument, "FFTW could not plan transform");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::pair<std::vector<int>, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void unitary_dft_inplace(std::span<cplx> data, std::span<const std::size_t> n, FftDirection dir) {
  fftw_plan plan = plan_cache().get(n, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (cplx& z : data) z *= scale;
}

}  // namespace tfmod::detail

namespace tfmod {

SignalNd dft(const SignalNd& f) {
  std::vector<cplx> out(f.data().begin(), f.data().end());
  detail::unitary_dft_inplace(out, f.grid().n(), detail::FftDirection::forward);
  return SignalNd(f.grid(), std::move(out));
}

SignalNd idft(const SignalNd& f) {
  std::vector<cplx> out(f.data().begin(), f.data().end());
  detail::unitary_dft_inplace(out, f.grid().n(), detail::FftDirection::inverse);
  return SignalNd(f.grid(), std::move(out));
}

}  // namespace tfmod
