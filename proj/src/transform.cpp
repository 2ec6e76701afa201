#include "uppe/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

namespace uppe {

namespace {

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// Planning is not thread-safe in FFTW; execution with fftw_execute_dft on
// aligned buffers is. Plans live for the process lifetime.
fftw_plan cached_plan(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto it = plans.find({n, sign});
  if (it != plans.end()) return it->second;
  auto in = make_buffer(n);
  auto out = make_buffer(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
  plans.emplace(std::make_pair(n, sign), p);
  return p;
}

// Spatial forward carries e^{-ikx}; the temporal axis is conjugated.
int fftw_sign(Axis axis, detail::Direction dir) {
  const bool minus = (axis == Axis::t) == (dir == detail::Direction::inverse);
  return minus ? FFTW_FORWARD : FFTW_BACKWARD;
}

void check_rep(const Field& f, AxisSet axes, Rep expected, const char* op) {
  for (Axis a : all_axes) {
    if (axes.contains(a) && f.rep(a) != expected) {
      std::ostringstream os;
      os << op << ": axis " << axis_name(a) << " is already "
         << (expected == Rep::physical ? "spectral" : "physical");
      throw ContractError(os.str());
    }
  }
}

}  // namespace

namespace detail {

void transform_axis(std::span<cplx> data, const std::array<std::size_t, 4>& extent, Axis axis,
                    double step, Direction dir, Exec exec) {
  const int k = axis_index(axis);
  const std::size_t n = extent[k];
  if (n == 1) return;
  std::size_t stride = 1;
  for (int j = 3; j > k; --j) stride *= extent[j];
  const std::size_t outer = data.size() / (n * stride);
  const std::size_t lines = outer * stride;

  const fftw_plan plan = cached_plan(n, fftw_sign(axis, dir));
  const double weight = dir == Direction::forward ? step : 1.0 / (static_cast<double>(n) * step);
  // Centering: (p - n/2)(j - n/2) = pj - (n/2)(p + j) + n²/4, and
  // e^{±iπ n/2} = (-1)^{n/2} for even n.
  const double global = ((n / 2) % 2 == 0 ? 1.0 : -1.0) * weight;

  const long long nlines = static_cast<long long>(lines);
#pragma omp parallel if (exec == Exec::parallel)
  {
    auto in = make_buffer(n);
    auto out = make_buffer(n);
#pragma omp for schedule(static)
    for (long long line = 0; line < nlines; ++line) {
      const std::size_t o = static_cast<std::size_t>(line) / stride;
      const std::size_t i = static_cast<std::size_t>(line) % stride;
      cplx* base = data.data() + o * n * stride + i;
      for (std::size_t j = 0; j < n; ++j) {
        const cplx v = base[j * stride] * ((j % 2 == 0) ? 1.0 : -1.0);
        in[j][0] = v.real();
        in[j][1] = v.imag();
      }
      fftw_execute_dft(plan, in.get(), out.get());
      for (std::size_t p = 0; p < n; ++p) {
        const double s = ((p % 2 == 0) ? global : -global);
        base[p * stride] = cplx(out[p][0] * s, out[p][1] * s);
      }
    }
  }
}

}  // namespace detail

void forward_transform_inplace(Field& f, AxisSet axes, Exec exec) {
  check_rep(f, axes, Rep::physical, "forward_transform");
  const auto& g = f.grid();
  for (Axis a : all_axes) {
    if (!axes.contains(a)) continue;
    detail::transform_axis(f.data(), g.n, a, g.step(a), detail::Direction::forward, exec);
    f.set_rep(a, Rep::spectral);
  }
}

void inverse_transform_inplace(Field& f, AxisSet axes, Exec exec) {
  check_rep(f, axes, Rep::spectral, "inverse_transform");
  const auto& g = f.grid();
  for (Axis a : all_axes) {
    if (!axes.contains(a)) continue;
    detail::transform_axis(f.data(), g.n, a, g.step(a), detail::Direction::inverse, exec);
    f.set_rep(a, Rep::physical);
  }
}

Field forward_transform(const Field& f, AxisSet axes, Exec exec) {
  Field out = f;
  forward_transform_inplace(out, axes, exec);
  return out;
}

Field inverse_transform(const Field& f, AxisSet axes, Exec exec) {
  Field out = f;
  inverse_transform_inplace(out, axes, exec);
  return out;
}

}  // namespace uppe
