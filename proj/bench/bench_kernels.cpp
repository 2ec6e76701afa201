#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <CLI11.hpp>

#include "uppe/green.hpp"
#include "uppe/projectors.hpp"
#include "uppe/propagator.hpp"
#include "uppe/transform.hpp"
#include "uppe/verification.hpp"

using namespace uppe;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool identical(const Field& a, const Field& b) { return a.values() == b.values(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel timings of the heavy kernels"};
  int reps = 3;
  std::size_t n = 16;
  app.add_option("--reps", reps, "Repetitions per kernel (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("-n", n, "Spatial count per axis; time gets 2n")->check(CLI::Range(4, 64));
  CLI11_PARSE(app, argc, argv);
  if (n % 2) n += 1;

  const auto g = make_grid({n, n, n, 2 * n}, {1.0, 1.0, 1.0, 0.47});
  GreenSpec spec = default_green_spec(g);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Field f(g, all_physical);
  for (auto& v : f.values()) v = cplx(normal(rng), normal(rng));
  const auto mask = make_mask(ProjectorKind::Pplus, g);
  const Propagator prop({g, BranchPolicy::evanescent_decay, spec.light_line_epsilon, g.step(Axis::z) / 4});

  struct Kernel {
    const char* name;
    std::function<Field(Exec)> run;
  };
  std::vector<Kernel> kernels = {
      {"forward_transform", [&](Exec e) { return forward_transform(f, AxisSet::all(), e); }},
      {"apply_mask", [&](Exec e) { return apply(mask, f, e); }},
      {"wave_green_spectral", [&](Exec e) { return wave_green_spectral(+1, spec, e); }},
      {"uppe_green", [&](Exec e) { return uppe_green(spec, e).field; }},
      {"solve_convolution", [&](Exec e) { return prop.solve_convolution(f, ConvolutionMode::linear, ZRule::linear_source, e).field; }},
      {"march", [&](Exec e) { return prop.march(f, e).field; }},
  };

  std::printf("grid %zux%zux%zux%zu, threads %d, best of %d\n", n, n, n, 2 * n, omp_get_max_threads(), reps);
  std::printf("%-22s %12s %12s %8s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "identical");
  for (const auto& k : kernels) {
    Field a, b;
    const double ts = best_of(reps, [&] { a = k.run(Exec::serial); });
    const double tp = best_of(reps, [&] { b = k.run(Exec::parallel); });
    std::printf("%-22s %12.4f %12.4f %8.2f %s\n", k.name, ts, tp, ts / tp, identical(a, b) ? "yes" : "NO");
  }

  if (n <= 16) {
    SourceSpec src;
    src.width = {2.0, 2.0, 2.0, 1.0};
    const Field q = sample_source(src, g);
    std::vector<Event> events;
    for (std::size_t iz = n / 2; iz < n; ++iz)
      for (std::size_t it = n; it < 2 * n; ++it) events.push_back({0.0, 0.0, g.coord(Axis::z, iz), g.coord(Axis::t, it)});
    std::vector<cplx> a, b;
    const double ts = best_of(reps, [&] { a = retarded_quadrature(q, events, 1e-12, Exec::serial); });
    const double tp = best_of(reps, [&] { b = retarded_quadrature(q, events, 1e-12, Exec::parallel); });
    std::printf("%-22s %12.4f %12.4f %8.2f %s\n", "retarded_quadrature", ts, tp, ts / tp, a == b ? "yes" : "NO");
  }
  return 0;
}
