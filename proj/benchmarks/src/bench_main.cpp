#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "vlex/constructions.hpp"
#include "vlex/modular.hpp"
#include "vlex/norm.hpp"
#include "vlex/rng.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

// ============================================================================
// Microbenchmarks for the hot paths: modular evaluation, norm bisection, and
// sampled certificates. Sizes are chosen to mirror realistic CLI workloads.
// ============================================================================

namespace {

using namespace vlex;

ExponentSpec mixed_spec() {
  ExponentSpec spec;
  spec.regions.push_back(Region{"a", RegionKind::Atom, 2.0, 1.0});
  spec.regions.push_back(Region{"b", RegionKind::Atom, 0.5, 3.0});
  spec.regions.push_back(Region{"I", RegionKind::Cell, 0.25, 2.0});
  RegionFamily fam;
  fam.id = "f";
  fam.kind = RegionKind::Atom;
  fam.weights = WeightSeq::geometric(1.0, 0.5);
  fam.exponents = ExponentSeq::harmonic_approach(1.0, 1.0);
  fam.count = Count::inf();
  spec.families.push_back(fam);
  spec.validate();
  return spec;
}

SimpleFunction wide_function(std::uint64_t terms) {
  Rng rng(7);
  std::vector<Term> ts;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    ts.push_back(Term{RegionRef{"f", n},
                      rng.next_sign() * rng.next_in(0.1, 3.0)});
  }
  return SimpleFunction::make(std::move(ts));
}

void bench_modular(benchmark::State& state) {
  ExponentSpec spec = mixed_spec();
  SimpleFunction f =
      wide_function(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(spec, f));
  }
}
BENCHMARK(bench_modular)->Arg(8)->Arg(64)->Arg(512);

void bench_norm(benchmark::State& state) {
  ExponentSpec spec = mixed_spec();
  SimpleFunction f =
      wide_function(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(luxemburg_norm(spec, f).norm);
  }
}
BENCHMARK(bench_norm)->Arg(8)->Arg(64)->Arg(512);

void bench_separation_certificate(benchmark::State& state) {
  BasisFamily nak =
      nakano_basis(ExponentSeq::harmonic_approach(1.0, 1.0), 32);
  const std::uint64_t samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        check_sequential_separation(nak, 4, samples, 42).pass);
  }
}
BENCHMARK(bench_separation_certificate)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
