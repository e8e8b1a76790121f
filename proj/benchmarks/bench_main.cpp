#include <benchmark/benchmark.h>

#include <random>

#include "strop/cactus/cactus.hpp"
#include "strop/dga/algebra_io.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/hochschild/cohomology.hpp"
#include "strop/hochschild/oracle.hpp"
#include "strop/linalg/elimination.hpp"
#include "strop/linalg/smith.hpp"
#include "strop/loop/loop_ring.hpp"

using namespace strop;

namespace {

const std::string kData = STROP_DATA_DIR;

linalg::SparseMatrix random_sparse(std::size_t n, double density, const linalg::CoefficientRing& ring,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::vector<linalg::Entry> e;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (keep(rng)) e.push_back({r, c, linalg::Scalar(static_cast<long>(rng() % 9) - 4)});
  return linalg::SparseMatrix::from_triplets(n, n, e, ring);
}

dga::FiniteGradedAlgebra algebra(const std::string& name) {
  return dga::load_algebra_file(kData + "/algebras/" + name + ".yaml");
}

}  // namespace

static void BM_RankF2(benchmark::State& state) {
  const auto ring = linalg::CoefficientRing::prime_field(2);
  auto m = random_sparse(static_cast<std::size_t>(state.range(0)), 0.05, ring, 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::rank(m, ring));
}
BENCHMARK(BM_RankF2)->Arg(100)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_RankQ(benchmark::State& state) {
  const auto ring = linalg::CoefficientRing::rationals();
  auto m = random_sparse(static_cast<std::size_t>(state.range(0)), 0.05, ring, 2);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::rank(m, ring));
}
BENCHMARK(BM_RankQ)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_SmithZ(benchmark::State& state) {
  const auto ring = linalg::CoefficientRing::integers();
  auto m = random_sparse(static_cast<std::size_t>(state.range(0)), 0.2, ring, 3);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::smith_normal_form(m));
}
BENCHMARK(BM_SmithZ)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_CochainRing(benchmark::State& state) {
  auto k = dga::load_complex_file(kData + "/complexes/sphere3.yaml");
  const auto ring = linalg::CoefficientRing::rationals();
  for (auto _ : state) benchmark::DoNotOptimize(dga::cohomology_ring(k, ring));
}
BENCHMARK(BM_CochainRing)->Unit(benchmark::kMillisecond);

// Hochschild cohomology of formal S^2 over F2 by tensor length.
static void BM_HochschildSphere2(benchmark::State& state) {
  auto a = algebra("sphere2_f2");
  const auto S = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    hochschild::WindowSpec spec;
    spec.max_tensor = S;
    spec.n_min = -2 * static_cast<int>(S);
    spec.n_max = 2;
    hochschild::HochschildCohomology h(hochschild::HochschildWindow::build(a, spec));
    std::size_t total = 0;
    for (int n = spec.n_min; n <= spec.n_max; ++n) total += h.dimension(n);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_HochschildSphere2)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

// The same on the Morse-reduced cochain model of the boundary of a 3-simplex.
static void BM_HochschildCochainSphere2(benchmark::State& state) {
  auto k = dga::load_complex_file(kData + "/complexes/sphere2.yaml");
  auto a = dga::adapt(dga::build_cochain_dga(k, linalg::CoefficientRing::prime_field(2))).algebra;
  for (auto _ : state) {
    hochschild::WindowSpec spec;
    spec.max_tensor = static_cast<std::size_t>(state.range(0));
    spec.n_min = -1;
    spec.n_max = 1;
    hochschild::HochschildCohomology h(hochschild::HochschildWindow::build(a, spec));
    std::size_t total = 0;
    for (int n = spec.n_min; n <= spec.n_max; ++n) total += h.dimension(n);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_HochschildCochainSphere2)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_OracleDualNumbers(benchmark::State& state) {
  auto a = algebra("dual_numbers_f2");
  for (auto _ : state)
    benchmark::DoNotOptimize(hochschild::compare_with_oracle(a, 0, 5, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_OracleDualNumbers)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_LoopRingFromComplex(benchmark::State& state) {
  auto k = dga::load_complex_file(kData + "/complexes/sphere2.yaml");
  loop::LoopWindow w;
  w.q_min = -4;
  w.q_max = 4;
  w.max_tensor = static_cast<std::size_t>(state.range(0));
  const auto ring = linalg::CoefficientRing::prime_field(2);
  for (auto _ : state) benchmark::DoNotOptimize(loop::loop_ring_from_complex(k, ring, w));
}
BENCHMARK(BM_LoopRingFromComplex)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_CactusCompose(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto k = static_cast<std::size_t>(state.range(0));
  auto outer = cactus::random_cactus(rng, k);
  std::vector<cactus::Cactus> inputs;
  for (std::size_t i = 0; i < k; ++i) inputs.push_back(cactus::random_cactus(rng, 3));
  for (auto _ : state) benchmark::DoNotOptimize(cactus::compose(outer, inputs));
}
BENCHMARK(BM_CactusCompose)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
