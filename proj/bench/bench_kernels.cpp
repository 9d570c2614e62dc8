// OpenMP kernels against their serial references.

#include <vector>

#include <benchmark/benchmark.h>

#include "slenderquad/experiments.hpp"
#include "slenderquad/finitepart.hpp"
#include "slenderquad/forces.hpp"

namespace sq = slenderquad;

namespace {

struct KSetup {
  sq::PanelizedCurve curve;
  sq::LineDensity density;
  sq::ModifiedWeightTable table;
};

KSetup make_k_setup(int panels) {
  const auto helix = sq::make_helix(8.0, 3.0, 1.5);
  const auto rule = sq::gauss_legendre(16);
  auto curve = sq::discretize(helix, panels, rule);
  sq::LineDensity density(sq::oscillating_force(helix.length()), curve.grid);
  return {std::move(curve), std::move(density), sq::build_weight_table(rule)};
}

struct SSetup {
  sq::PanelizedCurve curve;
  sq::LineDensity density;
  std::vector<sq::Vec3> points;
};

SSetup make_s_setup(int panels) {
  const auto helix = sq::make_helix(8.0, 3.0, 1.5);
  auto curve = sq::discretize(helix, panels, sq::gauss_legendre(16));
  sq::LineDensity density(sq::centerline_force(helix), curve.grid);
  sq::FieldGridSpec spec;
  spec.radial_count = 10;
  spec.angular_count = 10;
  spec.z_count = 4;
  std::vector<sq::Vec3> points;
  for (const auto& p : sq::helix_field_grid(helix, spec)) points.push_back(p.x);
  return {std::move(curve), std::move(density), std::move(points)};
}

void BM_apply_K_serial(benchmark::State& state) {
  const auto s = make_k_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sq::apply_K_serial(s.curve, s.density, s.table));
}

void BM_apply_K_omp(benchmark::State& state) {
  const auto s = make_k_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sq::apply_K(s.curve, s.density, s.table));
}

void BM_eval_S_serial(benchmark::State& state) {
  const auto s = make_s_setup(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sq::eval_S_many_serial(s.curve, s.density, s.points, sq::NearEvalConfig{}, nullptr));
}

void BM_eval_S_omp(benchmark::State& state) {
  const auto s = make_s_setup(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sq::eval_S_many(s.curve, s.density, s.points, sq::NearEvalConfig{}, nullptr));
}

}  // namespace

BENCHMARK(BM_apply_K_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_K_omp)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_S_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_S_omp)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
