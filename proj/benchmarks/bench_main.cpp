#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hcdeval/calibration.hpp"
#include "hcdeval/conllu.hpp"
#include "hcdeval/geometry.hpp"
#include "hcdeval/stats.hpp"
#include "hcdeval/tokenize.hpp"

namespace {

using namespace hcdeval;

std::vector<embed::Vector> random_units(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<embed::Vector> out(n, embed::Vector(dim));
  for (auto& v : out) {
    double s = 0;
    for (double& x : v) s += (x = g(rng)) * x;
    for (double& x : v) x /= std::sqrt(s);
  }
  return out;
}

// One cell: bounds from 10 humans against 29 other images, then d_HM.
void BM_HcdCell(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto humans = random_units(10, dim, rng);
  const auto models = random_units(5, dim, rng);
  std::vector<embed::Vector> others;
  for (int i = 0; i < 29; ++i) others.push_back(calib::human_centroid(random_units(10, dim, rng)));
  for (auto _ : state) {
    calib::CalibrationBounds b;
    b.centroid = calib::human_centroid(humans);
    b.lb = calib::lower_bound(humans);
    b.ub = calib::upper_bound(humans, others);
    benchmark::DoNotOptimize(calib::compute_hcd(models, b));
  }
}
BENCHMARK(BM_HcdCell)->Arg(384)->Arg(1024);

void BM_KnnPurity(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  geometry::Matrix m(n, 50);
  for (double& x : m.data) x = g(rng);
  std::vector<std::string> labels, ids;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i % 8));
    ids.push_back("r" + std::to_string(i));
  }
  const std::vector<double> ks = {0.1, 0.2, 0.3, 0.4, 0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::k_sweep({&m, labels, ids, "s", geometry::LabelLevel::Fine}, ks));
}
BENCHMARK(BM_KnnPurity)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Tokenize(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 200; ++i) text += "The kitchen's wide door opens onto a sunlit hall. You could sit by the window! ";
  for (auto _ : state) benchmark::DoNotOptimize(text::tokenize(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize);

void BM_WilcoxonExact25(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.2, 1.0);
  std::vector<double> d(25);
  for (double& x : d) x = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(d));
}
BENCHMARK(BM_WilcoxonExact25);

void BM_ConlluParse(benchmark::State& state) {
  std::ostringstream doc;
  for (int s = 0; s < 500; ++s) {
    doc << "# sent_id = s" << s << "\n"
        << "1\tYou\tyou\tPRON\tPRP\t_\t3\tnsubj\t_\t_\n"
        << "2\tcan\tcan\tAUX\tMD\t_\t3\taux\t_\t_\n"
        << "3\tsit\tsit\tVERB\tVB\t_\t0\troot\t_\t_\n"
        << "4\ton\ton\tADP\tIN\t_\t6\tcase\t_\t_\n"
        << "5\tthe\tthe\tDET\tDT\t_\t6\tdet\t_\t_\n"
        << "6\tbench\tbench\tNOUN\tNN\t_\t3\tobl\t_\t_\n"
        << "7\t.\t.\tPUNCT\t.\t_\t3\tpunct\t_\t_\n\n";
  }
  const std::string text = doc.str();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(syntax::read_conllu(in, "bench"));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ConlluParse);

}  // namespace

BENCHMARK_MAIN();
