#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crocker/errors.hpp"
#include "crocker/rng.hpp"
#include "crocker/summaries.hpp"

using namespace crocker;

namespace {

Barcode single_bar(int dim, double birth, double death, double max_scale) {
  Barcode b;
  b.max_scale = max_scale;
  b.intervals = {{dim, birth, death}};
  return b;
}

BarcodeSeries one_slice(Barcode b) {
  BarcodeSeries s;
  s.times = {0.0};
  s.barcodes = {std::move(b)};
  return s;
}

DistanceMatrix all_equal(std::size_t n, double d) {
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dm.set_symmetric(i, j, d);
  return dm;
}

PointCloud random_cloud(Rng& rng, int n, int dim) {
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (auto& x : p) x = rng.uniform();
    c.points.push_back(std::move(p));
  }
  return c;
}

BarcodeSeries series_of(const std::vector<PointCloud>& clouds,
                        double max_scale) {
  BarcodeSeries s;
  for (std::size_t t = 0; t < clouds.size(); ++t) {
    s.times.push_back(static_cast<double>(t));
    s.barcodes.push_back(
        vr_barcode(pairwise_distances(clouds[t]), max_scale, 2));
  }
  return s;
}

}  // namespace

TEST_CASE("experiment preset grid") {
  auto grid = ScaleGrid::experiment_preset();
  REQUIRE(grid.epsilons.size() == 50);
  CHECK(grid.epsilons.front() == 0.0);
  CHECK(grid.epsilons.back() == doctest::Approx(0.35));
  REQUIRE(grid.alphas.size() == 18);
  CHECK(grid.alphas.front() == 0.0);
  CHECK(grid.alphas.back() == doctest::Approx(0.17));
}

TEST_CASE("crocker_plot basics") {
  ScaleGrid grid;
  grid.epsilons = ScaleGrid::linspace(0.0, 1.0, 5);
  grid.alphas = {0.0};

  auto plot = crocker_plot(one_slice(single_bar(0, 0.0, kInf, 2.0)), grid, 0);
  for (auto v : plot.values) CHECK(v == 1);
  CHECK(plot.alpha == 0.0);

  // scale grid past the computed range is an error
  ScaleGrid wide;
  wide.epsilons = ScaleGrid::linspace(0.0, 3.0, 4);
  CHECK_THROWS_AS(
      crocker_plot(one_slice(single_bar(0, 0.0, kInf, 2.0)), wide, 0),
      InvalidInput);
}

TEST_CASE("crocker value at scale 0 counts the points") {
  Rng rng(3);
  auto cloud = random_cloud(rng, 7, 2);
  auto series = series_of({cloud}, 2.0);
  ScaleGrid grid;
  grid.epsilons = {0.0, 0.5};
  auto plot = crocker_plot(series, grid, 0);
  CHECK(plot.value(0, 0) == 7);
}

TEST_CASE("instability example: 1 versus 4 components") {
  double delta = 0.1;
  ScaleGrid grid;
  grid.epsilons = {1.0 + delta / 2.0};
  auto tight = one_slice(vr_barcode(all_equal(4, 1.0), 2.0, 1));
  auto loose = one_slice(vr_barcode(all_equal(4, 1.0 + delta), 2.0, 1));
  CHECK(crocker_plot(tight, grid, 0).value(0, 0) == 1);
  CHECK(crocker_plot(loose, grid, 0).value(0, 0) == 4);
}

TEST_CASE("alpha smoothing drops short bars") {
  auto series = one_slice(single_bar(0, 0.0, 0.05, 1.0));

  ScaleGrid g1;
  g1.epsilons = {0.03};
  CHECK(alpha_smoothed_plot(series, g1, 0, 0.03).value(0, 0) == 0);

  ScaleGrid g2;
  g2.epsilons = {0.025};
  CHECK(alpha_smoothed_plot(series, g2, 0, 0.02).value(0, 0) == 1);

  // alpha = 0 reproduces the plain plot exactly
  ScaleGrid g3;
  g3.epsilons = ScaleGrid::linspace(0.0, 0.3, 7);
  CHECK(alpha_smoothed_plot(series, g3, 0, 0.0).values ==
        crocker_plot(series, g3, 0).values);
}

TEST_CASE("crocker_stack on a single long bar") {
  ScaleGrid grid;
  grid.epsilons = {5.0};
  grid.alphas = {0, 1, 2, 3, 4, 5, 6};
  auto stack = crocker_stack(one_slice(single_bar(0, 0.0, 10.0, 20.0)), grid, 0);
  for (std::size_t a = 0; a < grid.alphas.size(); ++a)
    CHECK(stack.value(0, 0, a) == (grid.alphas[a] <= 5.0 ? 1 : 0));
}

TEST_CASE("stack monotonicity and slice consistency on random data") {
  Rng rng(17);
  ScaleGrid grid;
  grid.epsilons = ScaleGrid::linspace(0.0, 0.9, 12);
  grid.alphas = ScaleGrid::linspace(0.0, 0.3, 7);

  std::vector<PointCloud> clouds;
  for (int t = 0; t < 4; ++t) clouds.push_back(random_cloud(rng, 10, 2));
  auto series = series_of(clouds, 1.3);

  for (int dim : {0, 1}) {
    auto stack = crocker_stack(series, grid, dim);
    for (std::size_t t = 0; t < stack.times.size(); ++t)
      for (std::size_t e = 0; e < stack.epsilons.size(); ++e)
        for (std::size_t a = 0; a + 1 < stack.alphas.size(); ++a)
          CHECK(stack.value(t, e, a) >= stack.value(t, e, a + 1));

    auto plot = crocker_plot(series, grid, dim);
    CHECK(stack.slice(0).values == plot.values);
    CHECK(stack.slice(0).alpha == 0.0);
  }
}

TEST_CASE("H0 columns are nonincreasing in scale and end at 1") {
  Rng rng(23);
  ScaleGrid grid;
  grid.epsilons = ScaleGrid::linspace(0.0, 1.8, 20);  // beyond the diameter
  auto series = series_of({random_cloud(rng, 12, 2)}, 2.0);
  auto plot = crocker_plot(series, grid, 0);
  for (std::size_t e = 0; e + 1 < grid.epsilons.size(); ++e)
    CHECK(plot.value(0, e) >= plot.value(0, e + 1));
  CHECK(plot.value(0, grid.epsilons.size() - 1) == 1);
}

TEST_CASE("continuity: perturbed stacks dominate after a grid-snapped shift") {
  Rng rng(29);
  ScaleGrid grid;
  grid.epsilons = ScaleGrid::linspace(0.0, 0.8, 9);
  grid.alphas = ScaleGrid::linspace(0.0, 0.5, 26);  // step 0.02
  double alpha_step = grid.alphas[1] - grid.alphas[0];

  for (int rep = 0; rep < 6; ++rep) {
    double h = (rep % 2 == 0) ? 0.01 : 0.05;
    std::vector<PointCloud> base, moved;
    for (int t = 0; t < 3; ++t) {
      auto cloud = random_cloud(rng, 9, 2);
      auto shifted = cloud;
      for (auto& p : shifted.points)
        for (auto& x : p) x += rng.uniform(-h / std::sqrt(2.0), h / std::sqrt(2.0));
      base.push_back(std::move(cloud));
      moved.push_back(std::move(shifted));
    }
    double max_scale = 2.5;
    auto sx = series_of(base, max_scale);
    auto sy = series_of(moved, max_scale);

    double delta = 2.0 * h;
    auto shift = static_cast<std::size_t>(std::ceil(delta / alpha_step - 1e-12));

    for (int dim : {0, 1}) {
      auto fx = crocker_stack(sx, grid, dim);
      auto fy = crocker_stack(sy, grid, dim);
      for (std::size_t t = 0; t < fx.times.size(); ++t)
        for (std::size_t e = 0; e < fx.epsilons.size(); ++e)
          for (std::size_t a = 0; a + shift < fx.alphas.size(); ++a) {
            if (fx.epsilons[e] + fx.alphas[a + shift] > max_scale) continue;
            CHECK(fx.value(t, e, a + shift) <= fy.value(t, e, a));
            CHECK(fy.value(t, e, a + shift) <= fx.value(t, e, a));
          }
    }
  }
}

TEST_CASE("vectorize flattens row-major, stacks concatenate alpha slices") {
  CrockerPlot plot;
  plot.times = {0.0, 1.0};
  plot.epsilons = {0.1, 0.2};
  plot.values = {1, 2, 3, 4};
  CHECK(vectorize(plot) == std::vector<double>{1, 2, 3, 4});

  ScaleGrid grid;
  grid.epsilons = ScaleGrid::linspace(0.0, 1.0, 6);
  grid.alphas = {0.0, 0.1, 0.2};
  auto stack = crocker_stack(one_slice(single_bar(0, 0.0, kInf, 2.0)), grid, 0);
  auto flat = vectorize_stack(stack);
  REQUIRE(flat.size() == 18);
  auto s0 = vectorize(stack.slice(0));
  auto s1 = vectorize(stack.slice(1));
  auto s2 = vectorize(stack.slice(2));
  CHECK(flat == concat_dims(concat_dims(s0, s1), s2));
}

TEST_CASE("concat_dims") {
  CHECK(concat_dims({1}, {2}) == std::vector<double>{1, 2});
  CHECK(concat_dims({}, {3, 4}) == std::vector<double>{3, 4});
  CHECK(concat_dims(std::vector<double>(10050, 0.0),
                    std::vector<double>(10050, 1.0))
            .size() == 20100);
}
