#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crocker/metric.hpp"
#include "crocker/rips.hpp"
#include "crocker/rng.hpp"

using namespace crocker;

namespace {

DistanceMatrix all_equal(std::size_t n, double d) {
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dm.set_symmetric(i, j, d);
  return dm;
}

DistanceMatrix unit_square() {
  PointCloud c;
  c.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  return pairwise_distances(c);
}

DistanceMatrix random_dm(Rng& rng, int n, int dim) {
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (auto& x : p) x = rng.uniform();
    c.points.push_back(std::move(p));
  }
  return pairwise_distances(c);
}

std::size_t count_dim(const Filtration& f, int dim) {
  return static_cast<std::size_t>(
      std::count_if(f.simplices.begin(), f.simplices.end(),
                    [dim](const Simplex& s) { return s.dim == dim; }));
}

// independent beta0: union-find over edges at scale epsilon
std::int64_t beta0_union_find(const DistanceMatrix& dm, double epsilon) {
  std::vector<std::size_t> parent(dm.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::int64_t components = static_cast<std::int64_t>(dm.n);
  for (std::size_t i = 0; i < dm.n; ++i)
    for (std::size_t j = i + 1; j < dm.n; ++j)
      if (dm(i, j) <= epsilon) {
        auto a = find(i), b = find(j);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
  return components;
}

}  // namespace

TEST_CASE("build_vr_filtration small cases") {
  auto single = build_vr_filtration(all_equal(1, 0), 1.0, 2);
  CHECK(single.simplices.size() == 1);
  CHECK(single.simplices[0].dim == 0);

  auto triangle = build_vr_filtration(all_equal(3, 1.0), 1.0, 2);
  CHECK(count_dim(triangle, 0) == 3);
  CHECK(count_dim(triangle, 1) == 3);
  CHECK(count_dim(triangle, 2) == 1);
  for (const auto& s : triangle.simplices)
    if (s.dim > 0) CHECK(s.value == 1.0);

  auto square = build_vr_filtration(unit_square(), 1.2, 2);
  CHECK(count_dim(square, 0) == 4);
  CHECK(count_dim(square, 1) == 4);  // side 1, diagonals sqrt(2) > 1.2
  CHECK(count_dim(square, 2) == 0);
}

TEST_CASE("complete complex simplex counts") {
  Rng rng(5);
  for (std::size_t n : {4u, 7u, 11u}) {
    auto dm = random_dm(rng, static_cast<int>(n), 3);
    auto f = build_vr_filtration(dm, 2.0, 2);  // everything within sqrt(3)
    CHECK(count_dim(f, 1) == n * (n - 1) / 2);
    CHECK(count_dim(f, 2) == n * (n - 1) * (n - 2) / 6);
  }
}

TEST_CASE("filtration puts every face before its cofaces") {
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    auto dm = random_dm(rng, 8, 2);
    auto f = build_vr_filtration(dm, rng.uniform(0.2, 1.5), 2);
    for (std::size_t p = 1; p < f.simplices.size(); ++p) {
      const auto& prev = f.simplices[p - 1];
      const auto& cur = f.simplices[p];
      bool ordered = prev.value < cur.value ||
                     (prev.value == cur.value &&
                      (prev.dim < cur.dim ||
                       (prev.dim == cur.dim && prev.vertices < cur.vertices)));
      CHECK(ordered);
      CHECK(cur.value <= f.max_scale);
    }
    // every face of every simplex appears earlier
    auto position_of = [&](std::int32_t a, std::int32_t b) {
      for (std::size_t p = 0; p < f.simplices.size(); ++p) {
        const auto& s = f.simplices[p];
        if (s.dim == 1 && s.vertices[0] == a && s.vertices[1] == b) return p;
      }
      return f.simplices.size();
    };
    for (std::size_t p = 0; p < f.simplices.size(); ++p) {
      const auto& s = f.simplices[p];
      if (s.dim != 2) continue;
      CHECK(position_of(s.vertices[0], s.vertices[1]) < p);
      CHECK(position_of(s.vertices[0], s.vertices[2]) < p);
      CHECK(position_of(s.vertices[1], s.vertices[2]) < p);
    }
  }
}

TEST_CASE("betti oracle on the instability example") {
  double delta = 0.1;
  double eps = 1.0 + delta / 2.0;
  CHECK(betti_numbers_at(all_equal(4, 1.0), eps, 2).b0 == 1);
  CHECK(betti_numbers_at(all_equal(4, 1.0 + delta), eps, 2).b0 == 4);
}

TEST_CASE("betti oracle on the unit square") {
  auto betti = betti_numbers_at(unit_square(), 1.0, 2);
  CHECK(betti.b0 == 1);
  CHECK(betti.b1 == 1);  // 4-cycle, diagonals absent

  auto filled = betti_numbers_at(unit_square(), std::sqrt(2.0), 2);
  CHECK(filled.b0 == 1);
  CHECK(filled.b1 == 0);
}

TEST_CASE("beta0 is nonincreasing and reaches 1 at the diameter") {
  Rng rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    auto dm = random_dm(rng, 9, 2);
    double diameter = dm.max_entry();
    std::int64_t prev = -1;
    for (double eps = 0.0; eps <= diameter + 0.1; eps += diameter / 7.0) {
      auto betti = betti_numbers_at(dm, eps, 2);
      if (prev >= 0) CHECK(betti.b0 <= prev);
      CHECK(betti.b0 == beta0_union_find(dm, eps));
      prev = betti.b0;
    }
    CHECK(betti_numbers_at(dm, diameter, 2).b0 == 1);
  }
}
