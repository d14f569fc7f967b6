#include "crocker/rips.hpp"

#include <algorithm>
#include <cstddef>

#include "crocker/errors.hpp"

namespace crocker {

namespace {

bool simplex_order(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

// Row bitsets of the <= max_scale adjacency, one word block per 64 vertices.
std::vector<std::uint64_t> adjacency_bits(const DistanceMatrix& dm,
                                          double max_scale,
                                          std::size_t& words_out) {
  std::size_t n = dm.n;
  std::size_t words = (n + 63) / 64;
  words_out = words;
  std::vector<std::uint64_t> bits(n * words, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dm(i, j) <= max_scale)
        bits[i * words + j / 64] |= std::uint64_t(1) << (j % 64);
  return bits;
}

}  // namespace

Filtration build_vr_filtration(const DistanceMatrix& dm, double max_scale,
                               int max_dim) {
  if (max_dim < 0 || max_dim > 2)
    throw InvalidInput("build_vr_filtration: max_dim must be 0, 1 or 2");
  if (!(max_scale >= 0))
    throw InvalidInput("build_vr_filtration: max_scale must be >= 0");

  std::size_t n = dm.n;
  Filtration f;
  f.max_scale = max_scale;
  f.max_dim = max_dim;

  for (std::size_t i = 0; i < n; ++i)
    f.simplices.push_back({{static_cast<std::int32_t>(i), -1, -1}, 0, 0.0});

  if (max_dim >= 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (dm(i, j) <= max_scale)
          f.simplices.push_back({{static_cast<std::int32_t>(i),
                                  static_cast<std::int32_t>(j), -1},
                                 1, dm(i, j)});
  }

  if (max_dim >= 2 && n >= 3) {
    std::size_t words = 0;
    auto bits = adjacency_bits(dm, max_scale, words);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (dm(i, j) > max_scale) continue;
        // common neighbours k > j of i and j
        for (std::size_t w = (j + 1) / 64; w < words; ++w) {
          std::uint64_t common = bits[i * words + w] & bits[j * words + w];
          if (w == (j + 1) / 64 && (j + 1) % 64 != 0)
            common &= ~std::uint64_t(0) << ((j + 1) % 64);
          while (common) {
            std::size_t k = w * 64 + static_cast<std::size_t>(
                                         __builtin_ctzll(common));
            common &= common - 1;
            double value = std::max({dm(i, j), dm(i, k), dm(j, k)});
            f.simplices.push_back({{static_cast<std::int32_t>(i),
                                    static_cast<std::int32_t>(j),
                                    static_cast<std::int32_t>(k)},
                                   2, value});
          }
        }
      }
    }
  }

  std::sort(f.simplices.begin(), f.simplices.end(), simplex_order);
  return f;
}

namespace {

// GF(2) column rank; columns are bitsets over `words` 64-bit blocks.
std::int64_t gf2_rank(std::vector<std::vector<std::uint64_t>> columns) {
  std::int64_t rank = 0;
  // pivot row -> index of the column owning it
  std::vector<std::ptrdiff_t> owner;
  std::vector<std::size_t> pivot_row;
  auto top_bit = [](const std::vector<std::uint64_t>& col) -> std::ptrdiff_t {
    for (std::size_t w = col.size(); w-- > 0;)
      if (col[w]) return static_cast<std::ptrdiff_t>(
          w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(col[w])));
    return -1;
  };
  std::vector<std::ptrdiff_t> pivot_owner;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    std::ptrdiff_t row = top_bit(col);
    while (row >= 0) {
      if (pivot_owner.size() <= static_cast<std::size_t>(row))
        pivot_owner.resize(row + 1, -1);
      std::ptrdiff_t other = pivot_owner[row];
      if (other < 0) {
        pivot_owner[row] = static_cast<std::ptrdiff_t>(c);
        ++rank;
        break;
      }
      const auto& reducer = columns[static_cast<std::size_t>(other)];
      for (std::size_t w = 0; w < col.size(); ++w) col[w] ^= reducer[w];
      row = top_bit(col);
    }
  }
  return rank;
}

}  // namespace

BettiPair betti_numbers_at(const DistanceMatrix& dm, double epsilon,
                           int max_dim) {
  if (!(epsilon >= 0)) throw InvalidInput("betti_numbers_at: epsilon must be >= 0");
  Filtration f = build_vr_filtration(dm, epsilon, max_dim);

  std::size_t n = dm.n;
  std::size_t vertex_words = (n + 63) / 64;

  std::vector<std::vector<std::uint64_t>> d1_columns;
  std::vector<std::array<std::int32_t, 2>> edges;
  for (const auto& s : f.simplices) {
    if (s.dim != 1) continue;
    std::vector<std::uint64_t> col(vertex_words, 0);
    col[s.vertices[0] / 64] ^= std::uint64_t(1) << (s.vertices[0] % 64);
    col[s.vertices[1] / 64] ^= std::uint64_t(1) << (s.vertices[1] % 64);
    d1_columns.push_back(std::move(col));
    edges.push_back({s.vertices[0], s.vertices[1]});
  }
  std::int64_t edge_count = static_cast<std::int64_t>(edges.size());
  std::int64_t rank_d1 = gf2_rank(std::move(d1_columns));

  std::int64_t rank_d2 = 0;
  if (max_dim >= 2) {
    // edge (i,j) -> row index in d2
    std::vector<std::int64_t> edge_index(n * n, -1);
    for (std::size_t e = 0; e < edges.size(); ++e)
      edge_index[edges[e][0] * n + edges[e][1]] = static_cast<std::int64_t>(e);
    std::size_t edge_words = (edges.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> d2_columns;
    for (const auto& s : f.simplices) {
      if (s.dim != 2) continue;
      std::vector<std::uint64_t> col(edge_words, 0);
      const std::array<std::array<std::int32_t, 2>, 3> faces = {{
          {s.vertices[0], s.vertices[1]},
          {s.vertices[0], s.vertices[2]},
          {s.vertices[1], s.vertices[2]},
      }};
      for (const auto& face : faces) {
        std::int64_t e = edge_index[face[0] * n + face[1]];
        col[e / 64] ^= std::uint64_t(1) << (e % 64);
      }
      d2_columns.push_back(std::move(col));
    }
    rank_d2 = gf2_rank(std::move(d2_columns));
  }

  BettiPair betti;
  betti.b0 = static_cast<std::int64_t>(n) - rank_d1;
  betti.b1 = edge_count - rank_d1 - rank_d2;
  return betti;
}

}  // namespace crocker
