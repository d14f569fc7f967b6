#include "crocker/persistence.hpp"

#include <algorithm>
#include <unordered_map>

#include "crocker/errors.hpp"

namespace crocker {

namespace {

// 21 bits per vertex index; enough for any cloud this library handles.
std::uint64_t simplex_key(const Simplex& s) {
  return (static_cast<std::uint64_t>(s.vertices[0] + 1) << 42) |
         (static_cast<std::uint64_t>(s.vertices[1] + 1) << 21) |
         static_cast<std::uint64_t>(s.vertices[2] + 1);
}

std::uint64_t edge_key(std::int32_t a, std::int32_t b) {
  Simplex s{{a, b, -1}, 1, 0.0};
  return simplex_key(s);
}

struct UnionFind {
  std::vector<std::int32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::int32_t>(i);
  }

  std::int32_t find(std::int32_t v) {
    std::int32_t root = v;
    while (parent[root] != root) root = parent[root];
    while (parent[v] != root) {
      std::int32_t next = parent[v];
      parent[v] = root;
      v = next;
    }
    return root;
  }
};

// Sorted symmetric difference, ascending simplex positions.
std::vector<std::int32_t> symdiff(const std::vector<std::int32_t>& a,
                                  const std::vector<std::int32_t>& b) {
  std::vector<std::int32_t> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) out.push_back(a[i++]);
    else if (b[j] < a[i]) out.push_back(b[j++]);
    else { ++i; ++j; }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

}  // namespace

Barcode compute_ph(const Filtration& f) {
  const auto& simplices = f.simplices;
  std::size_t count = simplices.size();

  // position of every simplex, and the face-before-coface check
  std::unordered_map<std::uint64_t, std::int32_t> position;
  position.reserve(count * 2);
  std::size_t vertex_count = 0;
  for (std::size_t p = 0; p < count; ++p) {
    const Simplex& s = simplices[p];
    if (p > 0) {
      const Simplex& prev = simplices[p - 1];
      if (s.value < prev.value ||
          (s.value == prev.value && s.dim < prev.dim))
        throw InvalidInput("compute_ph: filtration not sorted by (value, dim)");
    }
    if (s.dim == 0) ++vertex_count;
    if (s.dim >= 1) {
      const std::int32_t a = s.vertices[0], b = s.vertices[1], c = s.vertices[2];
      std::array<std::uint64_t, 3> faces;
      std::size_t nfaces = 0;
      if (s.dim == 1) {
        Simplex va{{a, -1, -1}, 0, 0.0}, vb{{b, -1, -1}, 0, 0.0};
        faces[nfaces++] = simplex_key(va);
        faces[nfaces++] = simplex_key(vb);
      } else {
        faces[nfaces++] = edge_key(a, b);
        faces[nfaces++] = edge_key(a, c);
        faces[nfaces++] = edge_key(b, c);
      }
      for (std::size_t i = 0; i < nfaces; ++i) {
        auto it = position.find(faces[i]);
        if (it == position.end())
          throw InvalidInput("compute_ph: face appears after its coface");
      }
    }
    position.emplace(simplex_key(s), static_cast<std::int32_t>(p));
  }

  Barcode barcode;
  barcode.max_scale = f.max_scale;

  // Dimension 0: union-find over edges in order; the younger component dies
  // at each merge, the survivors get death = inf. Vertex births are the
  // vertex filtration values (0 for Vietoris-Rips).
  UnionFind uf(vertex_count);
  std::vector<double> component_birth(vertex_count, 0.0);
  for (std::size_t p = 0; p < count; ++p) {
    const Simplex& s = simplices[p];
    if (s.dim == 0) component_birth[s.vertices[0]] = s.value;
  }

  std::vector<std::size_t> creator_edges;  // positions of cycle-creating edges
  for (std::size_t p = 0; p < count; ++p) {
    const Simplex& s = simplices[p];
    if (s.dim != 1) continue;
    std::int32_t ra = uf.find(s.vertices[0]);
    std::int32_t rb = uf.find(s.vertices[1]);
    if (ra == rb) {
      creator_edges.push_back(p);
      continue;
    }
    // elder rule: later birth dies; equal births resolved by larger root
    std::int32_t young =
        (component_birth[ra] > component_birth[rb]) ? ra
        : (component_birth[rb] > component_birth[ra]) ? rb
        : std::max(ra, rb);
    std::int32_t old = (young == ra) ? rb : ra;
    if (component_birth[young] != s.value)
      barcode.intervals.push_back({0, component_birth[young], s.value});
    uf.parent[young] = old;
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (uf.find(static_cast<std::int32_t>(v)) == static_cast<std::int32_t>(v))
      barcode.intervals.push_back({0, component_birth[v], kInf});

  // Dimension 1: reduce triangle boundary columns; a column's final low is
  // always a cycle-creating edge, which dies at the triangle's value.
  std::unordered_map<std::int32_t, std::vector<std::int32_t>> pivot_column;
  std::vector<bool> edge_paired(count, false);
  for (std::size_t p = 0; p < count; ++p) {
    const Simplex& s = simplices[p];
    if (s.dim != 2) continue;
    std::vector<std::int32_t> column = {
        position.at(edge_key(s.vertices[0], s.vertices[1])),
        position.at(edge_key(s.vertices[0], s.vertices[2])),
        position.at(edge_key(s.vertices[1], s.vertices[2]))};
    std::sort(column.begin(), column.end());
    while (!column.empty()) {
      std::int32_t low = column.back();
      auto it = pivot_column.find(low);
      if (it == pivot_column.end()) {
        const Simplex& edge = simplices[low];
        if (edge.value != s.value)
          barcode.intervals.push_back({1, edge.value, s.value});
        edge_paired[low] = true;
        pivot_column.emplace(low, std::move(column));
        break;
      }
      column = symdiff(column, it->second);
    }
  }
  for (std::size_t p : creator_edges)
    if (!edge_paired[p])
      barcode.intervals.push_back({1, simplices[p].value, kInf});

  std::sort(barcode.intervals.begin(), barcode.intervals.end(),
            [](const PersistenceInterval& a, const PersistenceInterval& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return barcode;
}

Barcode vr_barcode(const DistanceMatrix& dm, double max_scale, int max_dim) {
  return compute_ph(build_vr_filtration(dm, max_scale, max_dim));
}

std::int64_t rank_between(const Barcode& b, int dim, double i, double j) {
  if (i > j) throw InvalidInput("rank_between: need i <= j");
  std::int64_t count = 0;
  for (const auto& interval : b.intervals)
    if (interval.dim == dim && interval.birth <= i && interval.death >= j)
      ++count;
  return count;
}

std::int64_t rank_function(const Barcode& b, int dim, double epsilon,
                           double alpha) {
  if (!(alpha >= 0)) throw InvalidInput("rank_function: alpha must be >= 0");
  return rank_between(b, dim, epsilon - alpha, epsilon + alpha);
}

}  // namespace crocker
