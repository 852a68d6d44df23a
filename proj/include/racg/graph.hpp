#pragma once

#include <boost/dynamic_bitset.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "racg/error.hpp"

namespace racg {

using Bitset = boost::dynamic_bitset<>;

/// Finite simple graph with string-named vertices. Vertices are stored in
/// canonical (lexicographic) order; all bitset positions refer to that order.
/// Immutable after construction.
class Graph {
public:
  Graph(std::vector<std::string> vertices,
        const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name_of(int v) const { return names_.at(v); }
  int index_of(const std::string& name) const;
  std::optional<int> find(const std::string& name) const;
  bool has_vertex(const std::string& name) const { return find(name).has_value(); }

  bool adjacent(int u, int v) const { return adj_[u].test(v); }
  const Bitset& link(int v) const { return adj_[v]; }
  Bitset star(int v) const;
  Bitset neighborhood(const std::string& v, bool closed) const;

  Bitset full() const;
  size_t edge_count() const;
  std::vector<std::pair<int, int>> edge_list() const;

  bool is_clique(const Bitset& s) const;
  Graph induced(const Bitset& s) const;

  /// Inclusion-maximal cliques, canonically ordered (lexicographic on the
  /// sorted member-name sequences). Pivoting Bron-Kerbosch underneath.
  std::vector<Bitset> maximal_cliques() const;

  /// All nonempty cliques, canonically ordered.
  std::vector<Bitset> all_cliques(size_t limit = 1u << 20) const;

  /// Connected components of the induced subgraph on `within`.
  std::vector<Bitset> components(const Bitset& within) const;

  Bitset subset_by_names(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const Bitset& s) const;

  bool same_labeled(const Graph& other) const;

private:
  std::vector<std::string> names_;
  std::vector<Bitset> adj_;
};

/// Adjacency-preserving bijection from g to h (forward[i] = image of g's
/// vertex i in h), or nullopt. Backtracking with iterated degree refinement;
/// intended for small graphs. Throws ResourceLimit above `max_vertices`.
std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h,
                                                 int max_vertices = 16);

inline bool is_isomorphic(const Graph& g, const Graph& h, int max_vertices = 16) {
  return find_isomorphism(g, h, max_vertices).has_value();
}

}  // namespace racg
