#pragma once

#include <functional>
#include <optional>

#include "racg/graph.hpp"

namespace racg {

/// The clique graph Gamma_K: one vertex per nonempty clique of the base
/// graph, two vertices adjacent iff the union of their cliques is again a
/// clique. labels[i] is the base-graph clique behind vertex i of `graph`.
struct CliqueGraph {
  Graph graph;
  std::vector<Bitset> labels;
};

CliqueGraph clique_graph(const Graph& g);

/// Partition of the vertices by star equality, ordered by star containment.
/// Classes are canonically ordered by least member index.
struct StarPoset {
  std::vector<Bitset> classes;            // members of each class
  std::vector<Bitset> class_star;         // common St(v) of the class
  std::vector<int> class_of;              // vertex -> class index
  std::vector<Bitset> leq;                // bit j of leq[i]: [i] <= [j]
  std::vector<std::pair<int, int>> hasse; // cover pairs (lower, upper)

  int num_classes() const { return static_cast<int>(classes.size()); }
  bool less_eq(int a, int b) const { return leq[a].test(b); }
};

StarPoset star_poset(const Graph& g);

/// S_v: union of all classes >= c. Always a clique when the conditions hold.
Bitset clique_above(const StarPoset& p, int c);

/// One nonempty intersection of maximal cliques. index_set is the maximal
/// (closed) set of maximal-clique indices cutting out this content; k is
/// log2(|content| + 1), or -1 when |content| + 1 is not a power of two.
struct IntersectionInfo {
  Bitset index_set;
  Bitset content;
  long k = -1;
};

struct IEFailure {
  Bitset index_set;  // the J where the inequality breaks
  long lhs = 0;
  long rhs = 0;
};

struct ConditionReport {
  std::vector<Bitset> maximal_cliques;
  std::vector<IntersectionInfo> intersections;
  std::vector<IntersectionInfo> mc_failures;  // |content|+1 not a power of 2
  std::vector<Bitset> mv_failures;            // index sets J with no J-minimal vertex
  std::vector<IEFailure> ie_failures;

  bool maximal_clique_ok() const { return mc_failures.empty(); }
  bool minimal_vertex_ok() const { return mv_failures.empty(); }
  bool inclusion_exclusion_ok() const { return ie_failures.empty(); }
  bool ok() const {
    return maximal_clique_ok() && minimal_vertex_ok() && inclusion_exclusion_ok();
  }
};

/// Evaluates the three conditions characterizing clique graphs. The
/// inclusion-exclusion sum is only evaluated when the maximal clique
/// condition holds (its k values would be meaningless otherwise).
ConditionReport check_conditions(const Graph& g);

/// Thrown by collapse when check_conditions fails.
class ConditionError : public Error {
public:
  explicit ConditionError(ConditionReport r)
      : Error(ErrorCode::Validation, "graph fails the clique-graph conditions"),
        report(std::move(r)) {}
  ConditionReport report;
};

/// Picks `need` members of a star class (given in canonical order) during
/// collapse. Must return exactly `need` distinct members.
using Chooser = std::function<std::vector<int>(const std::vector<int>& members, int need)>;

/// The collapsing procedure: walks the star poset from maximal classes
/// downward, at each class [w] with |S_w| = 2^k - 1 and k' already-chosen
/// vertices in S_w choosing k - k' members, and returns the induced
/// subgraph on everything chosen. Default chooser takes the first members
/// in canonical order. Throws ConditionError when the conditions fail.
Graph collapse(const Graph& g);
Graph collapse_with(const Graph& g, const Chooser& choose);

}  // namespace racg
