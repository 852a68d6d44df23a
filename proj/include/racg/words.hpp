#pragma once

#include "racg/graph.hpp"

namespace racg {

/// Word in the right-angled Coxeter group over a defining graph: a sequence
/// of generator indices. Every generator is an involution, so there are no
/// exponents and inverses are letter reversals.
using Word = std::vector<int>;

class RacgContext {
public:
  explicit RacgContext(Graph g) : graph_(std::move(g)) {}

  const Graph& graph() const { return graph_; }
  bool commuting(int a, int b) const { return graph_.adjacent(a, b); }

  /// Shortlex-least word equal to w: reduce to a geodesic by the deletion
  /// condition, then greedily extract the least available letter. All
  /// geodesics of one element differ only by commuting swaps here, so the
  /// result is a true normal form.
  Word normal_form(const Word& w) const;

  bool is_identity(const Word& w) const { return normal_form(w).empty(); }
  bool is_involution(const Word& w) const;
  bool commutes(const Word& u, const Word& v) const;

  /// The unique set of pairwise commuting generators whose product is
  /// conjugate to the involution w: the support of its mod-2 abelianization.
  /// Throws if w is not an involution or the support fails to be a clique.
  Bitset involution_class_rep(const Word& w) const;

  Word parse_word(const std::string& text) const;  // space-separated names
  std::string word_text(const Word& w) const;

private:
  Word reduce(Word w) const;
  Graph graph_;
};

}  // namespace racg
