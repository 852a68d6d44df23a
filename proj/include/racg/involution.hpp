#pragma once

#include <memory>
#include <optional>

#include "racg/abelian.hpp"
#include "racg/words.hpp"

namespace racg {

/// Word over named generators (generator sets here mix graph vertices with
/// partial-conjugation names). All generators in play are involutions, so
/// inverses are reversals.
using WordS = std::vector<std::string>;

WordS reversed(const WordS& w);
std::string joined(const WordS& w, const std::string& sep = " ");

/// Word-problem oracle over a fixed generating set. key() must return a
/// canonical string: two words are equal in the group iff their keys match.
class GroupEvaluator {
public:
  virtual ~GroupEvaluator() = default;
  virtual const std::vector<std::string>& generators() const = 0;
  virtual std::string key(const WordS& w) const = 0;
  virtual GF2Vector ab_image(const WordS& w) const = 0;

  bool is_identity(const WordS& w) const { return key(w) == identity_key(); }
  bool equal(const WordS& u, const WordS& v) const { return key(u) == key(v); }
  bool is_involution(const WordS& w) const;
  bool commutes(const WordS& u, const WordS& v) const;

protected:
  std::string identity_key() const { return key({}); }
};

class RacgEvaluator : public GroupEvaluator {
public:
  explicit RacgEvaluator(RacgContext ctx) : ctx_(std::move(ctx)) {
    for (const auto& n : ctx_.graph().names()) gens_.push_back(n);
  }
  const std::vector<std::string>& generators() const override { return gens_; }
  std::string key(const WordS& w) const override;
  GF2Vector ab_image(const WordS& w) const override;
  const RacgContext& context() const { return ctx_; }

private:
  RacgContext ctx_;
  std::vector<std::string> gens_;
};

enum class Provenance { Exact, Hypothetical, UserSupplied };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

/// Involution graph: one vertex per conjugacy class of involutions, edges
/// where commuting representatives exist. labels[i] / ab[i] follow the
/// vertex order of `graph`.
struct InvolutionGraph {
  Graph graph;
  std::vector<WordS> labels;
  std::vector<GF2Vector> ab;
  Provenance provenance = Provenance::Exact;
};

/// Exact involution graph of a RACG: the clique graph with product labels
/// and characteristic ab vectors.
InvolutionGraph involution_graph_racg(const RacgContext& ctx);

/// Edge {x,y} iff some class z has ab(z) = ab(x) + ab(y). Throws on
/// duplicate ab vectors.
std::vector<std::pair<int, int>> hypothetical_edges(
    const std::vector<std::pair<WordS, GF2Vector>>& classes);

/// Assembles an InvolutionGraph from a class list via hypothetical_edges.
/// Vertex names are the concatenated label tokens.
InvolutionGraph involution_graph_from_classes(
    const std::vector<std::pair<WordS, GF2Vector>>& classes, Provenance prov);

struct FullSystemReport {
  std::vector<int> non_involutions;          // vertex indices
  std::vector<std::pair<int, int>> bad_edges;  // edges whose labels don't commute
  bool ok() const { return non_involutions.empty() && bad_edges.empty(); }
};

FullSystemReport validate_full_system(const InvolutionGraph& ig,
                                      const GroupEvaluator& eval);

/// All involution classes found among words of length <= radius, merged by
/// conjugator search within the same radius. Sound but not necessarily
/// complete; callers must flag results as heuristic.
std::vector<std::pair<WordS, GF2Vector>> bounded_involution_enumeration(
    const GroupEvaluator& eval, int radius);

/// Bounded search for a loop: a vertex whose label commutes with a distinct
/// conjugate of itself (conjugators up to the radius). Returns (vertex,
/// conjugator) or nothing. Incomplete in the negative direction.
std::optional<std::pair<int, WordS>> find_loop(const InvolutionGraph& ig,
                                               const GroupEvaluator& eval, int radius);

}  // namespace racg
