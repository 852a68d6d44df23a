#pragma once

#include "racg/involution.hpp"

namespace racg {

/// Partial conjugation: conjugate the vertices of `domain` by `acting`.
/// Valid only when the domain is a nonempty union of connected components
/// of the graph minus St(acting).
struct PartialConjugation {
  std::string name;
  std::string acting;
  std::vector<std::string> domain;
};

struct PCFamily {
  Graph graph;
  std::vector<PartialConjugation> pcs;
};

/// Empty string when valid, otherwise a human-readable reason.
std::string pc_invalid_reason(const Graph& g, const PartialConjugation& pc);
void validate_pc(const Graph& g, const PartialConjugation& pc);  // throws
void validate_family(const PCFamily& fam);                       // throws

/// Automorphism given by the images of all generators (RACG normal forms).
using Automorphism = std::vector<Word>;

Automorphism pc_automorphism(const RacgContext& ctx, const PartialConjugation& pc);
Automorphism identity_automorphism(const Graph& g);
Word apply_automorphism(const RacgContext& ctx, const Automorphism& h, const Word& w);
Automorphism compose(const RacgContext& ctx, const Automorphism& f, const Automorphism& g);

/// Exact commutation test: compares both compositions generator-by-generator.
bool pcs_commute(const RacgContext& ctx, const PartialConjugation& x,
                 const PartialConjugation& y);

/// Generators: graph vertices then pc names. Relators: generator squares,
/// edge commutators, pc squares, pc-pc commutators for pairs that actually
/// commute, pc-generator commutators off-domain, and the conjugation
/// relators on the domain.
Presentation extension_presentation(const PCFamily& fam);

struct LabeledGraph {
  Graph graph;
  std::vector<WordS> labels;  // words in the extension's generators
};

/// The defining graph of the extension for a family of pairwise-commuting
/// pcs (with disjoint domains per acting letter). Throws Validation naming
/// the violating pair when the hypotheses fail.
LabeledGraph extension_defining_graph(const PCFamily& fam);

struct SilWitness {
  int v = -1, w = -1;
  Bitset component;
};

/// First separating-intersection-of-links witness in canonical order:
/// non-adjacent v < w and a component of the graph minus Lk(v) n Lk(w)
/// containing neither.
std::optional<SilWitness> has_sil(const Graph& g);

struct Decomposition {
  Graph gamma;
  std::string a1;
  std::vector<std::string> alphas;
  std::vector<std::vector<std::string>> domains;
  PCFamily family;
};

/// All ways to read lam as the extension defining graph of a smaller RACG
/// by commuting partial conjugations with one acting letter. Each result is
/// round-trip verified through extension_defining_graph.
std::vector<Decomposition> decompose(const Graph& lam);

/// Word-problem oracle for the semidirect product W_Gamma x <pcs>.
/// Elements are pairs (normal form in W, automorphism of W); generators of
/// the oracle are the graph vertices followed by the pc names.
class SemidirectEvaluator : public GroupEvaluator {
public:
  explicit SemidirectEvaluator(PCFamily fam);
  const std::vector<std::string>& generators() const override { return gens_; }
  std::string key(const WordS& w) const override;
  GF2Vector ab_image(const WordS& w) const override;
  const PCFamily& family() const { return fam_; }
  const RacgContext& context() const { return ctx_; }

private:
  struct Element {
    Word w;
    Automorphism h;
  };
  Element evaluate(const WordS& w) const;

  PCFamily fam_;
  RacgContext ctx_;
  std::vector<std::string> gens_;
  std::vector<Automorphism> pc_auts_;  // aligned with fam_.pcs
  AbelianModel ab_model_;
};

}  // namespace racg
