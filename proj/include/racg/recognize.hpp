#pragma once

#include "racg/clique_poset.hpp"
#include "racg/extensions.hpp"

namespace racg {

enum class Outcome { True, False, Unknown };

std::string outcome_name(Outcome o);

struct RecognitionOptions {
  int radius = 4;        // bounded involution enumeration
  int retries = 8;       // alternative basis choices
  int max_vertices = 16; // isomorphism search cap
  long budget_ms = 0;    // 0 = unlimited
  int relator_cap = 64;  // longest word handed to an evaluator
  unsigned seed = 0;     // reserved for sampling front ends; pipeline is deterministic
};

/// Exactly one of the three inputs is set. A user-supplied involution graph
/// may carry an extension family so labels can be verified by the
/// semidirect evaluator; without one, verification steps are skipped and
/// recorded as assumptions.
struct RecognitionInput {
  std::optional<Graph> racg_graph;
  std::optional<PCFamily> extension;
  std::optional<InvolutionGraph> user_graph;
  std::optional<PCFamily> user_family;
};

/// Pass iff the abelianization is (Z/2)^n: every invariant factor is 2 and
/// there is no free part.
bool gate(const Presentation& p);

struct CollapsedSystem {
  Graph graph;                  // induced involution graph on the chosen set
  std::vector<WordS> labels;    // per vertex of graph
  std::vector<GF2Vector> ab;    // per vertex of graph
};

/// The collapsing procedure with basis-aware choices: within each star
/// class, vertices are picked so their ab vectors extend the already-chosen
/// set to an independent family. `variant` != 0 flips the (variant-1)-th
/// choice step to its next alternative, giving a deterministic retry
/// schedule. Throws ConditionError on condition failure and
/// Validation("insufficient rank") when no independent choice exists.
CollapsedSystem algebraic_collapse(const InvolutionGraph& ig, int variant = 0);

struct CandidateIsomorphism {
  std::vector<std::string> fresh_generators;                 // collapsed vertex names
  std::vector<std::pair<std::string, WordS>> forward;        // fresh gen -> word in G
  std::vector<std::pair<std::string, WordS>> backward;       // G gen -> fresh-gen word
};

struct CandidateResult {
  std::optional<CandidateIsomorphism> iso;
  std::string failure;  // nonempty when iso is absent
};

/// Builds and verifies the candidate maps of the final step: forward sends
/// each collapsed vertex to its label, checked on all RACG relators of the
/// collapsed graph; backward expresses each input generator through a GF(2)
/// solve over the chosen ab vectors, verified on the input presentation's
/// relators; composites must fix all generators.
CandidateResult candidate_map(const CollapsedSystem& sys, const GroupEvaluator& eval,
                              const Presentation& input_presentation,
                              int relator_cap = 64);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::string failed_step;  // context for Unknown (and some False) verdicts
  std::optional<ConditionReport> condition_report;  // False certificate
  std::optional<std::pair<std::string, WordS>> loop;  // vertex label name + conjugator
  std::optional<InvolutionGraph> involution_graph;    // the graph that was examined
  std::optional<CollapsedSystem> collapsed;           // True certificate presentation
  std::optional<CandidateIsomorphism> iso;
  std::vector<std::string> assumptions;
};

Verdict recognize(const RecognitionInput& input, const RecognitionOptions& opts = {});

/// Presentation of the RACG on a defining graph: squares and edge
/// commutators.
Presentation racg_presentation(const Graph& g);

}  // namespace racg
