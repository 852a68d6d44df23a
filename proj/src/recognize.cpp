#include "racg/recognize.hpp"

#include <algorithm>
#include <map>

namespace racg {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::True: return "True";
    case Outcome::False: return "False";
    case Outcome::Unknown: return "Unknown";
  }
  throw Error(ErrorCode::Internal, "bad outcome");
}

Presentation racg_presentation(const Graph& g) {
  Presentation p;
  for (const auto& n : g.names()) p.generators.push_back(n);
  for (const auto& n : g.names()) p.relators.push_back({{n, 1}, {n, 1}});
  for (auto [u, v] : g.edge_list())
    p.relators.push_back(
        {{g.name_of(u), 1}, {g.name_of(v), 1}, {g.name_of(u), 1}, {g.name_of(v), 1}});
  return p;
}

bool gate(const Presentation& p) { return abelianize(p).elementary_abelian_2(); }

CollapsedSystem algebraic_collapse(const InvolutionGraph& ig, int variant) {
  ConditionReport rep = check_conditions(ig.graph);
  if (!rep.ok()) throw ConditionError(std::move(rep));
  if (ig.ab.empty()) throw Error(ErrorCode::Validation, "involution graph has no ab vectors");
  int dim = ig.ab[0].size();
  StarPoset p = star_poset(ig.graph);
  int nc = p.num_classes();
  std::vector<bool> done(nc, false);
  Bitset chosen(ig.graph.size());
  std::vector<GF2Vector> chosen_ab;
  std::vector<int> chosen_order;
  int choice_step = 0;
  for (int processed = 0; processed < nc; ++processed) {
    Budget::check();
    int c = -1;
    for (int i = 0; i < nc && c < 0; ++i) {
      if (done[i]) continue;
      bool ready = true;
      for (int j = 0; j < nc && ready; ++j)
        if (j != i && p.leq[i].test(j) && !done[j]) ready = false;
      if (ready) c = i;
    }
    if (c < 0) throw Error(ErrorCode::Internal, "star poset has no ready class");
    Bitset s = clique_above(p, c);
    size_t sz = s.count() + 1;
    long k = -1;
    if ((sz & (sz - 1)) == 0) {
      k = 0;
      while (sz > 1) {
        sz >>= 1;
        ++k;
      }
    }
    if (k < 0) throw Error(ErrorCode::Internal, "clique above has non 2^k-1 size");
    long need = k - static_cast<long>((chosen & s).count());
    std::vector<int> members;
    for (auto v = p.classes[c].find_first(); v != Bitset::npos;
         v = p.classes[c].find_next(v))
      members.push_back(static_cast<int>(v));
    if (need < 0 || need > static_cast<long>(members.size()))
      throw Error(ErrorCode::Internal, "collapse choice count out of range");
    if (need > 0) {
      std::vector<GF2Vector> candidates;
      for (int v : members) candidates.push_back(ig.ab[v]);
      long local = (variant > 0 && choice_step == variant - 1) ? 1 : 0;
      std::vector<int> picked;
      try {
        picked = extend_gf2_basis_variant(chosen_ab, candidates,
                                          static_cast<int>(need), local);
      } catch (const Error&) {
        if (local == 0) throw;
        // This step has no alternative; fall back to the canonical choice.
        picked = extend_gf2_basis(chosen_ab, candidates, static_cast<int>(need));
      }
      for (int idx : picked) {
        chosen.set(members[idx]);
        chosen_ab.push_back(ig.ab[members[idx]]);
        chosen_order.push_back(members[idx]);
      }
      ++choice_step;
    }
    done[c] = true;
  }
  if (static_cast<int>(chosen_ab.size()) != dim)
    throw Error(ErrorCode::Validation,
                "chosen representatives do not form a GF(2) basis of the ambient space");
  Graph induced = ig.graph.induced(chosen);
  CollapsedSystem sys{induced, std::vector<WordS>(induced.size()),
                      std::vector<GF2Vector>(induced.size())};
  for (int v : chosen_order) {
    int t = induced.index_of(ig.graph.name_of(v));
    sys.labels[t] = ig.labels[v];
    sys.ab[t] = ig.ab[v];
  }
  return sys;
}

namespace {

/// Expresses target as a sum of the given vectors; returns the index subset
/// (ascending) or nothing if the target is outside the span.
std::optional<std::vector<int>> gf2_solve(const std::vector<GF2Vector>& vecs,
                                          GF2Vector target) {
  int n = static_cast<int>(vecs.size());
  struct Row {
    GF2Vector v;
    GF2Vector sel;
  };
  std::vector<Row> rows;
  for (int i = 0; i < n; ++i) {
    Row r{vecs[i], GF2Vector(n)};
    r.sel.set(i, true);
    for (const Row& e : rows) {
      int lead = e.v.lowest_set();
      if (lead >= 0 && r.v.get(lead)) {
        r.v ^= e.v;
        r.sel ^= e.sel;
      }
    }
    if (r.v.any()) rows.push_back(std::move(r));
  }
  GF2Vector sel(n);
  bool again = true;
  while (again) {
    again = false;
    for (const Row& e : rows) {
      int lead = e.v.lowest_set();
      if (lead >= 0 && target.get(lead)) {
        target ^= e.v;
        sel ^= e.sel;
        again = true;
      }
    }
  }
  if (target.any()) return std::nullopt;
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (sel.get(i)) out.push_back(i);
  return out;
}

}  // namespace

CandidateResult candidate_map(const CollapsedSystem& sys, const GroupEvaluator& eval,
                              const Presentation& input_presentation, int relator_cap) {
  CandidateResult res;
  const Graph& lam = sys.graph;
  auto cap_check = [&](size_t len, const std::string& where) {
    if (static_cast<int>(len) > relator_cap)
      throw Error(ErrorCode::ResourceLimit, "word too long during " + where);
  };
  // Forward: b_v -> label_v must satisfy every RACG relator of lam.
  for (int v = 0; v < lam.size(); ++v) {
    cap_check(sys.labels[v].size() * 2, "forward relator check");
    if (!eval.is_involution(sys.labels[v])) {
      res.failure = "forward check: label of " + lam.name_of(v) + " is not an involution";
      return res;
    }
  }
  for (auto [u, v] : lam.edge_list()) {
    Budget::check();
    cap_check((sys.labels[u].size() + sys.labels[v].size()) * 2, "forward relator check");
    if (!eval.commutes(sys.labels[u], sys.labels[v])) {
      res.failure = "forward check: labels of edge {" + lam.name_of(u) + "," +
                    lam.name_of(v) + "} do not commute";
      return res;
    }
  }
  // Backward: express each input generator through the ab basis, then
  // verify group-theoretically.
  CandidateIsomorphism iso;
  for (int v = 0; v < lam.size(); ++v) {
    iso.fresh_generators.push_back(lam.name_of(v));
    iso.forward.emplace_back(lam.name_of(v), sys.labels[v]);
  }
  std::map<std::string, WordS> backward;  // input generator -> fresh-gen word
  for (const auto& g : eval.generators()) {
    auto subset = gf2_solve(sys.ab, eval.ab_image({g}));
    if (!subset) {
      res.failure = "backward check: ab image of " + g + " is outside the chosen span";
      return res;
    }
    WordS in_g;  // the image spelled in input generators, for verification
    WordS fresh;
    for (int i : *subset) {
      in_g.insert(in_g.end(), sys.labels[i].begin(), sys.labels[i].end());
      fresh.push_back(lam.name_of(i));
    }
    cap_check(in_g.size() + 1, "backward generator check");
    if (!eval.equal(in_g, {g})) {
      res.failure = "backward check: candidate word for " + g + " differs from it";
      return res;
    }
    backward.emplace(g, fresh);
    iso.backward.emplace_back(g, fresh);
  }
  // The backward map must preserve the input presentation's relators, and
  // the composite on the fresh side must fix every collapsed vertex.
  RacgContext lam_ctx(lam);
  for (const RWord& r : input_presentation.relators) {
    Word img;
    for (const Letter& l : r) {
      const WordS& bw = backward.at(l.gen);
      for (const auto& t : bw) img.push_back(lam.index_of(t));
    }
    if (!lam_ctx.is_identity(img)) {
      res.failure = "backward check: a relator of the input presentation survives";
      return res;
    }
  }
  for (int v = 0; v < lam.size(); ++v) {
    Word img;
    for (const auto& letter : sys.labels[v]) {
      const WordS& bw = backward.at(letter);
      for (const auto& t : bw) img.push_back(lam.index_of(t));
    }
    Word nf = lam_ctx.normal_form(img);
    if (nf != Word{v}) {
      res.failure = "composite check: " + lam.name_of(v) + " is not fixed";
      return res;
    }
  }
  res.iso = std::move(iso);
  return res;
}

namespace {

Verdict finish_pipeline(InvolutionGraph ig, const GroupEvaluator* eval,
                        const Presentation* pres, const RecognitionOptions& opts,
                        std::vector<std::string> assumptions) {
  Verdict v;
  v.assumptions = std::move(assumptions);
  ConditionReport rep = check_conditions(ig.graph);
  if (!rep.ok()) {
    v.outcome = Outcome::False;
    v.failed_step = "clique-graph conditions";
    v.condition_report = std::move(rep);
    v.involution_graph = std::move(ig);
    return v;
  }
  if (eval) {
    FullSystemReport fs = validate_full_system(ig, *eval);
    if (!fs.ok()) {
      v.outcome = Outcome::Unknown;
      v.failed_step = "full-system validation: representatives fail involution or "
                      "commutation checks";
      v.involution_graph = std::move(ig);
      return v;
    }
  }
  std::string last_fail = "algebraic collapse produced no candidate";
  for (int r = 0; r < std::max(1, opts.retries); ++r) {
    std::optional<CollapsedSystem> sys;
    try {
      sys = algebraic_collapse(ig, r);
    } catch (const ConditionError&) {
      throw;  // cannot happen, conditions were checked
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ResourceLimit) throw;
      last_fail = e.what();
      continue;
    }
    if (!eval) {
      v.outcome = Outcome::Unknown;
      v.failed_step = "no word-problem oracle available; candidate presentation "
                      "emitted unverified";
      v.collapsed = std::move(*sys);
      v.involution_graph = std::move(ig);
      return v;
    }
    CandidateResult cr = candidate_map(*sys, *eval, *pres, opts.relator_cap);
    if (cr.iso) {
      v.outcome = Outcome::True;
      v.collapsed = std::move(*sys);
      v.iso = std::move(cr.iso);
      v.involution_graph = std::move(ig);
      return v;
    }
    last_fail = cr.failure;
  }
  v.outcome = Outcome::Unknown;
  v.failed_step = "no tried full system yielded an isomorphism (last: " + last_fail + ")";
  v.involution_graph = std::move(ig);
  return v;
}

bool extension_hypotheses_hold(const PCFamily& fam) {
  RacgContext ctx(fam.graph);
  for (size_t i = 0; i < fam.pcs.size(); ++i)
    for (size_t j = i + 1; j < fam.pcs.size(); ++j) {
      if (!pcs_commute(ctx, fam.pcs[i], fam.pcs[j])) return false;
      if (fam.pcs[i].acting == fam.pcs[j].acting) {
        Bitset a = fam.graph.subset_by_names(fam.pcs[i].domain);
        Bitset b = fam.graph.subset_by_names(fam.pcs[j].domain);
        if ((a & b).any()) return false;
      }
    }
  return true;
}

/// Involution graph of the extension when the commuting-family theorem
/// applies: the clique graph of the extension's defining graph, with labels
/// spelled in the extension's own generators.
InvolutionGraph exact_extension_involution_graph(const PCFamily& fam,
                                                 const GroupEvaluator& eval) {
  LabeledGraph lg = extension_defining_graph(fam);
  CliqueGraph cg = clique_graph(lg.graph);
  InvolutionGraph ig{cg.graph, {}, {}, Provenance::Exact};
  for (int v = 0; v < ig.graph.size(); ++v) {
    WordS label;
    const Bitset& c = cg.labels[v];
    for (auto u = c.find_first(); u != Bitset::npos; u = c.find_next(u)) {
      const WordS& w = lg.labels[static_cast<int>(u)];
      label.insert(label.end(), w.begin(), w.end());
    }
    ig.ab.push_back(eval.ab_image(label));
    ig.labels.push_back(std::move(label));
  }
  return ig;
}

Verdict recognize_inner(const RecognitionInput& input, const RecognitionOptions& opts) {
  int set_count = (input.racg_graph ? 1 : 0) + (input.extension ? 1 : 0) +
                  (input.user_graph ? 1 : 0);
  if (set_count != 1)
    throw Error(ErrorCode::Validation, "exactly one recognition input must be given");

  if (input.racg_graph) {
    RacgEvaluator eval{RacgContext(*input.racg_graph)};
    Presentation pres = racg_presentation(*input.racg_graph);
    if (!gate(pres)) {
      Verdict v;
      v.outcome = Outcome::False;
      v.failed_step = "abelianization gate: Ab(G) is not (Z/2)^n";
      return v;
    }
    InvolutionGraph ig = involution_graph_racg(eval.context());
    return finish_pipeline(std::move(ig), &eval, &pres, opts, {});
  }

  if (input.extension) {
    const PCFamily& fam = *input.extension;
    validate_family(fam);
    Presentation pres = extension_presentation(fam);
    SemidirectEvaluator eval(fam);
    if (!gate(pres)) {
      Verdict v;
      v.outcome = Outcome::False;
      v.failed_step = "abelianization gate: Ab(G) is not (Z/2)^n";
      return v;
    }
    if (extension_hypotheses_hold(fam)) {
      InvolutionGraph ig = exact_extension_involution_graph(fam, eval);
      return finish_pipeline(std::move(ig), &eval, &pres, opts, {});
    }
    auto classes = bounded_involution_enumeration(eval, opts.radius);
    std::vector<std::string> assumptions{
        "involution classes enumerated to radius " + std::to_string(opts.radius) +
        "; verdict conditional on class-list completeness"};
    InvolutionGraph ig = involution_graph_from_classes(classes, Provenance::Hypothetical);
    if (auto loop = find_loop(ig, eval, opts.radius)) {
      Verdict v;
      v.outcome = Outcome::False;
      v.failed_step = "involution graph contains a loop";
      v.loop = {ig.graph.name_of(loop->first), loop->second};
      v.involution_graph = std::move(ig);
      return v;  // sound regardless of completeness: the witness is exact
    }
    return finish_pipeline(std::move(ig), &eval, &pres, opts, std::move(assumptions));
  }

  const InvolutionGraph& ig = *input.user_graph;
  {
    std::map<GF2Vector, int> seen;
    for (size_t i = 0; i < ig.ab.size(); ++i)
      if (!seen.emplace(ig.ab[i], static_cast<int>(i)).second)
        throw Error(ErrorCode::Validation,
                    "user involution graph has duplicate ab vectors");
  }
  std::vector<std::string> assumptions{
      "user-supplied involution graph assumed exact and complete"};
  if (input.user_family) {
    validate_family(*input.user_family);
    Presentation pres = extension_presentation(*input.user_family);
    SemidirectEvaluator eval(*input.user_family);
    if (!gate(pres)) {
      Verdict v;
      v.outcome = Outcome::False;
      v.failed_step = "abelianization gate: Ab(G) is not (Z/2)^n";
      return v;
    }
    if (auto loop = find_loop(ig, eval, opts.radius)) {
      Verdict v;
      v.outcome = Outcome::False;
      v.failed_step = "involution graph contains a loop";
      v.loop = {ig.graph.name_of(loop->first), loop->second};
      v.involution_graph = ig;
      return v;
    }
    return finish_pipeline(ig, &eval, &pres, opts, std::move(assumptions));
  }
  assumptions.push_back("labels assumed to form a full system; no oracle to verify");
  return finish_pipeline(ig, nullptr, nullptr, opts, std::move(assumptions));
}

}  // namespace

Verdict recognize(const RecognitionInput& input, const RecognitionOptions& opts) {
  std::optional<Budget::Scope> scope;
  if (opts.budget_ms > 0) scope.emplace(opts.budget_ms);
  try {
    return recognize_inner(input, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ResourceLimit) throw;
    Verdict v;
    v.outcome = Outcome::Unknown;
    v.failed_step = std::string("resource limit: ") + e.what();
    return v;
  }
}

}  // namespace racg
