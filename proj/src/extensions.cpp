#include "racg/extensions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace racg {

std::string pc_invalid_reason(const Graph& g, const PartialConjugation& pc) {
  if (!g.has_vertex(pc.acting)) return "acting letter " + pc.acting + " is not a vertex";
  if (pc.domain.empty()) return "domain is empty";
  for (const auto& d : pc.domain)
    if (!g.has_vertex(d)) return "domain vertex " + d + " is not a vertex";
  Bitset dom = g.subset_by_names(pc.domain);
  int a = g.index_of(pc.acting);
  Bitset star = g.star(a);
  if ((dom & star).any())
    return "domain meets the closed star of " + pc.acting;
  Bitset rest = g.full() & ~star;
  for (const Bitset& comp : g.components(rest)) {
    Bitset overlap = comp & dom;
    if (overlap.any() && overlap != comp)
      return "domain cuts a connected component of the graph minus St(" + pc.acting + ")";
  }
  return "";
}

void validate_pc(const Graph& g, const PartialConjugation& pc) {
  std::string why = pc_invalid_reason(g, pc);
  if (!why.empty())
    throw Error(ErrorCode::Validation, "partial conjugation " + pc.name + ": " + why);
}

void validate_family(const PCFamily& fam) {
  std::set<std::string> names(fam.graph.names().begin(), fam.graph.names().end());
  for (const auto& pc : fam.pcs) {
    if (pc.name.empty()) throw Error(ErrorCode::Validation, "unnamed partial conjugation");
    if (!names.insert(pc.name).second)
      throw Error(ErrorCode::Validation, "duplicate generator name " + pc.name);
    validate_pc(fam.graph, pc);
  }
}

Automorphism identity_automorphism(const Graph& g) {
  Automorphism h(g.size());
  for (int v = 0; v < g.size(); ++v) h[v] = {v};
  return h;
}

Automorphism pc_automorphism(const RacgContext& ctx, const PartialConjugation& pc) {
  const Graph& g = ctx.graph();
  int a = g.index_of(pc.acting);
  Bitset dom = g.subset_by_names(pc.domain);
  Automorphism h(g.size());
  for (int v = 0; v < g.size(); ++v) {
    if (dom.test(v))
      h[v] = ctx.normal_form({a, v, a});
    else
      h[v] = {v};
  }
  return h;
}

Word apply_automorphism(const RacgContext& ctx, const Automorphism& h, const Word& w) {
  Word out;
  for (int l : w) out.insert(out.end(), h[l].begin(), h[l].end());
  return ctx.normal_form(out);
}

Automorphism compose(const RacgContext& ctx, const Automorphism& f, const Automorphism& g) {
  Automorphism out(g.size());
  for (size_t v = 0; v < g.size(); ++v) out[v] = apply_automorphism(ctx, f, g[v]);
  return out;
}

bool pcs_commute(const RacgContext& ctx, const PartialConjugation& x,
                 const PartialConjugation& y) {
  Automorphism fx = pc_automorphism(ctx, x), fy = pc_automorphism(ctx, y);
  return compose(ctx, fx, fy) == compose(ctx, fy, fx);
}

Presentation extension_presentation(const PCFamily& fam) {
  validate_family(fam);
  const Graph& g = fam.graph;
  RacgContext ctx(g);
  Presentation p;
  for (const auto& n : g.names()) p.generators.push_back(n);
  for (const auto& pc : fam.pcs) p.generators.push_back(pc.name);
  auto rel = [&](std::initializer_list<std::string> letters) {
    RWord r;
    for (const auto& l : letters) r.push_back({l, 1});
    p.relators.push_back(std::move(r));
  };
  for (const auto& v : g.names()) rel({v, v});
  for (auto [u, v] : g.edge_list())
    rel({g.name_of(u), g.name_of(v), g.name_of(u), g.name_of(v)});
  for (const auto& pc : fam.pcs) rel({pc.name, pc.name});
  for (size_t i = 0; i < fam.pcs.size(); ++i)
    for (size_t j = i + 1; j < fam.pcs.size(); ++j)
      if (pcs_commute(ctx, fam.pcs[i], fam.pcs[j]))
        rel({fam.pcs[i].name, fam.pcs[j].name, fam.pcs[i].name, fam.pcs[j].name});
  for (const auto& pc : fam.pcs) {
    Bitset dom = g.subset_by_names(pc.domain);
    for (int v = 0; v < g.size(); ++v) {
      if (dom.test(v))
        rel({pc.name, g.name_of(v), pc.name, pc.acting, g.name_of(v), pc.acting});
      else
        rel({pc.name, g.name_of(v), pc.name, g.name_of(v)});
    }
  }
  return p;
}

LabeledGraph extension_defining_graph(const PCFamily& fam) {
  validate_family(fam);
  const Graph& g = fam.graph;
  RacgContext ctx(g);
  for (size_t i = 0; i < fam.pcs.size(); ++i)
    for (size_t j = i + 1; j < fam.pcs.size(); ++j) {
      const auto& x = fam.pcs[i];
      const auto& y = fam.pcs[j];
      if (!pcs_commute(ctx, x, y))
        throw Error(ErrorCode::Validation,
                    "partial conjugations " + x.name + " and " + y.name +
                        " do not commute");
      if (x.acting == y.acting) {
        Bitset dx = g.subset_by_names(x.domain), dy = g.subset_by_names(y.domain);
        if ((dx & dy).any())
          throw Error(ErrorCode::Validation, "partial conjugations " + x.name + " and " +
                                                 y.name + " have overlapping domains");
      }
    }

  // Working state: vertex slots only grow; slot i < g.size() is the
  // (possibly relabeled) original vertex i.
  std::vector<WordS> labels;
  for (const auto& n : g.names()) labels.push_back({n});
  std::vector<std::set<int>> adj(g.size());
  for (auto [u, v] : g.edge_list()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }

  std::map<std::string, std::vector<const PartialConjugation*>> by_acting;
  for (const auto& pc : fam.pcs) by_acting[pc.acting].push_back(&pc);
  for (auto& [acting, group] : by_acting)
    std::sort(group.begin(), group.end(),
              [](const auto* a, const auto* b) { return a->name < b->name; });

  auto snapshot = [&]() {
    std::vector<std::string> names;
    for (const auto& l : labels) names.push_back(joined(l, ""));
    std::vector<std::pair<std::string, std::string>> edges;
    for (size_t u = 0; u < adj.size(); ++u)
      for (int v : adj[u])
        if (static_cast<size_t>(v) > u) edges.emplace_back(names[u], names[v]);
    return Graph(names, edges);
  };

  for (const auto& [acting, group] : by_acting) {
    Budget::check();
    int a = g.index_of(acting);
    // Re-validate against the current graph: the tracked domains must still
    // be unions of components off the acting letter's star.
    Graph cur = snapshot();
    for (const auto* pc : group) {
      PartialConjugation tracked{pc->name, joined(labels[a], ""), {}};
      for (const auto& d : pc->domain)
        tracked.domain.push_back(joined(labels[g.index_of(d)], ""));
      std::string why = pc_invalid_reason(cur, tracked);
      if (!why.empty())
        throw Error(ErrorCode::Internal,
                    "tracked domain of " + pc->name + " became invalid: " + why);
    }
    size_t pre = labels.size();
    Bitset all_domains(g.size());
    std::vector<size_t> slots;
    for (const auto* pc : group) {
      size_t s = labels.size();
      slots.push_back(s);
      labels.push_back({pc->name});
      adj.push_back({});
      adj[s].insert(a);
      adj[a].insert(static_cast<int>(s));
      for (size_t t : slots)
        if (t != s) {
          adj[s].insert(static_cast<int>(t));
          adj[t].insert(static_cast<int>(s));
        }
      Bitset dom = g.subset_by_names(pc->domain);
      all_domains |= dom;
      for (size_t v = 0; v < pre; ++v) {
        if (static_cast<int>(v) == a) continue;
        if (v < static_cast<size_t>(g.size()) && dom.test(v)) continue;
        adj[s].insert(static_cast<int>(v));
        adj[v].insert(static_cast<int>(s));
      }
    }
    WordS relabeled;
    for (const auto* pc : group) relabeled.push_back(pc->name);
    relabeled.insert(relabeled.end(), labels[a].begin(), labels[a].end());
    labels[a] = relabeled;
    for (auto d = all_domains.find_first(); d != Bitset::npos;
         d = all_domains.find_next(d)) {
      adj[a].insert(static_cast<int>(d));
      adj[d].insert(a);
    }
  }

  std::vector<std::string> names;
  for (const auto& l : labels) names.push_back(joined(l, ""));
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) {
    names.clear();
    for (const auto& l : labels) names.push_back(joined(l, "|"));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (size_t u = 0; u < adj.size(); ++u)
    for (int v : adj[u])
      if (static_cast<size_t>(v) > u) edges.emplace_back(names[u], names[v]);
  Graph out(names, edges);
  LabeledGraph lg{out, std::vector<WordS>(out.size())};
  for (size_t i = 0; i < labels.size(); ++i) lg.labels[out.index_of(names[i])] = labels[i];
  return lg;
}

std::optional<SilWitness> has_sil(const Graph& g) {
  for (int v = 0; v < g.size(); ++v)
    for (int w = v + 1; w < g.size(); ++w) {
      if (g.adjacent(v, w)) continue;
      Bitset shared = g.link(v) & g.link(w);
      Bitset rest = g.full() & ~shared;
      for (const Bitset& comp : g.components(rest))
        if (!comp.test(v) && !comp.test(w)) return SilWitness{v, w, comp};
    }
  return std::nullopt;
}

namespace {

bool round_trip_matches(const Graph& lam, const Decomposition& dec) {
  LabeledGraph lg = extension_defining_graph(dec.family);
  if (lg.graph.size() != lam.size()) return false;
  // Single-token labels are original vertices or pc vertices named after
  // the alphas; the relabeled acting vertex's label ends in a1.
  std::vector<int> to_lam(lg.graph.size(), -1);
  std::vector<bool> hit(lam.size(), false);
  for (int v = 0; v < lg.graph.size(); ++v) {
    const WordS& l = lg.labels[v];
    std::string target = l.size() == 1 ? l[0] : dec.a1;
    auto idx = lam.find(target);
    if (!idx || hit[*idx]) return false;
    to_lam[v] = *idx;
    hit[*idx] = true;
  }
  for (int u = 0; u < lg.graph.size(); ++u)
    for (int v = u + 1; v < lg.graph.size(); ++v)
      if (lg.graph.adjacent(u, v) != lam.adjacent(to_lam[u], to_lam[v])) return false;
  return true;
}

}  // namespace

std::vector<Decomposition> decompose(const Graph& lam) {
  std::vector<Bitset> cliques = lam.all_cliques();
  std::stable_sort(cliques.begin(), cliques.end(),
                   [](const Bitset& a, const Bitset& b) { return a.count() < b.count(); });
  std::vector<Decomposition> out;
  for (const Bitset& c : cliques) {
    if (c.count() < 2) continue;
    for (auto a1 = c.find_first(); a1 != Bitset::npos; a1 = c.find_next(a1)) {
      Budget::check();
      int a = static_cast<int>(a1);
      std::vector<int> alphas;
      for (auto v = c.find_first(); v != Bitset::npos; v = c.find_next(v))
        if (v != a1) alphas.push_back(static_cast<int>(v));
      Bitset cover = lam.star(a);
      for (int al : alphas) cover |= lam.star(al);
      if (cover != lam.full()) continue;
      std::vector<Bitset> domains;
      bool viable = true;
      for (size_t i = 0; i < alphas.size() && viable; ++i) {
        Bitset d = lam.star(a) & ~lam.star(alphas[i]);
        for (size_t j = 0; j < alphas.size(); ++j)
          if (j != i) d &= lam.star(alphas[j]);
        if (d.none()) viable = false;
        domains.push_back(d);
      }
      if (!viable) continue;
      // Base graph: drop the alpha vertices; detach a1 from the domains.
      Bitset keep = lam.full();
      for (int al : alphas) keep.reset(al);
      std::vector<std::string> verts = lam.names_of(keep);
      Bitset all_dom(lam.size());
      for (const Bitset& d : domains) all_dom |= d;
      std::vector<std::pair<std::string, std::string>> edges;
      for (auto [u, v] : lam.edge_list()) {
        if (!keep.test(u) || !keep.test(v)) continue;
        if ((u == a && all_dom.test(v)) || (v == a && all_dom.test(u))) continue;
        edges.emplace_back(lam.name_of(u), lam.name_of(v));
      }
      Graph gamma(verts, edges);
      std::string a1_name = lam.name_of(a);
      PCFamily fam{gamma, {}};
      bool valid = true;
      for (size_t i = 0; i < alphas.size() && valid; ++i) {
        PartialConjugation pc{lam.name_of(alphas[i]), a1_name, lam.names_of(domains[i])};
        if (!pc_invalid_reason(gamma, pc).empty())
          valid = false;
        else
          fam.pcs.push_back(std::move(pc));
      }
      if (!valid) continue;
      Decomposition dec{gamma, a1_name, {}, {}, fam};
      for (const auto& pc : fam.pcs) {
        dec.alphas.push_back(pc.name);
        dec.domains.push_back(pc.domain);
      }
      try {
        if (!round_trip_matches(lam, dec)) continue;
      } catch (const Error&) {
        continue;  // hypothesis violations disqualify the candidate
      }
      out.push_back(std::move(dec));
    }
  }
  return out;
}

SemidirectEvaluator::SemidirectEvaluator(PCFamily fam)
    : fam_(std::move(fam)), ctx_(fam_.graph), ab_model_(abelianize(extension_presentation(fam_))) {
  validate_family(fam_);
  for (const auto& n : fam_.graph.names()) gens_.push_back(n);
  for (const auto& pc : fam_.pcs) gens_.push_back(pc.name);
  for (const auto& pc : fam_.pcs) pc_auts_.push_back(pc_automorphism(ctx_, pc));
}

SemidirectEvaluator::Element SemidirectEvaluator::evaluate(const WordS& w) const {
  Element e{{}, identity_automorphism(fam_.graph)};
  for (const auto& t : w) {
    Budget::check();
    auto v = fam_.graph.find(t);
    if (v) {
      Word img = apply_automorphism(ctx_, e.h, {*v});
      e.w.insert(e.w.end(), img.begin(), img.end());
      e.w = ctx_.normal_form(e.w);
      continue;
    }
    bool found = false;
    for (size_t i = 0; i < fam_.pcs.size(); ++i)
      if (fam_.pcs[i].name == t) {
        e.h = compose(ctx_, e.h, pc_auts_[i]);
        found = true;
        break;
      }
    if (!found) throw Error(ErrorCode::Validation, "unknown generator " + t);
  }
  return e;
}

std::string SemidirectEvaluator::key(const WordS& w) const {
  Element e = evaluate(w);
  std::string out = ctx_.word_text(e.w);
  out += '|';
  for (const Word& img : e.h) {
    out += ctx_.word_text(img);
    out += ';';
  }
  return out;
}

GF2Vector SemidirectEvaluator::ab_image(const WordS& w) const {
  RWord r;
  for (const auto& t : w) r.push_back({t, 1});
  return ab_model_.gf2_image(r);
}

}  // namespace racg
