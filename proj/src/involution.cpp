#include "racg/involution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "racg/clique_poset.hpp"

namespace racg {

WordS reversed(const WordS& w) { return WordS(w.rbegin(), w.rend()); }

std::string joined(const WordS& w, const std::string& sep) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += sep;
    out += t;
  }
  return out;
}

bool GroupEvaluator::is_involution(const WordS& w) const {
  if (is_identity(w)) return false;
  WordS sq = w;
  sq.insert(sq.end(), w.begin(), w.end());
  return is_identity(sq);
}

bool GroupEvaluator::commutes(const WordS& u, const WordS& v) const {
  WordS c = u;
  c.insert(c.end(), v.begin(), v.end());
  WordS ru = reversed(u), rv = reversed(v);
  c.insert(c.end(), ru.begin(), ru.end());
  c.insert(c.end(), rv.begin(), rv.end());
  return is_identity(c);
}

std::string RacgEvaluator::key(const WordS& w) const {
  Word iw;
  for (const auto& t : w) iw.push_back(ctx_.graph().index_of(t));
  return ctx_.word_text(ctx_.normal_form(iw));
}

GF2Vector RacgEvaluator::ab_image(const WordS& w) const {
  GF2Vector v(ctx_.graph().size());
  for (const auto& t : w) v.flip(ctx_.graph().index_of(t));
  return v;
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::Hypothetical: return "hypothetical";
    case Provenance::UserSupplied: return "user-supplied";
  }
  throw Error(ErrorCode::Internal, "bad provenance");
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "exact") return Provenance::Exact;
  if (s == "hypothetical") return Provenance::Hypothetical;
  if (s == "user-supplied") return Provenance::UserSupplied;
  throw Error(ErrorCode::Parse, "unknown provenance '" + s + "'");
}

InvolutionGraph involution_graph_racg(const RacgContext& ctx) {
  CliqueGraph cg = clique_graph(ctx.graph());
  InvolutionGraph ig{cg.graph, {}, {}, Provenance::Exact};
  int n = ctx.graph().size();
  for (int v = 0; v < ig.graph.size(); ++v) {
    const Bitset& c = cg.labels[v];
    WordS label;
    GF2Vector ab(n);
    for (auto u = c.find_first(); u != Bitset::npos; u = c.find_next(u)) {
      label.push_back(ctx.graph().name_of(static_cast<int>(u)));
      ab.set(static_cast<int>(u), true);
    }
    ig.labels.push_back(std::move(label));
    ig.ab.push_back(std::move(ab));
  }
  return ig;
}

std::vector<std::pair<int, int>> hypothetical_edges(
    const std::vector<std::pair<WordS, GF2Vector>>& classes) {
  std::map<GF2Vector, int> by_ab;
  for (size_t i = 0; i < classes.size(); ++i)
    if (!by_ab.emplace(classes[i].second, static_cast<int>(i)).second)
      throw Error(ErrorCode::Validation, "duplicate abelianization vectors in class list");
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = i + 1; j < classes.size(); ++j) {
      Budget::check();
      GF2Vector sum = classes[i].second ^ classes[j].second;
      if (by_ab.count(sum)) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return edges;
}

InvolutionGraph involution_graph_from_classes(
    const std::vector<std::pair<WordS, GF2Vector>>& classes, Provenance prov) {
  auto edges = hypothetical_edges(classes);
  std::vector<std::string> names;
  for (const auto& [label, ab] : classes) names.push_back(joined(label, ""));
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) {
    names.clear();
    for (const auto& [label, ab] : classes) names.push_back(joined(label, "|"));
  }
  std::vector<std::pair<std::string, std::string>> named_edges;
  for (auto [i, j] : edges) named_edges.emplace_back(names[i], names[j]);
  Graph g(names, named_edges);
  InvolutionGraph ig{g, std::vector<WordS>(g.size()), std::vector<GF2Vector>(g.size()),
                     prov};
  for (size_t i = 0; i < classes.size(); ++i) {
    int v = g.index_of(names[i]);
    ig.labels[v] = classes[i].first;
    ig.ab[v] = classes[i].second;
  }
  return ig;
}

FullSystemReport validate_full_system(const InvolutionGraph& ig,
                                      const GroupEvaluator& eval) {
  FullSystemReport rep;
  for (int v = 0; v < ig.graph.size(); ++v)
    if (!eval.is_involution(ig.labels[v])) rep.non_involutions.push_back(v);
  for (auto [u, v] : ig.graph.edge_list()) {
    Budget::check();
    if (!eval.commutes(ig.labels[u], ig.labels[v])) rep.bad_edges.emplace_back(u, v);
  }
  return rep;
}

namespace {

struct Ball {
  std::vector<WordS> words;  // one shortest-then-lex word per group element
  std::map<std::string, int> by_key;
};

/// Distinct group elements represented by words of length <= radius, each
/// with its first (shortest, then lexicographic) spelling.
Ball enumerate_ball(const GroupEvaluator& eval, int radius) {
  Ball ball;
  ball.words.push_back({});
  ball.by_key.emplace(eval.key({}), 0);
  std::vector<WordS> frontier{WordS{}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<WordS> next;
    for (const WordS& w : frontier) {
      for (const auto& g : eval.generators()) {
        Budget::check();
        WordS w2 = w;
        w2.push_back(g);
        std::string k = eval.key(w2);
        if (ball.by_key.count(k)) continue;
        ball.by_key.emplace(k, static_cast<int>(ball.words.size()));
        ball.words.push_back(w2);
        next.push_back(std::move(w2));
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

bool word_less(const WordS& a, const WordS& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

std::vector<std::pair<WordS, GF2Vector>> bounded_involution_enumeration(
    const GroupEvaluator& eval, int radius) {
  if (radius < 1) throw Error(ErrorCode::Validation, "radius must be >= 1");
  Ball ball = enumerate_ball(eval, radius);
  std::vector<int> inv;  // indices into ball.words
  std::map<std::string, int> inv_pos;  // element key -> position in inv
  for (size_t i = 0; i < ball.words.size(); ++i) {
    if (eval.is_involution(ball.words[i])) {
      inv_pos.emplace(eval.key(ball.words[i]), static_cast<int>(inv.size()));
      inv.push_back(static_cast<int>(i));
    }
  }
  UnionFind uf(static_cast<int>(inv.size()));
  for (size_t a = 0; a < inv.size(); ++a) {
    const WordS& u = ball.words[inv[a]];
    for (const WordS& c : ball.words) {
      if (c.empty()) continue;
      Budget::check();
      WordS conj = c;
      conj.insert(conj.end(), u.begin(), u.end());
      WordS rc = reversed(c);
      conj.insert(conj.end(), rc.begin(), rc.end());
      auto it = inv_pos.find(eval.key(conj));
      if (it != inv_pos.end()) uf.unite(static_cast<int>(a), it->second);
    }
  }
  std::map<int, WordS> reps;  // class root -> best representative
  for (size_t a = 0; a < inv.size(); ++a) {
    int root = uf.find(static_cast<int>(a));
    const WordS& w = ball.words[inv[a]];
    auto it = reps.find(root);
    if (it == reps.end() || word_less(w, it->second)) reps[root] = w;
  }
  std::vector<std::pair<WordS, GF2Vector>> out;
  for (const auto& [root, w] : reps) out.emplace_back(w, eval.ab_image(w));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return word_less(a.first, b.first); });
  return out;
}

std::optional<std::pair<int, WordS>> find_loop(const InvolutionGraph& ig,
                                               const GroupEvaluator& eval, int radius) {
  Ball ball = enumerate_ball(eval, radius);
  for (int v = 0; v < ig.graph.size(); ++v) {
    const WordS& u = ig.labels[v];
    for (const WordS& c : ball.words) {
      if (c.empty()) continue;
      Budget::check();
      WordS conj = c;
      conj.insert(conj.end(), u.begin(), u.end());
      WordS rc = reversed(c);
      conj.insert(conj.end(), rc.begin(), rc.end());
      if (!eval.equal(u, conj) && eval.commutes(u, conj)) return {{v, c}};
    }
  }
  return std::nullopt;
}

}  // namespace racg
