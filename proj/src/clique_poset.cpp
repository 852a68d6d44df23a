#include "racg/clique_poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace racg {

namespace {

std::string join_names(const Graph& g, const Bitset& c, const std::string& sep) {
  std::string out;
  for (auto v = c.find_first(); v != Bitset::npos; v = c.find_next(v)) {
    if (!out.empty()) out += sep;
    out += g.name_of(static_cast<int>(v));
  }
  return out;
}

long exact_log2_plus1(size_t n) {
  // log2(n + 1) if n + 1 is a power of two, else -1.
  size_t m = n + 1;
  if ((m & (m - 1)) != 0) return -1;
  long k = 0;
  while (m > 1) {
    m >>= 1;
    ++k;
  }
  return k;
}

}  // namespace

CliqueGraph clique_graph(const Graph& g) {
  std::vector<Bitset> cliques = g.all_cliques();
  std::vector<std::string> names;
  for (const auto& c : cliques) names.push_back(join_names(g, c, ""));
  // Plain concatenation can collide for unlucky base names; fall back to a
  // separator the Graph controls.
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) {
    names.clear();
    for (const auto& c : cliques) names.push_back(join_names(g, c, "|"));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (size_t i = 0; i < cliques.size(); ++i) {
    for (size_t j = i + 1; j < cliques.size(); ++j) {
      Budget::check();
      if (g.is_clique(cliques[i] | cliques[j])) edges.emplace_back(names[i], names[j]);
    }
  }
  Graph k(names, edges);
  std::map<std::string, Bitset> by_name;
  for (size_t i = 0; i < cliques.size(); ++i) by_name[names[i]] = cliques[i];
  std::vector<Bitset> labels;
  for (int v = 0; v < k.size(); ++v) labels.push_back(by_name.at(k.name_of(v)));
  return CliqueGraph{std::move(k), std::move(labels)};
}

StarPoset star_poset(const Graph& g) {
  std::map<Bitset, Bitset> by_star;  // St(v) -> members
  for (int v = 0; v < g.size(); ++v) {
    auto [it, fresh] = by_star.emplace(g.star(v), Bitset(g.size()));
    it->second.set(v);
  }
  std::vector<std::pair<size_t, std::pair<Bitset, Bitset>>> ordered;  // least member key
  for (const auto& [st, members] : by_star)
    ordered.push_back({members.find_first(), {members, st}});
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  StarPoset p;
  p.class_of.assign(g.size(), -1);
  for (const auto& [least, pair] : ordered) {
    p.classes.push_back(pair.first);
    p.class_star.push_back(pair.second);
    int c = static_cast<int>(p.classes.size()) - 1;
    for (auto v = pair.first.find_first(); v != Bitset::npos; v = pair.first.find_next(v))
      p.class_of[static_cast<int>(v)] = c;
  }
  int nc = p.num_classes();
  p.leq.assign(nc, Bitset(nc));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (p.class_star[i].is_subset_of(p.class_star[j])) p.leq[i].set(j);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      if (i == j || !p.leq[i].test(j)) continue;
      bool cover = true;
      for (int m = 0; m < nc && cover; ++m)
        if (m != i && m != j && p.leq[i].test(m) && p.leq[m].test(j)) cover = false;
      if (cover) p.hasse.emplace_back(i, j);
    }
  }
  return p;
}

Bitset clique_above(const StarPoset& p, int c) {
  Bitset s(p.classes[0].size());
  for (int j = 0; j < p.num_classes(); ++j)
    if (p.leq[c].test(j)) s |= p.classes[j];
  return s;
}

namespace {

long ie_lhs(const std::vector<Bitset>& M, const Bitset& J, const Bitset& content) {
  // Sum over index sets I strictly containing J of (-1)^{|I \ J| + 1} k_I,
  // where empty intersections contribute 0 and prune their whole subtree.
  int r = static_cast<int>(M.size());
  long total = 0;
  // Iterative DFS over extra indices outside J, ascending.
  struct Frame {
    int next;
    Bitset cur;
    int extra;
  };
  std::vector<Frame> stack{{0, content, 0}};
  while (!stack.empty()) {
    Budget::check();
    Frame f = stack.back();
    stack.pop_back();
    for (int i = f.next; i < r; ++i) {
      if (J.test(i)) continue;
      Bitset c2 = f.cur & M[i];
      if (c2.none()) continue;
      long k = exact_log2_plus1(c2.count());
      int extra = f.extra + 1;
      total += (extra % 2 == 1) ? k : -k;
      stack.push_back({i + 1, c2, extra});
    }
  }
  return total;
}

}  // namespace

ConditionReport check_conditions(const Graph& g) {
  ConditionReport rep;
  rep.maximal_cliques = g.maximal_cliques();
  const auto& M = rep.maximal_cliques;
  int r = static_cast<int>(M.size());

  // All distinct nonempty intersections, keyed by content; the closed index
  // set of a content c is every maximal clique containing c.
  std::map<Bitset, Bitset> closed;  // content -> index set
  std::vector<Bitset> work(M.begin(), M.end());
  while (!work.empty()) {
    Budget::check();
    Bitset c = work.back();
    work.pop_back();
    if (closed.count(c)) continue;
    Bitset idx(r);
    for (int i = 0; i < r; ++i)
      if (c.is_subset_of(M[i])) idx.set(i);
    closed.emplace(c, idx);
    for (int i = 0; i < r; ++i) {
      if (idx.test(i)) continue;
      Bitset c2 = c & M[i];
      if (c2.any() && !closed.count(c2)) work.push_back(c2);
    }
  }
  for (const auto& [content, idx] : closed) {
    IntersectionInfo info;
    info.index_set = idx;
    info.content = content;
    info.k = exact_log2_plus1(content.count());
    rep.intersections.push_back(info);
    if (info.k < 0) rep.mc_failures.push_back(info);
  }

  // Minimal vertex condition: for each closed J there must be a vertex of
  // Gamma_J lying in no strictly larger intersection, i.e. whose own index
  // set is exactly J.
  std::vector<Bitset> vertex_idx(g.size(), Bitset(r));
  for (int v = 0; v < g.size(); ++v)
    for (int i = 0; i < r; ++i)
      if (M[i].test(v)) vertex_idx[v].set(i);
  for (const auto& info : rep.intersections) {
    bool found = false;
    const Bitset& c = info.content;
    for (auto v = c.find_first(); v != Bitset::npos && !found; v = c.find_next(v))
      if (vertex_idx[v] == info.index_set) found = true;
    if (!found) rep.mv_failures.push_back(info.index_set);
  }

  if (rep.maximal_clique_ok()) {
    for (const auto& info : rep.intersections) {
      long lhs = ie_lhs(M, info.index_set, info.content);
      if (lhs > info.k) rep.ie_failures.push_back({info.index_set, lhs, info.k});
    }
  }
  return rep;
}

Graph collapse(const Graph& g) {
  return collapse_with(g, [](const std::vector<int>& members, int need) {
    return std::vector<int>(members.begin(), members.begin() + need);
  });
}

Graph collapse_with(const Graph& g, const Chooser& choose) {
  ConditionReport rep = check_conditions(g);
  if (!rep.ok()) throw ConditionError(std::move(rep));
  StarPoset p = star_poset(g);
  int nc = p.num_classes();
  std::vector<bool> done(nc, false);
  Bitset chosen(g.size());
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
    if (!g.is_clique(s))
      throw Error(ErrorCode::Internal, "clique above a class is not a clique");
    long k = exact_log2_plus1(s.count());
    if (k < 0) throw Error(ErrorCode::Internal, "clique above has non 2^k-1 size");
    long kp = static_cast<long>((chosen & s).count());
    long need = k - kp;
    std::vector<int> members;
    for (auto v = p.classes[c].find_first(); v != Bitset::npos;
         v = p.classes[c].find_next(v))
      members.push_back(static_cast<int>(v));
    if (need < 0 || need > static_cast<long>(members.size()))
      throw Error(ErrorCode::Internal, "collapse choice count out of range");
    if (need > 0) {
      std::vector<int> picked = choose(members, static_cast<int>(need));
      if (static_cast<long>(picked.size()) != need)
        throw Error(ErrorCode::Internal, "chooser returned wrong count");
      for (int v : picked) {
        if (std::find(members.begin(), members.end(), v) == members.end() ||
            chosen.test(v))
          throw Error(ErrorCode::Internal, "chooser returned invalid vertex");
        chosen.set(v);
      }
    }
    done[c] = true;
  }
  return g.induced(chosen);
}

}  // namespace racg
