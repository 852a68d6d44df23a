#include "racg/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace racg {

namespace {

thread_local std::optional<std::chrono::steady_clock::time_point> g_deadline;

}  // namespace

void Budget::set_deadline_ms(long ms) {
  g_deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
}

void Budget::clear() { g_deadline.reset(); }

void Budget::check() {
  if (g_deadline && std::chrono::steady_clock::now() > *g_deadline)
    throw Error(ErrorCode::ResourceLimit, "compute budget exceeded");
}

Graph::Graph(std::vector<std::string> vertices,
             const std::vector<std::pair<std::string, std::string>>& edges) {
  if (vertices.empty()) throw Error(ErrorCode::Validation, "graph needs at least one vertex");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw Error(ErrorCode::Validation, "duplicate vertex name");
  names_ = std::move(vertices);
  adj_.assign(names_.size(), Bitset(names_.size()));
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    int u = index_of(a), v = index_of(b);
    if (u == v) throw Error(ErrorCode::Validation, "loop edge at vertex " + a);
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw Error(ErrorCode::Validation, "duplicate edge {" + a + "," + b + "}");
    adj_[u].set(v);
    adj_[v].set(u);
  }
}

int Graph::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name)
    throw Error(ErrorCode::Validation, "unknown vertex " + name);
  return static_cast<int>(it - names_.begin());
}

std::optional<int> Graph::find(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

Bitset Graph::star(int v) const {
  Bitset s = adj_[v];
  s.set(v);
  return s;
}

Bitset Graph::neighborhood(const std::string& v, bool closed) const {
  int i = index_of(v);
  return closed ? star(i) : adj_[i];
}

Bitset Graph::full() const {
  Bitset s(size());
  s.set();
  return s;
}

size_t Graph::edge_count() const {
  size_t c = 0;
  for (const auto& row : adj_) c += row.count();
  return c / 2;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u)
    for (int v = u + 1; v < size(); ++v)
      if (adj_[u].test(v)) out.emplace_back(u, v);
  return out;
}

bool Graph::is_clique(const Bitset& s) const {
  if (s.none()) return false;
  for (auto u = s.find_first(); u != Bitset::npos; u = s.find_next(u)) {
    Bitset rest = s;
    rest.reset(u);
    if (!rest.is_subset_of(adj_[u])) return false;
  }
  return true;
}

Graph Graph::induced(const Bitset& s) const {
  if (s.none()) throw Error(ErrorCode::Validation, "induced subgraph on empty vertex set");
  std::vector<std::string> verts = names_of(s);
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto u = s.find_first(); u != Bitset::npos; u = s.find_next(u))
    for (auto v = s.find_next(u); v != Bitset::npos; v = s.find_next(v))
      if (adj_[u].test(v)) edges.emplace_back(names_[u], names_[v]);
  return Graph(std::move(verts), edges);
}

namespace {

void bron_kerbosch(const std::vector<Bitset>& adj, Bitset r, Bitset p, Bitset x,
                   std::vector<Bitset>& out) {
  Budget::check();
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  // Pivot: vertex of P|X with the most neighbors in P.
  Bitset px = p | x;
  size_t piv = Bitset::npos, best = 0;
  for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
    size_t c = (p & adj[u]).count();
    if (piv == Bitset::npos || c > best) {
      piv = u;
      best = c;
    }
  }
  Bitset cand = p & ~adj[piv];
  for (auto v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) {
    Bitset r2 = r;
    r2.set(v);
    bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out);
    p.reset(v);
    x.set(v);
  }
}

// Canonical order on vertex sets: lexicographic on ascending index sequences.
bool canonical_less(const Bitset& a, const Bitset& b) {
  auto u = a.find_first(), v = b.find_first();
  while (u != Bitset::npos && v != Bitset::npos) {
    if (u != v) return u < v;
    u = a.find_next(u);
    v = b.find_next(v);
  }
  return u == Bitset::npos && v != Bitset::npos;
}

}  // namespace

std::vector<Bitset> Graph::maximal_cliques() const {
  std::vector<Bitset> adj(adj_);
  std::vector<Bitset> out;
  bron_kerbosch(adj, Bitset(size()), full(), Bitset(size()), out);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Bitset> Graph::all_cliques(size_t limit) const {
  // Extend cliques by common neighbors larger than every current member;
  // visits each nonempty clique exactly once.
  std::vector<Bitset> out;
  std::vector<std::pair<Bitset, Bitset>> work;  // (clique, extension candidates)
  for (int v = size() - 1; v >= 0; --v) {
    Bitset c(size());
    c.set(v);
    Bitset ext = adj_[v];
    for (int w = 0; w <= v; ++w) ext.reset(w);
    work.emplace_back(c, ext);
  }
  while (!work.empty()) {
    Budget::check();
    auto [c, ext] = work.back();
    work.pop_back();
    out.push_back(c);
    if (out.size() > limit)
      throw Error(ErrorCode::ResourceLimit, "clique enumeration limit exceeded");
    std::vector<std::pair<Bitset, Bitset>> children;
    for (auto v = ext.find_first(); v != Bitset::npos; v = ext.find_next(v)) {
      Bitset c2 = c;
      c2.set(v);
      Bitset ext2 = ext & adj_[v];
      for (size_t w = 0; w <= v; ++w) ext2.reset(w);
      children.emplace_back(c2, ext2);
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) work.push_back(*it);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Bitset> Graph::components(const Bitset& within) const {
  std::vector<Bitset> out;
  Bitset todo = within;
  while (todo.any()) {
    Bitset comp(size());
    std::vector<size_t> frontier{todo.find_first()};
    comp.set(frontier[0]);
    todo.reset(frontier[0]);
    while (!frontier.empty()) {
      size_t u = frontier.back();
      frontier.pop_back();
      Bitset nbrs = adj_[u] & todo;
      for (auto v = nbrs.find_first(); v != Bitset::npos; v = nbrs.find_next(v)) {
        comp.set(v);
        todo.reset(v);
        frontier.push_back(v);
      }
    }
    out.push_back(comp);
  }
  return out;
}

Bitset Graph::subset_by_names(const std::vector<std::string>& names) const {
  Bitset s(size());
  for (const auto& n : names) s.set(index_of(n));
  return s;
}

std::vector<std::string> Graph::names_of(const Bitset& s) const {
  std::vector<std::string> out;
  for (auto v = s.find_first(); v != Bitset::npos; v = s.find_next(v))
    out.push_back(names_[v]);
  return out;
}

bool Graph::same_labeled(const Graph& other) const {
  return names_ == other.names_ && adj_ == other.adj_;
}

namespace {

// Iterated refinement by (color, sorted multiset of neighbor colors).
std::vector<int> wl_colors(const Graph& g) {
  std::vector<int> color(g.size(), 0);
  for (int v = 0; v < g.size(); ++v) color[v] = static_cast<int>(g.link(v).count());
  for (int round = 0; round < g.size(); ++round) {
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> groups;
    for (int v = 0; v < g.size(); ++v) {
      std::vector<int> nbr;
      const Bitset& l = g.link(v);
      for (auto u = l.find_first(); u != Bitset::npos; u = l.find_next(u))
        nbr.push_back(color[u]);
      std::sort(nbr.begin(), nbr.end());
      groups[{color[v], nbr}].push_back(v);
    }
    std::vector<int> next(g.size());
    int c = 0;
    for (const auto& [key, verts] : groups) {
      for (int v : verts) next[v] = c;
      ++c;
    }
    if (next == color) break;
    color = next;
  }
  return color;
}

bool iso_extend(const Graph& g, const Graph& h, const std::vector<int>& cg,
                const std::vector<int>& ch, std::vector<int>& fwd, std::vector<int>& rev,
                int depth, const std::vector<int>& order) {
  Budget::check();
  if (depth == g.size()) return true;
  int v = order[depth];
  for (int w = 0; w < h.size(); ++w) {
    if (rev[w] >= 0 || ch[w] != cg[v]) continue;
    bool ok = true;
    for (int d = 0; d < depth && ok; ++d) {
      int u = order[d];
      if (g.adjacent(v, u) != h.adjacent(w, fwd[u])) ok = false;
    }
    if (!ok) continue;
    fwd[v] = w;
    rev[w] = v;
    if (iso_extend(g, h, cg, ch, fwd, rev, depth + 1, order)) return true;
    fwd[v] = -1;
    rev[w] = -1;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h,
                                                 int max_vertices) {
  if (g.size() > max_vertices || h.size() > max_vertices)
    throw Error(ErrorCode::ResourceLimit, "isomorphism search size limit exceeded");
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  std::vector<int> cg = wl_colors(g), ch = wl_colors(h);
  std::vector<int> hg = cg, hh = ch;
  std::sort(hg.begin(), hg.end());
  std::sort(hh.begin(), hh.end());
  if (hg != hh) return std::nullopt;
  // Process rarest colors first.
  std::vector<int> count(g.size() + 1, 0);
  for (int c : cg) count[c]++;
  std::vector<int> order(g.size());
  for (int i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (count[cg[a]] != count[cg[b]]) return count[cg[a]] < count[cg[b]];
    return a < b;
  });
  std::vector<int> fwd(g.size(), -1), rev(h.size(), -1);
  if (iso_extend(g, h, cg, ch, fwd, rev, 0, order)) return fwd;
  return std::nullopt;
}

}  // namespace racg
