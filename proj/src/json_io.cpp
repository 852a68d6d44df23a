#include "racg/json_io.hpp"

#include <sstream>

namespace racg {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::Parse, std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long>(v.get_si());
  return v.get_str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(ErrorCode::Parse, "matrix entries must be integers or decimal strings");
}

WordS split_word(const std::string& text) {
  WordS w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) w.push_back(tok);
  return w;
}

Json names_array(const Graph& g, const Bitset& s) {
  Json a = Json::array();
  for (const auto& n : g.names_of(s)) a.push_back(n);
  return a;
}

Json index_array(const Bitset& s) {
  Json a = Json::array();
  for (auto v = s.find_first(); v != Bitset::npos; v = s.find_next(v))
    a.push_back(static_cast<int>(v));
  return a;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Graph graph_from_json(const Json& j) {
  std::vector<std::string> vertices = string_list(need(j, "vertices"), "vertices");
  std::vector<std::pair<std::string, std::string>> edges;
  const Json& je = need(j, "edges");
  if (!je.is_array()) throw Error(ErrorCode::Parse, "edges must be an array");
  for (const auto& e : je) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw Error(ErrorCode::Parse, "each edge must be a pair of vertex names");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return Graph(std::move(vertices), edges);
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.names();
  Json edges = Json::array();
  for (auto [u, v] : g.edge_list()) edges.push_back({g.name_of(u), g.name_of(v)});
  j["edges"] = std::move(edges);
  return j;
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph {\n";
  for (const auto& n : g.names()) out << "  \"" << n << "\";\n";
  for (auto [u, v] : g.edge_list())
    out << "  \"" << g.name_of(u) << "\" -- \"" << g.name_of(v) << "\";\n";
  out << "}\n";
  return out.str();
}

Presentation presentation_from_json(const Json& j) {
  Presentation p;
  p.generators = string_list(need(j, "generators"), "generators");
  const Json& jr = need(j, "relators");
  if (!jr.is_array()) throw Error(ErrorCode::Parse, "relators must be an array");
  for (const auto& r : jr) {
    RWord word;
    for (const auto& l : string_list(r, "relator")) {
      if (l.size() > 3 && l.substr(l.size() - 3) == "^-1")
        word.push_back({l.substr(0, l.size() - 3), -1});
      else
        word.push_back({l, 1});
    }
    p.relators.push_back(std::move(word));
  }
  for (const RWord& r : p.relators)
    for (const Letter& l : r) p.generator_index(l.gen);  // validates
  return p;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["generators"] = p.generators;
  Json rels = Json::array();
  for (const RWord& r : p.relators) {
    Json w = Json::array();
    for (const Letter& l : r) w.push_back(l.exp == 1 ? l.gen : l.gen + "^-1");
    rels.push_back(std::move(w));
  }
  j["relators"] = std::move(rels);
  return j;
}

IntMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_array() ? j : need(j, "matrix");
  if (!rows.is_array()) throw Error(ErrorCode::Parse, "matrix must be an array of rows");
  int r = static_cast<int>(rows.size());
  int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorCode::Parse, "matrix must be rectangular");
    for (int k = 0; k < c; ++k) m.at(i, k) = int_from_json(rows[i][k]);
  }
  return m;
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json snf_to_json(const SNFDecomposition& d) {
  Json j;
  j["p"] = matrix_to_json(d.p);
  j["s"] = matrix_to_json(d.s);
  j["q"] = matrix_to_json(d.q);
  Json f = Json::array();
  for (const Int& v : d.invariant_factors) f.push_back(int_to_json(v));
  j["invariant_factors"] = std::move(f);
  return j;
}

Json abelian_to_json(const AbelianModel& m) {
  Json j;
  Json orders = Json::array();
  for (const Int& o : m.factor_orders) orders.push_back(int_to_json(o));
  j["factor_orders"] = std::move(orders);
  j["elementary_abelian_2"] = m.elementary_abelian_2();
  j["snf"] = snf_to_json(m.snf);
  return j;
}

PCFamily extension_from_json(const Json& j) {
  // the graph may be nested under "graph" or inline at the top level
  Graph g = graph_from_json(j.contains("graph") ? j.at("graph") : j);
  PCFamily fam{std::move(g), {}};
  for (const auto& p : need(j, "pcs")) {
    PartialConjugation pc;
    pc.name = need(p, "name").get<std::string>();
    pc.acting = need(p, "acting").get<std::string>();
    pc.domain = string_list(need(p, "domain"), "domain");
    fam.pcs.push_back(std::move(pc));
  }
  validate_family(fam);
  return fam;
}

Json extension_to_json(const PCFamily& fam) {
  Json j = graph_to_json(fam.graph);
  Json pcs = Json::array();
  for (const auto& pc : fam.pcs)
    pcs.push_back({{"name", pc.name}, {"acting", pc.acting}, {"domain", pc.domain}});
  j["pcs"] = std::move(pcs);
  return j;
}

InvolutionGraph invgraph_from_json(const Json& j) {
  Graph g = graph_from_json(j);
  InvolutionGraph ig{std::move(g), std::vector<WordS>(0), std::vector<GF2Vector>(0),
                     Provenance::UserSupplied};
  if (j.contains("provenance"))
    ig.provenance = provenance_from_name(j.at("provenance").get<std::string>());
  const Json& labels = need(j, "labels");
  const Json& abv = need(j, "ab_vectors");
  ig.labels.resize(ig.graph.size());
  ig.ab.resize(ig.graph.size());
  int dim = -1;
  for (int v = 0; v < ig.graph.size(); ++v) {
    const std::string& name = ig.graph.name_of(v);
    if (!labels.contains(name))
      throw Error(ErrorCode::Parse, "missing label for vertex " + name);
    if (!abv.contains(name))
      throw Error(ErrorCode::Parse, "missing ab_vector for vertex " + name);
    ig.labels[v] = split_word(labels.at(name).get<std::string>());
    const Json& bits = abv.at(name);
    if (!bits.is_array()) throw Error(ErrorCode::Parse, "ab_vectors entries must be arrays");
    if (dim < 0) dim = static_cast<int>(bits.size());
    if (static_cast<int>(bits.size()) != dim)
      throw Error(ErrorCode::Parse, "ab_vectors must all have the same length");
    GF2Vector vec(dim);
    for (int i = 0; i < dim; ++i) {
      int b = bits[i].get<int>();
      if (b != 0 && b != 1) throw Error(ErrorCode::Parse, "ab_vector bits must be 0 or 1");
      vec.set(i, b == 1);
    }
    ig.ab[v] = std::move(vec);
  }
  return ig;
}

Json invgraph_to_json(const InvolutionGraph& ig) {
  Json j = graph_to_json(ig.graph);
  Json labels = Json::object();
  Json abv = Json::object();
  for (int v = 0; v < ig.graph.size(); ++v) {
    labels[ig.graph.name_of(v)] = joined(ig.labels[v]);
    Json bits = Json::array();
    for (int i = 0; i < ig.ab[v].size(); ++i) bits.push_back(ig.ab[v].get(i) ? 1 : 0);
    abv[ig.graph.name_of(v)] = std::move(bits);
  }
  j["labels"] = std::move(labels);
  j["ab_vectors"] = std::move(abv);
  j["provenance"] = provenance_name(ig.provenance);
  return j;
}

Json cliquegraph_to_json(const CliqueGraph& cg, const Graph& base) {
  Json j;
  j["graph"] = graph_to_json(cg.graph);
  Json labels = Json::object();
  for (int v = 0; v < cg.graph.size(); ++v)
    labels[cg.graph.name_of(v)] = names_array(base, cg.labels[v]);
  j["labels"] = std::move(labels);
  return j;
}

Json poset_to_json(const StarPoset& p, const Graph& g) {
  Json j;
  Json classes = Json::array();
  for (const Bitset& c : p.classes) classes.push_back(names_array(g, c));
  j["classes"] = std::move(classes);
  Json hasse = Json::array();
  for (auto [lo, hi] : p.hasse) hasse.push_back({lo, hi});
  j["hasse"] = std::move(hasse);
  return j;
}

Json condition_report_to_json(const ConditionReport& r, const Graph& g) {
  Json j;
  Json mcs = Json::array();
  for (const Bitset& c : r.maximal_cliques) mcs.push_back(names_array(g, c));
  j["maximal_cliques"] = std::move(mcs);
  auto info_json = [&](const IntersectionInfo& i) {
    return Json{{"index_set", index_array(i.index_set)},
                {"content", names_array(g, i.content)},
                {"k", i.k}};
  };
  Json ints = Json::array();
  for (const auto& i : r.intersections) ints.push_back(info_json(i));
  j["intersections"] = std::move(ints);
  j["maximal_clique_ok"] = r.maximal_clique_ok();
  j["minimal_vertex_ok"] = r.minimal_vertex_ok();
  j["inclusion_exclusion_ok"] = r.inclusion_exclusion_ok();
  j["ok"] = r.ok();
  Json mcf = Json::array();
  for (const auto& i : r.mc_failures) mcf.push_back(info_json(i));
  j["maximal_clique_failures"] = std::move(mcf);
  Json mvf = Json::array();
  for (const Bitset& b : r.mv_failures) mvf.push_back(index_array(b));
  j["minimal_vertex_failures"] = std::move(mvf);
  Json ief = Json::array();
  for (const auto& f : r.ie_failures)
    ief.push_back({{"index_set", index_array(f.index_set)},
                   {"lhs", f.lhs},
                   {"rhs", f.rhs}});
  j["inclusion_exclusion_failures"] = std::move(ief);
  return j;
}

Json labeled_graph_to_json(const LabeledGraph& lg) {
  Json j;
  j["graph"] = graph_to_json(lg.graph);
  Json labels = Json::object();
  for (int v = 0; v < lg.graph.size(); ++v)
    labels[lg.graph.name_of(v)] = joined(lg.labels[v]);
  j["labels"] = std::move(labels);
  return j;
}

Json sil_to_json(const std::optional<SilWitness>& s, const Graph& g) {
  Json j;
  if (!s) {
    j["sil"] = nullptr;
    return j;
  }
  j["sil"] = {{"v", g.name_of(s->v)},
              {"w", g.name_of(s->w)},
              {"component", names_array(g, s->component)}};
  return j;
}

Json decompositions_to_json(const std::vector<Decomposition>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) {
    Json j;
    j["a1"] = d.a1;
    j["alphas"] = d.alphas;
    j["domains"] = d.domains;
    j["gamma"] = graph_to_json(d.gamma);
    out.push_back(std::move(j));
  }
  return out;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["outcome"] = outcome_name(v.outcome);
  if (!v.failed_step.empty()) j["failed_step"] = v.failed_step;
  j["assumptions"] = v.assumptions;
  if (v.condition_report && v.involution_graph)
    j["condition_report"] =
        condition_report_to_json(*v.condition_report, v.involution_graph->graph);
  if (v.loop)
    j["loop"] = {{"vertex", v.loop->first}, {"conjugator", joined(v.loop->second)}};
  if (v.involution_graph) j["involution_graph"] = invgraph_to_json(*v.involution_graph);
  if (v.collapsed) {
    Json pres;
    pres["graph"] = graph_to_json(v.collapsed->graph);
    Json labels = Json::object();
    for (int i = 0; i < v.collapsed->graph.size(); ++i)
      labels[v.collapsed->graph.name_of(i)] = joined(v.collapsed->labels[i]);
    pres["labels"] = std::move(labels);
    j["presentation"] = std::move(pres);
  }
  if (v.iso) {
    Json fwd = Json::object(), bwd = Json::object();
    for (const auto& [g, w] : v.iso->forward) fwd[g] = joined(w);
    for (const auto& [g, w] : v.iso->backward) bwd[g] = joined(w);
    j["isomorphism"] = {{"forward", std::move(fwd)}, {"backward", std::move(bwd)}};
  }
  return j;
}

RecognitionInput recognition_input_from_json(const Json& j) {
  RecognitionInput in;
  if (j.contains("pcs")) {
    in.extension = extension_from_json(j);
  } else if (j.contains("labels")) {
    in.user_graph = invgraph_from_json(j);
    if (j.contains("extension"))
      in.user_family = extension_from_json(j.at("extension"));
  } else {
    in.racg_graph = graph_from_json(j);
  }
  return in;
}

}  // namespace racg
