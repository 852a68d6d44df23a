#include "racg.h"

#include <cstring>
#include <string>

#include "racg/json_io.hpp"
#include "racg/recognize.hpp"

using namespace racg;

struct racg_options {
  RecognitionOptions opts;
};

namespace {

thread_local std::string g_last_error;

racg_status fail(racg_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RecognitionOptions effective(const racg_options* o) {
  return o ? o->opts : RecognitionOptions{};
}

template <typename Fn>
racg_status run(const char* json, const racg_options* o, char** out, Fn&& fn) {
  if (!json || !out) return fail(RACG_ERR_PARSE, "null argument");
  try {
    RecognitionOptions opts = effective(o);
    Budget::Scope budget(opts.budget_ms);
    std::string result = fn(parse_json_text(json), opts);
    *out = dup_string(result);
    g_last_error.clear();
    return RACG_OK;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::Parse:
      case ErrorCode::Validation:
        return fail(RACG_ERR_PARSE, e.what());
      case ErrorCode::ResourceLimit:
        return fail(RACG_ERR_LIMIT, e.what());
      case ErrorCode::Internal:
        return fail(RACG_ERR_INTERNAL, e.what());
    }
    return fail(RACG_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(RACG_ERR_INTERNAL, e.what());
  }
}

std::string dumped(const Json& j) { return j.dump(2) + "\n"; }

// A graph, or the graph underlying an extension or involution-graph document.
Graph any_graph(const Json& j) {
  if (j.contains("graph") && !j.contains("vertices"))
    return graph_from_json(j.at("graph"));
  return graph_from_json(j);
}

InvolutionGraph any_invgraph(const Json& j, const RecognitionOptions& opts) {
  if (j.contains("labels")) return invgraph_from_json(j);
  if (j.contains("pcs")) {
    SemidirectEvaluator eval(extension_from_json(j));
    auto classes = bounded_involution_enumeration(eval, opts.radius);
    return involution_graph_from_classes(classes, Provenance::Hypothetical);
  }
  RacgContext ctx(graph_from_json(j));
  return involution_graph_racg(ctx);
}

}  // namespace

extern "C" {

racg_options* racg_options_new(void) { return new racg_options{}; }

void racg_options_free(racg_options* opts) { delete opts; }

racg_status racg_options_set_int(racg_options* opts, const char* key, long value) {
  if (!opts || !key) return fail(RACG_ERR_PARSE, "null argument");
  std::string k = key;
  if (k == "radius") opts->opts.radius = static_cast<int>(value);
  else if (k == "retries") opts->opts.retries = static_cast<int>(value);
  else if (k == "seed") opts->opts.seed = static_cast<unsigned>(value);
  else if (k == "max_vertices") opts->opts.max_vertices = static_cast<int>(value);
  else if (k == "budget_ms") opts->opts.budget_ms = value;
  else if (k == "relator_cap") opts->opts.relator_cap = static_cast<int>(value);
  else return fail(RACG_ERR_PARSE, "unknown option: " + k);
  return RACG_OK;
}

const char* racg_last_error(void) { return g_last_error.c_str(); }

void racg_string_free(char* s) { std::free(s); }

racg_status racg_cliquegraph(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Graph g = any_graph(j);
    return dumped(cliquegraph_to_json(clique_graph(g), g));
  });
}

racg_status racg_poset(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Graph g = any_graph(j);
    return dumped(poset_to_json(star_poset(g), g));
  });
}

racg_status racg_check(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Graph g = any_graph(j);
    return dumped(condition_report_to_json(check_conditions(g), g));
  });
}

racg_status racg_collapse(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Json res;
    res["collapsed"] = graph_to_json(collapse(any_graph(j)));
    return dumped(res);
  });
}

racg_status racg_invgraph(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions& opts) {
    return dumped(invgraph_to_json(any_invgraph(j, opts)));
  });
}

racg_status racg_recognize(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions& opts) {
    return dumped(verdict_to_json(recognize(recognition_input_from_json(j), opts)));
  });
}

racg_status racg_extend(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    return dumped(labeled_graph_to_json(extension_defining_graph(extension_from_json(j))));
  });
}

racg_status racg_sils(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Graph g = any_graph(j);
    return dumped(sil_to_json(has_sil(g), g));
  });
}

racg_status racg_decompose(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    return dumped(decompositions_to_json(decompose(any_graph(j))));
  });
}

racg_status racg_abelianize(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    Presentation p = j.contains("generators")
                         ? presentation_from_json(j)
                         : racg_presentation(any_graph(j));
    return dumped(abelian_to_json(abelianize(p)));
  });
}

racg_status racg_snf(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    return dumped(snf_to_json(smith_normal_form(matrix_from_json(j))));
  });
}

racg_status racg_graph_to_dot(const char* json, const racg_options* o, char** out) {
  return run(json, o, out, [](const Json& j, const RecognitionOptions&) {
    return graph_to_dot(any_graph(j));
  });
}

}  // extern "C"
