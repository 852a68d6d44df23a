#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "racg.h"

namespace {

using nlohmann::json;

struct Settings {
  long radius = -1, retries = -1, seed = -1, max_vertices = -1;
  bool as_json = false, as_dot = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct OptionsHolder {
  racg_options* opts = racg_options_new();
  ~OptionsHolder() { racg_options_free(opts); }
  OptionsHolder(const OptionsHolder&) = delete;
  OptionsHolder& operator=(const OptionsHolder&) = delete;
  explicit OptionsHolder(const Settings& s) {
    if (s.radius >= 0) racg_options_set_int(opts, "radius", s.radius);
    if (s.retries >= 0) racg_options_set_int(opts, "retries", s.retries);
    if (s.seed >= 0) racg_options_set_int(opts, "seed", s.seed);
    if (s.max_vertices >= 0) racg_options_set_int(opts, "max_vertices", s.max_vertices);
    if (const char* b = std::getenv("RACG_BUDGET_MS"))
      racg_options_set_int(opts, "budget_ms", std::atol(b));
  }
};

int status_to_exit(racg_status st) {
  switch (st) {
    case RACG_OK: return 0;
    case RACG_ERR_PARSE: return 1;
    case RACG_ERR_LIMIT: return 2;
    default: return 3;
  }
}

using OpFn = racg_status (*)(const char*, const racg_options*, char**);

OpFn op_for(const std::string& name) {
  if (name == "cliquegraph") return racg_cliquegraph;
  if (name == "collapse") return racg_collapse;
  if (name == "check") return racg_check;
  if (name == "poset") return racg_poset;
  if (name == "invgraph") return racg_invgraph;
  if (name == "recognize") return racg_recognize;
  if (name == "extend") return racg_extend;
  if (name == "sils") return racg_sils;
  if (name == "decompose") return racg_decompose;
  if (name == "abelianize") return racg_abelianize;
  if (name == "snf") return racg_snf;
  return nullptr;
}

// The embedded graph of a command's JSON output, for --dot rendering.
json graph_part(const std::string& cmd, const json& out) {
  if (cmd == "collapse") return out.at("collapsed");
  if (out.contains("graph")) return out.at("graph");
  if (out.contains("vertices")) return json{{"vertices", out.at("vertices")}, {"edges", out.at("edges")}};
  throw std::runtime_error("command output has no graph to render");
}

std::string brief(const std::string& cmd, const json& out) {
  std::ostringstream line;
  if (cmd == "recognize") {
    line << "outcome: " << out.at("outcome").get<std::string>();
    if (out.contains("failed_step"))
      line << " (" << out.at("failed_step").get<std::string>() << ")";
    for (const auto& a : out.at("assumptions"))
      line << "\nassumption: " << a.get<std::string>();
  } else if (cmd == "check") {
    line << (out.at("ok").get<bool>() ? "conditions hold" : "conditions fail");
    if (!out.at("maximal_clique_ok").get<bool>()) line << "; maximal clique condition fails";
    if (!out.at("minimal_vertex_ok").get<bool>()) line << "; minimal vertex condition fails";
    for (const auto& f : out.at("inclusion_exclusion_failures"))
      line << "; inclusion-exclusion fails (lhs " << f.at("lhs").get<long>() << " vs k "
           << f.at("rhs").get<long>() << ")";
  } else if (cmd == "sils") {
    if (out.at("sil").is_null()) line << "no SIL";
    else
      line << "SIL witness: " << out.at("sil").at("v").get<std::string>() << ", "
           << out.at("sil").at("w").get<std::string>();
  } else {
    return out.dump(2);
  }
  return line.str();
}

int run_single(const std::string& cmd, const std::string& path, const Settings& st) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  OptionsHolder holder(st);
  char* out = nullptr;
  racg_status rc = op_for(cmd)(text.c_str(), holder.opts, &out);
  if (rc != RACG_OK) {
    std::cerr << "error: " << racg_last_error() << "\n";
    return status_to_exit(rc);
  }
  std::string result = out;
  racg_string_free(out);
  if (st.as_dot) {
    json parsed = json::parse(result);
    std::string graph_text = graph_part(cmd, parsed).dump();
    char* dot = nullptr;
    rc = racg_graph_to_dot(graph_text.c_str(), holder.opts, &dot);
    if (rc != RACG_OK) {
      std::cerr << "error: " << racg_last_error() << "\n";
      return status_to_exit(rc);
    }
    std::cout << dot;
    racg_string_free(dot);
    return 0;
  }
  if (st.as_json) {
    std::cout << result;
    return 0;
  }
  std::cout << brief(cmd, json::parse(result)) << "\n";
  return 0;
}

struct BatchRow {
  std::string file, op, outcome, expect, note;
};

BatchRow run_batch_row(json entry, const Settings& st) {
  BatchRow row;
  try {
    row.file = entry.at("file").get<std::string>();
    row.op = entry.value("op", std::string("recognize"));
    row.expect = entry.value("expect", std::string());
    OpFn fn = op_for(row.op);
    if (!fn) throw std::runtime_error("unknown op " + row.op);
    std::string text = read_file(row.file);
    OptionsHolder holder(st);
    char* out = nullptr;
    racg_status rc = fn(text.c_str(), holder.opts, &out);
    if (rc != RACG_OK) {
      row.outcome = "error";
      row.note = racg_last_error();
      return row;
    }
    json parsed = json::parse(std::string(out));
    racg_string_free(out);
    if (row.op == "recognize") row.outcome = parsed.at("outcome").get<std::string>();
    else if (row.op == "check") row.outcome = parsed.at("ok").get<bool>() ? "ok" : "fail";
    else row.outcome = "done";
  } catch (const std::exception& e) {
    row.outcome = "error";
    row.note = e.what();
  }
  return row;
}

int run_batch(const std::string& manifest_path, const Settings& st) {
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
    if (!manifest.is_array()) throw std::runtime_error("manifest must be a JSON array");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::vector<std::future<BatchRow>> futures;
  for (const auto& entry : manifest)
    futures.push_back(std::async(std::launch::async, run_batch_row, entry, st));
  std::cout << "file\top\toutcome\texpected\tmatch\n";
  for (auto& f : futures) {
    BatchRow row = f.get();
    std::string match = row.expect.empty() ? "-" : (row.outcome == row.expect ? "yes" : "NO");
    std::cout << row.file << "\t" << row.op << "\t" << row.outcome << "\t"
              << (row.expect.empty() ? "-" : row.expect) << "\t" << match << "\n";
    if (!row.note.empty()) std::cerr << row.file << ": " << row.note << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right-angled Coxeter recognition toolkit"};
  app.require_subcommand(1);

  Settings st;
  std::string input;
  static const std::vector<std::string> cmds = {
      "cliquegraph", "collapse", "check",     "poset",      "invgraph", "recognize",
      "extend",      "sils",     "decompose", "abelianize", "snf"};
  for (const auto& name : cmds) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", input, "input JSON file")->required();
    sub->add_flag("--json", st.as_json, "emit JSON");
    sub->add_flag("--dot", st.as_dot, "emit DOT for the output graph");
    sub->add_option("--radius", st.radius, "involution enumeration radius");
    sub->add_option("--retries", st.retries, "collapse retry attempts");
    sub->add_option("--seed", st.seed, "random seed");
    sub->add_option("--max-vertices", st.max_vertices, "isomorphism search cap");
  }
  CLI::App* batch = app.add_subcommand("batch");
  batch->add_option("manifest", input, "manifest JSON file")->required();
  batch->add_option("--radius", st.radius, "involution enumeration radius");
  batch->add_option("--retries", st.retries, "collapse retry attempts");
  batch->add_option("--seed", st.seed, "random seed");
  batch->add_option("--max-vertices", st.max_vertices, "isomorphism search cap");

  CLI11_PARSE(app, argc, argv);

  std::string cmd = app.get_subcommands()[0]->get_name();
  if (cmd == "batch") return run_batch(input, st);
  return run_single(cmd, input, st);
}
