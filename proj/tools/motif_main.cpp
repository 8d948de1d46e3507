#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "motif/chunglu.hpp"
#include "motif/engine.hpp"
#include "motif/errors.hpp"
#include "motif/estimate.hpp"
#include "motif/graph.hpp"
#include "motif/oracle.hpp"
#include "motif/pathstats.hpp"
#include "motif/query.hpp"
#include "motif/rng.hpp"
#include "motif/runtime.hpp"

using json = nlohmann::ordered_json;
using namespace motif;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open output file: " + out_path);
    f << j.dump(2) << '\n';
  }
}

json tree_to_json(const DecompositionTree& t) {
  json blocks = json::array();
  for (const Block& b : t.blocks) {
    json jb;
    jb["id"] = b.id;
    jb["kind"] = b.kind == Block::Kind::Cycle ? "cycle" : "leaf";
    jb["nodes"] = b.nodes;
    jb["boundary"] = b.boundary;
    jb["parent"] = t.parent[b.id];
    json node_children = json::object();
    for (int i = 0; i < b.length(); ++i) {
      if (b.child_on_node[i] >= 0) node_children[std::to_string(i)] = b.child_on_node[i];
    }
    json edge_children = json::object();
    for (int i = 0; i < b.num_edges(); ++i) {
      if (b.child_on_edge[i] >= 0) {
        edge_children[std::to_string(i)] = {{"block", b.child_on_edge[i]},
                                            {"forward", static_cast<bool>(b.edge_child_fwd[i])}};
      }
    }
    jb["children_on_nodes"] = node_children;
    jb["children_on_edges"] = edge_children;
    blocks.push_back(jb);
  }
  json jt;
  jt["k"] = t.k;
  jt["root"] = t.root;
  jt["singleton_root"] = t.singleton_root;
  if (t.singleton_root) jt["singleton_node"] = t.singleton_node;
  jt["blocks"] = blocks;
  return jt;
}

QueryGraph load_query_checked(const std::string& path, int k_override) {
  QueryGraph q = load_query_file(path);
  if (k_override > 0 && k_override != q.k)
    throw ParseError("--k must match the query file's node count");
  return q;
}

DataGraph load_graph_warned(const std::string& path) {
  LoadStats st;
  DataGraph g = load_edge_list_file(path, &st);
  if (st.self_loops_dropped || st.duplicates_dropped) {
    std::cerr << "warning: dropped " << st.self_loops_dropped << " self loops and "
              << st.duplicates_dropped << " duplicate edges\n";
  }
  return g;
}

EngineKind parse_engine(const std::string& s) {
  if (s == "ps") return EngineKind::PS;
  return EngineKind::DB;
}

OracleBudget budget_from_env() {
  OracleBudget b;
  if (const char* env = std::getenv("MOTIF_BUDGET")) b.max_steps = std::strtoull(env, nullptr, 10);
  return b;
}

int run_plan(const std::string& query_path, int k_override, const std::string& out) {
  QueryGraph q = load_query_checked(query_path, k_override);
  auto trees = enumerate_trees(q);
  const DecompositionTree& best = select_plan(trees);
  json j;
  j["query"] = query_path;
  j["num_trees"] = trees.size();
  j["selected"] = tree_to_json(best);
  json all = json::array();
  for (const auto& t : trees) {
    PlanScore s = plan_score(t);
    all.push_back({{"score",
                    {{"max_cycle_length", s.max_cycle_length},
                     {"boundary_total", s.boundary_total},
                     {"annotation_total", s.annotation_total}}},
                   {"tree", tree_to_json(t)}});
  }
  j["trees"] = all;
  emit(j, out);
  return 0;
}

int run_count(const std::string& graph_path, const std::string& query_path,
              const std::string& engine, uint64_t seed, int workers, int k_override,
              const std::string& out) {
  Timer timer;
  DataGraph g = load_graph_warned(graph_path);
  QueryGraph q = load_query_checked(query_path, k_override);
  auto trees = enumerate_trees(q);
  const DecompositionTree& tree = select_plan(trees);
  Coloring chi = random_coloring(g, q.k, seed);
  EngineKind kind = parse_engine(engine);

  json j;
  j["graph"] = graph_path;
  j["query"] = query_path;
  j["engine"] = engine;
  j["seed"] = seed;
  j["k"] = q.k;
  j["workers"] = workers;
  if (workers == 1) {
    j["colorful_count"] = count_colorful(g, chi, degree_rank(g), tree, kind);
  } else {
    RunStats stats;
    j["colorful_count"] =
        parallel_count(g, chi, tree, kind, Partition(g.num_vertices(), workers), &stats);
    j["runtime"] = {{"p", stats.p},
                    {"per_worker_ops", stats.per_worker_ops},
                    {"max_ops", stats.max_ops},
                    {"avg_ops", stats.avg_ops},
                    {"wall_time", stats.wall_time}};
  }
  j["wall_time"] = timer.seconds();
  emit(j, out);
  std::cerr << "colorful count " << j["colorful_count"] << " (" << engine << ", seed " << seed
            << ")\n";
  return 0;
}

int run_estimate(const std::string& graph_path, const std::string& query_path,
                 const std::string& engine, uint64_t trials, uint64_t seed, int k_override,
                 const std::string& out) {
  DataGraph g = load_graph_warned(graph_path);
  QueryGraph q = load_query_checked(query_path, k_override);
  auto trees = enumerate_trees(q);
  EstimateReport r = estimate(g, q, select_plan(trees), parse_engine(engine), trials, seed);
  json j;
  j["graph"] = graph_path;
  j["query"] = query_path;
  j["engine"] = engine;
  j["seed"] = seed;
  j["trials"] = r.trials;
  j["per_trial_colorful"] = r.per_trial_colorful;
  j["normalizer"] = r.normalizer;
  j["mean_estimate"] = r.mean_estimate;
  j["cv"] = r.cv;
  j["aut"] = r.aut;
  j["subgraph_estimate"] = r.subgraph_estimate;
  j["wall_time_per_trial"] = r.wall_time_per_trial;
  emit(j, out);
  std::cerr << "estimate " << r.mean_estimate << " (cv " << r.cv << ", " << r.trials
            << " trials)\n";
  return 0;
}

int run_oracle(const std::string& graph_path, const std::string& query_path, bool colorful,
               uint64_t seed, int k_override, const std::string& out) {
  DataGraph g = load_graph_warned(graph_path);
  QueryGraph q = load_query_checked(query_path, k_override);
  OracleBudget budget = budget_from_env();
  json j;
  j["graph"] = graph_path;
  j["query"] = query_path;
  const uint64_t matches = brute_matches(g, q, budget);
  const uint64_t aut = automorphism_count(q);
  j["matches"] = matches;
  j["aut"] = aut;
  j["subgraph_count"] = matches / aut;
  if (colorful) {
    Coloring chi = random_coloring(g, q.k, seed);
    j["seed"] = seed;
    j["colorful"] = brute_colorful(g, q, chi, budget);
  }
  emit(j, out);
  return 0;
}

int run_gen_chunglu(uint32_t n, double alpha, uint64_t seed, const std::string& out) {
  ChungLuSpec spec{power_law_degrees(n, alpha, seed)};
  if (!spec.model_assumptions())
    std::cerr << "warning: degree sequence violates m >= n; sampling anyway\n";
  DataGraph g = sample_chung_lu(spec, derive_seed(seed, 1));
  std::string text = serialize_edge_list(g);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw ParseError("cannot open output file: " + out);
    f << text;
  }
  std::cerr << "n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  return 0;
}

int run_pathstats(uint32_t n, double alpha, int q, uint64_t seed, int num_seeds,
                  const std::string& out) {
  std::ostringstream csv;
  csv << "n,alpha,seed,q,X,Y,ratio\n";
  for (int s = 0; s < num_seeds; ++s) {
    const uint64_t graph_seed = derive_seed(seed, static_cast<uint64_t>(s));
    ChungLuSpec spec{power_law_degrees(n, alpha, graph_seed)};
    DataGraph g = sample_chung_lu(spec, derive_seed(graph_seed, 1));
    auto perm = random_id_permutation(g.num_vertices(), derive_seed(graph_seed, 2));
    PathStats st = path_stats(g, q, degree_rank(g), perm);
    const double ratio = st.x == 0 ? 0.0 : static_cast<double>(st.y) / static_cast<double>(st.x);
    csv << n << ',' << alpha << ',' << (seed + s) << ',' << q << ',' << st.x << ',' << st.y << ','
        << ratio << '\n';
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(out);
    if (!f) throw ParseError("cannot open output file: " + out);
    f << csv.str();
  }
  return 0;
}

int run_bench(const std::string& graph_path, const std::string& query_path, uint64_t seed,
              int workers, const std::string& out) {
  DataGraph g = load_graph_warned(graph_path);
  QueryGraph q = load_query_file(query_path);
  auto trees = enumerate_trees(q);
  const DecompositionTree& tree = select_plan(trees);
  Coloring chi = random_coloring(g, q.k, seed);
  VertexOrdering ord = degree_rank(g);

  json j;
  j["graph"] = graph_path;
  j["query"] = query_path;
  j["seed"] = seed;

  uint64_t count_ps = 0, count_db = 0;
  double time_ps = 0, time_db = 0;
  JoinStats ops_ps, ops_db;
  {
    Timer t;
    count_ps = count_colorful(g, chi, ord, tree, EngineKind::PS, &ops_ps);
    time_ps = t.seconds();
  }
  {
    Timer t;
    count_db = count_colorful(g, chi, ord, tree, EngineKind::DB, &ops_db);
    time_db = t.seconds();
  }
  if (count_ps != count_db) throw SpecError("engine disagreement (bug)");
  j["colorful_count"] = count_ps;
  j["ps"] = {{"wall_time", time_ps}, {"ops", ops_ps.ops}};
  j["db"] = {{"wall_time", time_db}, {"ops", ops_db.ops}};
  j["improvement_factor"] = time_db > 0 ? time_ps / time_db : 0.0;
  j["ops_improvement"] =
      ops_db.ops > 0 ? static_cast<double>(ops_ps.ops) / static_cast<double>(ops_db.ops) : 0.0;

  if (workers > 1) {
    RunStats stats;
    const uint64_t cp = parallel_count(g, chi, tree, EngineKind::DB,
                                       Partition(g.num_vertices(), workers), &stats);
    if (cp != count_db) throw SpecError("parallel runtime disagreement (bug)");
    j["parallel_db"] = {
        {"p", stats.p},
        {"per_worker_ops", stats.per_worker_ops},
        {"max_ops", stats.max_ops},
        {"avg_ops", stats.avg_ops},
        {"wall_time", stats.wall_time},
        {"speedup_vs_serial_db", stats.wall_time > 0 ? time_db / stats.wall_time : 0.0}};
  }
  emit(j, out);
  std::cerr << "PS " << time_ps << "s / DB " << time_db << "s, improvement factor "
            << (time_db > 0 ? time_ps / time_db : 0.0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"color-coding subgraph count estimation for treewidth-2 queries"};
  app.require_subcommand(1);

  std::string graph_path, query_path, out_path;
  std::string engine = "db";
  uint64_t seed = 1, trials = 10;
  int workers = 1, k_override = 0;
  uint32_t n = 1024;
  double alpha = 1.5;
  int q_len = 3, num_seeds = 1;
  bool colorful = false;

  auto* plan = app.add_subcommand("plan", "enumerate decomposition trees and pick one");
  plan->add_option("--query", query_path)->required();
  plan->add_option("--k", k_override);
  plan->add_option("--out", out_path);

  auto* count = app.add_subcommand("count", "colorful count for one random coloring");
  count->add_option("--graph", graph_path)->required();
  count->add_option("--query", query_path)->required();
  count->add_option("--engine", engine)->check(CLI::IsMember({"ps", "db"}));
  count->add_option("--seed", seed);
  count->add_option("--workers", workers)->check(CLI::PositiveNumber);
  count->add_option("--k", k_override);
  count->add_option("--out", out_path);

  auto* est = app.add_subcommand("estimate", "multi-trial match-count estimate");
  est->add_option("--graph", graph_path)->required();
  est->add_option("--query", query_path)->required();
  est->add_option("--engine", engine)->check(CLI::IsMember({"ps", "db"}));
  est->add_option("--trials", trials)->check(CLI::PositiveNumber);
  est->add_option("--seed", seed);
  est->add_option("--k", k_override);
  est->add_option("--out", out_path);

  auto* orc = app.add_subcommand("oracle", "brute-force ground truth (small inputs)");
  orc->add_option("--graph", graph_path)->required();
  orc->add_option("--query", query_path)->required();
  orc->add_flag("--colorful", colorful, "also count colorful matches under --seed");
  orc->add_option("--seed", seed);
  orc->add_option("--k", k_override);
  orc->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen-chunglu", "sample a truncated power-law Chung-Lu graph");
  gen->add_option("--n", n)->check(CLI::PositiveNumber);
  gen->add_option("--alpha", alpha);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  auto* ps = app.add_subcommand("pathstats", "degree-topped vs id-topped path counts (CSV)");
  ps->add_option("--n", n)->check(CLI::PositiveNumber);
  ps->add_option("--alpha", alpha);
  ps->add_option("--q", q_len)->check(CLI::PositiveNumber);
  ps->add_option("--seed", seed);
  ps->add_option("--seeds", num_seeds)->check(CLI::PositiveNumber);
  ps->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "compare PS and DB wall time and load");
  bench->add_option("--graph", graph_path)->required();
  bench->add_option("--query", query_path)->required();
  bench->add_option("--seed", seed);
  bench->add_option("--workers", workers)->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
    if (plan->parsed()) return run_plan(query_path, k_override, out_path);
    if (count->parsed())
      return run_count(graph_path, query_path, engine, seed, workers, k_override, out_path);
    if (est->parsed())
      return run_estimate(graph_path, query_path, engine, trials, seed, k_override, out_path);
    if (orc->parsed())
      return run_oracle(graph_path, query_path, colorful, seed, k_override, out_path);
    if (gen->parsed()) return run_gen_chunglu(n, alpha, seed, out_path);
    if (ps->parsed()) return run_pathstats(n, alpha, q_len, seed, num_seeds, out_path);
    if (bench->parsed()) return run_bench(graph_path, query_path, seed, workers, out_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cout << json{{"error", {{"kind", "parse"}, {"message", e.what()}}}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TreewidthError& e) {
    std::cout << json{{"error", {{"kind", "treewidth"}, {"message", e.what()}}}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const OverflowError& e) {
    std::cout << json{{"error", {{"kind", "overflow"}, {"message", e.what()}}}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const BudgetError& e) {
    std::cout << json{{"error", {{"kind", "budget"}, {"message", e.what()}}}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
