#include "linvol/classes.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "linvol/rauzy.hpp"
#include "linvol/reduce.hpp"
#include "linvol/strata.hpp"

namespace linvol {

namespace {

using Visited = std::unordered_set<GpKey, GpKeyHash>;
using NeighborFn = std::function<void(const GpKey&, std::vector<GpKey>&)>;

struct BfsOutcome {
  std::vector<GpKey> all;  // insertion order
  bool closed = true;
};

// Level-synchronous BFS. The parallel path fills one result slot per
// frontier item and merges serially in index order, so the visited set and
// the truncation point match the serial path exactly.
BfsOutcome bfs(const GpKey& seed, std::size_t max_nodes, int threads,
               const NeighborFn& neighbors, Visited& visited) {
  BfsOutcome out;
  visited.insert(seed);
  out.all.push_back(seed);
  std::vector<GpKey> frontier{seed};
  std::vector<GpKey> next;
  while (!frontier.empty()) {
    next.clear();
    if (threads > 0) {
      std::vector<std::vector<GpKey>> results(frontier.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
      for (std::size_t i = 0; i < frontier.size(); ++i) neighbors(frontier[i], results[i]);
      for (std::size_t i = 0; i < frontier.size() && out.closed; ++i)
        for (GpKey& k : results[i]) {
          if (!visited.insert(k).second) continue;
          if (visited.size() > max_nodes) {
            out.closed = false;
            break;
          }
          out.all.push_back(k);
          next.push_back(k);
        }
    } else {
      std::vector<GpKey> buf;
      for (std::size_t i = 0; i < frontier.size() && out.closed; ++i) {
        buf.clear();
        neighbors(frontier[i], buf);
        for (GpKey& k : buf) {
          if (!visited.insert(k).second) continue;
          if (visited.size() > max_nodes) {
            out.closed = false;
            break;
          }
          out.all.push_back(k);
          next.push_back(k);
        }
      }
    }
    if (!out.closed) break;
    frontier.swap(next);
  }
  return out;
}

void require_enumerable_seed(const GenPerm& seed) {
  if (!seed.convention_ok())
    throw ConventionError("class enumeration requires the linear-involution convention");
  if (find_reduction(seed))
    throw ReducibleSeedError("class enumeration requires an irreducible seed");
}

std::uint8_t node_flags(const GenPerm& gp, bool know_irreducible) {
  std::uint8_t f = 0;
  bool irr = know_irreducible || (gp.convention_ok() && !find_reduction(gp).has_value());
  if (irr) f |= kFlagIrreducible | kFlagInAttractor;
  if (is_strongly_irreducible(gp)) f |= kFlagStronglyIrreducible;
  if (irr || is_dynamically_irreducible(gp).dynamically_irreducible)
    f |= kFlagDynamicallyIrreducible;
  return f;
}

void fill_flags(ClassGraph& g, bool all_irreducible, int threads) {
  g.flags.assign(g.nodes.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(threads, 1))
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    g.flags[i] = node_flags(GenPerm::from_key(g.nodes[i]), all_irreducible);
}

void fill_edges(ClassGraph& g, bool with_mirror, int threads) {
  std::vector<std::vector<ClassEdge>> per(g.nodes.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(threads, 1))
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    GenPerm gp = GenPerm::from_key(g.nodes[i]);
    auto add = [&](const GpKey& k, char label) {
      auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), k);
      if (it != g.nodes.end() && *it == k)
        per[i].push_back(ClassEdge{static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(it - g.nodes.begin()), label});
    };
    if (auto a = r0(gp)) add(a->key(), '0');
    if (auto b = r1(gp)) add(b->key(), '1');
    if (with_mirror) add(gp.mirror_s().key(), 's');
  }
  g.edges.clear();
  for (auto& v : per) g.edges.insert(g.edges.end(), v.begin(), v.end());
}

}  // namespace

bool ClassGraph::contains(const GpKey& k) const {
  return std::binary_search(nodes.begin(), nodes.end(), k);
}

ClassGraph rauzy_class(const GenPerm& seed, const EnumOptions& opts) {
  require_enumerable_seed(seed);
  ClassGraph g;
  g.seed = seed.key();
  g.variant = ClassVariant::Rauzy;
  Visited visited;
  auto neighbors = [](const GpKey& k, std::vector<GpKey>& out) {
    GenPerm gp = GenPerm::from_key(k);
    if (auto a = r0(gp)) out.push_back(a->key());
    if (auto b = r1(gp)) out.push_back(b->key());
  };
  auto res = bfs(g.seed, opts.max_nodes, opts.threads, neighbors, visited);
  g.closed = res.closed;
  g.total_visited = res.all.size();
  g.nodes = std::move(res.all);
  std::sort(g.nodes.begin(), g.nodes.end());
  if (opts.with_flags) fill_flags(g, true, opts.threads);
  if (opts.with_edges) fill_edges(g, false, opts.threads);
  return g;
}

ClassGraph extended_class(const GenPerm& seed, bool weak, const EnumOptions& opts) {
  require_enumerable_seed(seed);
  ClassGraph g;
  g.seed = seed.key();
  g.variant = weak ? ClassVariant::ExtendedWeak : ClassVariant::ExtendedFull;
  Visited visited;
  NeighborFn neighbors;
  if (weak) {
    neighbors = [&visited](const GpKey& k, std::vector<GpKey>& out) {
      GenPerm gp = GenPerm::from_key(k);
      if (auto a = r0(gp)) out.push_back(a->key());
      if (auto b = r1(gp)) out.push_back(b->key());
      GenPerm s = gp.mirror_s();
      GpKey sk = s.key();
      // nodes already visited are irreducible by the weak invariant
      if (visited.count(sk) || !find_reduction(s).has_value()) out.push_back(sk);
    };
  } else {
    neighbors = [](const GpKey& k, std::vector<GpKey>& out) {
      GenPerm gp = GenPerm::from_key(k);
      if (auto a = r0(gp)) out.push_back(a->key());
      if (auto b = r1(gp)) out.push_back(b->key());
      out.push_back(gp.mirror_s().key());
    };
  }
  auto res = bfs(g.seed, opts.max_nodes, opts.threads, neighbors, visited);
  g.closed = res.closed;
  g.total_visited = res.all.size();
  if (weak) {
    g.nodes = std::move(res.all);
  } else {
    // intersect the closure with the irreducible words
    std::vector<std::uint8_t> keep(res.all.size(), 0);
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(opts.threads, 1))
    for (std::size_t i = 0; i < res.all.size(); ++i) {
      GenPerm gp = GenPerm::from_key(res.all[i]);
      keep[i] = gp.convention_ok() && !find_reduction(gp).has_value();
    }
    for (std::size_t i = 0; i < res.all.size(); ++i)
      if (keep[i]) g.nodes.push_back(res.all[i]);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  if (opts.with_flags) fill_flags(g, true, opts.threads);
  if (opts.with_edges) fill_edges(g, true, opts.threads);
  return g;
}

AttractorReport attractor_report(const GenPerm& seed, const EnumOptions& opts,
                                 bool forward_only) {
  if (!seed.convention_ok())
    throw ConventionError("the component walk requires the linear-involution convention");
  AttractorReport rep;
  ClassGraph& g = rep.graph;
  g.seed = seed.key();
  g.variant = ClassVariant::Component;
  Visited visited;
  auto neighbors = [forward_only](const GpKey& k, std::vector<GpKey>& out) {
    GenPerm gp = GenPerm::from_key(k);
    if (auto a = r0(gp)) out.push_back(a->key());
    if (auto b = r1(gp)) out.push_back(b->key());
    if (forward_only) return;
    for (int eps : {0, 1})
      for (const GenPerm& p : predecessors(gp, eps)) out.push_back(p.key());
  };
  auto res = bfs(g.seed, opts.max_nodes, opts.threads, neighbors, visited);
  g.closed = res.closed;
  g.total_visited = res.all.size();
  g.nodes = std::move(res.all);
  std::sort(g.nodes.begin(), g.nodes.end());
  fill_flags(g, false, opts.threads);
  for (std::uint8_t f : g.flags) {
    if (f & kFlagInAttractor)
      ++rep.attractor;
    else if (f & kFlagDynamicallyIrreducible)
      ++rep.reducible_dyn;
    else
      ++rep.reducible_nondyn;
  }
  if (opts.with_edges) fill_edges(g, false, opts.threads);
  return rep;
}

std::string variant_name(ClassVariant v) {
  switch (v) {
    case ClassVariant::Rauzy: return "rauzy";
    case ClassVariant::ExtendedWeak: return "extended-weak";
    case ClassVariant::ExtendedFull: return "extended-full";
    case ClassVariant::Component: return "component";
  }
  return "?";
}

namespace {

std::string node_str(const GpKey& k) { return GenPerm::from_key(k).str(); }

std::string stratum_of(const ClassGraph& g) {
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!g.flags.empty() && !(g.flags[i] & kFlagIrreducible)) continue;
    GenPerm gp = GenPerm::from_key(g.nodes[i]);
    if (!gp.convention_ok() || find_reduction(gp)) continue;
    return signature(gp).str();
  }
  return "";
}

}  // namespace

std::string export_dot(const ClassGraph& g) {
  std::ostringstream os;
  os << "digraph classgraph {\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    os << "  \"" << node_str(g.nodes[i]) << "\"";
    if (!g.flags.empty() && !(g.flags[i] & kFlagIrreducible)) os << " [style=dashed]";
    os << ";\n";
  }
  for (const ClassEdge& e : g.edges)
    os << "  \"" << node_str(g.nodes[e.from]) << "\" -> \"" << node_str(g.nodes[e.to])
       << "\" [label=\"" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_json(const ClassGraph& g, bool include_nodes) {
  nlohmann::json j;
  j["seed"] = node_str(g.seed);
  j["variant"] = variant_name(g.variant);
  j["node_count"] = g.nodes.size();
  j["closed"] = g.closed;
  std::string stratum = stratum_of(g);
  if (stratum.empty())
    j["stratum"] = nullptr;
  else
    j["stratum"] = stratum;
  if (include_nodes) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const GpKey& k : g.nodes) nodes.push_back(node_str(k));
    j["nodes"] = std::move(nodes);
    if (!g.edges.empty()) {
      nlohmann::json edges = nlohmann::json::array();
      for (const ClassEdge& e : g.edges)
        edges.push_back({e.from, e.to, std::string(1, e.label)});
      j["edges"] = std::move(edges);
    }
  }
  return j.dump();
}

std::vector<GpKey> nodes_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<GpKey> out;
  for (const auto& s : j.at("nodes")) out.push_back(GenPerm::parse(s.get<std::string>()).key());
  return out;
}

}  // namespace linvol
