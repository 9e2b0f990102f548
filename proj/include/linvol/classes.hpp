#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linvol/genperm.hpp"

namespace linvol {

enum class ClassVariant { Rauzy, ExtendedWeak, ExtendedFull, Component };

struct EnumOptions {
  std::size_t max_nodes = 2'000'000;
  bool with_edges = false;
  bool with_flags = false;
  // 0 = serial reference path; n > 0 = OpenMP frontier processing. Both
  // produce byte-identical graphs.
  int threads = 0;
};

struct ClassEdge {
  std::uint32_t from = 0, to = 0;
  char label = '0';  // '0', '1' or 's'

  friend bool operator==(const ClassEdge&, const ClassEdge&) = default;
};

inline constexpr std::uint8_t kFlagIrreducible = 1;
inline constexpr std::uint8_t kFlagStronglyIrreducible = 2;
inline constexpr std::uint8_t kFlagDynamicallyIrreducible = 4;
inline constexpr std::uint8_t kFlagInAttractor = 8;

struct ClassGraph {
  GpKey seed;
  ClassVariant variant = ClassVariant::Rauzy;
  std::vector<GpKey> nodes;  // sorted; irreducible subset for class variants
  bool closed = true;
  std::size_t total_visited = 0;  // visited including reducible intermediates
  std::vector<ClassEdge> edges;          // when requested; sorted
  std::vector<std::uint8_t> flags;       // when requested; parallel to nodes

  bool contains(const GpKey& k) const;   // binary search
};

// Forward closure under the two induction moves; the seed must satisfy the
// convention and be irreducible.
ClassGraph rauzy_class(const GenPerm& seed, const EnumOptions& opts = {});

// Closure under the induction moves and the mirror. weak: mirror edges are
// taken only onto irreducible words; full: reducible intermediates are
// traversed and the final node set is intersected with the irreducibles.
ClassGraph extended_class(const GenPerm& seed, bool weak = true, const EnumOptions& opts = {});

struct AttractorReport {
  ClassGraph graph;  // undirected component, flags always present
  std::size_t attractor = 0;
  std::size_t reducible_dyn = 0;
  std::size_t reducible_nondyn = 0;
};

// Component of the full induction diagram through the seed, partitioned into
// the irreducible core and the transient fringe. Undirected traversal
// (predecessors as backward edges) by default; forward_only walks the
// directed closure of the seed, the set a diagram drawn from that seed
// contains.
AttractorReport attractor_report(const GenPerm& seed, const EnumOptions& opts = {},
                                 bool forward_only = false);

std::string export_dot(const ClassGraph& g);
std::string export_json(const ClassGraph& g, bool include_nodes);
// Node set from an export_json document; inverse of the exporter.
std::vector<GpKey> nodes_from_json(const std::string& text);

std::string variant_name(ClassVariant v);

}  // namespace linvol
