#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hmoran/graph.hpp"
#include "hmoran/reductions.hpp"

namespace hmoran {

struct EdgeListOptions {
  /// Used when the file has no `%directed` directive.
  bool directed = false;
  /// Keep only the largest strongly connected component instead of failing.
  bool largest_scc = false;
};

/// Parsed edge list before fitness is attached.
struct GraphSkeleton {
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  /// Arc semantics of `edges`: true once raw weights were normalized per source.
  bool directed = false;
  bool weighted = false;
  /// Nodes dropped by largest-SCC condensation.
  std::size_t dropped_nodes = 0;

  std::size_t size() const noexcept { return labels.size(); }
  /// Attaches fitness; all-ones when the vectors are empty.
  FitnessGraph build(std::vector<double> m = {}, std::vector<double> r = {}) const;
};

/// Edge-list text: `#` comments, an optional `%directed true|false` directive and rows
/// `u v [weight]` separated by tabs or spaces. Labels are arbitrary tokens mapped to
/// dense ids in order of first appearance. Raw weights are normalized per source, so a
/// weighted undirected list becomes a symmetric directed graph.
GraphSkeleton parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
GraphSkeleton read_edge_list(const std::string& path, const EdgeListOptions& options = {});

/// Writes a graph so that parse_edge_list reproduces its weights bit for bit.
void write_edge_list(std::ostream& out, const FitnessGraph& g);

/// Fitness rows `node m r`, node given by label. Every node must appear once.
struct FitnessVectors {
  std::vector<double> m;
  std::vector<double> r;
};
FitnessVectors parse_fitness(std::istream& in, const std::vector<std::string>& labels);
FitnessVectors read_fitness(const std::string& path, const std::vector<std::string>& labels);
void write_fitness(std::ostream& out, const FitnessGraph& g);

/// {"sets": [[1,4],[1,2,4],[3,5]], "k": 2}
SetCoverInstance parse_set_cover(std::istream& in);
SetCoverInstance read_set_cover(const std::string& path);

/// RFC 4180 CSV: fields quoted when they contain a comma, quote or line break; CRLF
/// line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(&out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream* out_;
};

std::string csv_escape(const std::string& field);
/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

}  // namespace hmoran
