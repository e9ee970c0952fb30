#include "hmoran/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hmoran/error.hpp"

namespace hmoran {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) out.push_back(token);
  return out;
}

double parse_number(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseError, fmt::format("line {}: bad number '{}'", line_no, token));
  }
  return value;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot open '{}'", path));
  return in;
}

}  // namespace

FitnessGraph GraphSkeleton::build(std::vector<double> m, std::vector<double> r) const {
  if (m.empty()) m.assign(size(), 1.0);
  if (r.empty()) r.assign(size(), 1.0);
  return build_graph(edges, directed, std::move(m), std::move(r), labels);
}

GraphSkeleton parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  bool directed = options.directed;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  struct Row {
    NodeId u, v;
    double w;
  };
  std::vector<Row> rows;
  bool any_weight = false;
  bool all_weight = true;

  const auto id_of = [&](const std::string& label) {
    const auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '%') {
      const auto tokens = tokenize(line.substr(1));
      if (tokens.size() == 2 && tokens[0] == "directed" &&
          (tokens[1] == "true" || tokens[1] == "false")) {
        directed = tokens[1] == "true";
        continue;
      }
      throw Error(ErrorCode::ParseError, fmt::format("line {}: unknown directive '{}'", line_no, line));
    }
    const auto tokens = tokenize(line);
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("line {}: expected 'u v [weight]', got {} fields", line_no, tokens.size()));
    }
    double w = 1.0;
    if (tokens.size() == 3) {
      w = parse_number(tokens[2], line_no);
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::ParseError, fmt::format("line {}: weight must be non-negative", line_no));
      }
      any_weight = true;
    } else {
      all_weight = false;
    }
    if (tokens[0] == tokens[1]) {
      throw Error(ErrorCode::SelfLoop, fmt::format("line {}: self-loop on '{}'", line_no, tokens[0]));
    }
    const NodeId u = id_of(tokens[0]);
    const NodeId v = id_of(tokens[1]);
    rows.push_back({u, v, w});
  }
  if (any_weight && !all_weight) {
    throw Error(ErrorCode::ParseError, "weights must be given on every row or on none");
  }
  if (labels.empty()) throw Error(ErrorCode::ParseError, "edge list has no edges");

  // Arc list with raw weights; undirected rows contribute both directions.
  std::vector<WeightedEdge> arcs;
  arcs.reserve(rows.size() * (directed ? 1 : 2));
  for (const auto& row : rows) {
    if (row.w == 0.0) continue;
    arcs.push_back({row.u, row.v, row.w});
    if (!directed) arcs.push_back({row.v, row.u, row.w});
  }

  std::size_t n = labels.size();
  std::size_t dropped = 0;
  const auto comp = strongly_connected_components(n, arcs);
  const auto comp_count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  if (comp_count > 1) {
    std::vector<std::size_t> sizes(comp_count, 0);
    for (auto c : comp) ++sizes[c];
    const auto largest =
        static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (!options.largest_scc) {
      std::vector<std::string> sample;
      for (NodeId u = 0; u < n && sample.size() < 5; ++u) {
        if (comp[u] == largest) sample.push_back(labels[u]);
      }
      throw Error(ErrorCode::NotStronglyConnected,
                  fmt::format("graph has {} strongly connected components; the largest has {} of {} "
                              "nodes (including {}{})",
                              comp_count, sizes[largest], n, fmt::join(sample, ", "),
                              sizes[largest] > sample.size() ? ", ..." : ""));
    }
    std::vector<NodeId> remap(n, static_cast<NodeId>(-1));
    std::vector<std::string> kept;
    for (NodeId u = 0; u < n; ++u) {
      if (comp[u] == largest) {
        remap[u] = static_cast<NodeId>(kept.size());
        kept.push_back(labels[u]);
      }
    }
    std::vector<WeightedEdge> inner;
    for (const auto& a : arcs) {
      if (remap[a.from] != static_cast<NodeId>(-1) && remap[a.to] != static_cast<NodeId>(-1)) {
        inner.push_back({remap[a.from], remap[a.to], a.weight});
      }
    }
    dropped = n - kept.size();
    labels = std::move(kept);
    arcs = std::move(inner);
    n = labels.size();
  }

  GraphSkeleton skeleton;
  skeleton.labels = std::move(labels);
  skeleton.dropped_nodes = dropped;
  skeleton.weighted = any_weight;
  // Unweighted undirected input keeps the 1/d construction. Everything else becomes a
  // directed arc list with weights normalized per source.
  if (!directed && !any_weight && dropped == 0) {
    skeleton.directed = false;
    for (const auto& row : rows) skeleton.edges.push_back({row.u, row.v, 1.0});
    return skeleton;
  }
  if (!directed && !any_weight) {
    skeleton.directed = false;
    for (const auto& a : arcs) {
      if (a.from < a.to) skeleton.edges.push_back(a);
    }
    return skeleton;
  }
  skeleton.directed = true;
  std::vector<double> total(n, 0.0);
  for (const auto& a : arcs) total[a.from] += a.weight;
  for (auto& a : arcs) {
    // Rows already summing to one are kept untouched so written graphs read back exactly.
    if (std::abs(total[a.from] - 1.0) > 1e-12) a.weight /= total[a.from];
  }
  skeleton.edges = std::move(arcs);
  return skeleton;
}

GraphSkeleton read_edge_list(const std::string& path, const EdgeListOptions& options) {
  auto in = open(path);
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const FitnessGraph& g) {
  out << "%directed " << (g.directed() ? "true" : "false") << '\n';
  for (NodeId u = 0; u < g.size(); ++u) {
    for (const auto& arc : g.out_arcs(u)) {
      if (g.directed()) {
        out << g.label(u) << '\t' << g.label(arc.target) << '\t' << format_double(arc.weight) << '\n';
      } else if (u < arc.target) {
        out << g.label(u) << '\t' << g.label(arc.target) << '\n';
      }
    }
  }
}

FitnessVectors parse_fitness(std::istream& in, const std::vector<std::string>& labels) {
  std::unordered_map<std::string, NodeId> ids;
  for (NodeId u = 0; u < labels.size(); ++u) ids.emplace(labels[u], u);
  FitnessVectors fv;
  fv.m.assign(labels.size(), std::nan(""));
  fv.r.assign(labels.size(), std::nan(""));
  std::vector<bool> seen(labels.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = tokenize(line);
    if (tokens.size() != 3) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: expected 'node m r'", line_no));
    }
    const auto it = ids.find(tokens[0]);
    if (it == ids.end()) continue;  // node removed by condensation or unknown
    if (seen[it->second]) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: duplicate node '{}'", line_no, tokens[0]));
    }
    seen[it->second] = true;
    fv.m[it->second] = parse_number(tokens[1], line_no);
    fv.r[it->second] = parse_number(tokens[2], line_no);
  }
  for (NodeId u = 0; u < labels.size(); ++u) {
    if (!seen[u]) {
      throw Error(ErrorCode::ParseError, fmt::format("no fitness given for node '{}'", labels[u]));
    }
  }
  return fv;
}

FitnessVectors read_fitness(const std::string& path, const std::vector<std::string>& labels) {
  auto in = open(path);
  return parse_fitness(in, labels);
}

void write_fitness(std::ostream& out, const FitnessGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    out << g.label(u) << '\t' << format_double(g.mutant_fitness(u)) << '\t'
        << format_double(g.resident_fitness(u)) << '\n';
  }
}

SetCoverInstance parse_set_cover(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array()) {
    throw Error(ErrorCode::ParseError, "set cover instance needs a 'sets' array");
  }
  std::vector<std::vector<int>> sets;
  try {
    for (const auto& s : doc["sets"]) sets.push_back(s.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("sets must be arrays of integers: {}", e.what()));
  }
  std::size_t k = sets.size();
  if (doc.contains("k")) {
    if (!doc["k"].is_number_unsigned()) throw Error(ErrorCode::ParseError, "'k' must be a non-negative integer");
    k = doc["k"].get<std::size_t>();
  }
  return make_instance(std::move(sets), k);
}

SetCoverInstance read_set_cover(const std::string& path) {
  auto in = open(path);
  return parse_set_cover(in);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << csv_escape(fields[i]);
  }
  *out_ << "\r\n";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace hmoran
