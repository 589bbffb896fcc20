#include "greedy_lab/instances.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "greedy_lab/error.hpp"
#include "greedy_lab/random_stream.hpp"
#include "json.hpp"

namespace greedy_lab {

using nlohmann::json;

std::size_t ceil_sqrt(std::size_t a) {
  std::size_t r = 0;
  while (r * r < a) ++r;
  return r;
}

namespace {

std::string num(std::size_t x) { return std::to_string(x); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

OptimumCertificate generator_certificate(std::vector<Edge> witness) {
  OptimumCertificate cert;
  cert.size = witness.size();
  cert.witness = std::move(witness);
  cert.source = OptimumSource::kGeneratorCertified;
  return cert;
}

}  // namespace

Instance gen_gab(std::size_t a, std::size_t b) {
  require(a >= 4, "G_{a,b} needs a >= 4");
  require(b >= 2 && b % 2 == 0, "G_{a,b} needs b even");
  require(a % b == 0, "G_{a,b} needs b to divide a");
  const std::size_t r = ceil_sqrt(a);
  const std::size_t c = 2 * r;
  const Node s2 = static_cast<Node>(a);
  const Node s3 = static_cast<Node>(2 * a);
  std::vector<Edge> edges;
  edges.reserve(a * c + a + r + a * (b - 1) / 2);
  for (Node i = 0; i < a; ++i) {
    for (Node j = 0; j < c; ++j) edges.push_back({i, s3 + j});
  }
  std::vector<Edge> witness;
  for (Node i = 0; i < a; ++i) {
    edges.push_back({i, s2 + i});
    witness.push_back({i, s2 + i});
  }
  for (Node j = 0; j < r; ++j) {
    edges.push_back({s3 + 2 * j, s3 + 2 * j + 1});
    witness.push_back({s3 + 2 * j, s3 + 2 * j + 1});
  }
  for (Node start = 0; start < a; start += static_cast<Node>(b)) {
    for (Node x = start; x < start + b; ++x) {
      for (Node y = x + 1; y < start + b; ++y) edges.push_back({s2 + x, s2 + y});
    }
  }
  Instance inst;
  inst.family = "gab";
  inst.params = {{"a", num(a)}, {"b", num(b)}};
  inst.graph = Graph(2 * a + c, std::move(edges));
  inst.optimum = generator_certificate(std::move(witness));
  inst.labels.assign(2 * a + c, "S3");
  std::fill(inst.labels.begin(), inst.labels.begin() + a, "S1");
  std::fill(inst.labels.begin() + a, inst.labels.begin() + 2 * a, "S2");
  return inst;
}

Instance gen_gab_bipartite_double(std::size_t a) {
  const std::size_t b = ceil_sqrt(a);
  require(a >= 4 && b * b == a && b % 2 == 0,
          "bipartite double needs a to be an even square >= 4");
  const std::size_t c = 2 * b;
  const Node half = static_cast<Node>(2 * a + c);
  const Node s2 = static_cast<Node>(a);
  const Node s3 = static_cast<Node>(2 * a);
  std::vector<Edge> edges;
  std::vector<Edge> witness;
  for (Node side : {Node{0}, half}) {
    for (Node i = 0; i < a; ++i) {
      for (Node j = 0; j < c; ++j) edges.push_back({side + i, side + s3 + j});
    }
    for (Node i = 0; i < a; ++i) {
      edges.push_back({side + i, side + s2 + i});
      witness.push_back({side + i, side + s2 + i});
    }
  }
  for (Node j = 0; j < c; ++j) {
    edges.push_back({s3 + j, half + s3 + j});
    witness.push_back({s3 + j, half + s3 + j});
  }
  for (Node start = 0; start < a; start += static_cast<Node>(b)) {
    for (Node x = start; x < start + b; ++x) {
      for (Node y = start; y < start + b; ++y) {
        edges.push_back({s2 + x, half + s2 + y});
      }
    }
  }
  Instance inst;
  inst.family = "gab-double";
  inst.params = {{"a", num(a)}};
  inst.graph = Graph(2 * half, std::move(edges));
  inst.optimum = generator_certificate(std::move(witness));
  inst.labels.resize(2 * half);
  for (Node x = 0; x < 2 * half; ++x) {
    Node local = x % half;
    std::string group = local < a ? "S1" : local < 2 * a ? "S2" : "S3";
    inst.labels[x] = (x < half ? "L:" : "R:") + group;
  }
  return inst;
}

Instance gen_ga2_bipartite(std::size_t a) {
  require(a >= 16 && a % 2 == 0, "bipartite G_{a,2} needs a even and a >= 16");
  const std::size_t c = 2 * ceil_sqrt(a);
  const Node s2 = static_cast<Node>(a);
  const Node s3 = static_cast<Node>(2 * a);
  const Node s3p = static_cast<Node>(2 * a + c);
  std::vector<Edge> edges;
  for (Node i = 0; i < a; ++i) {
    Node target = i % 2 == 0 ? s3 : s3p;
    for (Node j = 0; j < c; ++j) edges.push_back({i, target + j});
  }
  for (Node i = 0; i < a; ++i) edges.push_back({i, s2 + i});
  for (Node i = 0; i < a; i += 2) edges.push_back({s2 + i, s2 + i + 1});
  Instance inst;
  inst.family = "ga2-bipartite";
  inst.params = {{"a", num(a)}};
  inst.graph = Graph(2 * a + 2 * c, std::move(edges));
  inst.labels.assign(2 * a + 2 * c, "S3'");
  std::fill(inst.labels.begin(), inst.labels.begin() + a, "S1");
  std::fill(inst.labels.begin() + a, inst.labels.begin() + 2 * a, "S2");
  std::fill(inst.labels.begin() + 2 * a, inst.labels.begin() + 2 * a + c, "S3");
  if (a <= 10000) {
    inst.optimum = max_matching_bipartite(inst.graph, two_coloring(inst.graph));
  }
  return inst;
}

namespace {

constexpr std::array<const char*, 6> kGadgetRoles = {"u", "v", "w", "z", "b", "c"};
enum Role : int { kU, kV, kW, kZ, kB, kC };

Instance gadget(const std::string& family, const std::array<Node, 6>& label,
                const std::vector<std::pair<int, int>>& edge_roles,
                const std::vector<std::pair<int, int>>& witness_roles) {
  std::array<Node, 6> sorted = label;
  std::sort(sorted.begin(), sorted.end());
  for (Node i = 0; i < 6; ++i) require(sorted[i] == i, "labeling must permute 0..5");
  std::vector<Edge> edges;
  for (auto [x, y] : edge_roles) edges.push_back({label[x], label[y]});
  std::vector<Edge> witness;
  for (auto [x, y] : witness_roles) witness.push_back({label[x], label[y]});
  Instance inst;
  inst.family = family;
  inst.graph = Graph(6, std::move(edges));
  inst.optimum = generator_certificate(std::move(witness));
  inst.labels.resize(6);
  for (int r = 0; r < 6; ++r) inst.labels[label[r]] = kGadgetRoles[r];
  return inst;
}

}  // namespace

Instance gen_fig2_gadget(const std::array<Node, 6>& labeling) {
  return gadget("gadget-deg2", labeling,
                {{kU, kV}, {kU, kW}, {kV, kW}, {kV, kZ}, {kZ, kB}, {kZ, kC}, {kB, kC}},
                {{kU, kW}, {kV, kZ}, {kB, kC}});
}

Instance gen_fig3_gadget(const std::array<Node, 6>& labeling) {
  return gadget("gadget-deg3", labeling,
                {{kV, kU}, {kV, kW}, {kU, kW}, {kU, kZ}, {kZ, kB}, {kZ, kC}, {kB, kC}},
                {{kV, kW}, {kU, kZ}, {kB, kC}});
}

Instance gen_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n < (std::size_t{1} << 31), "n too large");
  if (m > n * (n - (n > 0)) / 2) {
    throw Error(ErrorKind::kInfeasible, "more edges than node pairs");
  }
  RandomStream rng(seed);
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    Node u = static_cast<Node>(rng.uniform(n));
    Node v = static_cast<Node>(rng.uniform(n));
    if (u == v) continue;
    Edge k = Edge{u, v}.normalized();
    if (!used.insert((std::uint64_t{k.u} << 32) | k.v).second) continue;
    edges.push_back({u, v});
  }
  Instance inst;
  inst.family = "erdos-renyi";
  inst.params = {{"n", num(n)}, {"m", num(m)}, {"seed", std::to_string(seed)}};
  inst.graph = Graph(n, std::move(edges));
  return inst;
}

Instance gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw Error(ErrorKind::kInfeasible, "n*d is odd");
  if (d > 0 && d >= n) throw Error(ErrorKind::kInfeasible, "d >= n");
  RandomStream rng(seed);
  std::vector<Node> stubs(n * d);
  std::vector<Node> partners(n * d);
  std::vector<std::size_t> fill(n);
  constexpr int kAttempts = 1000000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Node>(i / d);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::fill(fill.begin(), fill.end(), 0);
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      Node u = stubs[i], v = stubs[i + 1];
      if (u == v) simple = false;
      partners[u * d + fill[u]++] = v;
      partners[v * d + fill[v]++] = u;
    }
    for (std::size_t x = 0; x < n && simple; ++x) {
      auto begin = partners.begin() + x * d;
      std::sort(begin, begin + d);
      simple = std::adjacent_find(begin, begin + d) == begin + d;
    }
    if (!simple) continue;
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      edges.push_back({stubs[i], stubs[i + 1]});
    }
    Instance inst;
    inst.family = "random-regular";
    inst.params = {{"n", num(n)}, {"d", num(d)}, {"seed", std::to_string(seed)}};
    inst.graph = Graph(n, std::move(edges));
    return inst;
  }
  throw Error(ErrorKind::kInfeasible, "no simple pairing found");
}

Instance gen_random_bounded_degree(std::size_t n, std::size_t max_degree,
                                   std::size_t m, std::uint64_t seed) {
  require(n >= 2, "need at least two nodes");
  RandomStream rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> edges;
  std::size_t failures = 0;
  while (edges.size() < m && failures < 50 * n * n) {
    Node u = static_cast<Node>(rng.uniform(n));
    Node v = static_cast<Node>(rng.uniform(n));
    Edge k = Edge{u, v}.normalized();
    if (u == v || deg[u] >= max_degree || deg[v] >= max_degree ||
        !used.insert((std::uint64_t{k.u} << 32) | k.v).second) {
      ++failures;
      continue;
    }
    ++deg[u];
    ++deg[v];
    edges.push_back({u, v});
  }
  Instance inst;
  inst.family = "random-bounded-degree";
  inst.params = {{"n", num(n)},
                 {"max_degree", num(max_degree)},
                 {"m", num(m)},
                 {"seed", std::to_string(seed)}};
  inst.graph = Graph(n, std::move(edges));
  return inst;
}

Instance gen_path(std::size_t n) {
  std::vector<Edge> edges;
  std::vector<Edge> witness;
  for (Node i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1});
    if (i % 2 == 0) witness.push_back({i, i + 1});
  }
  Instance inst;
  inst.family = "path";
  inst.params = {{"n", num(n)}};
  inst.graph = Graph(n, std::move(edges));
  inst.optimum = generator_certificate(std::move(witness));
  return inst;
}

Instance gen_cycle(std::size_t n) {
  require(n >= 3, "a cycle needs at least three nodes");
  std::vector<Edge> edges;
  std::vector<Edge> witness;
  for (Node i = 0; i < n; ++i) {
    edges.push_back({i, static_cast<Node>((i + 1) % n)});
    if (i % 2 == 0 && i + 1 < n) witness.push_back({i, i + 1});
  }
  Instance inst;
  inst.family = "cycle";
  inst.params = {{"n", num(n)}};
  inst.graph = Graph(n, std::move(edges));
  inst.optimum = generator_certificate(std::move(witness));
  return inst;
}

void attach_optimum(Instance& inst) {
  if (inst.optimum) return;
  const Graph& g = inst.graph;
  if (g.num_nodes() <= kBruteForceMaxNodes || g.num_edges() <= kBruteForceMaxEdges) {
    inst.optimum = max_matching_bruteforce(g);
    return;
  }
  auto sides = two_coloring(g);
  if (!sides.empty()) inst.optimum = max_matching_bipartite(g, sides);
}

namespace {

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<Edge> edges_from_json(const json& j) {
  std::vector<Edge> out;
  for (const json& e : j) out.push_back({e.at(0).get<Node>(), e.at(1).get<Node>()});
  return out;
}

}  // namespace

void write_instance(const std::string& base, const Instance& inst) {
  write_graph_file(base + ".graph", inst.graph);
  json meta;
  meta["family"] = inst.family;
  meta["params"] = inst.params;
  meta["labels"] = inst.labels;
  if (inst.optimum) {
    json cert;
    cert["size"] = inst.optimum->size;
    cert["source"] = optimum_source_name(inst.optimum->source);
    if (inst.optimum->witness) cert["witness"] = edges_json(*inst.optimum->witness);
    if (inst.optimum->cover) cert["cover"] = *inst.optimum->cover;
    meta["optimum"] = cert;
  } else {
    meta["optimum"] = nullptr;
  }
  std::ofstream out(base + ".meta.json");
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + base + ".meta.json");
  out << meta.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + base + ".meta.json");
}

Instance read_instance(const std::string& base) {
  Instance inst;
  inst.graph = read_graph_file(base + ".graph");
  std::ifstream in(base + ".meta.json");
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + base + ".meta.json");
  try {
    json meta = json::parse(in);
    inst.family = meta.at("family").get<std::string>();
    inst.params = meta.at("params").get<std::map<std::string, std::string>>();
    inst.labels = meta.at("labels").get<std::vector<std::string>>();
    const json& cert = meta.at("optimum");
    if (!cert.is_null()) {
      OptimumCertificate c;
      c.size = cert.at("size").get<std::size_t>();
      c.source = parse_optimum_source(cert.at("source").get<std::string>());
      if (cert.contains("witness")) c.witness = edges_from_json(cert.at("witness"));
      if (cert.contains("cover")) c.cover = cert.at("cover").get<std::vector<Node>>();
      inst.optimum = std::move(c);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, base + ".meta.json: " + e.what());
  }
  if (!inst.labels.empty() && inst.labels.size() != inst.graph.num_nodes()) {
    throw Error(ErrorKind::kParse, "label count differs from node count");
  }
  if (inst.optimum) validate_certificate(inst.graph, *inst.optimum);
  return inst;
}

}  // namespace greedy_lab
