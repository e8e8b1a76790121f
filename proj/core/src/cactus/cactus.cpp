#include "strop/cactus/cactus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "strop/error.hpp"
#include "strop/linalg/ring.hpp"

namespace strop::cactus {
namespace {

Rational frac(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(q);
  r.canonicalize();
  return r;
}

bool in_unit_interval(const Rational& x) { return x >= 0 && x < 1; }

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

void require_valid(const Cactus& c, const std::string& what) {
  auto r = validate(c);
  if (!r.valid())
    throw InvalidCactus(what + " violates " + r.first()->relation + ": " + r.first()->detail);
}

std::vector<std::size_t> smallest_rotation(const std::vector<std::size_t>& v) {
  auto best = v;
  for (std::size_t s = 1; s < v.size(); ++s) {
    std::vector<std::size_t> rot(v.begin() + s, v.end());
    rot.insert(rot.end(), v.begin(), v.begin() + s);
    best = std::min(best, rot);
  }
  return best;
}

std::size_t successor(const Vertex& v, std::size_t circle) {
  auto it = std::find(v.circles.begin(), v.circles.end(), circle);
  if (it == v.circles.end()) throw InvalidCactus("vertex is not incident to the circle it lies on");
  ++it;
  return it == v.circles.end() ? v.circles.front() : *it;
}

Rational parse_rational(const YAML::Node& n) {
  static const auto Q = linalg::CoefficientRing::rationals();
  if (!n.IsScalar()) throw ParseError("expected an exact fraction");
  return Q.parse_scalar(n.as<std::string>());
}

std::size_t parse_index(const YAML::Node& n) {
  if (!n.IsScalar()) throw ParseError("expected an index");
  const auto s = n.as<std::string>();
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw ParseError("'" + s + "' is not an index");
  return std::stoull(s);
}

}  // namespace

std::size_t Cactus::incidence_count() const {
  std::size_t m = 0;
  for (const auto& c : circles) m += c.vertices.size();
  return m;
}

std::optional<Rational> Cactus::position(std::size_t circle, std::size_t vertex) const {
  for (const auto& inc : circles.at(circle).vertices)
    if (inc.vertex == vertex) return inc.position;
  return std::nullopt;
}

Rational Arc::length() const { return end - start; }

Cactus unit_cactus() {
  Cactus c;
  c.circles.push_back({Rational(1), {}});
  c.basepoint = {0, Rational(0)};
  return c;
}

Cactus canonical(const Cactus& c) {
  Cactus out = c;
  for (auto& circle : out.circles)
    std::stable_sort(circle.vertices.begin(), circle.vertices.end(),
                     [](const Incidence& a, const Incidence& b) { return a.position < b.position; });
  const std::size_t n = c.vertices.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> renumber(n, kUnset);
  std::size_t next = 0;
  for (const auto& circle : out.circles)
    for (const auto& inc : circle.vertices)
      if (inc.vertex < n && renumber[inc.vertex] == kUnset) renumber[inc.vertex] = next++;
  for (std::size_t v = 0; v < n; ++v)
    if (renumber[v] == kUnset) renumber[v] = next++;
  for (auto& circle : out.circles)
    for (auto& inc : circle.vertices)
      if (inc.vertex < n) inc.vertex = renumber[inc.vertex];
  out.vertices.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) out.vertices[renumber[v]].circles = smallest_rotation(c.vertices[v].circles);
  return out;
}

bool equivalent(const Cactus& a, const Cactus& b) { return canonical(a) == canonical(b); }

bool ValidationReport::violates(std::string_view relation) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.relation == relation; });
}

ValidationReport validate(const Cactus& c) {
  namespace rel = relation;
  ValidationReport r;
  r.k = c.k();
  r.n_c = c.vertices.size();
  r.m_c = c.incidence_count();
  for (const auto& v : c.vertices) r.multiplicities.push_back(v.circles.size());
  auto fail = [&](const char* name, std::string detail) { r.violations.push_back({name, std::move(detail)}); };

  if (r.k == 0) {
    fail(rel::kComponents, "a cactus has at least one circle");
    return r;
  }
  Rational total = 0;
  for (std::size_t i = 0; i < r.k; ++i) {
    total += c.circles[i].radius;
    if (c.circles[i].radius <= 0) {
      fail(rel::kRadii, "circle " + std::to_string(i) + " has radius " + c.circles[i].radius.get_str());
      break;
    }
  }
  if (total != 1) fail(rel::kRadiusSum, "radii sum to " + total.get_str());

  bool positions_ok = in_unit_interval(c.basepoint.position);
  bool references_ok = true;
  for (const auto& circle : c.circles)
    for (const auto& inc : circle.vertices) {
      positions_ok = positions_ok && in_unit_interval(inc.position);
      references_ok = references_ok && inc.vertex < r.n_c;
    }
  for (const auto& v : c.vertices)
    for (auto i : v.circles) references_ok = references_ok && i < r.k;
  if (!positions_ok) fail(rel::kPositions, "positions lie in [0, 1)");
  if (!references_ok) {
    fail(rel::kReferences, "a vertex or circle index is out of range");
    if (c.basepoint.component >= r.k) fail(rel::kBasepoint, "basepoint component is out of range");
    return r;
  }

  for (std::size_t i = 0; i < r.k; ++i) {
    std::set<Rational> seen;
    for (const auto& inc : c.circles[i].vertices)
      if (!seen.insert(inc.position).second) {
        fail(rel::kDistinct, "circle " + std::to_string(i) + " has two vertices at " + inc.position.get_str());
        i = r.k;
        break;
      }
  }
  for (std::size_t i = 0; i < r.k; ++i) {
    const auto& vs = c.circles[i].vertices;
    if (!std::is_sorted(vs.begin(), vs.end(),
                        [](const Incidence& a, const Incidence& b) { return a.position < b.position; })) {
      fail(rel::kOrdering, "vertices of circle " + std::to_string(i) + " are not ordered by position");
      break;
    }
  }
  for (std::size_t v = 0; v < r.n_c; ++v) {
    const auto& cs = c.vertices[v].circles;
    std::set<std::size_t> distinct(cs.begin(), cs.end());
    if (cs.size() < 2 || distinct.size() != cs.size()) {
      fail(rel::kValence, "vertex " + std::to_string(v) + " must join at least two distinct circles");
      break;
    }
  }

  // dual graph: circles 0..k-1, vertices k..k+n-1, one edge per circle-side incidence
  {
    DisjointSets ds(r.k + r.n_c);
    bool cycle = false;
    for (std::size_t i = 0; i < r.k; ++i)
      for (const auto& inc : c.circles[i].vertices)
        if (!ds.unite(i, r.k + inc.vertex)) cycle = true;
    bool connected = true;
    for (std::size_t x = 1; x < r.k + r.n_c; ++x) connected = connected && ds.find(x) == ds.find(0);
    if (cycle || !connected)
      fail(rel::kTree, cycle ? "the dual graph has a cycle" : "the dual graph is disconnected");
  }
  const std::size_t mu_sum = std::accumulate(r.multiplicities.begin(), r.multiplicities.end(), std::size_t{0});
  if (mu_sum != r.m_c)
    fail(rel::kMultiplicity, "sum of multiplicities " + std::to_string(mu_sum) + " != m_c = " + std::to_string(r.m_c));
  if (static_cast<long>(r.m_c) - static_cast<long>(r.n_c) != static_cast<long>(r.k) - 1)
    fail(rel::kVertexCount, "m_c - n_c = " + std::to_string(static_cast<long>(r.m_c) - static_cast<long>(r.n_c)) +
                                " but k - 1 = " + std::to_string(r.k - 1));
  {
    std::vector<std::vector<std::size_t>> from_circles(r.n_c);
    for (std::size_t i = 0; i < r.k; ++i)
      for (const auto& inc : c.circles[i].vertices) from_circles[inc.vertex].push_back(i);
    for (std::size_t v = 0; v < r.n_c; ++v) {
      auto a = c.vertices[v].circles;
      std::sort(a.begin(), a.end());
      if (a != from_circles[v]) {
        fail(rel::kIncidence, "vertex " + std::to_string(v) + " is listed on circles that its cyclic order omits");
        break;
      }
    }
  }
  if (c.basepoint.component >= r.k) fail(rel::kBasepoint, "basepoint component is out of range");
  return r;
}

BoundaryWord boundary_traversal(const Cactus& c) {
  require_valid(c, "cactus");
  const auto& [j0, y0] = c.basepoint;
  const bool y0_is_vertex = std::any_of(c.circles[j0].vertices.begin(), c.circles[j0].vertices.end(),
                                        [&](const Incidence& inc) { return inc.position == y0; });
  BoundaryWord w;
  std::size_t circle = j0;
  Rational p = y0;
  const std::size_t cap = 2 * c.incidence_count() + 2;
  for (std::size_t step = 0;; ++step) {
    if (step > cap) throw InvalidCactus("boundary traversal does not close up");
    // next event strictly after p, else the first one a full turn later
    std::optional<Rational> ahead, first;
    std::optional<std::size_t> ahead_v, first_v;
    auto consider = [&](const Rational& q, std::optional<std::size_t> v) {
      if (q > p && (!ahead || q < *ahead)) ahead = q, ahead_v = v;
      if (!first || q < *first) first = q, first_v = v;
    };
    for (const auto& inc : c.circles[circle].vertices) consider(inc.position, inc.vertex);
    if (circle == j0 && !y0_is_vertex) consider(y0, std::nullopt);
    Rational end = ahead ? *ahead : *first + 1;
    auto at = ahead ? ahead_v : first_v;
    w.arcs.push_back({circle, p, end});
    w.total_length += (end - p) * c.circles[circle].radius;
    const Rational q = frac(end);
    std::size_t next_circle = circle;
    Rational next_p = q;
    if (at) {
      next_circle = successor(c.vertices[*at], circle);
      next_p = *c.position(next_circle, *at);
    }
    if (next_circle == j0 && next_p == y0) break;
    circle = next_circle;
    p = next_p;
  }
  std::vector<Rational> covered(c.k());
  for (const auto& a : w.arcs) covered[a.component] += a.length();
  for (std::size_t i = 0; i < c.k(); ++i)
    if (covered[i] != 1) throw InvalidCactus("boundary traversal covers circle " + std::to_string(i) + " " +
                                             covered[i].get_str() + " times");
  return w;
}

BoundaryPoint boundary_point(const Cactus& c, const BoundaryWord& w, const Rational& t) {
  if (!in_unit_interval(t)) throw InvalidArgument("boundary parameter " + t.get_str() + " is outside [0, 1)");
  Rational cum = 0;
  for (std::size_t a = 0; a < w.arcs.size(); ++a) {
    const auto& arc = w.arcs[a];
    const Rational& r = c.circles[arc.component].radius;
    const Rational len = arc.length() * r;
    if (t < cum + len) {
      BoundaryPoint bp;
      bp.component = arc.component;
      if (t == cum) {
        bp.position = arc.start;
        bp.incoming = w.arcs[a == 0 ? w.arcs.size() - 1 : a - 1].component;
        for (const auto& inc : c.circles[arc.component].vertices)
          if (inc.position == arc.start) bp.vertex = inc.vertex;
      } else {
        bp.position = frac(arc.start + (t - cum) / r);
        bp.incoming = arc.component;
      }
      return bp;
    }
    cum += len;
  }
  throw InvalidCactus("boundary word is shorter than the parameter");
}

BoundaryWord coalesce(const BoundaryWord& w) {
  BoundaryWord out;
  out.total_length = w.total_length;
  for (const auto& a : w.arcs) {
    if (!out.arcs.empty() && out.arcs.back().component == a.component && frac(out.arcs.back().end) == a.start) {
      out.arcs.back().end += a.length();
      continue;
    }
    out.arcs.push_back(a);
  }
  return out;
}

Cactus compose(const Cactus& c, const std::vector<Cactus>& inputs) {
  if (inputs.size() != c.k())
    throw ArityMismatch("composition needs " + std::to_string(c.k()) + " inputs, got " +
                        std::to_string(inputs.size()));
  require_valid(c, "outer cactus");
  std::vector<BoundaryWord> words;
  std::vector<std::size_t> offset, vertex_base;
  std::size_t circles = 0, inner_vertices = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    require_valid(inputs[i], "input " + std::to_string(i));
    words.push_back(boundary_traversal(inputs[i]));
    offset.push_back(circles);
    vertex_base.push_back(inner_vertices);
    circles += inputs[i].k();
    inner_vertices += inputs[i].vertices.size();
  }

  // gluing nodes: inner vertices first, then points created on inner arcs
  struct Node {
    std::map<std::size_t, Rational> slots;  // circle -> position
    std::map<std::size_t, std::size_t> next;
  };
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (std::size_t v = 0; v < inputs[i].vertices.size(); ++v) {
      Node n;
      for (auto ci : inputs[i].vertices[v].circles) {
        n.slots[offset[i] + ci] = *inputs[i].position(ci, v);
        n.next[offset[i] + ci] = offset[i] + successor(inputs[i].vertices[v], ci);
      }
      nodes.push_back(std::move(n));
    }
  std::map<std::pair<std::size_t, Rational>, std::size_t> fresh;
  struct Passage {
    std::size_t node, in, out;
  };
  std::vector<std::vector<Passage>> gluings;
  for (const auto& v : c.vertices) {
    std::vector<Passage> ps;
    for (auto i : v.circles) {
      auto bp = boundary_point(inputs[i], words[i], *c.position(i, &v - c.vertices.data()));
      const std::size_t out = offset[i] + bp.component, in = offset[i] + bp.incoming;
      std::size_t node;
      if (bp.vertex) {
        node = vertex_base[i] + *bp.vertex;
      } else {
        auto [it, added] = fresh.emplace(std::make_pair(out, bp.position), nodes.size());
        if (added) {
          Node n;
          n.slots[out] = bp.position;
          n.next[out] = out;
          nodes.push_back(std::move(n));
        }
        node = it->second;
      }
      ps.push_back({node, in, out});
    }
    gluings.push_back(std::move(ps));
  }

  DisjointSets ds(nodes.size());
  for (const auto& ps : gluings)
    for (const auto& p : ps) ds.unite(ps.front().node, p.node);
  std::map<std::size_t, Node> merged;
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    auto& m = merged[ds.find(x)];
    for (const auto& [ci, pos] : nodes[x].slots)
      if (!m.slots.emplace(ci, pos).second) throw InvalidCactus("gluing meets a circle twice at one vertex");
    m.next.insert(nodes[x].next.begin(), nodes[x].next.end());
  }
  // splice: arriving on the incoming circle of one passage, leave on the
  // outgoing circle of the next passage in the outer cyclic order
  std::set<std::pair<std::size_t, std::size_t>> spliced;
  for (const auto& ps : gluings)
    for (std::size_t a = 0; a < ps.size(); ++a) {
      auto& m = merged[ds.find(ps[a].node)];
      if (!spliced.emplace(ds.find(ps[a].node), ps[a].in).second) throw InvalidCactus("two gluings pass one vertex transition");
      m.next[ps[a].in] = ps[(a + 1) % ps.size()].out;
    }

  Cactus out;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const auto& circle : inputs[i].circles) out.circles.push_back({circle.radius * c.circles[i].radius, {}});
  for (const auto& [root, m] : merged) {
    Vertex v;
    std::size_t x = m.slots.begin()->first;
    do {
      v.circles.push_back(x);
      x = m.next.at(x);
    } while (x != v.circles.front() && v.circles.size() <= m.slots.size());
    if (v.circles.size() != m.slots.size()) throw InvalidCactus("spliced cyclic order is not a single cycle");
    const std::size_t id = out.vertices.size();
    for (const auto& [ci, pos] : m.slots) out.circles[ci].vertices.push_back({id, pos});
    out.vertices.push_back(std::move(v));
  }
  auto bp = boundary_point(inputs[c.basepoint.component], words[c.basepoint.component], c.basepoint.position);
  out.basepoint = {offset[c.basepoint.component] + bp.component, bp.position};
  out = canonical(out);
  require_valid(out, "composite");
  return out;
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> inv(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] >= sigma.size() || inv[sigma[i]] != sigma.size())
      throw ArityMismatch("not a permutation of " + std::to_string(sigma.size()) + " letters");
    inv[sigma[i]] = i;
  }
  return inv;
}

Cactus permute(const Cactus& c, const std::vector<std::size_t>& sigma) {
  if (sigma.size() != c.k())
    throw ArityMismatch("permutation has " + std::to_string(sigma.size()) + " letters, cactus has " +
                        std::to_string(c.k()) + " components");
  const auto inv = inverse_permutation(sigma);
  Cactus out;
  for (auto s : sigma) out.circles.push_back(c.circles[s]);
  for (const auto& v : c.vertices) {
    Vertex nv;
    for (auto ci : v.circles) nv.circles.push_back(ci < inv.size() ? inv[ci] : ci);
    out.vertices.push_back(std::move(nv));
  }
  out.basepoint = c.basepoint;
  if (c.basepoint.component < inv.size()) out.basepoint.component = inv[c.basepoint.component];
  return canonical(out);
}

BoundaryWord substitute(const Cactus& c, const std::vector<Cactus>& inputs) {
  if (inputs.size() != c.k()) throw ArityMismatch("substitution needs one input per component");
  const auto outer = boundary_traversal(c);
  std::vector<BoundaryWord> words;
  std::vector<std::size_t> offset;
  std::size_t circles = 0;
  for (const auto& in : inputs) {
    words.push_back(boundary_traversal(in));
    offset.push_back(circles);
    circles += in.k();
  }
  BoundaryWord out;
  for (const auto& oa : outer.arcs) {
    const auto& in = inputs[oa.component];
    const auto& w = words[oa.component];
    // the inner loop is periodic; two periods cover any outer arc
    Rational cum = 0;
    for (int period = 0; period < 2; ++period)
      for (const auto& ia : w.arcs) {
        const Rational& r = in.circles[ia.component].radius;
        const Rational lo = std::max(cum, oa.start), hi = std::min(Rational(cum + ia.length() * r), oa.end);
        if (lo < hi) {
          const Rational start = frac(ia.start + (lo - cum) / r);
          out.arcs.push_back({offset[oa.component] + ia.component, start, start + (hi - lo) / r});
          out.total_length += (hi - lo) * c.circles[oa.component].radius;
        }
        cum += ia.length() * r;
      }
  }
  return coalesce(out);
}

Cactus random_cactus(std::mt19937_64& rng, std::size_t k, unsigned resolution) {
  if (k == 0 || resolution < 2) throw InvalidArgument("random_cactus needs k >= 1 and resolution >= 2");
  auto uniform = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Cactus c;
  std::vector<unsigned> weight(k);
  unsigned total = 0;
  for (auto& w : weight) total += (w = 1 + static_cast<unsigned>(uniform(resolution)));
  for (std::size_t i = 0; i < k; ++i) {
    Rational r(weight[i], total);
    r.canonicalize();
    c.circles.push_back({r, {}});
  }
  auto grid = [&] {
    Rational p(static_cast<unsigned long>(uniform(resolution)), resolution);
    p.canonicalize();
    return p;
  };
  auto free_position = [&](std::size_t circle) -> std::optional<Rational> {
    for (int tries = 0; tries < 64; ++tries) {
      auto p = grid();
      if (std::none_of(c.circles[circle].vertices.begin(), c.circles[circle].vertices.end(),
                       [&](const Incidence& inc) { return inc.position == p; }))
        return p;
    }
    return std::nullopt;
  };
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t host = uniform(i);
    const auto& hv = c.circles[host].vertices;
    std::optional<Rational> spot;
    if (hv.empty() || uniform(3) != 0) spot = free_position(host);
    if (spot) {
      c.circles[host].vertices.push_back({c.vertices.size(), *spot});
      c.circles[i].vertices.push_back({c.vertices.size(), grid()});
      c.vertices.push_back({{host, i}});
    } else {
      const std::size_t v = hv[uniform(hv.size())].vertex;
      auto& cyc = c.vertices[v].circles;
      cyc.insert(cyc.begin() + static_cast<long>(1 + uniform(cyc.size())), i);
      c.circles[i].vertices.push_back({v, grid()});
    }
  }
  c.basepoint.component = uniform(k);
  const auto& bv = c.circles[c.basepoint.component].vertices;
  c.basepoint.position = !bv.empty() && uniform(4) == 0 ? bv[uniform(bv.size())].position : grid();
  return canonical(c);
}

Cactus parse_cactus(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("cactus description: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("cactus description must be a mapping");
  for (const char* key : {"circles", "vertices", "basepoint"})
    if (!root[key]) throw ParseError(std::string("cactus description lacks '") + key + "'");
  try {
    Cactus c;
    if (!root["circles"].IsSequence()) throw ParseError("'circles' must be a list");
    for (const auto& n : root["circles"]) {
      if (!n.IsMap() || !n["radius"]) throw ParseError("circles are mappings with a 'radius'");
      Circle circle{parse_rational(n["radius"]), {}};
      if (n["vertices"]) {
        if (!n["vertices"].IsSequence()) throw ParseError("circle vertices must be a list");
        for (const auto& inc : n["vertices"]) {
          if (!inc.IsSequence() || inc.size() != 2) throw ParseError("circle vertices are [vertex, position]");
          circle.vertices.push_back({parse_index(inc[0]), parse_rational(inc[1])});
        }
      }
      c.circles.push_back(std::move(circle));
    }
    if (!root["vertices"].IsSequence()) throw ParseError("'vertices' must be a list");
    for (const auto& n : root["vertices"]) {
      if (!n.IsSequence()) throw ParseError("a vertex is a list of circles in cyclic order");
      Vertex v;
      for (const auto& i : n) v.circles.push_back(parse_index(i));
      c.vertices.push_back(std::move(v));
    }
    const auto& b = root["basepoint"];
    if (!b.IsSequence() || b.size() != 2) throw ParseError("basepoint is [component, position]");
    c.basepoint = {parse_index(b[0]), parse_rational(b[1])};
    return c;
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("cactus description: ") + e.what());
  }
}

Cactus load_cactus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cactus(ss.str());
}

std::string serialize_cactus(const Cactus& c) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "circles" << YAML::Value << YAML::BeginSeq;
  for (const auto& circle : c.circles) {
    out << YAML::BeginMap << YAML::Key << "radius" << YAML::Value << circle.radius.get_str();
    out << YAML::Key << "vertices" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& inc : circle.vertices)
      out << YAML::Flow << YAML::BeginSeq << inc.vertex << inc.position.get_str() << YAML::EndSeq;
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::Key << "vertices" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& v : c.vertices) {
    out << YAML::Flow << YAML::BeginSeq;
    for (auto i : v.circles) out << i;
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::Key << "basepoint" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << c.basepoint.component << c.basepoint.position.get_str() << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace strop::cactus
