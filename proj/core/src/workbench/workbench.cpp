#include "strop/workbench/workbench.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <unistd.h>

#include <json.hpp>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "strop/cactus/cactus.hpp"
#include "strop/dga/algebra_io.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/error.hpp"
#include "strop/hochschild/cohomology.hpp"
#include "strop/hochschild/oracle.hpp"
#include "strop/linalg/elimination.hpp"
#include "strop/linalg/smith.hpp"
#include "strop/loop/loop_ring.hpp"

namespace strop::workbench {
namespace {

using json = nlohmann::json;
using dga::FiniteGradedAlgebra;
using dga::SimplicialComplexData;
using linalg::CoefficientRing;
using linalg::Vector;

constexpr const char* kFormat = "strop-result/1";

const std::vector<std::pair<Task, const char*>> kTasks = {
    {Task::Betti, "betti"},
    {Task::CohomologyRing, "cohomology-ring"},
    {Task::Hochschild, "hochschild"},
    {Task::LoopRing, "loop-ring"},
    {Task::CactusValidate, "cactus-validate"},
    {Task::CactusCompose, "cactus-compose"},
    {Task::OracleCompare, "oracle-compare"},
};

[[noreturn]] void rethrow_as(const std::string& kind, const std::string& what) {
  static const std::map<std::string, std::function<void(const std::string&)>> table = {
#define STROP_KIND(Name) {#Name, [](const std::string& w) { throw Name(w); }}
      STROP_KIND(ParseError),         STROP_KIND(InvalidArgument),    STROP_KIND(IntegerRingNotSupported),
      STROP_KIND(CompositeNotZero),   STROP_KIND(NonSimplicialInput), STROP_KIND(MismatchedComplex),
      STROP_KIND(NotOrientable),      STROP_KIND(NotPure),            STROP_KIND(InvalidAlgebra),
      STROP_KIND(WindowTooSmall),     STROP_KIND(DegreeOutOfWindow),  STROP_KIND(MismatchedWindow),
      STROP_KIND(InvalidCactus),      STROP_KIND(ArityMismatch),      STROP_KIND(OracleScaleExceeded),
#undef STROP_KIND
  };
  if (auto it = table.find(kind); it != table.end()) it->second(what);
  throw Error(kind, what);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_complex(const std::string& text) {
  try {
    auto root = YAML::Load(text);
    return root.IsMap() && root["facets"];
  } catch (const YAML::Exception&) {
    return false;
  }
}

json vector_json(const CoefficientRing& ring, const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(ring.format(x));
  return out;
}

json int_list(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::string degree_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

struct Body {
  json outputs = json::object();
  json saturation = json::object();
  json warnings = json::array();
};

// ---- tasks ---------------------------------------------------------------

Body betti_task(const SimplicialComplexData& k, const CoefficientRing& ring) {
  Body b;
  json counts = json::array();
  long euler = 0;
  for (int p = 0; p <= k.dimension(); ++p) {
    counts.push_back(k.simplices(p).size());
    euler += (p % 2 ? -1 : 1) * static_cast<long>(k.simplices(p).size());
  }
  json betti = json::array(), torsion = json::array();
  for (int p = 0; p <= k.dimension(); ++p) {
    auto d_out = linalg::SparseMatrix(0, k.simplices(p).size());
    if (p < k.dimension()) d_out = dga::coboundary_matrix(k, p, ring);
    auto d_in = p == 0 ? linalg::SparseMatrix(k.simplices(0).size(), 0) : dga::coboundary_matrix(k, p - 1, ring);
    auto h = linalg::homology_dimensions(d_out, d_in, ring);
    betti.push_back(h.dimension);
    json t = json::array();
    for (const auto& x : h.torsion) t.push_back(x.get_str());
    torsion.push_back(t);
  }
  b.outputs["complex"] = {{"vertices", k.vertex_count()}, {"dimension", k.dimension()}, {"simplices", counts}};
  b.outputs["ring"] = ring.name();
  b.outputs["betti"] = betti;
  b.outputs["euler_characteristic"] = euler;
  if (!ring.is_field()) b.outputs["torsion"] = torsion;
  json fc = {{"exists", true}};
  try {
    dga::fundamental_class(k, ring);
  } catch (const Error& e) {
    fc = {{"exists", false}, {"kind", e.kind()}, {"detail", e.what()}};
  }
  b.outputs["fundamental_class"] = fc;
  return b;
}

Body cohomology_ring_task(const SimplicialComplexData& k, const CoefficientRing& ring) {
  if (!ring.is_field()) throw IntegerRingNotSupported("the cohomology ring is computed over fields");
  Body b;
  auto h = dga::cohomology_ring(k, ring);
  json basis = json::array();
  for (const auto& e : h.basis()) basis.push_back({{"name", e.name}, {"degree", e.degree}});
  json products = json::array();
  for (const auto& p : h.product_entries()) {
    json value = json::array();
    for (const auto& [i, c] : p.value) value.push_back({ring.format(c), h.name(i)});
    products.push_back({{"left", h.name(p.left)}, {"right", h.name(p.right)}, {"value", value}});
  }
  b.outputs["ring"] = ring.name();
  b.outputs["betti"] = int_list(dga::betti_numbers(k, ring));
  b.outputs["basis"] = basis;
  b.outputs["unit"] = vector_json(ring, h.unit());
  b.outputs["products"] = products;

  json inter;
  try {
    const int d = k.dimension();
    dga::HomologyClass m{d, dga::fundamental_class(k, ring)};
    std::size_t checked = 0;
    bool unital = true;
    for (int q = 0; q <= d; ++q) {
      auto bd = q == 0 ? linalg::SparseMatrix(0, k.simplices(0).size())
                       : dga::coboundary_matrix(k, q - 1, ring).transpose();
      for (const auto& z : linalg::kernel_basis(bd, ring)) {
        dga::HomologyClass a{q, z};
        unital = unital && dga::homologous(k, ring, dga::intersection_product(m, a, k, ring), a) &&
                 dga::homologous(k, ring, dga::intersection_product(a, m, k, ring), a);
        ++checked;
      }
    }
    inter = {{"fundamental_class", true}, {"cycles_checked", checked}, {"unit_is_fundamental_class", unital}};
  } catch (const Error& e) {
    inter = {{"fundamental_class", false}, {"kind", e.kind()}, {"detail", e.what()}};
  }
  b.outputs["intersection_product"] = inter;
  return b;
}

std::size_t choose_tensor(const FiniteGradedAlgebra& a, int lo, int hi, const JobManifest& m, Body& b) {
  if (m.tensor_max) return *m.tensor_max;
  if (auto s = loop::saturating_tensor_bound(a, lo, hi, 16)) return *s;
  b.warnings.push_back("no tensor length up to 16 saturates the window; using 4");
  return 4;
}

json ring_tables(const hochschild::GradedRingPresentation& p, const CoefficientRing& ring, int sign) {
  json products = json::array();
  for (const auto& rp : p.products)
    products.push_back({{"left", {sign * rp.left_degree, rp.left}},
                        {"right", {sign * rp.right_degree, rp.right}},
                        {"value", vector_json(ring, rp.value)}});
  json incomplete = json::array();
  for (const auto& [x, y] : p.incomplete) incomplete.push_back({sign * x, sign * y});
  return {{"products", products}, {"incomplete", incomplete}, {"unit", vector_json(ring, p.unit)}};
}

Body hochschild_task(const FiniteGradedAlgebra& input, const JobManifest& m) {
  Body b;
  const auto [lo, hi] = *m.window;
  auto ad = dga::adapt(input);
  const std::size_t S = choose_tensor(ad.algebra, lo, hi, m, b);
  hochschild::WindowSpec spec;
  spec.max_tensor = S;
  spec.n_min = lo;
  spec.n_max = hi;
  spec.normalized = m.normalized;
  auto w = hochschild::HochschildWindow::build(ad.algebra, spec);
  hochschild::HochschildCohomology h(w);
  auto p = hochschild::ring_presentation(h);
  const auto& ring = input.ring();

  bool d2 = true;
  for (int n = w->stored_min(); n + 2 <= w->stored_max(); ++n)
    d2 = d2 && linalg::multiply(w->differential_matrix(n + 1), w->differential_matrix(n), ring).is_zero();

  json degrees = json::array();
  std::vector<int> sat, unsat;
  for (const auto& d : p.degrees) {
    degrees.push_back({{"degree", d.degree}, {"dimension", d.dimension}, {"saturated", d.saturated}, {"labels", d.labels}});
    (d.saturated ? sat : unsat).push_back(d.degree);
  }
  b.outputs["algebra"] = {{"dimension", input.dim()}, {"ring", ring.name()}, {"graded_commutative", input.is_graded_commutative()}};
  b.outputs["tensor_max"] = S;
  b.outputs["normalized"] = m.normalized;
  b.outputs["morse_reduced"] = h.uses_morse();
  b.outputs["d_squared_zero"] = d2;
  b.outputs["degrees"] = degrees;
  b.outputs.update(ring_tables(p, ring, 1));
  b.saturation = {{"saturated", sat}, {"unsaturated", unsat}};
  if (!unsat.empty())
    b.warnings.push_back("tensor length " + std::to_string(S) + " does not saturate degrees " + degree_list(unsat));
  return b;
}

Body loop_ring_task(const std::string& text, const JobManifest& m, const std::string& source_hash) {
  Body b;
  loop::LoopWindow lw;
  lw.q_min = m.window->lo;
  lw.q_max = m.window->hi;
  lw.max_tensor = m.tensor_max;
  loop::LoopRingResult r;
  if (m.formal) {
    auto a = dga::parse_algebra(text);
    r = loop::loop_ring_from_formal(a, m.dimension ? *m.dimension : a.max_degree(), lw);
  } else {
    r = loop::loop_ring_from_complex(dga::load_complex(text), CoefficientRing::parse(*m.ring), lw);
  }
  json degrees = json::array();
  std::vector<int> sat, unsat;
  for (const auto& d : r.degrees) {
    degrees.push_back({{"degree", d.degree}, {"dimension", d.dimension}, {"saturated", d.saturated}, {"labels", d.labels}});
    (d.saturated ? sat : unsat).push_back(d.degree);
  }
  json products = json::array();
  for (const auto& p : r.products)
    products.push_back({{"left", {p.left_degree, p.left}}, {"right", {p.right_degree, p.right}},
                        {"value", vector_json(r.ring, p.value)}});
  json incomplete = json::array();
  for (const auto& [x, y] : r.incomplete) incomplete.push_back({x, y});
  auto cm = loop::constant_loop_map(r);
  json images = json::array();
  for (const auto& im : cm.images)
    images.push_back({{"class", im.name}, {"cohomology_degree", im.cohomology_degree},
                      {"loop_degree", im.loop_degree}, {"value", vector_json(r.ring, im.value)}});

  b.outputs["source"] = m.formal ? "formal" : "complex";
  b.outputs["source_sha256"] = source_hash;
  b.outputs["ring"] = r.ring.name();
  b.outputs["d"] = r.manifold_dimension;
  b.outputs["tensor_max"] = r.max_tensor;
  b.outputs["degrees"] = degrees;
  b.outputs["products"] = products;
  b.outputs["incomplete"] = incomplete;
  b.outputs["unit"] = vector_json(r.ring, r.unit);
  b.outputs["constant_loops"] = {{"images", images},        {"skipped", cm.skipped},
                                 {"unital", cm.unital},     {"multiplicative", cm.multiplicative},
                                 {"pairs_checked", cm.pairs_checked}};
  b.saturation = {{"saturated", sat}, {"unsaturated", unsat}};
  for (const auto& w : r.warnings) b.warnings.push_back(w);
  return b;
}

json arcs_json(const cactus::BoundaryWord& w) {
  json arcs = json::array();
  for (const auto& a : w.arcs) arcs.push_back({a.component, a.start.get_str(), a.end.get_str()});
  return arcs;
}

json report_json(const cactus::ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"relation", v.relation}, {"detail", v.detail}});
  return {{"valid", r.valid()},
          {"k", r.k},
          {"n_c", r.n_c},
          {"m_c", r.m_c},
          {"multiplicities", int_list(r.multiplicities)},
          {"violations", violations},
          {"first_violation", r.valid() ? json() : json(r.first()->relation)}};
}

Body cactus_validate_task(const std::vector<std::string>& texts, const JobManifest& m) {
  Body b;
  json reports = json::array();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto c = cactus::parse_cactus(texts[i]);
    auto r = validate(c);
    auto j = report_json(r);
    j["input"] = m.inputs[i];
    if (r.valid()) j["boundary"] = arcs_json(cactus::boundary_traversal(c));
    reports.push_back(j);
  }
  b.outputs["reports"] = reports;
  return b;
}

Body cactus_compose_task(const std::vector<std::string>& texts, const JobManifest& m) {
  Body b;
  auto outer = cactus::parse_cactus(texts[0]);
  std::vector<cactus::Cactus> inputs;
  for (std::size_t i = 1; i < texts.size(); ++i) inputs.push_back(cactus::parse_cactus(texts[i]));
  auto c = inputs.empty() ? cactus::canonical(outer) : cactus::compose(outer, inputs);
  if (inputs.empty()) {
    auto r = cactus::validate(c);
    if (!r.valid()) throw InvalidCactus("outer cactus violates " + r.first()->relation);
  }
  if (!m.permutation.empty()) c = cactus::permute(c, m.permutation);
  auto j = report_json(cactus::validate(c));
  b.outputs = j;
  b.outputs["cactus"] = cactus::serialize_cactus(c);
  b.outputs["boundary"] = arcs_json(cactus::boundary_traversal(c));
  return b;
}

void require_oracle_scale(const FiniteGradedAlgebra& a, const JobManifest& m) {
  bool graded = false;
  for (std::size_t i = 0; i < a.dim(); ++i) graded = graded || a.degree(i) != 0;
  const std::size_t reduced = a.dim() - (a.unit_index() ? 1 : 0);
  if (!graded && a.dim() > 3)
    throw OracleScaleExceeded("ungraded algebra of dimension " + std::to_string(a.dim()) + " exceeds 3");
  if (graded && reduced > 2)
    throw OracleScaleExceeded("graded algebra of reduced dimension " + std::to_string(reduced) + " exceeds 2");
  if (*m.tensor_max > 5)
    throw OracleScaleExceeded("tensor length " + std::to_string(*m.tensor_max) + " exceeds 5");
}

Body oracle_task(const FiniteGradedAlgebra& a, const JobManifest& m) {
  require_oracle_scale(a, m);
  Body b;
  auto r = hochschild::compare_with_oracle(a, m.window->lo, m.window->hi, *m.tensor_max + 1, m.inject_sign_fault);
  json rows = json::array();
  std::vector<int> compared, skipped;
  for (const auto& row : r.rows) {
    rows.push_back({{"degree", row.degree},
                    {"pipeline", row.pipeline},
                    {"oracle", row.oracle},
                    {"verdict", !row.compared ? "not compared" : row.match ? "equal" : "diff"}});
    (row.compared ? compared : skipped).push_back(row.degree);
  }
  b.outputs["rows"] = rows;
  b.outputs["products_checked"] = r.products_checked;
  b.outputs["product_mismatches"] = r.product_mismatches;
  b.outputs["first_difference"] = r.first_difference ? json(*r.first_difference) : json();
  b.outputs["note"] = r.note;
  b.outputs["verdict"] = r.passed() ? "equal" : "diff";
  b.outputs["oracle_max_length"] = *m.tensor_max;
  b.outputs["fault_injected"] = m.inject_sign_fault;
  b.saturation = {{"compared", compared}, {"not_compared", skipped}};
  if (!skipped.empty()) b.warnings.push_back("degrees " + degree_list(skipped) + " are not saturated at this tensor length");
  return b;
}

Body compute(const JobManifest& m, const std::vector<std::string>& texts, const std::vector<std::string>& hashes) {
  auto algebra_input = [&](const std::string& text) {
    if (looks_like_complex(text)) {
      if (!m.ring) throw InvalidArgument("a complex input needs a ring");
      return dga::build_cochain_dga(dga::load_complex(text), CoefficientRing::parse(*m.ring));
    }
    auto a = dga::parse_algebra(text);
    if (m.ring && CoefficientRing::parse(*m.ring) != a.ring())
      throw InvalidArgument("manifest ring " + *m.ring + " differs from the algebra's ring " + a.ring().name());
    return a;
  };
  switch (m.task) {
    case Task::Betti:
      return betti_task(dga::load_complex(texts[0]), CoefficientRing::parse(*m.ring));
    case Task::CohomologyRing:
      return cohomology_ring_task(dga::load_complex(texts[0]), CoefficientRing::parse(*m.ring));
    case Task::Hochschild:
      return hochschild_task(algebra_input(texts[0]), m);
    case Task::LoopRing:
      return loop_ring_task(texts[0], m, hashes[0]);
    case Task::CactusValidate:
      return cactus_validate_task(texts, m);
    case Task::CactusCompose:
      return cactus_compose_task(texts, m);
    case Task::OracleCompare:
      return oracle_task(algebra_input(texts[0]), m);
  }
  throw InvalidArgument("unknown task");
}

json manifest_echo(const JobManifest& m) {
  json e = {{"task", task_name(m.task)}, {"inputs", m.inputs}, {"normalized", m.normalized}, {"formal", m.formal}};
  e["ring"] = m.ring ? json(*m.ring) : json();
  e["window"] = m.window ? json({m.window->lo, m.window->hi}) : json();
  e["tensor_max"] = m.tensor_max ? json(*m.tensor_max) : json();
  e["dimension"] = m.dimension ? json(*m.dimension) : json();
  e["permutation"] = int_list(m.permutation);
  e["inject_sign_fault"] = m.inject_sign_fault;
  return e;
}

std::string cache_key(const JobManifest& m, const std::vector<std::string>& hashes) {
  json k = manifest_echo(m);
  k.erase("inputs");
  k["input_sha256"] = hashes;
  k["format"] = kFormat;
  return sha256_hex(k.dump());
}

const char* cache_status_name(CacheStatus s) {
  switch (s) {
    case CacheStatus::Off: return "off";
    case CacheStatus::Miss: return "miss";
    case CacheStatus::Hit: return "hit";
    case CacheStatus::Recomputed: return "recomputed";
  }
  return "off";
}

json run_json(const ResultDocument& d) {
  return {{"elapsed_us", d.elapsed_us}, {"cache", cache_status_name(d.cache)}, {"notes", d.run_notes},
          {"canonical_sha256", d.canonical_sha256}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + "]";
  }
  return v.dump();
}

bool flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& x : v)
    if (!flat(x)) return false;
  return true;
}

void render(std::ostream& out, const json& v, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : v.items()) {
    if (flat(value) && !(value.is_string() && value.get<std::string>().find('\n') != std::string::npos)) {
      out << pad << key << ": " << scalar_text(value) << "\n";
    } else if (value.is_string()) {
      out << pad << key << ":\n";
      std::istringstream lines(value.get<std::string>());
      for (std::string line; std::getline(lines, line);) out << pad << "  " << line << "\n";
    } else if (value.is_object()) {
      if (value.empty()) {
        out << pad << key << ": {}\n";
        continue;
      }
      out << pad << key << ":\n";
      render(out, value, indent + 2);
    } else {
      // array of records: one row each, columns from the first record
      out << pad << key << ":\n";
      if (!value.empty() && value[0].is_object() &&
          std::all_of(value[0].begin(), value[0].end(), [](const json& x) { return flat(x); })) {
        std::vector<std::string> cols;
        for (const auto& [c, _] : value[0].items()) cols.push_back(c);
        std::vector<std::vector<std::string>> cells{cols};
        for (const auto& row : value) {
          std::vector<std::string> r;
          for (const auto& c : cols) r.push_back(row.contains(c) ? scalar_text(row[c]) : "");
          cells.push_back(r);
        }
        std::vector<std::size_t> width(cols.size());
        for (const auto& r : cells)
          for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        for (const auto& r : cells) {
          out << pad << "  ";
          for (std::size_t i = 0; i < r.size(); ++i)
            out << r[i] << (i + 1 < r.size() ? std::string(width[i] - r[i].size() + 2, ' ') : "");
          out << "\n";
        }
      } else {
        for (const auto& x : value) {
          out << pad << "  -\n";
          if (x.is_object())
            render(out, x, indent + 4);
          else
            out << pad << "    " << scalar_text(x) << "\n";
        }
      }
    }
  }
}

}  // namespace

std::string task_name(Task t) {
  for (const auto& [task, name] : kTasks)
    if (task == t) return name;
  throw InvalidArgument("unknown task");
}

Task parse_task(std::string_view name) {
  for (const auto& [task, n] : kTasks)
    if (name == n) return task;
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

DegreeWindow parse_window(std::string_view text) {
  const auto dots = text.find("..");
  DegreeWindow w;
  auto number = [&](std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  if (dots == std::string_view::npos || !number(text.substr(0, dots), w.lo) || !number(text.substr(dots + 2), w.hi))
    throw InvalidArgument("window '" + std::string(text) + "' is not of the form a..b");
  return w;
}

std::filesystem::path JobManifest::resolve(std::size_t i) const {
  std::filesystem::path p(inputs.at(i));
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

void JobManifest::check() const {
  const auto name = task_name(task);
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(name + " needs " + what);
  };
  switch (task) {
    case Task::CactusValidate:
    case Task::CactusCompose:
      need(!inputs.empty(), "at least one input");
      break;
    default:
      need(inputs.size() == 1, "exactly one input");
  }
  if (task == Task::Betti || task == Task::CohomologyRing || (task == Task::LoopRing && !formal))
    need(ring.has_value(), "a ring");
  if (task == Task::Hochschild || task == Task::LoopRing || task == Task::OracleCompare)
    need(window.has_value(), "a window");
  if (task == Task::OracleCompare) need(tensor_max.has_value(), "tensor_max");
  if (!permutation.empty() && task != Task::CactusCompose)
    throw InvalidArgument("permutation applies to cactus-compose only");
  if (window && window->lo > window->hi)
    throw InvalidArgument("window " + std::to_string(window->lo) + ".." + std::to_string(window->hi) + " is empty");
  if (ring) {
    try {
      CoefficientRing::parse(*ring);
    } catch (const Error& e) {
      throw InvalidArgument("ring '" + *ring + "': " + e.what());
    }
  }
}

JobManifest parse_manifest(std::string_view text, std::filesystem::path base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("manifest must be a mapping");
  static const std::vector<std::string> known = {"task",       "inputs",    "ring",        "window",
                                                 "tensor_max", "normalized", "formal",     "dimension",
                                                 "permutation", "inject_sign_fault"};
  JobManifest m;
  m.base_dir = std::move(base_dir);
  try {
    for (const auto& kv : root) {
      auto key = kv.first.as<std::string>();
      if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError("unknown manifest key '" + key + "'");
    }
    if (!root["task"]) throw ParseError("manifest lacks 'task'");
    try {
      m.task = parse_task(root["task"].as<std::string>());
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
    if (auto n = root["inputs"]) {
      if (n.IsScalar())
        m.inputs.push_back(n.as<std::string>());
      else if (n.IsSequence())
        for (const auto& x : n) m.inputs.push_back(x.as<std::string>());
      else
        throw ParseError("'inputs' must be a path or a list of paths");
    }
    if (auto n = root["ring"]) m.ring = n.as<std::string>();
    if (auto n = root["window"]) {
      if (n.IsSequence() && n.size() == 2)
        m.window = DegreeWindow{n[0].as<int>(), n[1].as<int>()};
      else if (n.IsScalar())
        try {
          m.window = parse_window(n.as<std::string>());
        } catch (const InvalidArgument& e) {
          throw ParseError(e.what());
        }
      else
        throw ParseError("'window' is [lo, hi] or \"lo..hi\"");
    }
    if (auto n = root["tensor_max"]) {
      const int s = n.as<int>();
      if (s < 0) throw ParseError("tensor_max must be nonnegative");
      m.tensor_max = static_cast<std::size_t>(s);
    }
    if (auto n = root["normalized"]) m.normalized = n.as<bool>();
    if (auto n = root["formal"]) m.formal = n.as<bool>();
    if (auto n = root["dimension"]) m.dimension = n.as<int>();
    if (auto n = root["permutation"]) {
      if (!n.IsSequence()) throw ParseError("'permutation' must be a list");
      for (const auto& x : n) {
        const int v = x.as<int>();
        if (v < 0) throw ParseError("permutation entries are nonnegative");
        m.permutation.push_back(static_cast<std::size_t>(v));
      }
    }
    if (auto n = root["inject_sign_fault"]) m.inject_sign_fault = n.as<bool>();
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

JobManifest load_manifest_file(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InvalidArgument("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::entry(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<std::string> ResultCache::load(const std::string& key, std::string* problem) const {
  const auto path = entry(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  auto report = [&](const std::string& what) -> std::optional<std::string> {
    if (problem) *problem = "cache entry " + path.filename().string() + " " + what + "; recomputed";
    return std::nullopt;
  };
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error&) {
    return report("is unreadable");
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("body") || !j.contains("body_sha256") ||
      !j["body"].is_string() || !j["key"].is_string() || !j["body_sha256"].is_string())
    return report("is malformed");
  const auto body = j["body"].get<std::string>();
  if (j["key"].get<std::string>() != key || sha256_hex(body) != j["body_sha256"].get<std::string>())
    return report("fails its checksum");
  return body;
}

void ResultCache::store(const std::string& key, const std::string& body) const {
  std::filesystem::create_directories(dir_);
  static std::mt19937_64 salt(std::random_device{}());
  const auto tmp = dir_ / (key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(salt()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << json{{"key", key}, {"body_sha256", sha256_hex(body)}, {"body", body}}.dump();
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InvalidArgument("cannot write cache entry in " + dir_.string());
    }
  }
  std::filesystem::rename(tmp, entry(key));
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* v = std::getenv("STROP_CACHE_DIR");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::string ResultDocument::json(bool with_run) const {
  auto doc = nlohmann::json::parse(canonical);
  if (with_run) doc["run"] = run_json(*this);
  return doc.dump(2) + "\n";
}

std::string ResultDocument::table(bool with_run) const {
  auto doc = nlohmann::json::parse(canonical);
  if (with_run) doc["run"] = run_json(*this);
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

ResultDocument run(const JobManifest& manifest, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const auto name = task_name(manifest.task);
  ResultDocument doc;
  doc.task = manifest.task;
  Body body;
  json inputs = json::array();
  try {
    manifest.check();
    std::vector<std::string> texts, hashes;
    for (std::size_t i = 0; i < manifest.inputs.size(); ++i) {
      texts.push_back(read_file(manifest.resolve(i)));
      hashes.push_back(sha256_hex(texts.back()));
      inputs.push_back({{"path", manifest.inputs[i]}, {"sha256", hashes.back()}});
    }
    doc.cache_key = cache_key(manifest, hashes);
    std::optional<ResultCache> cache;
    if (options.cache_dir) cache.emplace(*options.cache_dir);
    std::optional<std::string> cached;
    if (cache) {
      std::string problem;
      cached = cache->load(doc.cache_key, &problem);
      if (!problem.empty()) doc.run_notes.push_back(problem);
      doc.cache = cached ? CacheStatus::Hit : problem.empty() ? CacheStatus::Miss : CacheStatus::Recomputed;
    }
    if (cached) {
      auto j = json::parse(*cached);
      body.outputs = j["outputs"];
      body.saturation = j["saturation"];
      body.warnings = j["warnings"];
    } else {
      body = compute(manifest, texts, hashes);
      if (cache)
        cache->store(doc.cache_key,
                     json{{"outputs", body.outputs}, {"saturation", body.saturation}, {"warnings", body.warnings}}.dump());
    }
  } catch (const Error& e) {
    rethrow_as(e.kind(), name + ": " + e.what());
  } catch (const YAML::Exception& e) {
    throw ParseError(name + ": " + e.what());
  }
  json d = {{"format", kFormat},         {"task", name},
            {"manifest", manifest_echo(manifest)}, {"inputs", inputs},
            {"outputs", body.outputs},   {"saturation", body.saturation},
            {"warnings", body.warnings}};
  doc.canonical = d.dump(2) + "\n";
  doc.canonical_sha256 = sha256_hex(doc.canonical);
  doc.elapsed_us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - started).count();
  return doc;
}

ResultDocument oracle_compare(const JobManifest& manifest, const RunOptions& options) {
  if (manifest.task != Task::OracleCompare) throw InvalidArgument("manifest task is " + task_name(manifest.task));
  return run(manifest, options);
}

}  // namespace strop::workbench
