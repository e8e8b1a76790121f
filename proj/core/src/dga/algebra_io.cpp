#include "strop/dga/algebra_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "strop/error.hpp"

namespace strop::dga {
namespace {

struct Reader {
  CoefficientRing ring;
  std::vector<BasisElement> basis;

  std::size_t lookup(const YAML::Node& n) const {
    auto name = n.as<std::string>();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].name == name) return i;
    throw ParseError("unknown basis element '" + name + "'");
  }

  Combination combination(const YAML::Node& n) const {
    if (!n.IsSequence()) throw ParseError("linear combination must be a list of [coef, name]");
    Combination c;
    for (const auto& term : n) {
      if (!term.IsSequence() || term.size() != 2)
        throw ParseError("linear combination terms are [coef, name] pairs");
      c.emplace_back(lookup(term[1]), ring.parse_scalar(term[0].as<std::string>()));
    }
    return c;
  }
};

void emit_combination(YAML::Emitter& out, const FiniteGradedAlgebra& a, const Combination& c) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& [i, v] : c)
    out << YAML::Flow << YAML::BeginSeq << a.ring().format(v) << a.name(i) << YAML::EndSeq;
  out << YAML::EndSeq;
}

}  // namespace

FiniteGradedAlgebra parse_algebra(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("algebra description: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("algebra description must be a mapping");
  for (const char* key : {"ring", "basis", "unit"})
    if (!root[key]) throw ParseError(std::string("algebra description lacks '") + key + "'");
  try {
    Reader r{CoefficientRing::parse(root["ring"].as<std::string>()), {}};
    if (!root["basis"].IsSequence()) throw ParseError("'basis' must be a list");
    for (const auto& b : root["basis"]) {
      if (!b.IsSequence() || b.size() != 2) throw ParseError("basis entries are [name, degree]");
      r.basis.push_back({b[0].as<std::string>(), b[1].as<int>()});
    }
    const std::size_t n = r.basis.size();

    Vector unit(n);
    if (root["unit"].IsScalar()) {
      unit[r.lookup(root["unit"])] = 1;
    } else {
      for (const auto& [i, v] : r.combination(root["unit"])) unit[i] += v;
    }

    std::vector<ProductEntry> products;
    std::set<std::pair<std::size_t, std::size_t>> listed;
    if (root["products"]) {
      for (const auto& p : root["products"]) {
        if (!p.IsSequence() || p.size() != 3)
          throw ParseError("product entries are [left, right, [[coef, name], ...]]");
        std::size_t i = r.lookup(p[0]), j = r.lookup(p[1]);
        listed.insert({i, j});
        products.push_back({i, j, r.combination(p[2])});
      }
    }
    std::optional<std::size_t> unit_at;
    for (std::size_t i = 0; i < n; ++i)
      if (unit[i] != 0) unit_at = unit_at ? std::optional<std::size_t>(n) : i;
    if (unit_at && *unit_at < n && r.ring.normalize(unit[*unit_at]) == 1) {
      std::size_t u = *unit_at;
      for (std::size_t i = 0; i < n; ++i) {
        if (!listed.count({u, i})) products.push_back({u, i, {{i, Scalar(1)}}});
        if (i != u && !listed.count({i, u})) products.push_back({i, u, {{i, Scalar(1)}}});
      }
    }

    std::vector<Combination> d(n);
    if (root["differential"]) {
      for (const auto& e : root["differential"]) {
        if (!e.IsSequence() || e.size() != 2)
          throw ParseError("differential entries are [name, [[coef, name], ...]]");
        auto i = r.lookup(e[0]);
        if (!d[i].empty()) throw ParseError("differential of '" + r.basis[i].name + "' given twice");
        d[i] = r.combination(e[1]);
      }
    }
    return FiniteGradedAlgebra(r.ring, std::move(r.basis), std::move(unit), std::move(products),
                               std::move(d));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("algebra description: ") + e.what());
  }
}

FiniteGradedAlgebra load_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string serialize_algebra(const FiniteGradedAlgebra& a) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "ring" << YAML::Value << a.ring().name();
  out << YAML::Key << "basis" << YAML::Value << YAML::BeginSeq;
  for (const auto& b : a.basis())
    out << YAML::Flow << YAML::BeginSeq << b.name << b.degree << YAML::EndSeq;
  out << YAML::EndSeq;
  out << YAML::Key << "unit" << YAML::Value;
  if (auto u = a.unit_index())
    out << a.name(*u);
  else
    emit_combination(out, a, to_sparse(a.unit()));
  out << YAML::Key << "products" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : a.product_entries()) {
    out << YAML::Flow << YAML::BeginSeq << a.name(p.left) << a.name(p.right);
    emit_combination(out, a, p.value);
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "differential" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.differential(i).empty()) continue;
    out << YAML::Flow << YAML::BeginSeq << a.name(i);
    emit_combination(out, a, a.differential(i));
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace strop::dga
