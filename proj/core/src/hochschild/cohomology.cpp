#include "strop/hochschild/cohomology.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "engine.hpp"
#include "strop/error.hpp"
#include "strop/linalg/elimination.hpp"

namespace strop::hochschild {

namespace {

using detail::Decoded;
using detail::Tables;
using dga::HodgeRole;

enum class Kind { Critical, Tail, Head };

struct Match {
  Kind kind = Kind::Critical;
  std::size_t level = 0;
  std::uint64_t partner = 0;
};

struct ClassData {
  std::vector<std::uint64_t> critical;  // sorted codes
  std::size_t dimension = 0;
  std::vector<Vector> reps;              // Morse coordinates
  std::optional<linalg::EchelonSpace> space;  // image first, then reps
  std::size_t image_rank = 0;
  std::vector<std::string> labels;
};

struct ImplBase {
  virtual ~ImplBase() = default;
  virtual HochschildCochain representative(int n, std::size_t i) const = 0;
  virtual Vector classify(const HochschildCochain& z) const = 0;
  virtual std::optional<Vector> product(int n1, std::size_t i, int n2, std::size_t j) const = 0;
};

}  // namespace

struct HochschildCohomology::Impl {
  std::unique_ptr<ImplBase> engine;
  std::map<int, ClassData> classes;
  bool morse = false;
};

namespace {

template <class Ar>
class MorseEngine final : public ImplBase {
 public:
  using V = typename Ar::value_type;
  using Map = std::unordered_map<std::uint64_t, V>;
  using Terms = std::vector<std::pair<std::uint64_t, V>>;

  MorseEngine(WindowPtr w, Ar ar, HochschildCohomology::Impl& data)
      : w_(std::move(w)), ar_(ar), t_(*w_, ar), data_(data) {
    const auto& alg = w_->algebra();
    if (auto roles = dga::hodge_roles(alg)) {
      data_.morse = true;
      roles_ = *roles;
    } else {
      roles_.role.assign(alg.dim(), HodgeRole::Harmonic);
      roles_.partner.resize(alg.dim());
      for (std::size_t i = 0; i < alg.dim(); ++i) roles_.partner[i] = i;
    }
    compute();
  }

  Match match(std::uint64_t code) const {
    Decoded x = t_.decode(code);
    Match mt;
    mt.level = x.s;
    auto flip = [&](std::size_t basis) { return roles_.partner[basis]; };
    auto role_out = roles_.role[x.o];
    if (role_out != HodgeRole::Harmonic) {
      mt.kind = role_out == HodgeRole::Source ? Kind::Tail : Kind::Head;
      Decoded y = x;
      y.o = flip(x.o);
      mt.partner = t_.encode(y);
      return mt;
    }
    const auto& alpha = w_->alphabet();
    for (std::size_t i = 0; i < x.s; ++i) {
      auto b = alpha[x.d[i]];
      auto role = roles_.role[b];
      if (role == HodgeRole::Harmonic) continue;
      mt.kind = role == HodgeRole::Target ? Kind::Tail : Kind::Head;
      Decoded y = x;
      y.d[i] = static_cast<std::uint32_t>(w_->position(flip(b)));
      mt.partner = t_.encode(y);
      return mt;
    }
    return mt;
  }

  void add(Map& v, std::uint64_t code, const V& x) const {
    auto [it, fresh] = v.try_emplace(code, x);
    if (!fresh) {
      it->second = ar_.add(it->second, x);
      if (ar_.is_zero(it->second)) v.erase(it);
    }
  }

  Map boundary(const Map& phi) const {
    Map out;
    for (const auto& [code, c] : phi)
      t_.boundary(code, [&](std::uint64_t k, const V& v) { add(out, k, ar_.mul(c, v)); });
    return out;
  }

  const Terms& tail_boundary(std::uint64_t tail) const {
    auto it = tail_cache_.find(tail);
    if (it != tail_cache_.end()) return it->second;
    Map m;
    t_.boundary(tail, [&](std::uint64_t k, const V& v) { add(m, k, v); });
    Terms terms(m.begin(), m.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return tail_cache_.emplace(tail, std::move(terms)).first->second;
  }

  // Removes every head from v by subtracting multiples of tail boundaries,
  // level by level. Records the multiples when asked.
  void reduce(Map& v, Terms* record) const {
    if (!data_.morse) return;
    for (std::size_t level = 0; level <= w_->max_tensor(); ++level) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> heads;
      for (const auto& [code, c] : v) {
        auto mt = match(code);
        if (mt.kind == Kind::Head && mt.level == level) heads.emplace_back(code, mt.partner);
      }
      std::sort(heads.begin(), heads.end());
      for (const auto& [h, tail] : heads) {
        auto it = v.find(h);
        if (it == v.end()) continue;
        const auto& bt = tail_boundary(tail);
        auto pos = std::lower_bound(bt.begin(), bt.end(), h,
                                    [](const auto& e, std::uint64_t k) { return e.first < k; });
        if (pos == bt.end() || pos->first != h) throw Error("InternalError", "matching is not a pairing");
        V mu = ar_.mul(it->second, ar_.inv(pos->second));
        for (const auto& [k, x] : bt) add(v, k, ar_.neg(ar_.mul(mu, x)));
        if (record) record->emplace_back(tail, mu);
      }
    }
  }

  Vector critical_part(const Map& v, const std::vector<std::uint64_t>& critical) const {
    Vector out(critical.size());
    for (const auto& [code, c] : v) {
      auto it = std::lower_bound(critical.begin(), critical.end(), code);
      if (it != critical.end() && *it == code)
        out[static_cast<std::size_t>(it - critical.begin())] = ar_.to_scalar(c);
    }
    return out;
  }

  std::vector<std::uint64_t> critical_cells(int n) const {
    std::vector<std::uint64_t> out;
    for (auto code : w_->codes(n))
      if (match(code).kind == Kind::Critical) out.push_back(code);
    return out;
  }

  void compute() {
    const auto& ring = w_->algebra().ring();
    const int lo = w_->spec().n_min, hi = w_->spec().n_max;
    std::map<int, std::vector<std::uint64_t>> crit;
    for (int n = lo - 1; n <= hi + 1; ++n) crit[n] = critical_cells(n);
    // Morse differential from degree n to n + 1
    std::map<int, SparseMatrix> dm;
    for (int n = lo - 1; n <= hi; ++n) {
      std::vector<linalg::Entry> entries;
      const auto& src = crit[n];
      for (std::size_t j = 0; j < src.size(); ++j) {
        Map v = boundary(Map{{src[j], ar_.one()}});
        reduce(v, nullptr);
        auto col = critical_part(v, crit[n + 1]);
        for (std::size_t i = 0; i < col.size(); ++i)
          if (col[i] != 0) entries.push_back({i, j, col[i]});
      }
      dm[n] = SparseMatrix::from_triplets(crit[n + 1].size(), src.size(), std::move(entries), ring);
    }
    for (int n = lo; n <= hi; ++n) {
      auto& cd = data_.classes[n];
      cd.critical = crit[n];
      cd.space.emplace(cd.critical.size(), ring);
      const auto& in = dm[n - 1];
      auto dense = in.transpose().to_dense();
      for (const auto& col : dense) cd.space->insert(col);
      cd.image_rank = cd.space->rank();
      for (auto& z : linalg::kernel_basis(dm[n], ring))
        if (cd.space->insert(z)) cd.reps.push_back(std::move(z));
      cd.dimension = cd.reps.size();
      std::map<std::string, int> seen;
      for (const auto& r : cd.reps) {
        std::size_t lead = 0;
        while (r[lead] == 0) ++lead;
        auto label = w_->label(w_->decode(cd.critical[lead]));
        int k = seen[label]++;
        cd.labels.push_back(k ? label + "#" + std::to_string(k + 1) : label);
      }
    }
  }

  // ι(rep) as a sparse cochain, checked to be a cocycle.
  const Map& lifted(int n, std::size_t i) const {
    auto key = std::make_pair(n, i);
    auto it = lift_cache_.find(key);
    if (it != lift_cache_.end()) return it->second;
    const auto& cd = data_.classes.at(n);
    Map z;
    for (std::size_t k = 0; k < cd.critical.size(); ++k)
      if (cd.reps.at(i)[k] != 0) z.emplace(cd.critical[k], ar_.from_scalar(cd.reps[i][k]));
    Map v = boundary(z);
    Terms record;
    reduce(v, &record);
    if (!v.empty()) throw Error("InternalError", "lifted representative is not a cocycle");
    for (const auto& [tail, mu] : record) add(z, tail, ar_.neg(mu));
    return lift_cache_.emplace(key, std::move(z)).first->second;
  }

  HochschildCochain representative(int n, std::size_t i) const override {
    const auto& z = lifted(n, i);
    auto out = HochschildCochain::zero(w_, n);
    for (const auto& [code, c] : z) out.coefficients[*w_->index_of_code(n, code)] = ar_.to_scalar(c);
    return out;
  }

  Vector classify_map(int n, Map z) const {
    const auto& cd = data_.classes.at(n);
    reduce(z, nullptr);
    auto coords = cd.space->coordinates(critical_part(z, cd.critical));
    if (!coords) throw Error("InternalError", "Morse cocycle outside the kernel span");
    return Vector(coords->begin() + static_cast<long>(cd.image_rank), coords->end());
  }

  Vector classify(const HochschildCochain& z) const override {
    if (z.window != w_) throw MismatchedWindow("cochain from another window");
    if (!data_.classes.count(z.degree)) throw DegreeOutOfWindow("degree outside the window range");
    Map m;
    const auto& codes = w_->codes(z.degree);
    for (std::size_t k = 0; k < codes.size(); ++k)
      if (z.coefficients[k] != 0) m.emplace(codes[k], ar_.from_scalar(z.coefficients[k]));
    if (!boundary(m).empty()) throw InvalidArgument("cochain is not a cocycle");
    return classify_map(z.degree, std::move(m));
  }

  std::optional<Vector> product(int n1, std::size_t i, int n2, std::size_t j) const override {
    const int n = n1 + n2;
    if (!data_.classes.count(n)) return std::nullopt;
    const auto& a = lifted(n1, i);
    const auto& b = lifted(n2, j);
    Map prod;
    for (const auto& [x, cx] : a)
      for (const auto& [y, cy] : b) {
        V c = ar_.mul(cx, cy);
        t_.cup(x, y, [&](std::uint64_t k, const V& v) { add(prod, k, ar_.mul(c, v)); });
      }
    return classify_map(n, std::move(prod));
  }

 private:
  WindowPtr w_;
  Ar ar_;
  Tables<Ar> t_;
  HochschildCohomology::Impl& data_;
  dga::HodgeRoles roles_;
  mutable std::unordered_map<std::uint64_t, Terms> tail_cache_;
  mutable std::map<std::pair<int, std::size_t>, Map> lift_cache_;
};

}  // namespace

HochschildCohomology::HochschildCohomology(WindowPtr window)
    : window_(std::move(window)), impl_(std::make_unique<Impl>()) {
  linalg::with_field_arith(window_->algebra().ring(), [&](auto ar) {
    impl_->engine = std::make_unique<MorseEngine<decltype(ar)>>(window_, ar, *impl_);
  });
}

HochschildCohomology::~HochschildCohomology() = default;
HochschildCohomology::HochschildCohomology(HochschildCohomology&&) noexcept = default;
HochschildCohomology& HochschildCohomology::operator=(HochschildCohomology&&) noexcept = default;

namespace {

const ClassData& class_data(const HochschildCohomology::Impl& impl, int n) {
  auto it = impl.classes.find(n);
  if (it == impl.classes.end())
    throw DegreeOutOfWindow("degree " + std::to_string(n) + " is outside the window range");
  return it->second;
}

}  // namespace

std::size_t HochschildCohomology::dimension(int n) const { return class_data(*impl_, n).dimension; }

const std::vector<std::string>& HochschildCohomology::labels(int n) const {
  return class_data(*impl_, n).labels;
}

std::size_t HochschildCohomology::critical_cells(int n) const {
  return class_data(*impl_, n).critical.size();
}

bool HochschildCohomology::uses_morse() const { return impl_->morse; }

HochschildCochain HochschildCohomology::representative(int n, std::size_t i) const {
  if (i >= dimension(n)) throw InvalidArgument("class index out of range");
  return impl_->engine->representative(n, i);
}

Vector HochschildCohomology::classify(const HochschildCochain& z) const {
  return impl_->engine->classify(z);
}

bool HochschildCohomology::is_coboundary(const HochschildCochain& z) const {
  auto c = classify(z);
  return std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x == 0; });
}

std::optional<Vector> HochschildCohomology::product(int n1, std::size_t i, int n2,
                                                    std::size_t j) const {
  if (i >= dimension(n1) || j >= dimension(n2)) throw InvalidArgument("class index out of range");
  return impl_->engine->product(n1, i, n2, j);
}

const RingDegree* GradedRingPresentation::degree(int n) const {
  for (const auto& d : degrees)
    if (d.degree == n) return &d;
  return nullptr;
}

const RingProduct* GradedRingPresentation::product(int n1, std::size_t i, int n2,
                                                   std::size_t j) const {
  for (const auto& p : products)
    if (p.left_degree == n1 && p.left == i && p.right_degree == n2 && p.right == j) return &p;
  return nullptr;
}

bool GradedRingPresentation::complete(int n1, int n2) const {
  return std::find(incomplete.begin(), incomplete.end(), std::make_pair(n1, n2)) == incomplete.end();
}

GradedRingPresentation ring_presentation(const HochschildCohomology& h) {
  GradedRingPresentation out;
  const auto& w = *h.window();
  out.ring = w.algebra().ring();
  for (int n = h.n_min(); n <= h.n_max(); ++n)
    out.degrees.push_back({n, h.dimension(n), h.saturated(n), h.labels(n)});
  for (const auto& a : out.degrees)
    for (const auto& b : out.degrees) {
      if (a.dimension == 0 || b.dimension == 0) continue;
      const int n = a.degree + b.degree;
      const auto* c = out.degree(n);
      if (!c || !a.saturated || !b.saturated || !c->saturated) {
        out.incomplete.emplace_back(a.degree, b.degree);
        continue;
      }
      for (std::size_t i = 0; i < a.dimension; ++i)
        for (std::size_t j = 0; j < b.dimension; ++j)
          out.products.push_back({a.degree, i, b.degree, j, *h.product(a.degree, i, b.degree, j)});
    }
  if (const auto* zero = out.degree(0); zero && zero->saturated) {
    const auto& alg = w.algebra();
    out.unit = h.classify(HochschildCochain::constant(h.window(), alg.unit(), 0));
  }
  return out;
}

}  // namespace strop::hochschild
