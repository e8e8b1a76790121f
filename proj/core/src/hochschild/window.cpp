#include "strop/hochschild/window.hpp"

#include <algorithm>
#include <limits>

#include "engine.hpp"
#include "strop/error.hpp"

namespace strop::hochschild {

namespace {

using detail::Tables;

}  // namespace

HochschildWindow::HochschildWindow(const FiniteGradedAlgebra& a, const WindowSpec& spec)
    : algebra_(a), spec_(spec) {}

WindowPtr HochschildWindow::build(const FiniteGradedAlgebra& a, const WindowSpec& spec) {
  if (spec.n_min > spec.n_max) throw InvalidArgument("empty degree range");
  if (spec.max_tensor > detail::kMaxTensor)
    throw InvalidArgument("tensor length bound above " + std::to_string(detail::kMaxTensor));
  if (spec.normalized && !a.unit_index())
    throw InvalidArgument("normalized window needs the unit as a basis element");
  std::shared_ptr<HochschildWindow> w(new HochschildWindow(a, spec));
  const std::size_t m = a.dim();
  w->position_.assign(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.normalized && i == *a.unit_index()) continue;
    w->position_[i] = w->alphabet_.size();
    w->alphabet_.push_back(i);
  }
  for (auto& p : w->position_)
    if (p == m) p = w->alphabet_.size();

  // offsets_[s] = Σ_{j<s} r^j m, checked against 63 bits
  const unsigned __int128 limit = std::numeric_limits<std::int64_t>::max();
  unsigned __int128 off = 0, pw = 1;
  for (std::size_t s = 0; s <= spec.max_tensor + 1; ++s) {
    w->offsets_.push_back(static_cast<std::uint64_t>(off));
    off += pw * m;
    pw *= w->alphabet_.size();
    if (off > limit || pw > limit) throw InvalidArgument("window too large to index");
  }
  w->offsets_.push_back(static_cast<std::uint64_t>(off));

  auto dims = dga::cohomology_dimensions(a);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0) continue;
    w->h_degrees_.push_back(static_cast<int>(k));
    std::size_t reduced = dims[k];
    if (k == 0 && spec.normalized) --reduced;
    if (reduced) w->input_h_degrees_.push_back(static_cast<int>(k));
  }
  if (spec.normalized && (dims.empty() || dims[0] == 0)) {
    // the unit is exact, so H(A) = 0 and nothing survives
    w->h_degrees_.clear();
    w->input_h_degrees_.clear();
  }

  w->enumerate();
  if (spec.require_saturation)
    for (int n = spec.n_min; n <= spec.n_max; ++n)
      if (!w->saturated(n))
        throw WindowTooSmall("degree " + std::to_string(n) + " needs tensor length above " +
                             std::to_string(spec.max_tensor));
  return w;
}

void HochschildWindow::enumerate() {
  const int lo = stored_min(), hi = stored_max();
  cells_.assign(static_cast<std::size_t>(hi - lo + 1), {});
  const std::size_t r = alphabet_.size(), m = algebra_.dim();
  int xmin = 0, xmax = 0;
  for (std::size_t p = 0; p < r; ++p) {
    int x = algebra_.degree(alphabet_[p]) - 1;
    if (p == 0 || x < xmin) xmin = x;
    if (p == 0 || x > xmax) xmax = x;
  }
  const int omax = algebra_.max_degree();
  std::vector<std::uint32_t> digits;
  for (std::size_t s = 0; s <= spec_.max_tensor; ++s) {
    if (s > 0 && r == 0) break;
    digits.assign(s, 0);
    // depth-first over inputs with degree pruning
    auto rec = [&](auto&& self, std::size_t i, int partial, std::uint64_t value) -> void {
      const int left = static_cast<int>(s - i);
      const int top = omax - partial - left * xmin;
      const int bottom = 0 - partial - left * xmax;
      if (top < lo || bottom > hi) return;
      if (i == s) {
        for (int n = std::max(lo, bottom); n <= std::min(hi, top); ++n)
          for (auto o : algebra_.in_degree(n + partial))
            cells_[static_cast<std::size_t>(n - lo)].push_back(offsets_[s] + value * m + o);
        return;
      }
      for (std::size_t p = 0; p < r; ++p)
        self(self, i + 1, partial + algebra_.degree(alphabet_[p]) - 1, value * r + p);
    };
    rec(rec, 0, 0, 0);
  }
  for (auto& c : cells_) std::sort(c.begin(), c.end());
}

const std::vector<std::uint64_t>& HochschildWindow::codes(int n) const {
  if (!stores(n)) throw DegreeOutOfWindow("degree " + std::to_string(n) + " is not stored");
  return cells_[static_cast<std::size_t>(n - stored_min())];
}

std::size_t HochschildWindow::dim(int n) const { return codes(n).size(); }

std::optional<std::size_t> HochschildWindow::index_of_code(int n, std::uint64_t code) const {
  const auto& c = codes(n);
  auto it = std::lower_bound(c.begin(), c.end(), code);
  if (it == c.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

std::uint64_t HochschildWindow::encode(const Cell& c) const {
  if (c.inputs.size() > spec_.max_tensor) throw InvalidArgument("cell longer than the window");
  if (c.output >= algebra_.dim()) throw InvalidArgument("cell output out of range");
  std::uint64_t digits = 0;
  for (auto i : c.inputs) {
    if (i >= algebra_.dim() || position_[i] >= alphabet_.size())
      throw InvalidArgument("cell input is not in the alphabet");
    digits = digits * alphabet_.size() + position_[i];
  }
  return offsets_[c.inputs.size()] + digits * algebra_.dim() + c.output;
}

Cell HochschildWindow::decode(std::uint64_t code) const {
  std::size_t s = 0;
  while (s + 1 < offsets_.size() && offsets_[s + 1] <= code && offsets_[s + 1] > offsets_[s]) ++s;
  std::uint64_t rem = code - offsets_[s];
  Cell c;
  c.output = static_cast<std::size_t>(rem % algebra_.dim());
  rem /= algebra_.dim();
  c.inputs.assign(s, 0);
  for (std::size_t i = s; i-- > 0;) {
    c.inputs[i] = alphabet_[static_cast<std::size_t>(rem % alphabet_.size())];
    rem /= alphabet_.size();
  }
  return c;
}

Cell HochschildWindow::cell(int n, std::size_t i) const { return decode(codes(n).at(i)); }

std::optional<std::size_t> HochschildWindow::find(int n, const Cell& c) const {
  return index_of_code(n, encode(c));
}

int HochschildWindow::total_degree(const Cell& c) const {
  int n = algebra_.degree(c.output);
  for (auto i : c.inputs) n -= algebra_.degree(i) - 1;
  return n;
}

Bidegree HochschildWindow::bidegree(const Cell& c) const {
  int s = static_cast<int>(c.inputs.size());
  return {s, total_degree(c) - s};
}

std::string HochschildWindow::label(const Cell& c) const {
  if (c.inputs.empty()) return algebra_.name(c.output);
  std::string out = "[";
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    if (i) out += "|";
    out += algebra_.name(c.inputs[i]);
  }
  return out + "]->" + algebra_.name(c.output);
}

SparseMatrix HochschildWindow::differential_matrix(int n) const {
  if (!stores(n) || !stores(n + 1))
    throw DegreeOutOfWindow("differential from degree " + std::to_string(n) + " leaves the window");
  const auto& cols = codes(n);
  const std::size_t rows = dim(n + 1);
  std::vector<linalg::Entry> entries;
  linalg::with_field_arith(algebra_.ring(), [&](auto ar) {
    Tables<decltype(ar)> t(*this, ar);
    for (std::size_t j = 0; j < cols.size(); ++j)
      t.boundary(cols[j], [&](std::uint64_t code, const auto& v) {
        auto i = index_of_code(n + 1, code);
        if (!i) throw Error("InternalError", "boundary term outside its degree");
        entries.push_back({*i, j, ar.to_scalar(v)});
      });
  });
  return SparseMatrix::from_triplets(rows, cols.size(), std::move(entries), algebra_.ring());
}

bool HochschildWindow::no_high_cells(int m, std::size_t S) const {
  if (h_degrees_.empty()) return true;
  if (input_h_degrees_.empty()) return true;
  const int qmin = *std::min_element(h_degrees_.begin(), h_degrees_.end());
  const int qmax = *std::max_element(h_degrees_.begin(), h_degrees_.end());
  // an E_1 cell of length s has degree q + Σ w_i with w_i = 1 - r_i
  const int wmin = 1 - *std::max_element(input_h_degrees_.begin(), input_h_degrees_.end());
  const int wmax = 1 - *std::min_element(input_h_degrees_.begin(), input_h_degrees_.end());
  const long len = static_cast<long>(S) + 1;
  if (wmax < 0) return m > qmax + len * wmax;
  if (wmin > 0) return m < qmin + len * wmin;
  if (wmax == 0) return m > qmax;
  if (wmin == 0) return m < qmin;
  return false;
}

bool HochschildWindow::saturated(int n) const {
  return no_high_cells(n, spec_.max_tensor) && no_high_cells(n + 1, spec_.max_tensor);
}

HochschildCochain HochschildCochain::zero(WindowPtr w, int degree) {
  auto n = w->dim(degree);
  return {std::move(w), degree, Vector(n)};
}

HochschildCochain HochschildCochain::basis(WindowPtr w, int degree, std::size_t i) {
  auto c = zero(std::move(w), degree);
  c.coefficients.at(i) = 1;
  return c;
}

HochschildCochain HochschildCochain::constant(WindowPtr w, const Vector& a, int degree) {
  auto c = zero(w, degree);
  const auto& alg = w->algebra();
  if (a.size() != alg.dim()) throw InvalidArgument("vector length does not match the algebra");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (alg.ring().normalize(a[i]) == 0) continue;
    if (alg.degree(i) != degree) throw InvalidArgument("constant cochain is not homogeneous");
    c.coefficients[*w->find(degree, Cell{{}, i})] = alg.ring().normalize(a[i]);
  }
  return c;
}

bool HochschildCochain::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& x) { return x == 0; });
}

HochschildCochain differential(const HochschildCochain& phi) {
  const auto& w = *phi.window;
  if (phi.coefficients.size() != w.dim(phi.degree))
    throw InvalidArgument("cochain length does not match the window");
  auto out = HochschildCochain::zero(phi.window, phi.degree + 1);
  const auto& cols = w.codes(phi.degree);
  linalg::with_field_arith(w.algebra().ring(), [&](auto ar) {
    using V = typename decltype(ar)::value_type;
    Tables<decltype(ar)> t(w, ar);
    std::vector<V> acc(out.coefficients.size(), ar.zero());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (phi.coefficients[j] == 0) continue;
      V c = ar.from_scalar(phi.coefficients[j]);
      t.boundary(cols[j], [&](std::uint64_t code, const V& v) {
        auto i = *w.index_of_code(phi.degree + 1, code);
        acc[i] = ar.add(acc[i], ar.mul(c, v));
      });
    }
    for (std::size_t i = 0; i < acc.size(); ++i) out.coefficients[i] = ar.to_scalar(acc[i]);
  });
  return out;
}

HochschildCochain cup(const HochschildCochain& phi, const HochschildCochain& psi) {
  if (phi.window != psi.window) throw MismatchedWindow("cochains live in different windows");
  const auto& w = *phi.window;
  auto out = HochschildCochain::zero(phi.window, phi.degree + psi.degree);
  const auto& a = w.codes(phi.degree);
  const auto& b = w.codes(psi.degree);
  linalg::with_field_arith(w.algebra().ring(), [&](auto ar) {
    using V = typename decltype(ar)::value_type;
    Tables<decltype(ar)> t(w, ar);
    std::vector<V> acc(out.coefficients.size(), ar.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (phi.coefficients[i] == 0) continue;
      V x = ar.from_scalar(phi.coefficients[i]);
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (psi.coefficients[j] == 0) continue;
        V xy = ar.mul(x, ar.from_scalar(psi.coefficients[j]));
        t.cup(a[i], b[j], [&](std::uint64_t code, const V& v) {
          auto k = *w.index_of_code(out.degree, code);
          acc[k] = ar.add(acc[k], ar.mul(xy, v));
        });
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) out.coefficients[k] = ar.to_scalar(acc[k]);
  });
  return out;
}

}  // namespace strop::hochschild
