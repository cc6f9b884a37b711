#include "qflex/projgroup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace qflex {

ProjMap::ProjMap(const Mat3& m) {
  double top = 0.0;
  for (const auto& c : m) top = std::max(top, std::abs(c));
  if (!(top > 0.0) || !std::isfinite(top)) throw Error(ErrorKind::InvalidInput, "map matrix must be finite and nonzero");
  std::size_t pivot = 0;
  while (std::abs(m[pivot]) < top * (1.0 - 1e-9)) ++pivot;
  const Complex s = m[pivot];
  for (std::size_t i = 0; i < 9; ++i) m_[i] = m[i] / s;
  m_[pivot] = 1.0;
  if (std::abs(determinant(m_)) <= 1e-12) throw Error(ErrorKind::InvalidInput, "map matrix is singular");
}

ProjMap ProjMap::inverse() const {
  const Mat3& a = m_;
  // Adjugate; the determinant is a scalar and drops out projectively.
  return ProjMap(Mat3{a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
                      a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
                      a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]});
}

bool ProjMap::approx_equal(const ProjMap& other, double eps) const {
  for (std::size_t i = 0; i < 9; ++i)
    if (std::abs(m_[i] - other.m_[i]) > eps) return false;
  return true;
}

ProjPoint act(const ProjMap& g, const ProjPoint& p) { return ProjPoint(apply(g.matrix(), p.coords())); }

ProjGroup::ProjGroup(std::vector<ProjMap> elements, std::vector<std::size_t> generator_indices, double eps)
    : elements_(std::move(elements)), generators_(std::move(generator_indices)), eps_(eps) {
  if (elements_.empty() || !elements_.front().is_identity(eps_))
    throw Error(ErrorKind::InvalidInput, "group must start with the identity");
  for (const auto& g : elements_) {
    if (!find(g.inverse())) throw Error(ErrorKind::InvalidInput, "group is not closed under inverses");
    for (const auto& h : elements_)
      if (!find(g * h)) throw Error(ErrorKind::InvalidInput, "group is not closed under composition");
  }
}

std::optional<std::size_t> ProjGroup::find(const ProjMap& m) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].approx_equal(m, eps_)) return i;
  return std::nullopt;
}

bool ProjGroup::is_abelian() const {
  for (const auto& g : elements_)
    for (const auto& h : elements_)
      if (!(g * h).approx_equal(h * g, eps_)) return false;
  return true;
}

std::vector<int> ProjGroup::element_orders() const {
  std::vector<int> out;
  out.reserve(elements_.size());
  for (const auto& g : elements_) {
    int k = 1;
    ProjMap power = g;
    while (!power.is_identity(eps_) && k <= static_cast<int>(elements_.size())) {
      power = power * g;
      ++k;
    }
    out.push_back(k);
  }
  return out;
}

std::map<int, int> ProjGroup::order_histogram() const {
  std::map<int, int> h;
  for (int k : element_orders()) ++h[k];
  return h;
}

ProjGroup close_group(const std::vector<ProjMap>& generators, std::size_t cap, double eps) {
  std::vector<ProjMap> elements{ProjMap::identity()};
  auto index = [&](const ProjMap& m) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i].approx_equal(m, eps)) return i;
    return std::nullopt;
  };
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const ProjMap current = elements[queue.front()];
    queue.pop_front();
    for (const auto& g : generators) {
      const ProjMap next = g * current;
      if (index(next)) continue;
      if (elements.size() >= cap)
        throw Error(ErrorKind::CapExceeded, "group closure exceeded " + std::to_string(cap) + " elements");
      elements.push_back(next);
      queue.push_back(elements.size() - 1);
    }
  }
  std::vector<std::size_t> gens;
  for (const auto& g : generators) gens.push_back(*index(g));
  return ProjGroup(std::move(elements), std::move(gens), eps);
}

std::vector<ProjPoint> orbit(const ProjGroup& G, const ProjPoint& p) {
  std::vector<ProjPoint> images;
  images.reserve(G.order());
  for (const auto& g : G.elements()) images.push_back(act(g, p));
  return dedupe_points(std::move(images), G.eps());
}

std::vector<ProjMap> stabilizer(const ProjGroup& G, const ProjPoint& p) {
  std::vector<ProjMap> out;
  for (const auto& g : G.elements())
    if (approx_equal(act(g, p), p, G.eps())) out.push_back(g);
  if (out.size() * orbit(G, p).size() != G.order())
    throw Error(ErrorKind::InvarianceViolation, "orbit-stabilizer count mismatch");
  return out;
}

void check_invariant(const ProjGroup& G, const TriPoly& F, const Tolerances& tol) {
  Exponent lead{};
  double best = -1.0;
  for (const auto& [e, c] : F.terms())
    if (std::abs(c) > best) {
      best = std::abs(c);
      lead = e;
    }
  for (std::size_t idx : G.generator_indices()) {
    const TriPoly image = compose_linear(F, G.elements()[idx].matrix());
    const Complex ratio = image.coeff(lead) / F.coeff(lead);
    const TriPoly diff = image - ratio * F;
    if (ratio == Complex{} || diff.coeff_norm() > 1e3 * tol.zero_eps * image.coeff_norm())
      throw Error(ErrorKind::NotInvariant, "a generator does not preserve the curve");
  }
}

namespace {

int stabilizer_order(const ProjGroup& G, const ProjPoint& p, double eps) {
  int n = 0;
  for (const auto& g : G.elements())
    if (approx_equal(act(g, p), p, eps)) ++n;
  return n;
}

}  // namespace

std::vector<FixedPoint> fixed_locus(const ProjGroup& G, const TriPoly& F, const Tolerances& tol) {
  check_invariant(G, F, tol);
  const double on_curve = 1e3 * tol.zero_eps * F.coeff_norm();
  std::vector<ProjPoint> candidates;
  for (const auto& g : G.elements()) {
    if (g.is_identity(G.eps())) continue;
    const Mat3& m = g.matrix();
    const Complex trace = m[0] + m[4] + m[8];
    const Complex minors = (m[0] * m[4] - m[1] * m[3]) + (m[0] * m[8] - m[2] * m[6]) + (m[4] * m[8] - m[5] * m[7]);
    const UniPoly charpoly{-determinant(m), minors, -trace, 1.0};
    for (const Root& ev : roots_with_multiplicity(charpoly, tol).roots) {
      Mat3 a = m;
      a[0] -= ev.value;
      a[4] -= ev.value;
      a[8] -= ev.value;
      std::array<Vec3, 3> rows{Vec3{a[0], a[1], a[2]}, Vec3{a[3], a[4], a[5]}, Vec3{a[6], a[7], a[8]}};
      double scale = 0.0;
      for (const auto& r : rows) scale = std::max(scale, max_abs(r));
      if (scale <= 1e-9) continue;
      Vec3 kernel{};
      double kmax = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
          const Vec3 c = cross(rows[i], rows[j]);
          if (max_abs(c) > kmax) {
            kmax = max_abs(c);
            kernel = c;
          }
        }
      if (kmax > 1e-6 * scale * scale) {
        // Isolated fixed point.
        const ProjPoint p(kernel);
        if (std::abs(F(p.coords())) <= on_curve) candidates.push_back(p);
        continue;
      }
      // Fixed line {q : r . q = 0}; meet it with the curve.
      const Vec3 r = *std::max_element(rows.begin(), rows.end(),
                                       [](const Vec3& x, const Vec3& y) { return max_abs(x) < max_abs(y); });
      const ProjLine line(r);
      const int k = line.home();
      std::array<Vec3, 2> basis{};
      for (int j = 0, b = 0; j < 3; ++j) {
        if (j == k) continue;
        basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] = 1.0;
        basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] = -line[j];
        ++b;
      }
      const UniPoly restricted = restrict_line(F, basis[0], basis[1]).trimmed(1e-13);
      if (restricted.is_zero()) throw Error(ErrorKind::DegenerateLine, "curve contains a fixed line");
      if (restricted.degree() >= 1)
        for (const Root& t : roots_with_multiplicity(restricted, tol).roots) {
          Vec3 q{};
          for (std::size_t i = 0; i < 3; ++i) q[i] = basis[0][i] + t.value * basis[1][i];
          candidates.emplace_back(q);
        }
      if (restricted.degree() < F.degree()) candidates.emplace_back(basis[1]);
    }
  }
  std::vector<FixedPoint> out;
  for (const auto& p : dedupe_points(std::move(candidates), tol.point_eps)) {
    const int order = stabilizer_order(G, p, tol.point_eps);
    if (order > 1) out.push_back({p, order});
  }
  return out;
}

OrbitSignature::OrbitSignature(std::vector<SignatureEntry> entries) {
  for (const auto& e : entries) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const SignatureEntry& x) {
      return x.orbit_size == e.orbit_size && x.kind == e.kind;
    });
    if (it == entries_.end()) entries_.push_back(e);
    else it->count += e.count;
  }
  std::sort(entries_.begin(), entries_.end(), [](const SignatureEntry& x, const SignatureEntry& y) {
    if (x.kind != y.kind) return x.kind == FlexKind::Ordinary;
    return x.orbit_size < y.orbit_size;
  });
}

int OrbitSignature::weighted_total() const {
  int s = 0;
  for (const auto& e : entries_) s += e.orbit_size * e.count * (e.kind == FlexKind::Ordinary ? 1 : 2);
  return s;
}

int OrbitSignature::point_count(FlexKind kind) const {
  int s = 0;
  for (const auto& e : entries_)
    if (e.kind == kind) s += e.orbit_size * e.count;
  return s;
}

std::string OrbitSignature::to_string() const {
  if (entries_.empty()) return "(none)";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << " + ";
    os << entries_[i].count << '_' << entries_[i].orbit_size << ' ' << qflex::to_string(entries_[i].kind);
  }
  return os.str();
}

OrbitPartition orbit_partition(const ProjGroup& G, const std::vector<FlexRecord>& records, const Tolerances& tol) {
  OrbitPartition out;
  out.labels.assign(records.size(), -1);
  std::vector<int> sizes;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (out.labels[i] >= 0) continue;
    const int id = out.orbit_count++;
    sizes.push_back(0);
    for (const auto& g : G.elements()) {
      const ProjPoint image = act(g, records[i].point);
      std::size_t j = 0;
      while (j < records.size() && !approx_equal(image, records[j].point, tol.point_eps)) ++j;
      if (j == records.size())
        throw Error(ErrorKind::InvarianceViolation, "group element maps a flex outside the flex set");
      if (records[j].kind != records[i].kind)
        throw Error(ErrorKind::InvarianceViolation, "group element changes the kind of a flex");
      if (out.labels[j] < 0) {
        out.labels[j] = id;
        ++sizes.back();
      } else if (out.labels[j] != id) {
        throw Error(ErrorKind::InvarianceViolation, "orbits overlap");
      }
    }
  }
  std::vector<SignatureEntry> entries;
  for (std::size_t id = 0; id < sizes.size(); ++id) {
    const auto first = static_cast<std::size_t>(
        std::find(out.labels.begin(), out.labels.end(), static_cast<int>(id)) - out.labels.begin());
    entries.push_back({sizes[id], 1, records[first].kind});
  }
  out.signature = OrbitSignature(std::move(entries));
  return out;
}

}  // namespace qflex
