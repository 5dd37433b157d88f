#include "cantube/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cantube {

CanonicalType::CanonicalType(std::vector<int> arm_lengths, std::vector<Rational> lambdas)
    : m_(std::move(arm_lengths)), lambda_(std::move(lambdas)) {
  const int n = arms();
  if (n < 3) throw InvalidInput("a canonical type needs at least 3 arms");
  for (int len : m_)
    if (len < 2) throw InvalidInput("every arm length must be at least 2");
  if (lambda_.empty()) {
    for (int i = 3; i <= n; ++i) lambda_.emplace_back(i - 2);
  }
  if (static_cast<int>(lambda_.size()) != n - 2)
    throw InvalidInput("expected " + std::to_string(n - 2) + " parameters lambda_3..lambda_n");
  for (auto& l : lambda_) l.canonicalize();
  if (lambda_[0] != 1) throw InvalidInput("lambda_3 must be 1");
  for (std::size_t a = 0; a < lambda_.size(); ++a) {
    if (lambda_[a] == 0) throw InvalidInput("tube parameters must be nonzero");
    for (std::size_t b = a + 1; b < lambda_.size(); ++b)
      if (lambda_[a] == lambda_[b]) throw InvalidInput("tube parameters must be pairwise distinct");
  }

  offset_.resize(n);
  int next = 2;
  for (int i = 0; i < n; ++i) {
    offset_[i] = next;
    next += m_[i] - 1;
  }
  vertex_count_ = next;

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m_[i - 1]; ++j)
      arrows_.push_back(Arrow{i, j, vertex_index(i, j), vertex_index(i, j - 1)});
}

int CanonicalType::arm_length(int i) const {
  if (i < 1 || i > arms()) throw InvalidInput("arm index out of range: " + std::to_string(i));
  return m_[i - 1];
}

const Rational& CanonicalType::lambda(int i) const {
  if (i < 3 || i > arms()) throw InvalidInput("lambda index must lie in [3, n]");
  return lambda_[i - 3];
}

TubeLabel CanonicalType::tube_label(int i) const {
  arm_length(i);
  if (i == 1) return TubeLabel::Zero;
  if (i == 2) return TubeLabel::Infinity;
  return TubeLabel::Finite;
}

int CanonicalType::vertex_index(int i, int j) const {
  const int m = arm_length(i);
  if (j < 0 || j > m) throw InvalidInput("vertex position out of range");
  if (j == 0) return kZero;
  if (j == m) return kInfinity;
  return offset_[i - 1] + j - 1;
}

Vertex CanonicalType::vertex(int index) const {
  if (index < 0 || index >= vertex_count_) throw InvalidInput("vertex index out of range");
  if (index == kZero) return {VertexKind::Zero, 0, 0};
  if (index == kInfinity) return {VertexKind::Infinity, 0, 0};
  int i = arms();
  while (offset_[i - 1] > index) --i;
  return {VertexKind::Arm, i, index - offset_[i - 1] + 1};
}

std::string CanonicalType::vertex_label(int index) const {
  Vertex v = vertex(index);
  switch (v.kind) {
    case VertexKind::Zero: return "0";
    case VertexKind::Infinity: return "inf";
    case VertexKind::Arm: return std::to_string(v.arm) + "," + std::to_string(v.pos);
  }
  return {};
}

std::string CanonicalType::label() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < m_.size(); ++i) os << (i ? "," : "") << m_[i];
  return os.str();
}

bool DimVector::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](auto x) { return x == 0; });
}

bool DimVector::is_nonnegative() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](auto x) { return x >= 0; });
}

bool DimVector::fits_in(const DimVector& bound) const noexcept {
  if (bound.size() != size()) return false;
  for (std::size_t k = 0; k < v_.size(); ++k)
    if (v_[k] > bound.v_[k]) return false;
  return true;
}

std::int64_t DimVector::total() const noexcept {
  return std::accumulate(v_.begin(), v_.end(), std::int64_t{0});
}

DimVector& DimVector::operator+=(const DimVector& o) {
  if (o.size() != size()) throw InvalidInput("dimension vector size mismatch");
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}

DimVector& DimVector::operator-=(const DimVector& o) {
  if (o.size() != size()) throw InvalidInput("dimension vector size mismatch");
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}

Rational delta_invariant(const CanonicalType& t) {
  Rational s = t.arms() - 2;
  for (int len : t.arm_lengths()) s -= Rational(1, len);
  Rational half = s / 2;
  half.canonicalize();
  return half;
}

bool is_tame(const CanonicalType& t) { return delta_invariant(t) <= 0; }

std::optional<int> threshold_n(const CanonicalType& t) {
  const Rational d = delta_invariant(t);
  if (d < 0) return t.arms();
  if (d == 0) return t.arms() + 1;
  return std::nullopt;
}

void require_same_size(const CanonicalType& t, const DimVector& d) {
  if (static_cast<int>(d.size()) != t.vertex_count())
    throw InvalidInput("dimension vector has " + std::to_string(d.size()) + " entries, type " +
                       t.label() + " needs " + std::to_string(t.vertex_count()));
}

void require_nonnegative(const DimVector& d, const char* what) {
  if (!d.is_nonnegative()) throw InvalidInput(std::string(what) + " has a negative coordinate");
}

std::int64_t coord(const CanonicalType& t, const DimVector& d, int i, int j) {
  return d[t.vertex_index(i, j)];
}

DimVector zero_vector(const CanonicalType& t) { return DimVector(t.vertex_count()); }

DimVector h_vector(const CanonicalType& t) {
  return DimVector(std::vector<std::int64_t>(t.vertex_count(), 1));
}

DimVector unit_vector(const CanonicalType& t, int vertex_index) {
  if (vertex_index < 0 || vertex_index >= t.vertex_count())
    throw InvalidInput("vertex index out of range");
  DimVector v(t.vertex_count());
  v[vertex_index] = 1;
  return v;
}

DimVector e_vector(const CanonicalType& t, int i, int j) {
  const int m = t.arm_length(i);
  const int r = mod_floor(j, m);
  if (r != 0) return unit_vector(t, t.vertex_index(i, r));
  DimVector v = h_vector(t);
  for (int k = 1; k < m; ++k) v[t.vertex_index(i, k)] = 0;
  return v;
}

DimVector e_interval(const CanonicalType& t, int i, int j1, int j2) {
  const int m = t.arm_length(i);
  DimVector v(t.vertex_count());
  if (j1 > j2) return v;
  // Whole periods contribute h each.
  const long long len = static_cast<long long>(j2) - j1 + 1;
  const long long periods = len / m;
  if (periods > 0) v += periods * h_vector(t);
  for (long long k = 0; k < len % m; ++k) v += e_vector(t, i, static_cast<int>(j1 + k));
  return v;
}

std::int64_t euler_form(const CanonicalType& t, const DimVector& a, const DimVector& b) {
  require_same_size(t, a);
  require_same_size(t, b);
  std::int64_t s = 0;
  for (std::size_t x = 0; x < a.size(); ++x) s += a[x] * b[x];
  for (const Arrow& al : t.arrows()) s -= a[al.source] * b[al.target];
  s += static_cast<std::int64_t>(t.relation_count()) * a[CanonicalType::kInfinity] *
       b[CanonicalType::kZero];
  return s;
}

std::int64_t delta(const CanonicalType& t, const DimVector& d, int i, int j) {
  const int m = t.arm_length(i);
  const int r = mod_floor(j - 1, m) + 1;  // representative in [1, m]
  return coord(t, d, i, r - 1) - coord(t, d, i, r);
}

std::int64_t delta_interval(const CanonicalType& t, const DimVector& d, int i, int j1, int j2) {
  if (j1 > j2) throw InvalidInput("delta interval needs j1 <= j2");
  const int m = t.arm_length(i);
  const long long len = static_cast<long long>(j2) - j1 + 1;
  std::int64_t s = (len / m) * defect(t, d);
  for (long long k = 0; k < len % m; ++k) s += delta(t, d, i, static_cast<int>(j1 + k));
  return s;
}

std::int64_t defect(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  return d[CanonicalType::kZero] - d[CanonicalType::kInfinity];
}

std::int64_t homogeneous_multiplicity(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  std::int64_t s = 0;
  for (int i = 1; i <= t.arms(); ++i) {
    std::int64_t mn = d[CanonicalType::kZero];
    for (int j = 1; j < t.arm_length(i); ++j) mn = std::min(mn, coord(t, d, i, j));
    s += mn;
  }
  return s - static_cast<std::int64_t>(t.arms() - 1) * d[CanonicalType::kZero];
}

namespace {

bool monotone_arms(const CanonicalType& t, const DimVector& d, int sign) {
  for (int i = 1; i <= t.arms(); ++i)
    for (int j = 1; j <= t.arm_length(i); ++j)
      if (sign * delta(t, d, i, j) < 0) return false;
  return true;
}

}  // namespace

bool in_P(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  require_nonnegative(d, "dimension vector");
  if (d.is_zero()) return true;
  const auto d0 = d[CanonicalType::kZero], dinf = d[CanonicalType::kInfinity];
  return d0 > dinf && dinf >= 0 && monotone_arms(t, d, +1);
}

bool in_Q(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  require_nonnegative(d, "dimension vector");
  if (d.is_zero()) return true;
  const auto d0 = d[CanonicalType::kZero], dinf = d[CanonicalType::kInfinity];
  return 0 <= d0 && d0 < dinf && monotone_arms(t, d, -1);
}

bool in_R(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  require_nonnegative(d, "dimension vector");
  return d[CanonicalType::kZero] == d[CanonicalType::kInfinity] &&
         homogeneous_multiplicity(t, d) >= 0;
}

Classification classify(const CanonicalType& t, const DimVector& d) {
  return {in_P(t, d), in_R(t, d), in_Q(t, d)};
}

std::int64_t a_dim(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  require_nonnegative(d, "dimension vector");
  std::int64_t gl = 0;
  for (auto x : d.entries()) gl += x * x;
  const std::int64_t via_euler = gl - euler_form(t, d, d);

  std::int64_t affine = 0;
  for (const Arrow& al : t.arrows()) affine += d[al.source] * d[al.target];
  const std::int64_t via_affine =
      affine - static_cast<std::int64_t>(t.relation_count()) * d[CanonicalType::kInfinity] *
                   d[CanonicalType::kZero];
  if (via_euler != via_affine)
    throw std::logic_error("module variety dimension formulas disagree");
  return via_euler;
}

}  // namespace cantube
