#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cantube/error.hpp"

namespace cantube {

using Rational = mpq_class;

enum class VertexKind { Zero, Infinity, Arm };

struct Vertex {
  VertexKind kind = VertexKind::Zero;
  int arm = 0;
  int pos = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// alpha_{arm,pos} : (arm,pos) -> (arm,pos-1), with (arm,0) = 0 and
/// (arm,m_arm) = infinity.  source/target are vertex indices.
struct Arrow {
  int arm = 0;
  int pos = 0;
  int source = 0;
  int target = 0;
};

enum class TubeLabel { Zero, Infinity, Finite };

/// The star quiver with n arms of lengths m_1..m_n together with the
/// parameters lambda_3..lambda_n of the n-2 relations
///   alpha_{1,1}...alpha_{1,m_1} + lambda_i alpha_{2,1}...alpha_{2,m_2}
///     - alpha_{i,1}...alpha_{i,m_i} = 0.
///
/// Vertex order (used for every serialized vector): 0, infinity, then (i,j)
/// lexicographically.
class CanonicalType {
 public:
  static constexpr int kZero = 0;
  static constexpr int kInfinity = 1;

  /// `lambdas` holds lambda_3..lambda_n; empty selects lambda_i = i - 2.
  explicit CanonicalType(std::vector<int> arm_lengths,
                         std::vector<Rational> lambdas = {});

  int arms() const noexcept { return static_cast<int>(m_.size()); }
  int arm_length(int i) const;
  const std::vector<int>& arm_lengths() const noexcept { return m_; }

  /// lambda_i for i in [3, n].
  const Rational& lambda(int i) const;
  const std::vector<Rational>& lambdas() const noexcept { return lambda_; }
  TubeLabel tube_label(int i) const;

  int vertex_count() const noexcept { return vertex_count_; }
  /// Index of (i, j) for j in [0, m_i]; j = 0 is vertex 0, j = m_i is infinity.
  int vertex_index(int i, int j) const;
  Vertex vertex(int index) const;
  std::string vertex_label(int index) const;

  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  int relation_count() const noexcept { return arms() - 2; }

  /// "m1,m2,..."
  std::string label() const;

  friend bool operator==(const CanonicalType& a, const CanonicalType& b) {
    return a.m_ == b.m_ && a.lambda_ == b.lambda_;
  }

 private:
  std::vector<int> m_;
  std::vector<Rational> lambda_;
  std::vector<int> offset_;
  std::vector<Arrow> arrows_;
  int vertex_count_ = 0;
};

/// Integer vector on the vertices of the star quiver.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::size_t size) : v_(size, 0) {}
  explicit DimVector(std::vector<std::int64_t> entries) : v_(std::move(entries)) {}

  std::size_t size() const noexcept { return v_.size(); }
  std::int64_t operator[](std::size_t k) const { return v_[k]; }
  std::int64_t& operator[](std::size_t k) { return v_[k]; }
  std::span<const std::int64_t> entries() const noexcept { return v_; }

  bool is_zero() const noexcept;
  bool is_nonnegative() const noexcept;
  /// Coordinatewise a <= b.
  bool fits_in(const DimVector& bound) const noexcept;
  std::int64_t total() const noexcept;

  DimVector& operator+=(const DimVector& o);
  DimVector& operator-=(const DimVector& o);
  friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
  friend DimVector operator*(std::int64_t s, DimVector a) {
    for (auto& x : a.v_) x *= s;
    return a;
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;

 private:
  std::vector<std::int64_t> v_;
};

// --- invariants of the algebra -------------------------------------------

/// (n - 2 - sum 1/m_i) / 2.  The algebra is tame iff this is <= 0.
Rational delta_invariant(const CanonicalType& t);
bool is_tame(const CanonicalType& t);
/// n if delta < 0, n + 1 if delta = 0, nothing for wild types.
std::optional<int> threshold_n(const CanonicalType& t);

// --- vectors ---------------------------------------------------------------

/// d_{i,j} for j in [0, m_i] with d_{i,0} = d_0 and d_{i,m_i} = d_inf.
std::int64_t coord(const CanonicalType& t, const DimVector& d, int i, int j);

DimVector zero_vector(const CanonicalType& t);
DimVector h_vector(const CanonicalType& t);
DimVector unit_vector(const CanonicalType& t, int vertex_index);
/// e_{i,j}, periodic in j with period m_i; e_{i,0} = h - sum_{j>0} e_{i,j}.
DimVector e_vector(const CanonicalType& t, int i, int j);
/// sum_{j in [j1, j2]} e_{i,j}; the empty sum when j1 > j2.
DimVector e_interval(const CanonicalType& t, int i, int j1, int j2);

std::int64_t euler_form(const CanonicalType& t, const DimVector& a, const DimVector& b);

/// delta_{i,j}(d) = d_{i,j-1} - d_{i,j}, periodic in j.
std::int64_t delta(const CanonicalType& t, const DimVector& d, int i, int j);
/// sum_{j in [j1, j2]} delta_{i,j}(d); throws InvalidInput when j1 > j2.
std::int64_t delta_interval(const CanonicalType& t, const DimVector& d, int i, int j1,
                            int j2);

/// <d, h> = d_0 - d_inf.
std::int64_t defect(const CanonicalType& t, const DimVector& d);

/// p^d = sum_i min_{j in [0,m_i-1]} d_{i,j} - (n-1) d_0.
std::int64_t homogeneous_multiplicity(const CanonicalType& t, const DimVector& d);

struct Classification {
  bool in_P = false;
  bool in_R = false;
  bool in_Q = false;
};

/// Membership in the dimension-vector sets of the preprojective, regular and
/// preinjective parts.  Regular means d_0 = d_inf and p^d >= 0.
Classification classify(const CanonicalType& t, const DimVector& d);
bool in_P(const CanonicalType& t, const DimVector& d);
bool in_Q(const CanonicalType& t, const DimVector& d);
bool in_R(const CanonicalType& t, const DimVector& d);

/// Dimension of the module variety: dim GL(d) - <d, d>.  Cross-checked
/// against dim A(d) - sum over relations of d_inf d_0.
std::int64_t a_dim(const CanonicalType& t, const DimVector& d);

void require_same_size(const CanonicalType& t, const DimVector& d);
void require_nonnegative(const DimVector& d, const char* what);

/// Floor modulus, result in [0, m).
constexpr int mod_floor(long long a, int m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace cantube
