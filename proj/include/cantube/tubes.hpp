#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cantube/core.hpp"

namespace cantube {

/// R_arm^{[socle, socle + length - 1]} with the socle reduced mod m_arm.
class TubeClass {
 public:
  TubeClass() = default;
  /// From any representative [j1, j2], j1 <= j2.
  TubeClass(const CanonicalType& t, int arm, int j1, int j2);
  /// Raw constructor; the caller guarantees 0 <= socle < m and length >= 1.
  static TubeClass normalized(int arm, int socle, int length) {
    TubeClass c;
    c.arm_ = arm;
    c.socle_ = socle;
    c.length_ = length;
    return c;
  }

  int arm() const noexcept { return arm_; }
  int socle() const noexcept { return socle_; }
  int length() const noexcept { return length_; }
  /// Top index of the representative starting at socle().
  int top() const noexcept { return socle_ + length_ - 1; }

  std::string str() const;

  friend auto operator<=>(const TubeClass&, const TubeClass&) = default;

 private:
  int arm_ = 1;
  int socle_ = 0;
  int length_ = 1;
};

/// Multiset of exceptional tube classes, kept sorted.
class RegularPart {
 public:
  RegularPart() = default;
  explicit RegularPart(std::vector<TubeClass> members);

  const std::vector<TubeClass>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  void add(const TubeClass& c);
  /// Removes one copy; throws if absent.
  void remove(const TubeClass& c);
  RegularPart restricted_to_arm(int arm) const;

  std::string str() const;

  friend auto operator<=>(const RegularPart&, const RegularPart&) = default;

 private:
  std::vector<TubeClass> members_;
};

DimVector tube_dim_vector(const CanonicalType& t, const TubeClass& c);
DimVector tube_dim_vector(const CanonicalType& t, const RegularPart& x);

/// Number of times each residue of arm `arm` is covered by members of that arm.
std::vector<std::int64_t> tube_coverage(const CanonicalType& t, const RegularPart& x, int arm);

/// tau^power: shifts both indices by -power.
TubeClass tau(const CanonicalType& t, const TubeClass& c, int power = 1);

/// #{u : j1 <= l1 + u m <= j2 <= l2 + u m} for classes on the same arm of length m.
int hom_tube_raw(int m, int j1, int j2, int l1, int l2);
int hom_tube(const CanonicalType& t, const TubeClass& s, const TubeClass& u);
int ext1_tube(const CanonicalType& t, const TubeClass& s, const TubeClass& u);
std::int64_t hom_regular(const CanonicalType& t, const RegularPart& x, const RegularPart& y);

/// Every multiset of intervals (socle, length) on a cycle of length m whose coverage is `cov`.
/// Each multiset is listed once, members sorted by (socle, length).
std::vector<std::vector<std::pair<int, int>>> enumerate_tube_covers(
    const std::vector<std::int64_t>& cov);

/// All X in the exceptional tubes with dimension vector r, in sorted order.
std::vector<RegularPart> enumerate_regular(const CanonicalType& t, const DimVector& r);

struct TypeAModule {
  int m = 0;
  std::vector<std::pair<int, int>> intervals;  // [a, b] with 1 <= a <= b <= m, sorted

  std::vector<std::int64_t> dim_vector() const;
  friend auto operator<=>(const TypeAModule&, const TypeAModule&) = default;
};

/// Restricts X to arm i and transports it to A_{m_i - 1}; l is the smallest uncovered residue.
std::pair<int, TypeAModule> to_type_a(const CanonicalType& t, const RegularPart& x, int arm);
/// Same, with a caller-chosen uncovered residue l.
TypeAModule to_type_a_at(const CanonicalType& t, const RegularPart& x, int arm, int l);

}  // namespace cantube
