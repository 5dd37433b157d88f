#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cantube/candecomp.hpp"
#include "cantube/linalg.hpp"
#include "cantube/tubes.hpp"

namespace cantube {

/// A finite quiver given by its arrows (source, target).
struct QuiverShape {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> arrows;
};

/// Representation of a QuiverShape: the map of arrow a is dims[target] x dims[source].
struct Representation {
  std::vector<int> dims;
  std::vector<RationalMatrix> maps;
};

/// dim Hom(M, N): solutions of phi_t M_a = N_a phi_s for all arrows a.
int hom_dimension(const QuiverShape& q, const Representation& m, const Representation& n);

/// Coefficient matrix of the intertwiner system (one sparse row per scalar equation).
std::vector<SparseRow> hom_system(const QuiverShape& q, const Representation& m,
                                  const Representation& n, int* unknowns);

QuiverShape quiver_of(const CanonicalType& t);
/// Path quiver A_m with vertices 1..m stored as 0..m-1 and arrows j+1 -> j.
QuiverShape type_a_quiver(int m);
Representation type_a_interval(int m, int a, int b);

/// A module over the canonical algebra: one exact matrix per arrow of t.arrows().
struct MatrixModule {
  CanonicalType type;
  DimVector dims;
  std::vector<RationalMatrix> maps;

  Representation rep() const;
};

MatrixModule zero_maps_module(const CanonicalType& t, const DimVector& dims);
MatrixModule build_tube_module(const CanonicalType& t, const TubeClass& c);
/// R_mu for mu outside {0} and the finite tube parameters.
MatrixModule build_homogeneous(const CanonicalType& t, const Rational& mu);
MatrixModule build_regular(const CanonicalType& t, const RegularPart& x);
/// Block diagonal sum; needs a type for the empty sum.
MatrixModule direct_sum(const CanonicalType& t, const std::vector<MatrixModule>& parts);

int hom_space_dim(const MatrixModule& m, const MatrixModule& n);
std::int64_t orbit_dim(const MatrixModule& m);

/// Composite alpha_{i,1} ... alpha_{i,m_i} : M_inf -> M_0.
RationalMatrix arm_composite(const MatrixModule& m, int arm);

struct ResidualReport {
  std::vector<RationalMatrix> residuals;  // relation t = 3..n
  bool valid = true;
};

ResidualReport validate_module(const MatrixModule& m);

struct MembershipCertificate {
  bool member = false;
  bool generic_hom_nonzero = false;  // condition on [R_mu, M] for generic mu
  int samples_used = 0;
  std::vector<IntervalClass> failing_intervals;  // admissible classes with [R^{[j1+1,j2]}, M] = 0
};

/// Decides membership of M in the common zero set of the semi-invariants of nonzero weight.
MembershipCertificate z_membership(const MatrixModule& m);

}  // namespace cantube
