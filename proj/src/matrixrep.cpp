#include "cantube/matrixrep.hpp"

#include <algorithm>
#include <map>

namespace cantube {

std::vector<SparseRow> hom_system(const QuiverShape& q, const Representation& m,
                                  const Representation& n, int* unknowns) {
  // Unknown phi_x[r][c] (r < n_x, c < m_x) gets a global column index.
  std::vector<int> base(q.vertex_count + 1, 0);
  for (int x = 0; x < q.vertex_count; ++x) base[x + 1] = base[x] + n.dims[x] * m.dims[x];
  if (unknowns) *unknowns = base[q.vertex_count];

  std::vector<SparseRow> rows;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto [s, t] = q.arrows[a];
    const RationalMatrix& ma = m.maps[a];  // m_t x m_s
    const RationalMatrix& na = n.maps[a];  // n_t x n_s
    for (int r = 0; r < n.dims[t]; ++r)
      for (int c = 0; c < m.dims[s]; ++c) {
        // sum_k phi_t[r][k] ma[k][c] - sum_k na[r][k] phi_s[k][c]
        std::map<int, Rational> acc;
        for (int k = 0; k < m.dims[t]; ++k)
          if (ma(k, c) != 0) acc[base[t] + r * m.dims[t] + k] += ma(k, c);
        for (int k = 0; k < n.dims[s]; ++k)
          if (na(r, k) != 0) acc[base[s] + k * m.dims[s] + c] -= na(r, k);
        SparseRow row;
        for (auto& [col, v] : acc)
          if (v != 0) row.emplace_back(col, v);
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  return rows;
}

int hom_dimension(const QuiverShape& q, const Representation& m, const Representation& n) {
  int unknowns = 0;
  const auto rows = hom_system(q, m, n, &unknowns);
  return unknowns - rank_of(unknowns, rows);
}

QuiverShape quiver_of(const CanonicalType& t) {
  QuiverShape q;
  q.vertex_count = t.vertex_count();
  for (const auto& a : t.arrows()) q.arrows.emplace_back(a.source, a.target);
  return q;
}

QuiverShape type_a_quiver(int m) {
  QuiverShape q;
  q.vertex_count = m;
  for (int j = 1; j < m; ++j) q.arrows.emplace_back(j, j - 1);
  return q;
}

Representation type_a_interval(int m, int a, int b) {
  Representation r;
  r.dims.assign(m, 0);
  for (int j = a; j <= b; ++j) r.dims[j - 1] = 1;
  for (int j = 1; j < m; ++j) {
    // arrow (j+1) -> j, stored 0-based as j -> j-1
    RationalMatrix mat(r.dims[j - 1], r.dims[j]);
    if (r.dims[j - 1] && r.dims[j]) mat(0, 0) = 1;
    r.maps.push_back(std::move(mat));
  }
  return r;
}

Representation MatrixModule::rep() const {
  Representation r;
  for (auto x : dims.entries()) r.dims.push_back(static_cast<int>(x));
  r.maps = maps;
  return r;
}

MatrixModule zero_maps_module(const CanonicalType& t, const DimVector& dims) {
  require_same_size(t, dims);
  require_nonnegative(dims, "module dimension vector");
  MatrixModule m{t, dims, {}};
  for (const auto& a : t.arrows())
    m.maps.emplace_back(static_cast<int>(dims[a.target]), static_cast<int>(dims[a.source]));
  return m;
}

namespace {

// Composite of arm q in the tube model of arm i is c I + e N, where I identifies the copies
// of R_{i,0} in the same factor and N shifts one period down.
std::pair<Rational, Rational> tube_arm_coefficients(const CanonicalType& t, int i, int q) {
  if (i == 1) {
    if (q == 2) return {1, 0};
    return {t.lambda(q), 1};
  }
  if (i == 2) {
    if (q == 1) return {1, 0};
    return {1, t.lambda(q)};
  }
  if (q == 1) return {t.lambda(i), 1};
  if (q == 2) return {-1, 0};
  return {t.lambda(i) - t.lambda(q), 1};
}

}  // namespace

MatrixModule build_tube_module(const CanonicalType& t, const TubeClass& c) {
  const int i = c.arm();
  const int m = t.arm_length(i);
  const int j1 = c.socle(), j2 = c.top();
  MatrixModule mod = zero_maps_module(t, tube_dim_vector(t, c));

  // Local basis index of factor k at vertex v.
  std::map<std::pair<int, int>, int> slot;
  std::vector<int> used(t.vertex_count(), 0);
  auto place = [&](int k, int v) { slot[{k, v}] = used[v]++; };
  for (int k = j1; k <= j2; ++k) {
    const int r = mod_floor(k, m);
    if (r != 0) {
      place(k, t.vertex_index(i, r));
      continue;
    }
    place(k, CanonicalType::kZero);
    place(k, CanonicalType::kInfinity);
    for (int q = 1; q <= t.arms(); ++q)
      if (q != i)
        for (int j = 1; j < t.arm_length(q); ++j) place(k, t.vertex_index(q, j));
  }
  auto idx = [&](int k, int v) {
    auto it = slot.find({k, v});
    return it == slot.end() ? -1 : it->second;
  };

  const auto& arrows = t.arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const Arrow& al = arrows[a];
    RationalMatrix& mat = mod.maps[a];
    if (al.arm == i) {
      // Factor k at the source goes to factor k - 1 at the target.
      for (int k = j1 + 1; k <= j2; ++k) {
        const int s = idx(k, al.source), tt = idx(k - 1, al.target);
        if (s >= 0 && tt >= 0) mat(tt, s) = 1;
      }
      continue;
    }
    const auto [coef, shift] = tube_arm_coefficients(t, i, al.arm);
    for (int k = j1; k <= j2; ++k) {
      const int s = idx(k, al.source);
      if (s < 0) continue;
      if (al.pos != 1) {
        mat(idx(k, al.target), s) = 1;
        continue;
      }
      mat(idx(k, al.target), s) = coef;
      const int below = idx(k - m, al.target);
      if (below >= 0 && shift != 0) mat(below, s) = shift;
    }
  }
  return mod;
}

MatrixModule build_homogeneous(const CanonicalType& t, const Rational& mu) {
  if (mu == 0) throw PreconditionError("mu = 0 is the parameter of the first exceptional tube");
  for (int q = 3; q <= t.arms(); ++q)
    if (mu == t.lambda(q))
      throw PreconditionError("mu coincides with the parameter of tube " + std::to_string(q));
  MatrixModule mod = zero_maps_module(t, h_vector(t));
  const auto& arrows = t.arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const Arrow& al = arrows[a];
    Rational v = 1;
    if (al.pos == 1) {
      if (al.arm == 1) v = mu;
      else if (al.arm == 2) v = -1;
      else v = mu - t.lambda(al.arm);
    }
    mod.maps[a](0, 0) = v;
  }
  return mod;
}

MatrixModule direct_sum(const CanonicalType& t, const std::vector<MatrixModule>& parts) {
  DimVector dims = zero_vector(t);
  for (const auto& p : parts) {
    if (!(p.type == t)) throw InvalidInput("direct sum of modules over different algebras");
    dims += p.dims;
  }
  MatrixModule out = zero_maps_module(t, dims);
  std::vector<std::int64_t> off(t.vertex_count(), 0);
  for (const auto& p : parts) {
    const auto& arrows = t.arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      const auto& src = p.maps[a];
      const int r0 = static_cast<int>(off[arrows[a].target]);
      const int c0 = static_cast<int>(off[arrows[a].source]);
      for (int r = 0; r < src.rows(); ++r)
        for (int c = 0; c < src.cols(); ++c) out.maps[a](r0 + r, c0 + c) = src(r, c);
    }
    for (int x = 0; x < t.vertex_count(); ++x) off[x] += p.dims[x];
  }
  return out;
}

MatrixModule build_regular(const CanonicalType& t, const RegularPart& x) {
  std::vector<MatrixModule> parts;
  for (const auto& c : x.members()) parts.push_back(build_tube_module(t, c));
  return direct_sum(t, parts);
}

int hom_space_dim(const MatrixModule& m, const MatrixModule& n) {
  if (!(m.type == n.type)) throw InvalidInput("hom between modules over different algebras");
  return hom_dimension(quiver_of(m.type), m.rep(), n.rep());
}

std::int64_t orbit_dim(const MatrixModule& m) {
  std::int64_t gl = 0;
  for (auto x : m.dims.entries()) gl += x * x;
  return gl - hom_space_dim(m, m);
}

RationalMatrix arm_composite(const MatrixModule& m, int arm) {
  const CanonicalType& t = m.type;
  const int len = t.arm_length(arm);
  RationalMatrix acc =
      RationalMatrix::identity(static_cast<int>(m.dims[CanonicalType::kInfinity]));
  // alpha_{arm,len} acts first.
  for (int j = len; j >= 1; --j) {
    for (std::size_t a = 0; a < t.arrows().size(); ++a) {
      const Arrow& al = t.arrows()[a];
      if (al.arm == arm && al.pos == j) {
        acc = m.maps[a] * acc;
        break;
      }
    }
  }
  return acc;
}

ResidualReport validate_module(const MatrixModule& m) {
  const CanonicalType& t = m.type;
  ResidualReport rep;
  if (t.arms() < 3) return rep;
  const RationalMatrix a1 = arm_composite(m, 1), a2 = arm_composite(m, 2);
  for (int q = 3; q <= t.arms(); ++q) {
    RationalMatrix r = a1 + a2.scaled(t.lambda(q)) + arm_composite(m, q).scaled(-1);
    if (!r.is_zero()) rep.valid = false;
    rep.residuals.push_back(std::move(r));
  }
  return rep;
}

MembershipCertificate z_membership(const MatrixModule& m) {
  const CanonicalType& t = m.type;
  if (!in_R(t, m.dims)) throw PreconditionError("module dimension vector is not regular");
  const auto cd = canonical_decomposition(t, m.dims);
  if (cd.p <= 0) throw PreconditionError("zero set description needs p^d > 0");

  MembershipCertificate cert;
  const auto adm = admissible_intervals(t, m.dims);
  for (const auto& arm : adm.per_arm)
    for (const auto& iv : arm) {
      const auto probe = build_tube_module(t, TubeClass(t, iv.arm, iv.j1 + 1, iv.j2));
      if (hom_space_dim(probe, m) == 0) cert.failing_intervals.push_back(iv);
    }

  // Hom(R_mu, M) is cut out by a system affine in mu; its generic rank is attained at one
  // of any D + 1 distinct admissible samples, D bounding the degree of its minors.
  const QuiverShape q = quiver_of(t);
  const Representation target = m.rep();
  int unknowns = 0;
  hom_system(q, build_homogeneous(t, Rational(-1)).rep(), target, &unknowns);
  int generic_rank = 0;
  int tried = 0;
  std::vector<Rational> avoid{0};
  for (int k = 3; k <= t.arms(); ++k) avoid.push_back(t.lambda(k));
  int bound = unknowns;
  for (long long s = -1; tried <= bound; --s) {
    const Rational mu(static_cast<long>(s));
    if (std::find(avoid.begin(), avoid.end(), mu) != avoid.end()) continue;
    ++tried;
    int cols = 0;
    const auto rows = hom_system(q, build_homogeneous(t, mu).rep(), target, &cols);
    bound = std::min<int>(cols, static_cast<int>(rows.size()));
    generic_rank = std::max(generic_rank, rank_of(cols, rows));
    if (generic_rank == unknowns) break;
  }
  cert.samples_used = tried;
  cert.generic_hom_nonzero = generic_rank < unknowns;
  cert.member = cert.generic_hom_nonzero && cert.failing_intervals.empty();
  return cert;
}

}  // namespace cantube
