#include "cantube/io.hpp"

#include <cctype>

namespace cantube {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& raw) {
  const auto s = trim(raw);
  if (s.empty()) throw InvalidInput("expected an integer, got an empty field");
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("not an integer: '" + s + "'");
  return v;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  if (trim(s).empty()) return out;
  for (const auto& f : split(s, ',')) out.push_back(parse_int(f));
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

Json vec_json(const CanonicalType& t, const DimVector& d) { return format_dim_vector(t, d); }

DimVector vec_from(const CanonicalType& t, const Json& j) {
  if (!j.is_string()) throw InvalidInput("dimension vectors are serialized as strings");
  return parse_dim_vector(t, j.get<std::string>());
}

template <class T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<std::int64_t> opt_int(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::int64_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

CanonicalType parse_type(const std::string& arms, const std::string& lambdas) {
  std::vector<int> m;
  for (auto v : parse_ints(arms)) {
    if (v < 1 || v > 1000) throw InvalidInput("arm length out of range: " + std::to_string(v));
    m.push_back(static_cast<int>(v));
  }
  std::vector<Rational> l;
  if (!trim(lambdas).empty())
    for (const auto& f : split(lambdas, ',')) l.push_back(parse_rational(f));
  return CanonicalType(std::move(m), std::move(l));
}

DimVector parse_dim_vector(const CanonicalType& t, const std::string& text) {
  const auto blocks = split(text, ';');
  if (static_cast<int>(blocks.size()) != t.arms() + 1)
    throw InvalidInput("expected " + std::to_string(t.arms() + 1) +
                       " ';'-separated blocks in '" + text + "'");
  DimVector d(t.vertex_count());
  const auto ends = parse_ints(blocks[0]);
  if (ends.size() != 2) throw InvalidInput("the first block must be 'd0,dinf'");
  d[CanonicalType::kZero] = ends[0];
  d[CanonicalType::kInfinity] = ends[1];
  for (int i = 1; i <= t.arms(); ++i) {
    const auto arm = parse_ints(blocks[i]);
    if (static_cast<int>(arm.size()) != t.arm_length(i) - 1)
      throw InvalidInput("arm " + std::to_string(i) + " needs " +
                         std::to_string(t.arm_length(i) - 1) + " entries");
    for (int j = 1; j < t.arm_length(i); ++j) d[t.vertex_index(i, j)] = arm[j - 1];
  }
  require_nonnegative(d, "dimension vector");
  return d;
}

std::string format_dim_vector(const CanonicalType& t, const DimVector& d) {
  require_same_size(t, d);
  std::string s = std::to_string(d[CanonicalType::kZero]) + "," +
                  std::to_string(d[CanonicalType::kInfinity]);
  for (int i = 1; i <= t.arms(); ++i) {
    std::vector<std::int64_t> arm;
    for (int j = 1; j < t.arm_length(i); ++j) arm.push_back(d[t.vertex_index(i, j)]);
    s += ";" + join(arm);
  }
  return s;
}

RegularPart parse_regular_part(const CanonicalType& t, const std::string& text) {
  const auto s = trim(text);
  RegularPart x;
  if (s.empty() || s == "0") return x;
  for (const auto& raw : split(s, '+')) {
    const auto term = trim(raw);
    const auto open = term.find('['), close = term.find(']');
    if (term.size() < 2 || term[0] != 'R' || open == std::string::npos || close != term.size() - 1)
      throw InvalidInput("tube class must look like R<arm>[j1,j2]: '" + term + "'");
    const auto arm = parse_int(term.substr(1, open - 1));
    const auto ends = parse_ints(term.substr(open + 1, close - open - 1));
    if (ends.size() != 2 || ends[0] > ends[1])
      throw InvalidInput("tube class needs j1 <= j2: '" + term + "'");
    if (arm < 1 || arm > t.arms()) throw InvalidInput("arm index out of range: '" + term + "'");
    x.add(TubeClass(t, static_cast<int>(arm), static_cast<int>(ends[0]), static_cast<int>(ends[1])));
  }
  return x;
}

Rational parse_rational(const std::string& raw) {
  const auto s = trim(raw);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  const auto num = parse_int(s.substr(0, slash)), den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
  Rational r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

std::string format_index(const CanonicalType& t, const StratumIndex& s) {
  return "(" + format_dim_vector(t, s.dP) + " | " + format_dim_vector(t, s.dQ) + " | " +
         s.X.str() + " | q=" + std::to_string(s.q) + ")";
}

Json to_json(const CanonicalType& t) {
  Json lam = Json::array();
  for (const auto& l : t.lambdas()) lam.push_back(format_rational(l));
  return {{"m", t.arm_lengths()}, {"lambda", lam}};
}

CanonicalType type_from_json(const Json& j) {
  return guarded([&] {
    std::vector<Rational> lam;
    if (j.contains("lambda"))
      for (const auto& l : j.at("lambda"))
        lam.push_back(l.is_string() ? parse_rational(l.get<std::string>())
                                    : Rational(l.get<std::int64_t>()));
    return CanonicalType(field(j, "m").get<std::vector<int>>(), lam);
  });
}

Json to_json(const CanonicalType& t, const StratumIndex& s) {
  return {{"dP", vec_json(t, s.dP)}, {"dQ", vec_json(t, s.dQ)}, {"X", s.X.str()}, {"q", s.q}};
}

StratumIndex index_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    return StratumIndex{vec_from(t, field(j, "dP")), vec_from(t, field(j, "dQ")),
                        parse_regular_part(t, field(j, "X").get<std::string>()),
                        field(j, "q").get<std::int64_t>()};
  });
}

Json to_json(const CanonicalType& t, const StratumReport& r) {
  return {{"index", to_json(t, r.index)}, {"dim", r.dim},         {"quantity", r.quantity},
          {"in_c", r.in_c},               {"in_c_prime", r.in_c_prime}, {"in_c2", r.in_c2},
          {"in_c3", r.in_c3}};
}

StratumReport report_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    StratumReport r;
    r.index = index_from_json(t, field(j, "index"));
    r.dim = field(j, "dim").get<std::int64_t>();
    r.quantity = field(j, "quantity").get<std::int64_t>();
    r.in_c = field(j, "in_c").get<bool>();
    r.in_c_prime = field(j, "in_c_prime").get<bool>();
    r.in_c2 = field(j, "in_c2").get<bool>();
    r.in_c3 = field(j, "in_c3").get<bool>();
    return r;
  });
}

Json to_json(const CanonicalType& t, const ZDimension& z) {
  return {{"empty", z.empty},
          {"dim", z.dim},
          {"codim", z.codim},
          {"witness", z.witness ? to_json(t, *z.witness) : Json(nullptr)}};
}

ZDimension zdim_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    ZDimension z;
    z.empty = field(j, "empty").get<bool>();
    z.dim = field(j, "dim").get<std::int64_t>();
    z.codim = field(j, "codim").get<std::int64_t>();
    if (j.contains("witness") && !j.at("witness").is_null())
      z.witness = index_from_json(t, j.at("witness"));
    return z;
  });
}

Json to_json(const CanonicalType& t, const CiVerdict& v) {
  return {{"s", v.s},
          {"codim", opt_json(v.codim)},
          {"min_quantity", opt_json(v.min_quantity)},
          {"witness", v.witness ? to_json(t, *v.witness) : Json(nullptr)},
          {"verdict", v.verdict},
          {"anomaly", v.anomaly},
          {"vacuous", v.vacuous}};
}

CiVerdict verdict_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    CiVerdict v;
    v.s = field(j, "s").get<std::int64_t>();
    v.codim = opt_int(j, "codim");
    v.min_quantity = opt_int(j, "min_quantity");
    if (j.contains("witness") && !j.at("witness").is_null())
      v.witness = index_from_json(t, j.at("witness"));
    v.verdict = field(j, "verdict").get<bool>();
    v.anomaly = field(j, "anomaly").get<bool>();
    v.vacuous = field(j, "vacuous").get<bool>();
    return v;
  });
}

namespace {

const char* kind_name(ReductionStep::Kind k) {
  switch (k) {
    case ReductionStep::Kind::Q: return "reduce_q";
    case ReductionStep::Kind::Swap: return "swap";
    case ReductionStep::Kind::X: return "reduce_X";
  }
  return "";
}

ReductionStep::Kind kind_from(const std::string& s) {
  if (s == "reduce_q") return ReductionStep::Kind::Q;
  if (s == "swap") return ReductionStep::Kind::Swap;
  if (s == "reduce_X") return ReductionStep::Kind::X;
  throw InvalidInput("unknown reduction step '" + s + "'");
}

}  // namespace

Json to_json(const CanonicalType& t, const ReductionTrace& tr) {
  Json steps = Json::array();
  for (const auto& s : tr.steps)
    steps.push_back(
        {{"kind", kind_name(s.kind)}, {"result", to_json(t, s.result)}, {"quantity", s.quantity}});
  return {{"start", to_json(t, tr.start)}, {"start_quantity", tr.start_quantity}, {"steps", steps}};
}

ReductionTrace trace_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    ReductionTrace tr;
    tr.start = index_from_json(t, field(j, "start"));
    tr.start_quantity = field(j, "start_quantity").get<std::int64_t>();
    for (const auto& s : field(j, "steps"))
      tr.steps.push_back({kind_from(field(s, "kind").get<std::string>()),
                          index_from_json(t, field(s, "result")),
                          field(s, "quantity").get<std::int64_t>()});
    return tr;
  });
}

Json to_json(const CanonicalType& t, const SweepRow& r) {
  return {{"d", vec_json(t, r.d)},        {"p", r.p},
          {"ad", r.ad},                   {"s", r.s},
          {"codim", opt_json(r.codim)},   {"level_min", opt_json(r.level_min)},
          {"verdict", r.verdict},         {"anomaly", r.anomaly}};
}

SweepRow row_from_json(const CanonicalType& t, const Json& j) {
  return guarded([&] {
    SweepRow r;
    r.d = vec_from(t, field(j, "d"));
    r.p = field(j, "p").get<std::int64_t>();
    r.ad = field(j, "ad").get<int>();
    r.s = field(j, "s").get<std::int64_t>();
    r.codim = opt_int(j, "codim");
    r.level_min = opt_int(j, "level_min");
    r.verdict = field(j, "verdict").get<bool>();
    r.anomaly = field(j, "anomaly").get<bool>();
    return r;
  });
}

Json to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"checked", c.checked},
          {"violations", c.violations},
          {"samples", c.samples},
          {"passed", c.passed()}};
}

CheckResult check_from_json(const Json& j) {
  return guarded([&] {
    CheckResult c;
    c.name = field(j, "name").get<std::string>();
    c.checked = field(j, "checked").get<std::int64_t>();
    c.violations = field(j, "violations").get<std::int64_t>();
    c.samples = field(j, "samples").get<std::vector<std::string>>();
    return c;
  });
}

Json module_to_json(const MatrixModule& m) {
  const auto& t = m.type;
  Json dims = Json::object();
  for (int v = 0; v < t.vertex_count(); ++v) dims[t.vertex_label(v)] = m.dims[v];
  Json mats = Json::object();
  const auto& arrows = t.arrows();
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& mat = m.maps[k];
    Json rows = Json::array();
    for (int r = 0; r < mat.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < mat.cols(); ++c) {
        const auto& x = mat(r, c);
        if (x.get_den() == 1 && x.get_num().fits_slong_p())
          row.push_back(x.get_num().get_si());
        else
          row.push_back(format_rational(x));
      }
      rows.push_back(row);
    }
    mats["a_" + std::to_string(arrows[k].arm) + "_" + std::to_string(arrows[k].pos)] = rows;
  }
  return {{"type", to_json(t)}, {"dims", dims}, {"matrices", mats}};
}

MatrixModule module_from_json(const Json& j) {
  return guarded([&] {
    const auto t = type_from_json(field(j, "type"));
    DimVector dims(t.vertex_count());
    const auto& jd = field(j, "dims");
    for (int v = 0; v < t.vertex_count(); ++v) {
      const auto label = t.vertex_label(v);
      if (!jd.contains(label)) throw InvalidInput("dims lacks vertex '" + label + "'");
      dims[v] = jd.at(label).get<std::int64_t>();
    }
    require_nonnegative(dims, "module dimensions");
    const auto& jm = field(j, "matrices");
    std::vector<RationalMatrix> maps;
    for (const auto& a : t.arrows()) {
      const auto name = "a_" + std::to_string(a.arm) + "_" + std::to_string(a.pos);
      const int rows = static_cast<int>(dims[a.target]), cols = static_cast<int>(dims[a.source]);
      RationalMatrix mat(rows, cols);
      if (!jm.contains(name)) {
        if (rows * cols != 0) throw InvalidInput("missing matrix " + name);
        maps.push_back(mat);
        continue;
      }
      const auto& jr = jm.at(name);
      if (static_cast<int>(jr.size()) != rows)
        throw InvalidInput(name + " must have " + std::to_string(rows) + " rows");
      for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(jr[r].size()) != cols)
          throw InvalidInput(name + " must have " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) {
          const auto& x = jr[r][c];
          mat(r, c) = x.is_string() ? parse_rational(x.get<std::string>())
                                    : Rational(x.get<std::int64_t>());
        }
      }
      maps.push_back(std::move(mat));
    }
    return MatrixModule{t, dims, std::move(maps)};
  });
}

std::string sweep_csv_header() { return "d,p,ad,s,codim,level_min,verdict,anomaly"; }

std::string to_csv(const CanonicalType& t, const SweepRow& r) {
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; };
  return "\"" + format_dim_vector(t, r.d) + "\"," + std::to_string(r.p) + "," +
         std::to_string(r.ad) + "," + std::to_string(r.s) + "," + opt(r.codim) + "," +
         opt(r.level_min) + "," + (r.verdict ? "true" : "false") + "," +
         (r.anomaly ? "true" : "false");
}

SweepRow row_from_csv(const CanonicalType& t, const std::string& line) {
  if (line.empty() || line[0] != '"') throw InvalidInput("CSV row must start with a quoted d");
  const auto close = line.find('"', 1);
  if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',')
    throw InvalidInput("unterminated d field in CSV row");
  SweepRow r;
  r.d = parse_dim_vector(t, line.substr(1, close - 1));
  const auto f = split(line.substr(close + 2), ',');
  if (f.size() != 7) throw InvalidInput("CSV row needs 8 fields");
  auto opt = [](const std::string& s) -> std::optional<std::int64_t> {
    if (trim(s).empty()) return std::nullopt;
    return parse_int(s);
  };
  auto flag = [](const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw InvalidInput("expected true/false, got '" + s + "'");
  };
  r.p = parse_int(f[0]);
  r.ad = static_cast<int>(parse_int(f[1]));
  r.s = parse_int(f[2]);
  r.codim = opt(f[3]);
  r.level_min = opt(f[4]);
  r.verdict = flag(trim(f[5]));
  r.anomaly = flag(trim(f[6]));
  return r;
}

}  // namespace cantube
