#include "cantube/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "cantube/campaigns.hpp"
#include "cantube/io.hpp"
#include "cantube/type_a.hpp"

namespace cantube {

namespace {

enum class Format { Text, Json, Csv };

struct Options {
  std::string type, lambda, format = "text";
  std::string d;
  std::string level = "cprime";
  bool assume_irreducible = false;
  // reduce
  std::string dp, dq, x;
  std::int64_t q = 0;
  // boxes
  int bound = -1, tube_bound = -1, pmin = -1, pmax = -1, threads = 0;
  // campaigns
  int summands = 2, periods = 2, type_a_max = 4, type_a_bound = 3;
  // hom
  std::string module, module2, hx, hy;
};

Level parse_level(const std::string& s) {
  if (s == "c") return Level::C;
  if (s == "cprime" || s == "c1") return Level::CPrime;
  if (s == "c2") return Level::C2;
  if (s == "c3") return Level::C3;
  throw CLI::ValidationError("--level", "expected c, cprime, c2 or c3");
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw CLI::ValidationError("--format", "expected text, json or csv");
}

std::string show(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

MatrixModule load_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open module file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("module file '" + path + "' is not valid JSON: " + e.what());
  }
  auto m = module_from_json(j);
  if (!validate_module(m).valid)
    throw InvalidInput("module file '" + path + "' violates the canonical relations");
  return m;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out), t_(parse_type(o.type, o.lambda)) {
    format_ = parse_format(o.format);
  }

  void require_no_csv(const char* verb) {
    if (format_ == Format::Csv)
      throw CLI::ValidationError("--format", std::string("csv is only available for sweep, not ") + verb);
  }

  DimVector d() const {
    if (o_.d.empty()) throw CLI::RequiredError("--d");
    return parse_dim_vector(t_, o_.d);
  }

  void emit(const Json& j, const std::string& text) {
    if (format_ == Format::Json)
      out_ << j.dump(2) << "\n";
    else
      out_ << text;
  }

  void classify_verb() {
    require_no_csv("classify");
    const auto v = d();
    const auto c = classify(t_, v);
    const auto delta = delta_invariant(t_);
    const auto thr = threshold_n(t_);
    Json j{{"type", to_json(t_)},
           {"d", format_dim_vector(t_, v)},
           {"in_P", c.in_P},
           {"in_R", c.in_R},
           {"in_Q", c.in_Q},
           {"defect", defect(t_, v)},
           {"a_dim", a_dim(t_, v)},
           {"delta", format_rational(delta)},
           {"tame", is_tame(t_)},
           {"threshold", thr ? Json(*thr) : Json(nullptr)}};
    if (c.in_R) j["p"] = homogeneous_multiplicity(t_, v);
    std::string s = "d = " + format_dim_vector(t_, v) + "\n";
    s += std::string("in P: ") + (c.in_P ? "yes" : "no") + ", in R: " + (c.in_R ? "yes" : "no") +
         ", in Q: " + (c.in_Q ? "yes" : "no") + "\n";
    s += "defect " + std::to_string(defect(t_, v)) + ", a(d) = " + std::to_string(a_dim(t_, v)) +
         "\n";
    if (c.in_R) s += "p^d = " + std::to_string(homogeneous_multiplicity(t_, v)) + "\n";
    s += "delta = " + format_rational(delta) + (is_tame(t_) ? " (tame)" : " (wild)");
    s += thr ? ", N = " + std::to_string(*thr) + "\n" : std::string("\n");
    emit(j, s);
  }

  void candecomp_verb() {
    require_no_csv("candecomp");
    const auto v = d();
    const auto c = canonical_decomposition(t_, v);
    Json j{{"d", format_dim_vector(t_, v)}, {"p", c.p}, {"table", c.table}};
    std::string s = "p = " + std::to_string(c.p) + "\n";
    for (int i = 1; i <= t_.arms(); ++i) {
      s += "arm " + std::to_string(i) + ":";
      for (auto x : c.table[i - 1]) s += " " + std::to_string(x);
      s += "\n";
    }
    emit(j, s);
  }

  void intervals_verb() {
    require_no_csv("intervals");
    const auto v = d();
    const auto a = admissible_intervals(t_, v);
    Json arms = Json::array();
    std::string s = "ad = " + std::to_string(a.ad) + "\n";
    for (int i = 1; i <= t_.arms(); ++i) {
      Json iv = Json::array(), inside = Json::array();
      s += "arm " + std::to_string(i) + ":";
      for (const auto& c : a.per_arm[i - 1]) {
        iv.push_back({c.j1, c.j2});
        s += " [" + std::to_string(c.j1) + "," + std::to_string(c.j2) + "]";
      }
      s += "  inside:";
      for (int j = 0; j < t_.arm_length(i); ++j) {
        const int k = inside_multiplicity(t_, v, i, j);
        inside.push_back(k);
        s += " " + std::to_string(k);
      }
      s += "\n";
      arms.push_back({{"arm", i}, {"intervals", iv}, {"inside", inside}});
    }
    emit({{"d", format_dim_vector(t_, v)}, {"ad", a.ad}, {"arms", arms}}, s);
  }

  void strata_verb() {
    require_no_csv("strata");
    const auto v = d();
    const auto level = parse_level(o_.level);
    const auto all = enumerate_strata(t_, v, level);
    Json list = Json::array();
    std::string s = std::to_string(all.size()) + " strata at level " + level_name(level) + "\n";
    for (const auto& r : all) {
      list.push_back(to_json(t_, r));
      s += format_index(t_, r.index) + "  dim " + std::to_string(r.dim) + "  quantity " +
           std::to_string(r.quantity) + "\n";
    }
    emit({{"d", format_dim_vector(t_, v)},
          {"level", level_name(level)},
          {"count", all.size()},
          {"strata", list}},
         s);
  }

  void zdim_verb() {
    require_no_csv("zdim");
    const auto v = d();
    const auto z = z_dimension(t_, v);
    std::string s;
    if (z.empty) {
      s = "Z(d) is empty\n";
    } else {
      s = "dim Z = " + std::to_string(z.dim) + ", codim = " + std::to_string(z.codim) + "\n";
      s += "witness " + format_index(t_, *z.witness) + "\n";
    }
    emit({{"d", format_dim_vector(t_, v)}, {"result", to_json(t_, z)}}, s);
  }

  void ci_verb() {
    require_no_csv("ci-check");
    const auto v = d();
    const auto r = ci_check(t_, v, o_.assume_irreducible);
    std::string s = std::string("verdict ") + (r.verdict ? "true" : "false") +
                    ", s = " + std::to_string(r.s) + ", codim = " + show(r.codim) + "\n";
    if (r.vacuous) s += "Z(d) is empty\n";
    if (r.anomaly) s += "anomaly: codim exceeds s\n";
    if (r.witness) s += "witness " + format_index(t_, *r.witness) + "\n";
    emit({{"d", format_dim_vector(t_, v)}, {"result", to_json(t_, r)}}, s);
  }

  void reduce_verb() {
    require_no_csv("reduce");
    const auto v = d();
    const StratumIndex start{o_.dp.empty() ? zero_vector(t_) : parse_dim_vector(t_, o_.dp),
                             o_.dq.empty() ? zero_vector(t_) : parse_dim_vector(t_, o_.dq),
                             parse_regular_part(t_, o_.x), o_.q};
    const auto tr = reduce_to_c3(t_, v, start);
    const auto m = inequality_report(t_, v, tr.final());
    std::string s = "start " + format_index(t_, tr.start) + "  quantity " +
                    std::to_string(tr.start_quantity) + "\n";
    for (const auto& st : tr.steps) {
      const char* k = st.kind == ReductionStep::Kind::Q      ? "reduce_q"
                      : st.kind == ReductionStep::Kind::Swap ? "swap"
                                                             : "reduce_X";
      s += std::string(k) + " -> " + format_index(t_, st.result) + "  quantity " +
           std::to_string(st.quantity) + "\n";
    }
    s += "ad split " + std::to_string(m.split.ad1) + "," + std::to_string(m.split.ad2) + "," +
         std::to_string(m.split.ad3) + "; margins " + std::to_string(m.m1) + "," +
         std::to_string(m.m2) + "," + std::to_string(m.m3) + "\n";
    Json margins{{"ad1", m.split.ad1}, {"ad2", m.split.ad2}, {"ad3", m.split.ad3},
                 {"m1", m.m1},         {"m2", m.m2},         {"m3", m.m3},
                 {"corollary", m.corollary}};
    emit({{"d", format_dim_vector(t_, v)}, {"trace", to_json(t_, tr)}, {"final_margins", margins}},
         s);
  }

  Box box(int default_pmin, int default_pmax) const {
    Box b;
    b.coord_bound = o_.bound;
    b.tube_bound = o_.tube_bound;
    b.pmin = o_.pmin >= 0 ? o_.pmin : default_pmin;
    b.pmax = o_.pmax >= 0 ? o_.pmax : std::max(b.pmin, default_pmax);
    if (b.coord_bound < 0 && b.tube_bound < 0) b.coord_bound = 3;
    return b;
  }

  void report_checks(const std::vector<CheckResult>& checks) {
    Json list = Json::array();
    std::int64_t bad = 0;
    std::string s;
    for (const auto& c : checks) {
      list.push_back(to_json(c));
      bad += c.violations;
      s += (c.passed() ? "ok   " : "FAIL ") + c.name + ": " + std::to_string(c.checked) +
           " checked, " + std::to_string(c.violations) + " violations\n";
      for (const auto& e : c.samples) s += "     " + e + "\n";
    }
    s += "total violations " + std::to_string(bad) + "\n";
    emit({{"type", to_json(t_)}, {"checks", list}, {"violations", bad}}, s);
  }

  void verify_lemmas_verb() {
    require_no_csv("verify-lemmas");
    const auto b = box(0, 3);
    auto vectors = regular_vectors(t_, b);
    std::vector<DimVector> positive;
    std::copy_if(vectors.begin(), vectors.end(), std::back_inserter(positive),
                 [&](const DimVector& v) { return homogeneous_multiplicity(t_, v) > 0; });
    std::vector<CheckResult> checks;
    checks.push_back(check_inside_bound(t_, vectors));
    checks.push_back(check_duality(t_, o_.summands, false));
    checks.push_back(check_membership(t_, o_.summands));
    checks.push_back(check_reductions(t_, positive));
    checks.push_back(check_margins(t_, positive, o_.threads));
    checks.push_back(check_margins_exhaustive(t_, positive));
    checks.push_back(check_level_minima(t_, positive, o_.threads));
    for (int m = 2; m <= o_.type_a_max; ++m) checks.push_back(check_type_a_bound(m, o_.type_a_bound));
    report_checks(checks);
  }

  void verify_oracle_verb() {
    require_no_csv("verify-oracle");
    report_checks({check_oracle(t_, o_.periods)});
  }

  void hom_verb() {
    require_no_csv("hom");
    if (!o_.module.empty()) {
      const auto m = load_module(o_.module);
      const auto n = o_.module2.empty() ? m : load_module(o_.module2);
      if (!(m.type == t_) || !(n.type == t_))
        throw InvalidInput("module files must be over the algebra given by --type/--lambda");
      const int h = hom_space_dim(m, n);
      Json j{{"hom", h}, {"dims_M", format_dim_vector(t_, m.dims)},
             {"dims_N", format_dim_vector(t_, n.dims)}};
      std::string s = "[M,N] = " + std::to_string(h) + "\n";
      if (o_.module2.empty()) {
        j["orbit_dim"] = orbit_dim(m);
        s += "orbit dim " + std::to_string(orbit_dim(m)) + "\n";
        if (in_R(t_, m.dims) && homogeneous_multiplicity(t_, m.dims) > 0) {
          const auto z = z_membership(m);
          j["z_member"] = z.member;
          s += std::string("in Z(d): ") + (z.member ? "yes" : "no") + "\n";
        }
      }
      emit(j, s);
      return;
    }
    if (o_.hx.empty() && o_.hy.empty()) throw CLI::RequiredError("--module or --x/--y");
    const auto x = parse_regular_part(t_, o_.hx), y = parse_regular_part(t_, o_.hy);
    const auto rule = hom_regular(t_, x, y);
    const int matrix = hom_space_dim(build_regular(t_, x), build_regular(t_, y));
    emit({{"X", x.str()}, {"Y", y.str()}, {"hom", rule}, {"hom_matrix", matrix}},
         "[X,Y] = " + std::to_string(rule) + " (matrix models: " + std::to_string(matrix) + ")\n");
  }

  void sweep_verb() {
    SweepConfig cfg;
    cfg.type = t_;
    cfg.box = box(t_.arms() - 1, t_.arms() - 1);
    cfg.level = parse_level(o_.level);
    cfg.threads = o_.threads;
    cfg.assume_irreducible = o_.assume_irreducible;
    const auto table = sweep(cfg);
    const auto summary = std::to_string(table.rows.size()) + " rows, " +
                         std::to_string(table.not_ci) + " not complete intersections, " +
                         std::to_string(table.counterexamples) + " counterexamples";
    if (format_ == Format::Csv) {
      out_ << sweep_csv_header() << "\n";
      for (const auto& r : table.rows) out_ << to_csv(t_, r) << "\n";
      out_ << "# " << summary << "\n";
      return;
    }
    Json rows = Json::array();
    std::string s;
    for (const auto& r : table.rows) {
      rows.push_back(to_json(t_, r));
      s += format_dim_vector(t_, r.d) + "  p " + std::to_string(r.p) + "  ad " +
           std::to_string(r.ad) + "  s " + std::to_string(r.s) + "  codim " + show(r.codim) +
           "  min " + show(r.level_min) + "  " + (r.verdict ? "true" : "false") +
           (r.anomaly ? " anomaly" : "") + "\n";
    }
    s += summary + "\n";
    emit({{"type", to_json(t_)},
          {"level", level_name(cfg.level)},
          {"rows", rows},
          {"count", table.rows.size()},
          {"not_ci", table.not_ci},
          {"counterexamples", table.counterexamples}},
         s);
  }

 private:
  const Options& o_;
  std::ostream& out_;
  CanonicalType t_;
  Format format_ = Format::Text;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Semi-invariant zero sets of canonical algebras"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--type", o.type, "arm lengths m1,m2,...")->required();
    sub->add_option("--lambda", o.lambda, "tube parameters l3,...,ln");
    sub->add_option("--format", o.format, "text, json or csv");
  };
  auto with_d = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--d", o.d, "dimension vector \"d0,dinf;arm1;...\"")->required();
  };
  auto with_box = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "bound on every coordinate");
    sub->add_option("--tube-bound", o.tube_bound, "bound on every p_{i,j}");
    sub->add_option("--pmin", o.pmin, "smallest p^d");
    sub->add_option("--pmax", o.pmax, "largest p^d");
    sub->add_option("--threads", o.threads, "worker threads");
  };

  auto* classify_cmd = app.add_subcommand("classify", "P/R/Q membership and invariants");
  with_d(classify_cmd);
  auto* candecomp_cmd = app.add_subcommand("candecomp", "canonical decomposition");
  with_d(candecomp_cmd);
  auto* intervals_cmd = app.add_subcommand("intervals", "admissible intervals");
  with_d(intervals_cmd);
  auto* strata_cmd = app.add_subcommand("strata", "list strata");
  with_d(strata_cmd);
  strata_cmd->add_option("--level", o.level, "c, cprime, c2 or c3");
  auto* zdim_cmd = app.add_subcommand("zdim", "dimension of the zero set");
  with_d(zdim_cmd);
  auto* ci_cmd = app.add_subcommand("ci-check", "complete intersection verdict");
  with_d(ci_cmd);
  ci_cmd->add_flag("--assume-irreducible", o.assume_irreducible, "allow wild types");
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a C' stratum to C'''");
  with_d(reduce_cmd);
  reduce_cmd->add_option("--dp", o.dp, "preprojective part");
  reduce_cmd->add_option("--dq", o.dq, "preinjective part");
  reduce_cmd->add_option("--x", o.x, "tube part, e.g. \"R1[0,1] + R2[1,1]\"");
  reduce_cmd->add_option("--q", o.q, "number of homogeneous summands");
  auto* lemmas_cmd = app.add_subcommand("verify-lemmas", "exhaustive lemma checks over a box");
  common(lemmas_cmd);
  with_box(lemmas_cmd);
  lemmas_cmd->add_option("--summands", o.summands, "summands in matrix-level checks");
  lemmas_cmd->add_option("--type-a-max", o.type_a_max, "largest m for the type A bound");
  lemmas_cmd->add_option("--type-a-bound", o.type_a_bound, "coordinate bound for type A");
  auto* oracle_cmd = app.add_subcommand("verify-oracle", "hom rule against matrix models");
  common(oracle_cmd);
  oracle_cmd->add_option("--periods", o.periods, "class lengths up to periods * m_i");
  auto* hom_cmd = app.add_subcommand("hom", "dimension of a Hom space");
  common(hom_cmd);
  hom_cmd->add_option("--module", o.module, "module file M");
  hom_cmd->add_option("--module2", o.module2, "module file N (default M)");
  hom_cmd->add_option("--x", o.hx, "tube part X");
  hom_cmd->add_option("--y", o.hy, "tube part Y");
  auto* sweep_cmd = app.add_subcommand("sweep", "complete intersection sweep over a box");
  common(sweep_cmd);
  with_box(sweep_cmd);
  sweep_cmd->add_option("--level", o.level, "level whose minimum quantity is reported");
  sweep_cmd->add_flag("--assume-irreducible", o.assume_irreducible, "allow wild types");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Runner r(o, out);
    if (classify_cmd->parsed()) r.classify_verb();
    else if (candecomp_cmd->parsed()) r.candecomp_verb();
    else if (intervals_cmd->parsed()) r.intervals_verb();
    else if (strata_cmd->parsed()) r.strata_verb();
    else if (zdim_cmd->parsed()) r.zdim_verb();
    else if (ci_cmd->parsed()) r.ci_verb();
    else if (reduce_cmd->parsed()) r.reduce_verb();
    else if (lemmas_cmd->parsed()) r.verify_lemmas_verb();
    else if (oracle_cmd->parsed()) r.verify_oracle_verb();
    else if (hom_cmd->parsed()) r.hom_verb();
    else if (sweep_cmd->parsed()) r.sweep_verb();
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  }
  return kOk;
}

}  // namespace cantube
