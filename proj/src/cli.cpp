// Copyright 2026 The prodstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "prodstate/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodstate/criterion.hpp"
#include "prodstate/error.hpp"
#include "prodstate/measurement.hpp"
#include "prodstate/op_schmidt.hpp"
#include "prodstate/oracle.hpp"
#include "prodstate/schmidt.hpp"
#include "prodstate/state_io.hpp"

namespace prodstate::cli {

namespace {

using json = nlohmann::ordered_json;

// 12 significant digits everywhere so reports double as golden files.
std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rounded(double x) { return std::strtod(fmt(x).c_str(), nullptr); }

double cleaned(double x) { return std::abs(x) < 1e-14 ? 0.0 : rounded(x); }

std::string fmt_complex(Complex z) {
  const double re = cleaned(z.real());
  const double im = cleaned(z.imag());
  return fmt(re) + (std::signbit(im) ? "-" : "+") + fmt(std::abs(im)) + "i";
}

class Report {
 public:
  void scalar(std::string key, double v) { add(std::move(key), Kind::kScalar, rounded(v)); }
  void integer(std::string key, long v) { add(std::move(key), Kind::kScalar, v); }
  void text(std::string key, std::string v) { add(std::move(key), Kind::kScalar, std::move(v)); }
  void reals(std::string key, const std::vector<double>& vs) {
    json a = json::array();
    for (double v : vs) a.push_back(rounded(v));
    add(std::move(key), Kind::kList, std::move(a));
  }
  void integers(std::string key, const std::vector<long>& vs) { add(std::move(key), Kind::kList, vs); }
  void vector(std::string key, const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({cleaned(v(i).real()), cleaned(v(i).imag())});
    add(std::move(key), Kind::kComplexVector, std::move(a));
  }
  void matrix(std::string key, const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({cleaned(m(r, c).real()), cleaned(m(r, c).imag())});
      rows.push_back(std::move(row));
    }
    add(std::move(key), Kind::kComplexMatrix, std::move(rows));
  }

  void write(std::ostream& os, bool as_json) const {
    if (as_json) {
      json doc = json::object();
      for (const auto& e : entries_) doc[e.key] = e.value;
      os << doc.dump(2) << "\n";
      return;
    }
    for (const auto& e : entries_) os << e.key << ": " << render(e) << "\n";
  }

 private:
  enum class Kind { kScalar, kList, kComplexVector, kComplexMatrix };
  struct Entry {
    std::string key;
    Kind kind;
    json value;
  };

  void add(std::string key, Kind kind, json value) { entries_.push_back({std::move(key), kind, std::move(value)}); }

  static std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt(v.get<double>());
    return v.dump();
  }

  static std::string render(const Entry& e) {
    std::string out;
    auto join = [&](const std::string& piece) {
      if (!out.empty()) out += ' ';
      out += piece;
    };
    switch (e.kind) {
      case Kind::kScalar:
        return scalar_text(e.value);
      case Kind::kList:
        for (const auto& v : e.value) join(scalar_text(v));
        return out;
      case Kind::kComplexVector:
        for (const auto& p : e.value) join(fmt_complex({p[0].get<double>(), p[1].get<double>()}));
        return out;
      case Kind::kComplexMatrix:
        for (std::size_t r = 0; r < e.value.size(); ++r) {
          if (r) out += " ;";
          for (const auto& p : e.value[r]) join(fmt_complex({p[0].get<double>(), p[1].get<double>()}));
        }
        return out;
    }
    return out;
  }

  std::vector<Entry> entries_;
};

std::vector<long> dims_list(const Dims& dims) {
  return std::vector<long>(dims.factors().begin(), dims.factors().end());
}

void describe_projectors(Report& r, const std::string& prefix, const std::vector<Projector>& ps) {
  for (const auto& p : ps) {
    const std::string key = prefix + "." + std::to_string(p.factor() + 1);
    if (p.is_identity()) {
      r.text(key, "identity");
    } else if (p.rank() == 1) {
      r.vector(key, p.range().col(0));
    } else {
      r.matrix(key, p.range().transpose());  // one row per spanning vector
    }
  }
}

MixedState as_mixed(const AnyState& s) {
  if (const auto* phi = std::get_if<PureState>(&s)) return MixedState::from_pure(*phi);
  return std::get<MixedState>(s);
}

const Dims& dims_of(const AnyState& s) {
  return std::visit([](const auto& st) -> const Dims& { return st.dims(); }, s);
}

void header(Report& r, const AnyState& s) {
  r.text("kind", std::holds_alternative<PureState>(s) ? "pure" : "mixed");
  r.integers("dims", dims_list(dims_of(s)));
}

struct Options {
  std::string file;
  std::string observables;
  std::string format = "text";
  int cut = 1;
  double tol = -1.0;  // negative: command default
  long probes = 1000;
  long count = 1000;
  std::uint64_t seed = 0;
  bool hermitian = false;
  bool no_grid = false;
  bool raw = false;
};

double tol_or(const Options& o, double fallback) { return o.tol >= 0.0 ? o.tol : fallback; }

int cmd_schmidt(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const auto* phi = std::get_if<PureState>(&s);
  if (!phi) throw ValidationError("kind", 0.0, "schmidt needs a pure state (use opschmidt for mixed states)");
  const auto sd = schmidt_decompose(*phi, BipartiteSplit::checked(o.cut, phi->dims()), tol_or(o, kRankTol));
  header(r, s);
  r.integer("cut", o.cut);
  r.integer("rank", static_cast<long>(sd.rank()));
  r.reals("lambdas", sd.lambdas);
  for (std::size_t a = 0; a < sd.rank(); ++a) {
    r.vector("left." + std::to_string(a + 1), sd.left_vectors[a]);
    r.vector("right." + std::to_string(a + 1), sd.right_vectors[a]);
  }
  return kOk;
}

int cmd_opschmidt(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const MixedState rho = as_mixed(s);
  const auto osd = operator_schmidt_decompose(rho.matrix(), rho.dims(), BipartiteSplit::checked(o.cut, rho.dims()),
                                              tol_or(o, kRankTol), o.hermitian);
  header(r, s);
  r.integer("cut", o.cut);
  r.text("hermitian", o.hermitian ? "true" : "false");
  r.integer("rank", static_cast<long>(osd.rank()));
  r.reals("coefficients", osd.coefficients);
  for (std::size_t i = 0; i < osd.rank(); ++i) {
    r.matrix("left." + std::to_string(i + 1), osd.left_ops[i]);
    r.matrix("right." + std::to_string(i + 1), osd.right_ops[i]);
  }
  return kOk;
}

int cmd_check(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const double tol = tol_or(o, kDecisionTol);
  const bool pure = std::holds_alternative<PureState>(s);
  const ProductVerdict v =
      pure ? check_pure_product(std::get<PureState>(s), tol) : check_mixed_product(std::get<MixedState>(s), tol);
  header(r, s);
  r.scalar("tol", tol);
  r.text("verdict", v.is_product ? "product" : "entangled");
  if (v.is_product) {
    r.scalar("residual", v.residual);
    for (std::size_t f = 0; f < v.pure_factors.size(); ++f) r.vector("factor." + std::to_string(f + 1), v.pure_factors[f]);
    for (std::size_t f = 0; f < v.mixed_factors.size(); ++f)
      r.matrix("factor." + std::to_string(f + 1), v.mixed_factors[f]);
    return kOk;
  }
  r.integer("failed_cut", v.failed_cut);
  r.reals(pure ? "lambdas" : "coefficients", v.cut_spectrum);
  r.scalar("violation", v.cut_violation);
  if (v.witness) {
    r.scalar("witness_violation", v.witness->max_violation);
    r.integer("witness_candidates", v.witness->probes_evaluated);
    describe_projectors(r, "witness", v.witness->witness);
  }
  return kEntangled;
}

int cmd_probe(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  ProbeOptions opts;
  opts.n_probes = o.probes;
  opts.seed = o.seed;
  opts.include_grid = !o.no_grid;
  opts.grid_cap = default_grid_cap();
  const ViolationReport rep = std::visit([&](const auto& st) { return probe_condition(st, opts); }, s);
  header(r, s);
  r.integer("seed", static_cast<long>(rep.seed));
  r.integer("probes_evaluated", rep.probes_evaluated);
  r.scalar("max_violation", rep.max_violation);
  describe_projectors(r, "witness", rep.witness);
  return kOk;
}

std::string subset_key(const std::vector<std::size_t>& subset) {
  std::string key = "subset[";
  for (std::size_t i = 0; i < subset.size(); ++i) key += (i ? "," : "") + std::to_string(subset[i] + 1);
  return key + "]";
}

int cmd_subsets(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const MixedState rho = as_mixed(s);
  if (rho.dims().size() < 2) throw DimensionError("subsets needs at least two factors");
  header(r, s);
  r.integer("seed", static_cast<long>(o.seed));
  for (const auto& sv : check_weakened_condition(rho, o.probes, o.seed, default_grid_cap()))
    r.scalar(subset_key(sv.subset), sv.max_violation);
  return kOk;
}

std::vector<Observable> observables_for(const Options& o, const Dims& dims) {
  if (!o.observables.empty()) return load_observables(o.observables, dims);
  // Default: computational-basis readout diag(0, 1, ..., d-1).
  std::vector<Observable> obs;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    Matrix m = Matrix::Zero(dims[f], dims[f]);
    for (int a = 0; a < dims[f]; ++a) m(a, a) = static_cast<double>(a);
    obs.push_back(Observable{f, m});
  }
  return obs;
}

int cmd_independence(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const MixedState rho = as_mixed(s);
  const auto obs = observables_for(o, rho.dims());
  const JointDistribution jd = joint_distribution(rho, obs);
  header(r, s);
  for (std::size_t f = 0; f < jd.factors(); ++f) {
    r.reals("outcomes." + std::to_string(f + 1), jd.outcomes[f]);
    r.reals("marginal." + std::to_string(f + 1), jd.marginal(f));
  }
  r.reals("table", jd.table);
  r.scalar("independence_violation", independence_violation(jd));
  return kOk;
}

int cmd_sample(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const MixedState rho = as_mixed(s);
  const auto obs = observables_for(o, rho.dims());
  const auto samples = sample_outcomes(rho, obs, o.count, o.seed);
  header(r, s);
  r.integer("seed", static_cast<long>(o.seed));
  r.integer("samples", static_cast<long>(samples.size()));
  std::map<std::vector<double>, long> counts;
  for (const auto& t : samples) ++counts[t];
  for (const auto& [tuple, c] : counts) {
    std::string key = "count[";
    for (std::size_t i = 0; i < tuple.size(); ++i) key += (i ? "," : "") + fmt(tuple[i]);
    r.integer(key + "]", c);
  }
  if (o.raw)
    for (std::size_t k = 0; k < samples.size(); ++k) r.reals("sample." + std::to_string(k + 1), samples[k]);
  return kOk;
}

int cmd_oracle(const Options& o, Report& r) {
  const AnyState s = load_state(o.file);
  const double tol = tol_or(o, kDecisionTol);
  header(r, s);
  bool criterion_product = false;
  bool oracle_product = false;
  if (const auto* phi = std::get_if<PureState>(&s)) {
    criterion_product = check_pure_product(*phi, tol).is_product;
    const auto res = oracle_pure_product(*phi, tol);
    oracle_product = res.is_product;
    r.scalar("oracle_overlap", res.overlap);
  } else {
    const auto& rho = std::get<MixedState>(s);
    criterion_product = check_mixed_product(rho, tol).is_product;
    const auto res = oracle_mixed_product(rho, tol);
    oracle_product = res.is_product;
    r.scalar("oracle_distance", res.distance);
  }
  r.text("criterion_verdict", criterion_product ? "product" : "entangled");
  r.text("oracle_verdict", oracle_product ? "product" : "entangled");
  try {
    const ViolationReport grid =
        std::visit([](const auto& st) { return oracle_condition_grid(st, default_grid_cap()); }, s);
    r.scalar("grid_max_violation", grid.max_violation);
    r.integer("grid_tuples", grid.probes_evaluated);
  } catch (const DimensionError&) {
    r.text("grid_max_violation", "skipped (cap exceeded)");
  }
  const bool agree = criterion_product == oracle_product;
  r.text("agree", agree ? "true" : "false");
  return agree ? kOk : kNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-state decisions for finite-dimensional tensor-product states", "prodstate"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "State file (JSON)")->required();
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", o.tol, "Tolerance")->check(CLI::NonNegativeNumber); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed"); };

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition of a pure state");
  add_common(schmidt);
  add_tol(schmidt);
  schmidt->add_option("--cut", o.cut, "Number of leading factors on the left");

  auto* opschmidt = app.add_subcommand("opschmidt", "Operator Schmidt decomposition");
  add_common(opschmidt);
  add_tol(opschmidt);
  opschmidt->add_option("--cut", o.cut, "Number of leading factors on the left");
  opschmidt->add_flag("--hermitian", o.hermitian, "Use Hermitian operator pairs");

  auto* check = app.add_subcommand("check", "Decide whether the state is a product state");
  add_common(check);
  add_tol(check);

  auto* probe = app.add_subcommand("probe", "Randomized search for condition violations");
  add_common(probe);
  add_seed(probe);
  probe->add_option("--probes", o.probes, "Number of random probes")->check(CLI::NonNegativeNumber);
  probe->add_flag("--no-grid", o.no_grid, "Skip the exhaustive basis grid");

  auto* subsets = app.add_subcommand("subsets", "Subset-restricted condition for mixed states");
  add_common(subsets);
  add_seed(subsets);
  subsets->add_option("--probes", o.probes, "Random probes per subset")->check(CLI::NonNegativeNumber);

  auto* independence = app.add_subcommand("independence", "Joint outcome distribution and its dependence");
  add_common(independence);
  independence->add_option("--observables", o.observables, "Observables file (default: diag(0..d-1))");

  auto* sample = app.add_subcommand("sample", "Sample joint measurement outcomes");
  add_common(sample);
  add_seed(sample);
  sample->add_option("--observables", o.observables, "Observables file (default: diag(0..d-1))");
  sample->add_option("--count", o.count, "Number of samples")->check(CLI::NonNegativeNumber);
  sample->add_flag("--raw", o.raw, "Also print every sample");

  auto* oracle = app.add_subcommand("oracle", "Compare criterion verdicts with brute-force oracles");
  add_common(oracle);
  add_tol(oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  Report report;
  int code = kOk;
  try {
    if (schmidt->parsed()) code = cmd_schmidt(o, report);
    else if (opschmidt->parsed()) code = cmd_opschmidt(o, report);
    else if (check->parsed()) code = cmd_check(o, report);
    else if (probe->parsed()) code = cmd_probe(o, report);
    else if (subsets->parsed()) code = cmd_subsets(o, report);
    else if (independence->parsed()) code = cmd_independence(o, report);
    else if (sample->parsed()) code = cmd_sample(o, report);
    else if (oracle->parsed()) code = cmd_oracle(o, report);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.invariant() << ": " << e.what() << "\n";
    return kValidation;
  } catch (const DimensionError& e) {
    err << "validation error: dimensions: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  report.write(out, o.format == "json");
  return code;
}

}  // namespace prodstate::cli
