#include "cweig/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cweig/eigen.hpp"
#include "cweig/errors.hpp"
#include "cweig/oracle.hpp"
#include "cweig/specfun.hpp"
#include "cweig/verify.hpp"
#include "cweig/zeros.hpp"

namespace cweig {

namespace {

std::string csv_field(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

nlohmann::ordered_json json_value(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isfinite(*d)) return *d;
    return nullptr;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return nullptr;
}

nlohmann::ordered_json json_object(const std::vector<std::pair<std::string, Cell>>& fields) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields) obj[k] = json_value(v);
  return obj;
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct Common {
  std::string format = "csv";
  std::string output;
  double tol = 0.0;
};

void emit(const OutputRecord& record, const Common& common, std::ostream& out) {
  const std::string text = common.format == "json" ? to_json(record) : to_csv(record);
  if (common.output.empty())
    out << text;
  else
    write_atomically(common.output, text);
}

std::string echo(const std::vector<std::string>& argv) {
  std::string s = "cweig";
  for (std::size_t i = 1; i < argv.size(); ++i) s += " " + argv[i];
  return s;
}

void add_meta(OutputRecord& rec, const Common& common) {
  rec.meta.insert(rec.meta.begin(), {{"command", rec.command},
                                     {"version", std::string(kVersion)},
                                     {"tol", common.tol}});
}

}  // namespace

std::string to_csv(const OutputRecord& record) {
  std::string out;
  for (std::size_t i = 0; i < record.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(record.columns[i]);
  }
  out += '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const OutputRecord& record) {
  nlohmann::ordered_json doc;
  doc["params"] = json_object(record.params);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : record.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < record.columns.size() && i < row.size(); ++i)
      obj[record.columns[i]] = json_value(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["meta"] = json_object(record.meta);
  return doc.dump(2) + "\n";
}

double default_tolerance() {
  if (const char* env = std::getenv("CWEIG_TOL")) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && errno == 0 && v > 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultTol;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coulomb/Tricomi cross-product eigenvalues", "cweig"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common common;
  common.tol = default_tolerance();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", common.output, "Write to PATH (atomic) instead of stdout");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Bisection tolerance (default: CWEIG_TOL or 1e-12)")
        ->check(CLI::PositiveNumber);
  };

  double L = 0.0, eta = 0.0, alpha = 1.0;
  bool force = false;

  // eval
  std::string fn;
  double r = 0.0, a = 0.0, c = 0.0, x = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate F, Q or psi");
  eval->add_option("--fn", fn, "F | Q | psi")->required()->check(CLI::IsMember({"F", "Q", "psi"}));
  eval->add_option("--L", L, "Order L");
  eval->add_option("--eta", eta, "Coulomb parameter eta");
  eval->add_option("--alpha", alpha, "Exterior rate; Q is evaluated at alpha*r");
  auto* r_opt = eval->add_option("--r", r, "Radial argument (F, Q)");
  auto* a_opt = eval->add_option("--a", a, "psi parameter a");
  auto* c_opt = eval->add_option("--c", c, "psi parameter c");
  auto* x_opt = eval->add_option("--x", x, "psi argument x");
  add_common(eval);

  // zeros
  int count = 3;
  std::string sign = "positive";
  auto* zeros = app.add_subcommand("zeros", "Zeros of F_L(eta, .)");
  zeros->add_option("--L", L, "Order L");
  zeros->add_option("--eta", eta, "Coulomb parameter eta");
  zeros->add_option("--count", count, "Number of zeros")->check(CLI::Range(1, 10000));
  zeros->add_option("--sign", sign, "positive | negative")
      ->check(CLI::IsMember({"positive", "negative"}));
  add_common(zeros);

  // eigen
  std::string oracle = "none";
  auto* eig = app.add_subcommand("eigen", "Eigenvalues lambda_{L,eta,alpha,n}");
  eig->add_option("--L", L, "Order L");
  eig->add_option("--eta", eta, "Coulomb parameter eta");
  eig->add_option("--alpha", alpha, "Exterior rate alpha > 0");
  eig->add_option("--count", count, "Number of eigenvalues")->check(CLI::Range(1, kMaxEigenCount));
  eig->add_option("--oracle", oracle, "none | shooting")->check(CLI::IsMember({"none", "shooting"}));
  eig->add_flag("--force", force, "Solve outside the interlacing hypotheses");
  add_tol(eig);
  add_common(eig);

  // sweep
  double L_min = 0.0, L_max = 0.0, L_step = 0.0;
  int rank = 1;
  auto* sweep = app.add_subcommand("sweep", "lambda as a function of L");
  sweep->add_option("--L-min", L_min, "First L");
  sweep->add_option("--L-max", L_max, "Last L")->required();
  sweep->add_option("--L-step", L_step, "Grid step")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--eta", eta, "Coulomb parameter eta");
  sweep->add_option("--alpha", alpha, "Exterior rate alpha > 0");
  sweep->add_option("--rank", rank, "Eigenvalue rank n")->check(CLI::Range(1, kMaxEigenCount));
  sweep->add_flag("--force", force, "Sweep outside the monotonicity hypotheses");
  add_tol(sweep);
  add_common(sweep);

  // verify
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", suite, "specfun | zeros | eigen | oracle | all")
      ->check(CLI::IsMember({"specfun", "zeros", "eigen", "oracle", "all"}));
  add_common(verify);

  std::vector<const char*> cargv;
  for (const auto& s : argv) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    if (e.get_name() != "CallForHelp") err << app.help();
    return kExitUsage;
  }

  OutputRecord rec;
  rec.command = echo(argv);
  try {
    if (eval->parsed()) {
      rec.columns = {"fn", "x", "value", "derivative", "abs_err"};
      FnValue v;
      double at = 0.0;
      if (fn == "psi") {
        if (a_opt->count() == 0 || c_opt->count() == 0 || x_opt->count() == 0) {
          err << "eval --fn psi needs --a, --c and --x\n" << eval->help();
          return kExitUsage;
        }
        rec.params = {{"a", a}, {"c", c}, {"x", x}};
        v = tricomi_psi(a, c, x);
        at = x;
      } else {
        if (r_opt->count() == 0) {
          err << "eval --fn " << fn << " needs --r\n" << eval->help();
          return kExitUsage;
        }
        rec.params = {{"L", L}, {"eta", eta}, {"alpha", alpha}, {"r", r}};
        if (fn == "F") {
          v = coulomb_F(L, eta, r);
          at = r;
        } else {
          if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
          at = alpha * r;
          v = tricomi_Q(L, eta, at);
        }
      }
      rec.rows.push_back({fn, at, v.value, v.derivative, v.abs_err});
      add_meta(rec, common);
      emit(rec, common, out);
      return kExitOk;
    }

    if (zeros->parsed()) {
      const ZeroSign s = sign == "negative" ? ZeroSign::negative : ZeroSign::positive;
      const ZeroSeq seq = coulomb_zeros(L, eta, static_cast<std::size_t>(count), s);
      rec.params = {{"L", L}, {"eta", eta}, {"count", static_cast<long long>(count)},
                    {"sign", sign}};
      rec.columns = {"rank", "zero", "radius"};
      for (std::size_t i = 0; i < seq.size(); ++i)
        rec.rows.push_back({static_cast<long long>(i + 1), seq[i], seq.radius(seq[i])});
      add_meta(rec, common);
      emit(rec, common, out);
      return kExitOk;
    }

    if (eig->parsed()) {
      const Params p{L, eta, alpha};
      SolveOptions opts;
      opts.tol = common.tol;
      opts.force = force;
      const auto pairs = eigenvalues(p, count, opts);
      rec.params = {{"L", L}, {"eta", eta}, {"alpha", alpha}, {"tol", common.tol},
                    {"count", static_cast<long long>(count)}};
      rec.columns = {"rank", "lambda", "bracket_lo", "bracket_hi", "residual"};
      std::vector<Eigenpair> shoot;
      if (oracle == "shooting") {
        rec.columns.insert(rec.columns.end(), {"lambda_shooting", "shooting_diff"});
        shoot = eigenvalues_shooting(p, count);
      }
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Eigenpair& e = pairs[i];
        std::vector<Cell> row{static_cast<long long>(e.n), e.lambda, e.bracket.first,
                              e.bracket.second, e.residual};
        if (!shoot.empty()) {
          row.push_back(shoot[i].lambda);
          row.push_back(shoot[i].lambda - e.lambda);
        }
        rec.rows.push_back(std::move(row));
      }
      rec.meta = {{"theorem_b_domain", std::string(p.theorem_b_domain() ? "true" : "false")},
                  {"oracle", oracle}};
      add_meta(rec, common);
      emit(rec, common, out);
      return kExitOk;
    }

    if (sweep->parsed()) {
      std::vector<double> grid;
      for (int i = 0;; ++i) {
        const double l = L_min + i * L_step;
        if (l > L_max + 1e-9 * L_step) break;
        grid.push_back(l);
        if (grid.size() > 100000) throw DomainError("sweep grid too large");
      }
      SolveOptions opts;
      opts.tol = common.tol;
      opts.force = force;
      const SweepTable t = sweep_monotonicity(grid, eta, alpha, rank, opts);
      rec.params = {{"L_min", L_min}, {"L_max", L_max}, {"L_step", L_step}, {"eta", eta},
                    {"alpha", alpha}, {"rank", static_cast<long long>(rank)}, {"tol", common.tol}};
      rec.columns = {"L", "lambda", "dlambda_dL", "error"};
      for (const SweepRow& row : t.rows)
        rec.rows.push_back({row.L, optional_cell(row.lambda), optional_cell(row.dlambda_dL),
                            row.error});
      rec.meta = {{"violations", static_cast<long long>(t.violations.size())}};
      add_meta(rec, common);
      emit(rec, common, out);
      return kExitOk;
    }

    if (verify->parsed()) {
      std::vector<std::string> names =
          suite == "all" ? suite_names() : std::vector<std::string>{suite};
      rec.params = {{"suite", suite}};
      rec.columns = {"suite", "check", "status", "detail"};
      int failed_suites = 0;
      for (const auto& name : names) {
        const SuiteReport rep = run_suite(name);
        for (const CheckResult& chk : rep.checks)
          rec.rows.push_back({name, chk.name, std::string(chk.passed ? "pass" : "fail"), chk.detail});
        const int total = static_cast<int>(rep.checks.size());
        rec.rows.push_back({name, std::string("summary"),
                            std::string(rep.passed() ? "pass" : "fail"),
                            std::to_string(total - rep.failures()) + "/" + std::to_string(total) +
                                " checks passed"});
        if (!rep.passed()) ++failed_suites;
      }
      rec.meta = {{"failed_suites", static_cast<long long>(failed_suites)}};
      add_meta(rec, common);
      emit(rec, common, out);
      return failed_suites == 0 ? kExitOk : kExitVerifyFailed;
    }
  } catch (const HypothesisError& e) {
    err << "cweig: hypothesis refused: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "cweig: domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "cweig: convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "cweig: error: " << e.what() << "\n";
    return kExitConvergence;
  }
  return kExitUsage;
}

}  // namespace cweig
