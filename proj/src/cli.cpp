#include "circlens/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "circlens/errors.hpp"
#include "circlens/exact_finite.hpp"
#include "circlens/fredholm.hpp"
#include "circlens/model.hpp"
#include "circlens/parallel.hpp"
#include "circlens/sampler.hpp"
#include "circlens/spectral_limits.hpp"
#include "circlens/verify.hpp"

namespace circlens {

namespace {

constexpr double kPi = std::numbers::pi;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One settable parameter; the same key names the flag (--key) and the JSON field.
struct Field {
  std::string key;
  std::variant<std::optional<double>*, std::optional<int>*, std::optional<std::string>*,
               std::optional<std::uint64_t>*, std::optional<bool>*, std::optional<std::vector<int>>*>
      target;
  std::string help;
};

struct RunConfig {
  std::string command;
  std::optional<std::string> family, regime, output, format, suite;
  std::optional<double> c, eps, L, tau, z, beta, mu, a, b, length, xi, rmax;
  std::optional<int> d, M, order, reps, steps, nmax, threads;
  std::optional<std::uint64_t> seed;
  std::optional<bool> strict;
  std::optional<std::vector<int>> sides;

  std::vector<Field> fields() {
    return {{"family", &family, "gaussian | gaussian-d | inverse-argument"},
            {"regime", &regime, "finite | lattice | finite-L | thermo | ddim"},
            {"c", &c, "Gaussian width parameter"},
            {"eps", &eps, "regularizer of the inverse-argument family"},
            {"d", &d, "dimension"},
            {"M", &M, "sites per axis"},
            {"L", &L, "circumference per axis"},
            {"tau", &tau, "lattice spacing"},
            {"z", &z, "fugacity (continuum)"},
            {"beta", &beta, "inverse temperature (with mu, instead of z and c)"},
            {"mu", &mu, "chemical potential"},
            {"a", &a, "interval start"},
            {"b", &b, "interval end"},
            {"length", &length, "interval length, starting at a (default 0)"},
            {"xi", &xi, "Fredholm parameter in [0, 1]"},
            {"order", &order, "starting Nystrom node count"},
            {"reps", &reps, "Monte Carlo replicates"},
            {"seed", &seed, "generator seed"},
            {"steps", &steps, "rows in tabulated output"},
            {"rmax", &rmax, "largest separation"},
            {"nmax", &nmax, "largest count"},
            {"sides", &sides, "block sides in sites"},
            {"suite", &suite, "comma separated check ids or groups, or all"},
            {"strict", &strict, "divide every tolerance by 10"},
            {"threads", &threads, "worker thread cap"},
            {"output", &output, "output path (default stdout)"},
            {"format", &format, "csv | json"}};
  }
};

// Flags stage into these, then merge with the config file.
struct Staging {
  std::map<std::string, std::string> text;
  std::map<std::string, std::vector<int>> lists;
  std::map<std::string, bool> flags;
};

void register_fields(CLI::App* sub, RunConfig& cfg, Staging& st) {
  for (auto& f : cfg.fields()) {
    const std::string flag = "--" + f.key;
    if (std::holds_alternative<std::optional<bool>*>(f.target)) {
      sub->add_flag(flag, st.flags[f.key], f.help);
    } else if (std::holds_alternative<std::optional<std::vector<int>>*>(f.target)) {
      sub->add_option(flag, st.lists[f.key], f.help)->delimiter(',');
    } else {
      sub->add_option(flag, st.text[f.key], f.help);
    }
  }
  sub->add_option("--config", st.text["config"], "JSON file with the same keys; flags take precedence");
}

template <class T>
T parse_number(const std::string& key, const std::string& s) {
  std::istringstream is(s);
  T v{};
  is >> v;
  if (!is || !is.eof()) throw ConfigError("--" + key + ": not a number: " + s);
  return v;
}

void merge(const CLI::App* sub, RunConfig& cfg, Staging& st) {
  nlohmann::json file = nlohmann::json::object();
  if (sub->count("--config") > 0) {
    std::ifstream in(st.text["config"]);
    if (!in) throw ConfigError("cannot read config file " + st.text["config"]);
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config file: ") + e.what());
    }
    if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  }
  auto fields = cfg.fields();
  for (auto it = file.begin(); it != file.end(); ++it) {
    if (it.key() == "command") {
      if (!it->is_string() || it->get<std::string>() != cfg.command)
        throw ConfigError("config file command does not match " + cfg.command);
      continue;
    }
    bool known = false;
    for (const auto& f : fields) known = known || f.key == it.key();
    if (!known) throw ConfigError("config file: unknown key " + it.key());
  }
  for (auto& f : fields) {
    const bool flagged = sub->count("--" + f.key) > 0;
    const bool in_file = file.contains(f.key);
    if (!flagged && !in_file) continue;
    const nlohmann::json& j = in_file ? file[f.key] : nlohmann::json();
    try {
      std::visit(
          [&](auto* target) {
            using T = typename std::remove_reference_t<decltype(*target)>::value_type;
            if constexpr (std::is_same_v<T, bool>) {
              *target = flagged ? st.flags[f.key] : j.get<bool>();
            } else if constexpr (std::is_same_v<T, std::vector<int>>) {
              *target = flagged ? st.lists[f.key] : j.get<std::vector<int>>();
            } else if constexpr (std::is_same_v<T, std::string>) {
              *target = flagged ? st.text[f.key] : j.get<std::string>();
            } else {
              if (flagged) {
                *target = parse_number<T>(f.key, st.text[f.key]);
              } else {
                if (!j.is_number()) throw ConfigError(f.key + ": expected a number");
                if constexpr (std::is_integral_v<T>) {
                  if (!j.is_number_integer()) throw ConfigError(f.key + ": expected an integer");
                  if (std::is_unsigned_v<T> && j.is_number_integer() && !j.is_number_unsigned())
                    throw ConfigError(f.key + ": expected a nonnegative integer");
                }
                *target = j.get<T>();
              }
            }
          },
          f.target);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(f.key + ": " + e.what());
    }
  }
}

// ---------------------------------------------------------------------------
// output

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Table& t, const std::string& format) {
  std::string s;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      auto row = nlohmann::ordered_json::array();
      for (double v : r) row.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr));
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_number(r[i]);
    s += "\n";
  }
  return s;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + *cfg.output);
    f << text;
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------------------
// parameter resolution

template <class T>
T need(const std::optional<T>& v, const char* key) {
  if (!v) throw ConfigError(std::string("missing --") + key);
  return *v;
}

struct Model {
  KernelFamily family = KernelFamily::gaussian(1.0);
  double z = 1.0;
  bool fermion = false;  // given as (beta, mu)
  double beta = 0.0, mu = 0.0;
  int d = 1;
};

Model resolve_model(const RunConfig& cfg) {
  Model m;
  const bool fermion = cfg.beta || cfg.mu;
  if (fermion && cfg.z) throw ConfigError("give either --z or --beta/--mu, not both");
  if (fermion && cfg.c) throw ConfigError("--c is fixed by --beta; give one of them");
  if (fermion && !(cfg.beta && cfg.mu)) throw ConfigError("--beta and --mu go together");
  const std::string fam = cfg.family.value_or("gaussian");
  m.d = cfg.d.value_or(fam == "gaussian-d" ? 2 : 1);
  if (fermion) {
    if (fam == "inverse-argument") throw ConfigError("--beta/--mu apply to the Gaussian family");
    m.fermion = true;
    m.beta = *cfg.beta;
    m.mu = *cfg.mu;
    const GasParams gp = fermion_to_gas(FermionParams{m.beta, m.mu});
    const double c = gp.c, z = gp.z;
    m.z = z;
    m.family = fam == "gaussian-d" || m.d > 1 ? KernelFamily::gaussian_d(c, m.d) : KernelFamily::gaussian(c);
    return m;
  }
  m.z = cfg.z.value_or(1.0);
  if (fam == "gaussian") {
    if (cfg.d && *cfg.d != 1) throw ConfigError("family gaussian is one-dimensional; use gaussian-d");
    m.family = KernelFamily::gaussian(cfg.c.value_or(1.0));
  } else if (fam == "gaussian-d") {
    m.family = KernelFamily::gaussian_d(cfg.c.value_or(1.0), m.d);
  } else if (fam == "inverse-argument") {
    if (cfg.c) throw ConfigError("--c does not apply to inverse-argument");
    m.family = KernelFamily::inverse_argument(cfg.eps.value_or(1.0));
  } else {
    throw ConfigError("unknown family " + fam);
  }
  return m;
}

std::string regime_of(const RunConfig& cfg, const Model& m) {
  const std::string r = cfg.regime.value_or(m.d > 1 ? "ddim" : "thermo");
  if (r != "finite" && r != "lattice" && r != "finite-L" && r != "thermo" && r != "ddim")
    throw ConfigError("unknown regime " + r);
  if (m.family.builtin() == Builtin::InverseArgument && r != "thermo")
    throw ConfigError("the inverse-argument family is available in the thermo regime only");
  if (r == "ddim" && !m.family.is_gaussian()) throw ConfigError("regime ddim needs a Gaussian family");
  if (r != "ddim" && m.d > 1) throw ConfigError("d > 1 needs regime ddim (or the sample and hole commands)");
  return r;
}

CirculantEnsemble finite_ensemble(const RunConfig& cfg, const Model& m) {
  const int M = need(cfg.M, "M");
  const double L = cfg.L ? *cfg.L : M * need(cfg.tau, "L (or --tau)");
  return CirculantEnsemble(M, L, m.z, m.family);
}

double steps_grid(int i, int steps, double lo, double hi) {
  return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
}

int steps_of(const RunConfig& cfg, int fallback) {
  const int s = cfg.steps.value_or(fallback);
  if (s < 1) throw ConfigError("--steps must be positive");
  return s;
}

// fermion (beta, mu) when given, else from c and z
std::pair<double, double> fermion_of(const Model& m) {
  if (m.fermion) return {m.beta, m.mu};
  const FermionParams p = gas_to_fermion(GasParams{m.family.c(), m.z});
  return {p.beta, p.mu};
}

// ---------------------------------------------------------------------------
// commands

Table cmd_spectrum(const RunConfig& cfg) {
  const Model m = resolve_model(cfg);
  const std::string r = regime_of(cfg, m);
  Table t;
  if (r == "finite") {
    const auto sp = circulant_eigenvalues(finite_ensemble(cfg, m));
    t.columns = {"p", "lambda"};
    for (int i = 0; i < static_cast<int>(sp.size()); ++i) t.rows.push_back({double(sp.p0 + i), sp.at(sp.p0 + i)});
  } else if (r == "lattice") {
    const double tau = need(cfg.tau, "tau");
    const int steps = steps_of(cfg, 101);
    t.columns = {"t", "lambda"};
    for (int i = 0; i < steps; ++i) {
      const double x = steps_grid(i, steps, 0.0, 1.0);
      t.rows.push_back({x, lattice_spectral_density(m.family, tau, x)});
    }
  } else if (r == "finite-L") {
    const auto sp = finite_L_spectrum(m.family, need(cfg.L, "L"), m.z);
    t.columns = {"p", "lambda"};
    for (std::size_t p = 0; p < sp.size(); ++p) t.rows.push_back({double(p), sp[p]});
  } else {
    const int steps = steps_of(cfg, 101);
    t.columns = {"s", "lambda"};
    if (r == "ddim") {
      const SpectralDensity sd = SpectralDensity::thermo_d(m.family.c(), m.d);
      const auto bp = sd.breakpoints(m.z);
      for (int i = 0; i < steps; ++i) {
        const double s = steps_grid(i, steps, 0.0, bp.back());
        std::vector<double> v(m.d, 0.0);
        v[0] = s;
        t.rows.push_back({s, ddim_spectral_density(m.family.c(), v)});
      }
    } else {
      const SpectralDensity sd = SpectralDensity::thermo(m.family);
      const auto bp = sd.breakpoints(m.z);
      const double lo = sd.even() ? -bp.back() : bp.front();
      for (int i = 0; i < steps; ++i) {
        const double s = steps_grid(i, steps, lo, bp.back());
        t.rows.push_back({s, sd(s)});
      }
    }
  }
  return t;
}

Table cmd_pressure_or_density(const RunConfig& cfg, bool pressure) {
  const Model m = resolve_model(cfg);
  const std::string r = regime_of(cfg, m);
  double v = 0.0;
  std::string name;
  const bool gaudin = m.family.builtin() == Builtin::InverseArgument;
  if (r == "finite") {
    const auto ens = finite_ensemble(cfg, m);
    name = pressure ? "log_xi_per_site" : "rho_per_site";
    v = pressure ? log_partition_function(ens) / ens.M() : FiniteKernel(ens).density();
  } else if (r == "lattice") {
    const double tau = need(cfg.tau, "tau");
    name = pressure ? "tau_betaP" : "rho_per_site";
    v = pressure ? lattice_pressure(m.family, tau, m.z) : lattice_density(m.family, tau, m.z);
  } else if (r == "finite-L") {
    const double L = need(cfg.L, "L");
    name = pressure ? "log_xi_per_length" : "rho";
    v = pressure ? finite_L_log_partition(m.family, L, m.z) / L : finite_L_kernel(m.family, L, m.z, 0.0, 0.0).real();
  } else if (r == "ddim") {
    name = pressure ? "betaP" : "rho";
    if (pressure) {
      v = ddim_pressure_radial(m.family.c(), m.d, m.z);
    } else {
      const auto [beta, mu] = fermion_of(m);
      v = ddim_kernel(beta, mu, m.d, 0.0);
    }
  } else {
    name = pressure ? "betaP" : "rho";
    if (gaudin)
      v = pressure ? gaudin_pressure(m.family.eps(), m.z) : gaudin_density(m.family.eps(), m.z);
    else
      v = pressure ? thermo_pressure(m.family, m.z) : thermo_density(m.family, m.z);
  }
  return Table{{"z", name}, {{m.z, v}}};
}

Table cmd_kernel(const RunConfig& cfg) {
  const Model m = resolve_model(cfg);
  const std::string r = regime_of(cfg, m);
  const int steps = steps_of(cfg, 200);
  const double rmax = cfg.rmax.value_or(5.0);
  if (!(rmax >= 0.0)) throw ConfigError("--rmax must be nonnegative");
  Table t;
  if (r == "finite") {
    FiniteKernel fk(finite_ensemble(cfg, m));
    t.columns = {"offset", "K_re", "K_im"};
    for (int j = 0; j < fk.M(); ++j) {
      const auto k = fk.at_offset(j);
      t.rows.push_back({double(j), k.real(), k.imag()});
    }
    return t;
  }
  if (r == "lattice") {
    const double tau = need(cfg.tau, "tau");
    t.columns = {"j", "K"};
    for (int j = 0; j < steps; ++j) t.rows.push_back({double(j), lattice_kernel(m.family, tau, m.z, j)});
    return t;
  }
  const bool gaudin = m.family.builtin() == Builtin::InverseArgument;
  t.columns = gaudin ? std::vector<std::string>{"r", "K_re", "K_im"} : std::vector<std::string>{"r", "K"};
  std::optional<CorrelationKernel> ck;
  if (r == "thermo" && !m.fermion) ck = thermo_correlation_kernel(m.family, m.z);
  for (int i = 0; i < steps; ++i) {
    const double x = steps_grid(i, steps, 0.0, rmax);
    if (r == "finite-L") {
      t.rows.push_back({x, finite_L_kernel(m.family, need(cfg.L, "L"), m.z, 0.0, x).real()});
    } else if (r == "ddim") {
      const auto [beta, mu] = fermion_of(m);
      t.rows.push_back({x, ddim_kernel(beta, mu, m.d, x)});
    } else if (m.fermion) {
      t.rows.push_back({x, fermion_kernel(m.beta, m.mu, x)});
    } else if (gaudin) {
      const auto k = ck->at(x);
      t.rows.push_back({x, k.real(), k.imag()});
    } else {
      t.rows.push_back({x, ck->at(x).real()});
    }
  }
  return t;
}

FredholmProblem gap_problem(const RunConfig& cfg, const Model& m) {
  if (regime_of(cfg, m) != "thermo") throw ConfigError("gap and counting use the thermo regime");
  const double a = cfg.a.value_or(0.0);
  double b;
  if (cfg.b && cfg.length) throw ConfigError("give either --b or --length");
  if (cfg.b)
    b = *cfg.b;
  else
    b = a + need(cfg.length, "length (or --b)");
  const CorrelationKernel k =
      m.fermion ? fermion_correlation_kernel(m.beta, m.mu) : thermo_correlation_kernel(m.family, m.z);
  return FredholmProblem::of(k, a, b, cfg.xi.value_or(1.0), cfg.order.value_or(32));
}

Table cmd_gap(const RunConfig& cfg) {
  const Model m = resolve_model(cfg);
  const FredholmProblem p = gap_problem(cfg, m);
  const NystromResult r = nystrom_eigenvalues(p);
  const double det = p.xi == 0.0 ? 1.0 : det_from_eigenvalues(r.eigenvalues, p.xi);
  const double len = p.b - p.a;
  return Table{{"length", "xi", "det", "asymptote", "nodes"},
               {{len, p.xi, det, gap_asymptote(m.family, m.z, len, p.xi), double(r.n)}}};
}

Table cmd_counting(const RunConfig& cfg) {
  const Model m = resolve_model(cfg);
  FredholmProblem p = gap_problem(cfg, m);
  if (cfg.xi) throw ConfigError("counting does not take --xi");
  const auto ev = nystrom_eigenvalues(p).eigenvalues;
  const int nmax = cfg.nmax.value_or(std::min<int>(10, static_cast<int>(ev.size())));
  const auto c = counting_from_eigenvalues(ev, nmax);
  Table t{{"n", "E"}, {}};
  for (int n = 0; n <= nmax; ++n) t.rows.push_back({double(n), c.E[n]});
  return t;
}

TensorLattice sampling_lattice(const RunConfig& cfg, const Model& m) {
  const int M = need(cfg.M, "M");
  const double L = cfg.L ? *cfg.L : M * need(cfg.tau, "L (or --tau)");
  const double tau = L / M;
  // continuum fugacity to lattice fugacity
  return TensorLattice(m.d, M, L, m.z * std::pow(tau, m.d), m.family);
}

Table cmd_sample(const RunConfig& cfg) {
  const Model m = resolve_model(cfg);
  const std::uint64_t seed = need(cfg.seed, "seed");
  const TensorLattice lat = sampling_lattice(cfg, m);
  const int reps = cfg.reps.value_or(1);
  if (reps < 1) throw ConfigError("--reps must be positive");
  Table t;
  t.columns = {"rep"};
  for (int i = 0; i < m.d; ++i) t.columns.push_back("i" + std::to_string(i));
  for (int r = 0; r < reps; ++r)
    for (const auto& s : sample(lat, seed, r).sites) {
      std::vector<double> row{double(r)};
      for (int v : s) row.push_back(v);
      t.rows.push_back(row);
    }
  return t;
}

Table cmd_hole(const RunConfig& cfg) {
  RunConfig c2 = cfg;
  if (!c2.family) c2.family = "gaussian-d";
  if (!c2.d) c2.d = 2;
  const Model m = resolve_model(c2);
  const std::uint64_t seed = need(cfg.seed, "seed");
  const TensorLattice lat = sampling_lattice(c2, m);
  const auto sides = cfg.sides.value_or(std::vector<int>{1, 2, 4, 8});
  const auto rows = hole_probability_check(lat, sides, cfg.reps.value_or(1000), seed);
  Table t{{"side", "area", "E", "stderr", "rate", "betaP", "ratio", "insufficient"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({double(r.side), r.area, r.E, r.std_error, r.rate, r.beta_P, r.ratio, r.insufficient ? 1.0 : 0.0});
  return t;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions opt;
  opt.seed = need(cfg.seed, "seed");
  opt.strict = cfg.strict.value_or(false);
  std::vector<std::string> names;
  std::stringstream ss(cfg.suite.value_or("all"));
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) names.push_back(item);
  const VerificationReport rep = run_suite(names, opt);
  const std::string format = cfg.format.value_or("csv");
  std::string text;
  if (format == "json") {
    text = report_to_json(rep) + "\n";
  } else {
    text = "id,error,tol,pass,seconds\n";
    for (const auto& e : rep.entries)
      text += e.id + "," + format_number(e.error) + "," + format_number(e.tol) + "," + (e.pass ? "1" : "0") + "," +
              format_number(e.seconds) + "\n";
  }
  emit(cfg, text, out);
  return rep.pass ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant L-ensembles: spectra, kernels, gap probabilities, sampling and verification"};
  app.require_subcommand(1);
  RunConfig cfg;
  Staging st;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "eigenvalues or spectral density"},
      {"pressure", "pressure (log partition function per volume)"},
      {"density", "particle density"},
      {"kernel", "correlation kernel table"},
      {"gap", "gap probability det(I - xi K) on an interval"},
      {"counting", "probabilities of n points in an interval"},
      {"sample", "exact draws on a periodic lattice"},
      {"hole", "two-dimensional hole probability table"},
      {"verify", "run the verification suite"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help);
    register_fields(subs[name], cfg, st);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    CLI::App* sub = nullptr;
    for (const auto& [name, s] : subs)
      if (s->parsed()) {
        cfg.command = name;
        sub = s;
      }
    merge(sub, cfg, st);
    if (cfg.threads) {
      if (*cfg.threads < 1) throw ConfigError("--threads must be positive");
      set_thread_cap(*cfg.threads);
    }
    const std::string format = cfg.format.value_or("csv");
    if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    Table t;
    if (cfg.command == "spectrum") t = cmd_spectrum(cfg);
    else if (cfg.command == "pressure") t = cmd_pressure_or_density(cfg, true);
    else if (cfg.command == "density") t = cmd_pressure_or_density(cfg, false);
    else if (cfg.command == "kernel") t = cmd_kernel(cfg);
    else if (cfg.command == "gap") t = cmd_gap(cfg);
    else if (cfg.command == "counting") t = cmd_counting(cfg);
    else if (cfg.command == "sample") t = cmd_sample(cfg);
    else t = cmd_hole(cfg);
    emit(cfg, render(t, format), out);
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace circlens
