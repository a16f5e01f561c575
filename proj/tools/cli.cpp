#include "cli.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigner/errors.hpp"
#include "wigner/fermi.hpp"
#include "wigner/freeness.hpp"
#include "wigner/lattice.hpp"
#include "wigner/matrix_io.hpp"
#include "wigner/parallel.hpp"
#include "wigner/partitions.hpp"
#include "wigner/relations.hpp"
#include "wigner/spectra.hpp"

namespace wigner::cli {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << value;
  return s.str();
}

std::vector<SpectralSummary> summarize_batch(const std::vector<HermitianSample>& samples, int K,
                                             double relative_zero_tol) {
  if (K < 1) throw std::invalid_argument("--K must be at least 1");
  if (!(relative_zero_tol > 0)) throw std::invalid_argument("zero tolerance must be positive");
  std::vector<SpectralSummary> out(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    std::vector<double> values = eigenvalues(samples[i]);
    double norm = 0.0;
    for (double v : values) norm = std::max(norm, std::abs(v));
    out[i] = summarize(std::move(values), K, std::max(relative_zero_tol * norm, std::numeric_limits<double>::min()));
  });
  return out;
}

std::string spectrum_csv(const std::vector<SpectralSummary>& summaries, const ReferenceLaw& law) {
  std::string csv = "sample_index,k,empirical_moment,reference_moment,ks_distance,atom_mass\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const SpectralSummary& s = summaries[i];
    const double ks = ks_distance(s, law);
    for (std::size_t k = 1; k < s.moments.size(); ++k) {
      csv += std::to_string(i) + ',' + std::to_string(k) + ',' + format_double(s.moments[k]) + ',' +
             format_double(law.moment(static_cast<int>(k))) + ',' + format_double(ks) + ',' +
             format_double(s.atom_at_zero) + '\n';
    }
  }
  return csv;
}

namespace {

// Nested objects become subcommand sections; other keys belong to the root
// if it has such an option, else to the subcommand selected on the command line.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    throw CLI::ConfigError("writing a JSON config is not supported");
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v, const std::string& name) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config value for '" + name + "' must be a scalar or an array of scalars");
  }

  std::vector<std::string> active_chain() const {
    std::vector<std::string> chain;
    const CLI::App* app = root_;
    while (app) {
      const auto subs = app->get_subcommands();
      if (subs.empty()) break;
      app = subs.front();
      chain.push_back(app->get_name());
    }
    return chain;
  }

  void collect(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) const {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.name = key;
      item.parents = parents;
      if (parents.empty() && root_->get_option_no_throw("--" + key) == nullptr) item.parents = active_chain();
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v, key));
      } else {
        item.inputs.push_back(scalar(value, key));
      }
      items.push_back(std::move(item));
    }
  }

  const CLI::App* root_;
};

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  bool no_timestamp = false;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

class Output {
 public:
  Output(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void csv(std::string body) const {
    if (!g_.no_timestamp) body = "# timestamp: " + timestamp() + "\n" + body;
    emit(body);
  }

  void json_doc(json doc) const {
    if (!g_.no_timestamp) doc["timestamp"] = timestamp();
    emit(doc.dump(2) + "\n");
  }

  void binary(const std::string& bytes) const {
    if (g_.out.empty()) throw std::invalid_argument("binary output needs --out");
    emit(bytes);
  }

 private:
  void emit(const std::string& payload) const {
    if (g_.out.empty()) {
      out_ << payload;
      return;
    }
    const std::filesystem::path target(g_.out);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
      if (!file) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot move output into place at " + target.string() + ": " + ec.message());
    }
  }

  const Globals& g_;
  std::ostream& out_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json slope_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// ------------------------------------------------------------ subcommands

struct RelationsArgs {
  std::string kind;
  std::optional<int> n;
  std::vector<int> ladder;
  double delta = 0.1;
  int max_n = 300;
  FermiParameters fermi;
};

void run_relations_check(const RelationsArgs& a, const Output& output) {
  if (a.kind.empty()) throw std::invalid_argument("--kind is required");
  const RelationKind kind = parse_relation_kind(a.kind);
  GrowthOptions options;
  options.margin = a.delta;
  options.budget.max_n = a.max_n;

  json doc;
  doc["kind"] = std::string(to_string(kind));
  if (a.n) {
    const ConditionReport r = check_conditions(make_relation(kind, *a.n, a.fermi), options.budget);
    doc["size"] = *a.n;
    doc["n"] = r.n;
    doc["c1"] = r.c1_count;
    doc["c2"] = r.c2_bound;
    doc["c3"] = r.c3_count;
  }
  std::vector<int> ladder = a.ladder;
  if (ladder.empty()) ladder.assign(std::begin(kDefaultLadder), std::end(kDefaultLadder));
  const GrowthDiagnostic g = growth_diagnostic(kind, ladder, options, a.fermi);
  json rows = json::array();
  for (const auto& row : g.rows) {
    rows.push_back({{"size", row.size},
                    {"n", row.report.n},
                    {"c1", row.report.c1_count},
                    {"c2", row.report.c2_bound},
                    {"c3", row.report.c3_count}});
  }
  doc["ladder"] = rows;
  doc["slopes"] = {{"c1", slope_value(g.c1_slope)}, {"c3", slope_value(g.c3_slope)}};
  doc["c2_constant"] = g.c2_constant;
  doc["pass"] = g.pass;
  output.json_doc(doc);
}

struct SampleArgs {
  std::string kind;
  std::optional<int> n;
  std::string dist = "gaussian_complex";
  int count = 1;
  FermiParameters fermi;
};

void run_ensemble_sample(const SampleArgs& a, const Globals& g, const Output& output) {
  if (a.kind.empty()) throw std::invalid_argument("--kind is required");
  if (!a.n) throw std::invalid_argument("--n is required");
  if (a.count < 1) throw std::invalid_argument("--count must be positive");
  if (g.out.empty()) throw std::invalid_argument("ensemble sample writes a binary file and needs --out");
  EnsembleSpec spec{make_relation(parse_relation_kind(a.kind), *a.n, a.fermi), parse_distribution(a.dist), {}, g.seed};
  std::ostringstream bytes(std::ios::binary);
  write_matrices(bytes, sample_batch(spec, a.count));
  output.binary(bytes.str());
}

struct SpectrumArgs {
  std::string in;
  std::string law = "semicircle";
  int K = 8;
  double mixture_radius = std::numbers::sqrt2;
  double zero_tol = 1e-5;
};

void run_spectrum(const SpectrumArgs& a, const Output& output) {
  if (a.in.empty()) throw std::invalid_argument("--in is required");
  ReferenceLaw law = ReferenceLaw::semicircle();
  if (a.law == "mixture") law = ReferenceLaw::scaled_mixture(a.mixture_radius);
  else if (a.law != "semicircle") throw std::invalid_argument("--law must be semicircle or mixture");
  std::istringstream in(read_file(a.in), std::ios::binary);
  const auto samples = read_matrices(in);
  output.csv(spectrum_csv(summarize_batch(samples, a.K, a.zero_tol), law));
}

struct CensusArgs {
  std::string kind;
  std::optional<int> n;
  int k = 4;
  std::string pi;
  bool coarser = false;
  std::uint64_t budget = CensusOptions{}.step_budget;
  FermiParameters fermi;
};

void run_census(const CensusArgs& a, const Output& output) {
  if (a.kind.empty()) throw std::invalid_argument("--kind is required");
  if (!a.n) throw std::invalid_argument("--n is required");
  const EquivalenceRelation relation = make_relation(parse_relation_kind(a.kind), *a.n, a.fermi);
  std::vector<PairPartition> partitions;
  if (!a.pi.empty()) {
    partitions.push_back(parse_pair_partition(a.pi));
    if (partitions.front().k != a.k) throw std::invalid_argument("--pi does not partition {1..k}");
  } else {
    partitions = enumerate_pair_partitions(a.k);
  }
  CensusOptions options;
  options.step_budget = a.budget;
  options.allow_coarser = a.coarser;
  std::string csv = "n,k,pi,s_count,ps_count,ns_count,s_over_scale\n";
  for (const auto& pp : partitions) {
    const SequenceCensus c = census(relation, pp, options);
    csv += std::to_string(c.n) + ',' + std::to_string(c.k) + ",\"" + to_string(pp) + "\"," + std::to_string(c.s_count) +
           ',' + std::to_string(c.ps_count) + ',' + std::to_string(c.ns_count) + ',' + format_double(c.s_over_scale()) +
           '\n';
  }
  output.csv(csv);
}

struct OracleArgs {
  std::string kind;
  std::optional<int> n;
  std::optional<int> k;
  std::string dist = "gaussian_complex";
  std::uint64_t budget = CensusOptions{}.step_budget;
};

void run_oracle(const OracleArgs& a, const Output& output) {
  if (a.kind.empty()) throw std::invalid_argument("--kind is required");
  if (!a.n || !a.k) throw std::invalid_argument("--n and --k are required");
  EnsembleSpec spec{make_relation(parse_relation_kind(a.kind), *a.n), parse_distribution(a.dist), {}, 0};
  CensusOptions options;
  options.step_budget = a.budget;
  const ExactMoment m = exact_gaussian_moment(spec, *a.k, options);
  output.json_doc({{"kind", std::string(to_string(spec.relation.kind()))},
                   {"n", *a.n},
                   {"k", *a.k},
                   {"distribution", std::string(to_string(spec.distribution))},
                   {"exact", m.to_string()},
                   {"numerator", m.numerator},
                   {"denominator", m.denominator},
                   {"value", m.value()}});
}

struct ShellArgs {
  int d = 2;
  std::optional<int> L;
  double E = 2.0;
  double beta = 2.0 * std::numbers::pi;
};

json shell_json(const LatticeShell& shell) {
  json points = json::array();
  for (const auto& p : shell.points) points.push_back(std::vector<int>(p.begin(), p.begin() + shell.d));
  return {{"d", shell.d}, {"L", shell.L}, {"E", shell.E}, {"beta", shell.beta}, {"n", shell.size()}, {"points", points}};
}

LatticeShell shell_from_json(const json& j) {
  try {
    LatticeShell shell = enumerate_shell(j.at("d").get<int>(), j.at("L").get<int>(), j.at("E").get<double>(),
                                         j.at("beta").get<double>());
    if (j.contains("points")) {
      std::vector<LatticePoint> listed;
      for (const auto& p : j.at("points")) {
        LatticePoint point{0, 0, 0};
        if (static_cast<int>(p.size()) != shell.d) throw std::invalid_argument("shell point has the wrong dimension");
        for (int i = 0; i < shell.d; ++i) point[i] = p.at(i).get<int>();
        listed.push_back(point);
      }
      if (listed != shell.points) throw std::invalid_argument("shell points do not match d, L, E, beta");
    }
    return shell;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed shell file: ") + e.what());
  }
}

struct BuildArgs {
  std::string shell;
  std::optional<double> lambda;
  int count = 1;
};

void run_fermi_build(const BuildArgs& a, const Globals& g, const Output& output) {
  if (a.shell.empty()) throw std::invalid_argument("--shell is required");
  if (!a.lambda) throw std::invalid_argument("--lambda is required");
  if (a.count < 1) throw std::invalid_argument("--count must be positive");
  if (g.out.empty()) throw std::invalid_argument("fermi build writes a binary file and needs --out");
  json j;
  try {
    j = json::parse(read_file(a.shell));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("shell file is not valid JSON: ") + e.what());
  }
  const LatticeShell shell = shell_from_json(j);
  std::vector<HermitianSample> matrices(static_cast<std::size_t>(a.count));
  parallel_for(matrices.size(), [&](std::size_t i) {
    matrices[i] = sample_fermi_matrix(shell, *a.lambda, derived_seed(g.seed, i));
  });
  std::ostringstream bytes(std::ios::binary);
  write_matrices(bytes, matrices);
  output.binary(bytes.str());
}

struct ScanArgs {
  std::vector<double> lambdas;
  int d = 2;
  double E = 2.0;
  double beta = 2.0 * std::numbers::pi;
  int draws = 3;
  int max_L = 256;
};

void run_fermi_scan(const ScanArgs& a, const Globals& g, const Output& output) {
  if (a.lambdas.empty()) throw std::invalid_argument("--lambdas is required");
  const CouplingScan scan = coupling_scan(a.d, a.E, a.beta, a.lambdas, g.seed, a.draws, a.max_L);
  std::string csv = "# n_slope: " + format_double(scan.n_slope) + "\n# width_slope: " + format_double(scan.width_slope) +
                    "\nlambda,L,n,spectral_radius\n";
  for (const auto& r : scan.rows) {
    csv += format_double(r.lambda) + ',' + std::to_string(r.L) + ',' + std::to_string(r.n) + ',' +
           format_double(r.spectral_radius) + '\n';
  }
  output.csv(csv);
}

struct FreenessArgs {
  std::vector<std::string> words;
  std::string diag = "twopoint";
  bool diag_random = false;
  std::vector<int> n{100, 300, 500};
  int samples = 50;
  std::string x_kind = "iid";
  std::string dist = "gaussian_complex";
};

DiagonalLaw parse_diagonal_law(const std::string& text) {
  if (text == "twopoint" || text == "two_point") return DiagonalLaw::two_point();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::vector<double> numbers;
  if (colon != std::string::npos) {
    std::stringstream s(text.substr(colon + 1));
    std::string item;
    while (std::getline(s, item, ',')) {
      try {
        std::size_t used = 0;
        numbers.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + item + "' in --diag");
      }
    }
  }
  if (head == "uniform") {
    if (numbers.empty()) return DiagonalLaw::uniform(-1.0, 1.0);
    if (numbers.size() != 2) throw std::invalid_argument("--diag uniform:a,b takes two numbers");
    return DiagonalLaw::uniform(numbers[0], numbers[1]);
  }
  if (head == "values") return DiagonalLaw::from_values(numbers);
  throw std::invalid_argument("--diag must be twopoint, uniform[:a,b] or values:v1,v2,...");
}

void run_freeness(const FreenessArgs& a, const Globals& g, const Output& output) {
  if (a.words.empty()) throw std::invalid_argument("--word is required");
  if (a.n.empty()) throw std::invalid_argument("--n needs at least one size");
  std::vector<Word> words;
  for (const auto& w : a.words) words.push_back(parse_word(w));
  DiagonalLaw law = parse_diagonal_law(a.diag);
  law.random = a.diag_random;
  const XBinding xb{parse_relation_kind(a.x_kind), parse_distribution(a.dist)};
  Bindings bindings;
  for (const auto& w : words) {
    for (const auto& l : w.letters) {
      if (l.kind == Letter::Kind::x) bindings.x[l.index] = xb;
      else bindings.d[l.index] = law;
    }
  }
  const auto rows = freeness_report(words, bindings, a.n, a.samples, g.seed);
  std::string csv = "word,n,estimate,std_error,prediction,z_score\n";
  for (const auto& r : rows) {
    csv += '"' + r.word + "\"," + std::to_string(r.n) + ',' + format_double(r.estimate) + ',' +
           format_double(r.std_error) + ',' + format_double(r.prediction) + ',' + format_double(r.z_score) + '\n';
  }
  output.csv(csv);
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void add_fermi_flags(CLI::App* app, FermiParameters& f) {
  app->add_option("--d", f.d, "Lattice dimension (fermi)");
  app->add_option("--E", f.E, "Fermi energy (fermi)");
  app->add_option("--beta", f.beta, "Shell width (fermi)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlated Wigner matrix laboratory", "wigner-lab"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", g.out, "Output file (stdout if omitted)");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp line/key");
  app.set_config("--config", "", "JSON file supplying any flag; command-line flags win");
  app.config_formatter(std::make_shared<JsonConfig>(&app));

  RelationsArgs rel;
  auto* relations = app.add_subcommand("relations", "Equivalence relations");
  relations->require_subcommand(1);
  auto* check = relations->add_subcommand("check", "Conditions C1-C3 and their growth");
  check->add_option("--kind", rel.kind, "iid|flip|violating|fermi");
  check->add_option("--n", rel.n, "Matrix size (lattice size L for fermi)");
  check->add_option("--ladder", rel.ladder, "Sizes for the growth fit")->delimiter(',');
  check->add_option("--delta", rel.delta, "Slope margin below 2");
  check->add_option("--max-n", rel.max_n, "Scan budget on n");
  add_fermi_flags(check, rel.fermi);

  SampleArgs sample;
  auto* ensemble = app.add_subcommand("ensemble", "Random matrix ensembles");
  ensemble->require_subcommand(1);
  auto* sample_cmd = ensemble->add_subcommand("sample", "Draw matrices into a binary file");
  sample_cmd->add_option("--kind", sample.kind, "iid|flip|violating|fermi");
  sample_cmd->add_option("--n", sample.n, "Matrix size (L for fermi)");
  sample_cmd->add_option("--dist", sample.dist, "gaussian_complex|gaussian_real|rademacher");
  sample_cmd->add_option("--count", sample.count, "Number of matrices");
  add_fermi_flags(sample_cmd, sample.fermi);

  SpectrumArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "Moments, KS distance and atom mass of stored matrices");
  spectrum->add_option("--in", spec.in, "Binary matrix file");
  spectrum->add_option("--law", spec.law, "semicircle|mixture");
  spectrum->add_option("--K", spec.K, "Highest moment");
  spectrum->add_option("--mixture-radius", spec.mixture_radius, "Radius of the semicircle part of the mixture");
  spectrum->add_option("--zero-tol", spec.zero_tol, "Zero threshold relative to the operator norm");

  CensusArgs cen;
  auto* census_cmd = app.add_subcommand("census", "Count index sequences by induced partition");
  census_cmd->add_option("--kind", cen.kind, "iid|flip|violating|fermi");
  census_cmd->add_option("--n", cen.n, "Matrix size (L for fermi)");
  census_cmd->add_option("--k", cen.k, "Sequence length");
  census_cmd->add_option("--pi", cen.pi, "Pair partition such as 1-2,3-4 (all if omitted)");
  census_cmd->add_flag("--coarser", cen.coarser, "Count sequences whose partition is coarser than pi");
  census_cmd->add_option("--budget", cen.budget, "Step budget");
  add_fermi_flags(census_cmd, cen.fermi);

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Independent reference computations");
  oracle->require_subcommand(1);
  auto* exact = oracle->add_subcommand("exact-moment", "Exact Gaussian moment by Wick enumeration");
  exact->add_option("--kind", orc.kind, "iid|flip|violating");
  exact->add_option("--n", orc.n, "Matrix size");
  exact->add_option("--k", orc.k, "Moment order");
  exact->add_option("--dist", orc.dist, "gaussian_complex|gaussian_real");
  exact->add_option("--budget", orc.budget, "Step budget");

  auto* fermi = app.add_subcommand("fermi", "Fermi-shell effective matrices");
  fermi->require_subcommand(1);
  ShellArgs sh;
  auto* shell = fermi->add_subcommand("shell", "Enumerate the shell as JSON");
  shell->add_option("--d", sh.d, "Dimension (2 or 3)");
  shell->add_option("--L", sh.L, "Even lattice size");
  shell->add_option("--E", sh.E, "Fermi energy");
  shell->add_option("--beta", sh.beta, "Shell width");
  BuildArgs bu;
  auto* build = fermi->add_subcommand("build", "Rescaled effective matrices into a binary file");
  build->add_option("--shell", bu.shell, "Shell JSON from 'fermi shell'");
  build->add_option("--lambda", bu.lambda, "Coupling");
  build->add_option("--count", bu.count, "Number of matrices");
  ScanArgs sc;
  auto* scan = fermi->add_subcommand("scan", "Shell size and spectral width against the coupling");
  scan->add_option("--lambdas", sc.lambdas, "Couplings")->delimiter(',');
  scan->add_option("--d", sc.d, "Dimension");
  scan->add_option("--E", sc.E, "Fermi energy");
  scan->add_option("--beta", sc.beta, "Shell width");
  scan->add_option("--draws", sc.draws, "Draws per coupling");
  scan->add_option("--max-L", sc.max_L, "Lattice budget");

  FreenessArgs fr;
  auto* freeness = app.add_subcommand("freeness", "Mixed moments against the free prediction");
  freeness->add_option("--word", fr.words, "Word such as \"x d x d\" (repeatable)");
  freeness->add_option("--diag", fr.diag, "twopoint | uniform[:a,b] | values:v1,v2,...");
  freeness->add_flag("--diag-random", fr.diag_random, "I.i.d. diagonal instead of quantiles");
  freeness->add_option("--n", fr.n, "Matrix sizes")->delimiter(',');
  freeness->add_option("--samples", fr.samples, "Samples per size");
  freeness->add_option("--x-kind", fr.x_kind, "Relation for the x letters");
  freeness->add_option("--dist", fr.dist, "Entry distribution for the x letters");

  for (auto* sub : {relations, check, ensemble, sample_cmd, spectrum, census_cmd, oracle, exact, fermi, shell, build, scan,
                    freeness}) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ExtrasError& e) {
    error_json(err, "unknown_flag", e.what());
    return 2;
  } catch (const CLI::ParseError& e) {
    error_json(err, "validation", e.what());
    return 2;
  }
  try {
    set_thread_count(g.threads);
    const Output output(g, out);
    if (check->parsed()) run_relations_check(rel, output);
    else if (sample_cmd->parsed()) run_ensemble_sample(sample, g, output);
    else if (spectrum->parsed()) run_spectrum(spec, output);
    else if (census_cmd->parsed()) run_census(cen, output);
    else if (exact->parsed()) run_oracle(orc, output);
    else if (shell->parsed()) {
      if (!sh.L) throw std::invalid_argument("--L is required");
      output.json_doc(shell_json(enumerate_shell(sh.d, *sh.L, sh.E, sh.beta)));
    } else if (build->parsed()) run_fermi_build(bu, g, output);
    else if (scan->parsed()) run_fermi_scan(sc, g, output);
    else if (freeness->parsed()) run_freeness(fr, g, output);
    return 0;
  } catch (const BudgetExceeded& e) {
    error_json(err, "budget_exceeded", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    error_json(err, "validation", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    error_json(err, "validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    error_json(err, "internal", e.what());
    return 1;
  }
}

}  // namespace wigner::cli
