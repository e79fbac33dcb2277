#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "girg/errors.hpp"
#include "girg/experiments.hpp"
#include "girg/graph_io.hpp"
#include "girg/integrals.hpp"
#include "girg/parallel.hpp"

namespace girg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "0.3.0";
constexpr const char* kSchema = "girg/1";

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed to write '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Manifest {
  Manifest(std::string cmd, std::string cfg, std::uint64_t s)
      : command(std::move(cmd)), config(std::move(cfg)), seed(s) {}

  std::string command;
  std::string config;
  std::uint64_t seed = 0;
  std::string started = utc_now();
  std::vector<std::string> outputs;

  void write(const fs::path& path) {
    outputs.push_back(path.string());
    json j{{"schema", kSchema},
           {"tool", "girg"},
           {"version", kToolVersion},
           {"command", command},
           {"config", config},
           {"seed", seed},
           {"started_at", started},
           {"finished_at", utc_now()},
           {"outputs", outputs}};
    write_text(path, j.dump(2) + "\n");
  }
};

json fit_to_json(int k, const SlopeFit& fit, double tau) {
  json j{{"k", k},
         {"slope", fit.slope},
         {"intercept", fit.intercept},
         {"r_squared", fit.r_squared},
         {"slope_std_error", fit.slope_std_error},
         {"slope_ci95", {fit.slope_ci_low, fit.slope_ci_high}},
         {"n", fit.n_values},
         {"mean", fit.per_n_means},
         {"q10", fit.per_n_q10},
         {"q90", fit.per_n_q90},
         {"warnings", fit.warnings}};
  if (k >= 3 && classify_regime(k, tau) != Regime::kBoundary) {
    j["theoretical_exponent"] = theoretical_exponent(k, tau);
  }
  return j;
}

json summary_to_json(const AttributeSummary& s) {
  auto sketch = [](const QuantileSketch& q) {
    if (q.count() == 0) return json{{"count", 0}};
    return json{{"count", q.count()}, {"min", q.min()},           {"q10", q.quantile(0.1)},
                {"median", q.quantile(0.5)}, {"q90", q.quantile(0.9)}, {"max", q.max()}};
  };
  return json{{"member_weights", sketch(s.member_weights)},
              {"pairwise_distances", sketch(s.pairwise_distances)}};
}

CliqueBandSpec parse_band(const std::string& text, int d) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed band spec: ") + e.what());
  }
  CliqueBandSpec spec;
  try {
    spec.k = j.at("k").get<int>();
    spec.alpha = j.at("alpha").get<std::vector<double>>();
    spec.beta = j.at("beta").get<std::vector<std::vector<double>>>();
    spec.eps = j.at("eps").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed band spec: ") + e.what());
  }
  spec.validate(d);
  return spec;
}

// Options shared by the sweep-driven commands.
struct SweepFlags {
  SweepConfig cfg;
  std::string sampler = "cellgrid";
  std::string out_dir = "out";
  std::size_t drop_smallest = 0;

  void attach(CLI::App* app) {
    cfg.n_grid = {1024, 2048, 4096, 8192, 16384, 32768, 65536};
    cfg.replicas = 100;
    cfg.threads = default_thread_count();
    app->add_option("--tau", cfg.tau, "Weight exponent, 2 < tau < 3")->capture_default_str();
    app->add_option("--gamma", cfg.gamma, "Connection exponent, gamma > 1")->capture_default_str();
    app->add_option("--d", cfg.d, "Torus dimension")->capture_default_str();
    app->add_option("--w0", cfg.w0, "Minimum weight")->capture_default_str();
    app->add_option("--n-grid", cfg.n_grid, "Ascending vertex counts")->capture_default_str();
    app->add_option("--replicas", cfg.replicas, "Replicas per n")->capture_default_str();
    app->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app->add_option("--sampler", sampler, "naive or cellgrid")->capture_default_str();
    app->add_option("--cap", cfg.clique_cap, "Clique enumeration cap per graph")->capture_default_str();
    app->add_option("--threads", cfg.threads, "Worker threads (default: $GIRG_THREADS or all cores)")
        ->capture_default_str();
    app->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  }

  void finish() { cfg.sampler = parse_sampler_kind(sampler); }
};

std::string sweep_csv_header(const SweepConfig& cfg) {
  std::string h = "n,replica,k,edges,count,truncated,wall_seconds";
  for (std::size_t i = 0; i < cfg.windows.size(); ++i) h += ",window_" + std::to_string(i);
  for (std::size_t i = 0; i < cfg.bands.size(); ++i) h += ",band_" + std::to_string(i);
  return h + "\n";
}

std::string sweep_csv_row(const SweepRow& r) {
  std::ostringstream os;
  os << r.n << ',' << r.replica << ',' << r.k << ',' << r.edges << ',' << r.count << ','
     << (r.truncated ? 1 : 0) << ',' << format_double(r.wall_seconds);
  for (const auto& c : r.window_counts) {
    os << ',';
    if (c) os << *c;
  }
  for (const auto& c : r.band_counts) {
    os << ',';
    if (c) os << *c;
  }
  os << '\n';
  return os.str();
}

class Tool {
 public:
  Tool(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Clique statistics of geometric inhomogeneous random graphs", "girg"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    setup_sample(app);
    setup_count(app);
    setup_scaling(app);
    setup_typical(app);
    setup_phase(app);
    setup_integrals(app);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitValidation;
    }
    // Echo only the selected command's options; the text is a valid --config file.
    const std::string prefix = app.get_subcommands().front()->get_name() + ".";
    std::istringstream all(app.config_to_str(true, false));
    for (std::string line; std::getline(all, line);) {
      if (line.rfind(prefix, 0) == 0) config_echo_ += line + "\n";
    }
    try {
      action_();
      return exit_code_;
    } catch (const CapacityError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitCapacity;
    } catch (const IoError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitIo;
    } catch (const ValidationError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitValidation;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitValidation;
    }
  }

 private:
  void setup_sample(CLI::App& app) {
    auto* cmd = app.add_subcommand("sample", "Sample a GIRG and write it in v1 format");
    auto& o = sample_;
    cmd->add_option("--n", o.n, "Number of vertices")->required();
    cmd->add_option("--d", o.d, "Torus dimension")->capture_default_str();
    cmd->add_option("--tau", o.tau, "Weight exponent, 2 < tau < 3")->required();
    cmd->add_option("--gamma", o.gamma, "Connection exponent, gamma > 1")->required();
    cmd->add_option("--w0", o.w0, "Minimum weight")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed")->capture_default_str();
    cmd->add_option("--sampler", o.sampler, "naive or cellgrid")->capture_default_str();
    cmd->add_option("--out", o.out, "Output graph path")->required();
    cmd->add_option("--manifest", o.manifest, "Manifest path (default: OUT.manifest.json)");
    cmd->callback([this] { action_ = [this] { cmd_sample(); }; });
  }

  void cmd_sample() {
    const auto& o = sample_;
    const GirgParams params(o.n, o.d, o.tau, o.w0, o.gamma, o.seed);
    const GirgGraph g = sample(params, RngStream{o.seed, 0}, parse_sampler_kind(o.sampler));
    save_graph(o.out, g);
    Manifest m("sample", config_echo_, o.seed);
    m.outputs.push_back(o.out);
    m.write(o.manifest.empty() ? o.out + ".manifest.json" : o.manifest);
    out_ << "n=" << g.num_vertices() << " m=" << g.edge_count()
         << " max_degree=" << g.topology().max_degree() << '\n';
  }

  void setup_count(CLI::App& app) {
    auto* cmd = app.add_subcommand("count", "Count k-cliques in a v1 graph file");
    auto& o = count_;
    o.threads = default_thread_count();
    cmd->add_option("--graph", o.graph, "Graph file")->required();
    cmd->add_option("--k", o.k, "Clique size")->required();
    auto* band = cmd->add_option("--band", o.band, "Band spec JSON file");
    auto* window = cmd->add_option("--window", o.window, "Typical-clique window: ng or g")
                       ->check(CLI::IsMember({"ng", "g"}));
    cmd->add_option("--eps", o.eps, "Window sensitivity")->capture_default_str();
    cmd->add_flag("--summary", o.summary, "Include attribute quantile summaries");
    cmd->add_option("--cap", o.cap, "Enumeration cap")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--out", o.out, "Also write the JSON result to this path");
    band->excludes(window);
    cmd->callback([this] { action_ = [this] { cmd_count(); }; });
  }

  void cmd_count() {
    const auto& o = count_;
    if (o.k < 2) throw ValidationError("k must be at least 2");
    const GirgGraph g = load_graph(o.graph);
    const EnumerationOptions options{o.cap, std::max(1u, o.threads)};
    CliqueCountResult r;
    json j{{"schema", kSchema}, {"graph", o.graph}, {"k", o.k}};
    if (!o.band.empty()) {
      const auto spec = parse_band(read_text(o.band), g.dimension());
      if (spec.k != o.k) throw ValidationError("band spec k differs from --k");
      r = count_cliques_in_band(g, spec, options, o.summary);
      j["in_band"] = *r.in_band;
    } else if (!o.window.empty()) {
      const TypicalCliqueWindow w{o.window == "ng" ? WindowKind::kNonGeometric : WindowKind::kGeometric,
                                  o.k, o.eps};
      r = count_cliques_in_window(g, w, options, o.summary);
      j["in_window"] = *r.in_band;
      j["window"] = {{"kind", o.window}, {"eps", o.eps}};
    } else {
      r = count_cliques(g, o.k, options, o.summary);
    }
    j["total"] = r.total;
    j["truncated"] = r.truncated;
    if (r.summary) j["summary"] = summary_to_json(*r.summary);
    const std::string text = j.dump(2) + "\n";
    out_ << text;
    if (!o.out.empty()) write_text(o.out, text);
    if (r.truncated) {
      err_ << "warning: enumeration stopped at the cap of " << o.cap << " cliques\n";
      exit_code_ = kExitCapacity;
    }
  }

  void setup_scaling(CLI::App& app) {
    auto* cmd = app.add_subcommand("scaling", "Clique-count scaling sweep with log-log slope fits");
    scaling_.attach(cmd);
    cmd->add_option("--k", scaling_k_, "Clique sizes")->capture_default_str();
    cmd->add_option("--drop-smallest", scaling_.drop_smallest, "Ignore the smallest n values in the fit")
        ->capture_default_str();
    cmd->callback([this] { action_ = [this] { cmd_scaling(); }; });
  }

  void cmd_scaling() {
    scaling_.finish();
    SweepConfig cfg = scaling_.cfg;
    cfg.k_list = scaling_k_;
    cfg.validate();
    const fs::path dir = scaling_.out_dir;
    const fs::path csv_path = dir / "scaling.csv";
    std::string csv = sweep_csv_header(cfg);
    const auto rows = run_scaling_sweep(cfg, [&](const SweepRow& r) { csv += sweep_csv_row(r); });
    write_text(csv_path, csv);

    json fits = json::array();
    for (int k : cfg.k_list) fits.push_back(fit_to_json(k, fit_loglog_slope(rows, k, scaling_.drop_smallest), cfg.tau));
    std::size_t truncated = 0;
    for (const auto& r : rows) truncated += r.truncated;
    json summary{{"schema", kSchema}, {"tau", cfg.tau}, {"gamma", cfg.gamma}, {"d", cfg.d},
                 {"fits", fits}, {"truncated_rows", truncated}};
    const fs::path json_path = dir / "scaling.json";
    write_text(json_path, summary.dump(2) + "\n");
    Manifest m("scaling", config_echo_, cfg.seed);
    m.outputs = {csv_path.string(), json_path.string()};
    m.write(dir / "manifest.json");
    out_ << summary.dump(2) << '\n';
    if (truncated > 0) exit_code_ = kExitCapacity;
  }

  void setup_typical(CLI::App& app) {
    auto* cmd = app.add_subcommand("typical", "Fraction of cliques inside the typical window");
    typical_.attach(cmd);
    cmd->add_option("--k", typical_k_, "Clique size")->capture_default_str();
    cmd->add_option("--eps", typical_eps_, "Window sensitivities")->capture_default_str();
    cmd->callback([this] { action_ = [this] { cmd_typical(); }; });
  }

  void cmd_typical() {
    typical_.finish();
    const SweepConfig& cfg = typical_.cfg;
    const auto rows = typical_clique_experiment(cfg, typical_k_, typical_eps_);
    const fs::path dir = typical_.out_dir;
    std::string csv = "n,eps,window,mean_fraction,replicas_used,replicas_excluded\n";
    json table = json::array();
    for (const auto& r : rows) {
      const char* kind = r.kind == WindowKind::kNonGeometric ? "ng" : "g";
      csv += std::to_string(r.n) + ',' + format_double(r.eps) + ',' + kind + ',' +
             format_double(r.mean_fraction) + ',' + std::to_string(r.replicas_used) + ',' +
             std::to_string(r.replicas_excluded) + '\n';
      table.push_back({{"n", r.n}, {"eps", r.eps}, {"window", kind}, {"mean_fraction", r.mean_fraction},
                       {"replicas_used", r.replicas_used}, {"replicas_excluded", r.replicas_excluded}});
    }
    const fs::path csv_path = dir / "typical.csv";
    const fs::path json_path = dir / "typical.json";
    write_text(csv_path, csv);
    json summary{{"schema", kSchema}, {"k", typical_k_}, {"tau", cfg.tau}, {"rows", table}};
    write_text(json_path, summary.dump(2) + "\n");
    Manifest m("typical", config_echo_, cfg.seed);
    m.outputs = {csv_path.string(), json_path.string()};
    m.write(dir / "manifest.json");
    out_ << summary.dump(2) << '\n';
  }

  void setup_phase(CLI::App& app) {
    auto* cmd = app.add_subcommand("phase", "Regime classification over a (tau, k) grid");
    cmd->add_option("--tau", phase_tau_, "Explicit tau values (overrides the range)");
    cmd->add_option("--tau-min", phase_tau_min_, "First tau of the range")->capture_default_str();
    cmd->add_option("--tau-max", phase_tau_max_, "Last tau of the range")->capture_default_str();
    cmd->add_option("--tau-step", phase_tau_step_, "Range step")->capture_default_str();
    cmd->add_option("--k", phase_k_, "Clique sizes")->capture_default_str();
    cmd->add_option("--out", phase_out_, "CSV output path")->capture_default_str();
    cmd->callback([this] { action_ = [this] { cmd_phase(); }; });
  }

  void cmd_phase() {
    std::vector<double> taus = phase_tau_;
    if (taus.empty()) {
      if (!(phase_tau_step_ > 0.0)) throw ValidationError("tau-step must be positive");
      const auto steps = static_cast<long>(std::floor((phase_tau_max_ - phase_tau_min_) / phase_tau_step_ + 1e-9));
      // Rounded to 12 decimals so grid points print as typed (2.1, not 2.1000000000000001).
      for (long i = 0; i <= steps; ++i) {
        taus.push_back(std::round((phase_tau_min_ + static_cast<double>(i) * phase_tau_step_) * 1e12) / 1e12);
      }
    }
    const auto cells = phase_diagram(taus, phase_k_);
    std::string csv = "tau,k,regime,threshold,exponent\n";
    for (const auto& c : cells) {
      csv += format_double(c.tau) + ',' + std::to_string(c.k) + ',' + std::string(to_string(c.regime)) + ',' +
             format_double(c.threshold) + ',' + (c.exponent ? format_double(*c.exponent) : "") + '\n';
    }
    write_text(phase_out_, csv);
    Manifest m("phase", config_echo_, 0);
    m.outputs = {phase_out_};
    m.write(fs::path(phase_out_).replace_extension(".manifest.json"));
    out_ << csv;
  }

  void setup_integrals(CLI::App& app) {
    auto* cmd = app.add_subcommand("integrals", "Monte Carlo estimate of J^NG or J^G");
    auto& o = integrals_;
    o.threads = default_thread_count();
    cmd->add_option("--kind", o.kind, "ng or g")->required()->check(CLI::IsMember({"ng", "g"}));
    cmd->add_option("--k", o.k, "Clique size")->capture_default_str();
    cmd->add_option("--tau", o.tau, "Weight exponent")->capture_default_str();
    cmd->add_option("--gamma", o.gamma, "Connection exponent")->capture_default_str();
    cmd->add_option("--d", o.d, "Dimension")->capture_default_str();
    cmd->add_option("--w0", o.w0, "Minimum weight (G kind)")->capture_default_str();
    cmd->add_option("--eps", o.eps, "Truncation sensitivity, 0 for the full integral")->capture_default_str();
    cmd->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--out", o.out, "Also write the JSON result to this path");
    cmd->callback([this] { action_ = [this] { cmd_integrals(); }; });
  }

  void cmd_integrals() {
    const auto& o = integrals_;
    const EstimatorOptions options{ProposalConfig{}, std::max(1u, o.threads)};
    const RngStream stream{o.seed, 0};
    const IntegralEstimate J = o.kind == "ng"
                                   ? estimate_JNG(o.k, o.tau, o.gamma, o.d, o.eps, o.samples, stream, options)
                                   : estimate_JG(o.k, o.tau, o.gamma, o.d, o.w0, o.eps, o.samples, stream, options);
    json j{{"schema", kSchema},       {"kind", to_string(J.kind)}, {"k", o.k},
           {"tau", o.tau},            {"gamma", o.gamma},          {"d", o.d},
           {"value", J.value},        {"std_error", J.std_error},  {"samples", J.samples},
           {"truncation", J.truncation}, {"proposal", J.proposal}};
    if (J.eps) j["eps"] = *J.eps;
    if (o.eps == 0.0) {
      const double mu = (o.tau - 1.0) / (o.tau - 2.0) * o.w0;
      j["mu"] = mu;
      j["predicted_limit_constant"] = predicted_limit_constant(o.k, o.tau, o.gamma, o.d, J, mu);
    }
    const std::string text = j.dump(2) + "\n";
    out_ << text;
    if (!o.out.empty()) {
      write_text(o.out, text);
      Manifest m("integrals", config_echo_, o.seed);
      m.outputs = {o.out};
      m.write(o.out + ".manifest.json");
    }
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<void()> action_;
  std::string config_echo_;
  int exit_code_ = kExitOk;

  struct {
    std::uint64_t n = 0;
    int d = 1;
    double tau = 0.0, gamma = 0.0, w0 = 1.0;
    std::uint64_t seed = 1;
    std::string sampler = "cellgrid", out, manifest;
  } sample_;
  struct {
    std::string graph, band, window, out;
    int k = 3;
    double eps = 0.5;
    bool summary = false;
    std::uint64_t cap = kDefaultCliqueCap;
    unsigned threads = 1;
  } count_;
  SweepFlags scaling_;
  std::vector<int> scaling_k_{3};
  SweepFlags typical_;
  int typical_k_ = 3;
  std::vector<double> typical_eps_{0.5, 0.2, 0.1, 0.05};
  std::vector<double> phase_tau_;
  double phase_tau_min_ = 2.02, phase_tau_max_ = 2.98, phase_tau_step_ = 0.02;
  std::vector<int> phase_k_{3, 4, 5, 6, 7, 8, 9, 10};
  std::string phase_out_ = "phase.csv";
  struct {
    std::string kind, out;
    int k = 3, d = 1;
    double tau = 2.7, gamma = 1.5, w0 = 1.0, eps = 0.0;
    std::uint64_t samples = 1'000'000, seed = 1;
    unsigned threads = 1;
  } integrals_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Tool tool(out, err);
  return tool.run(args);
}

}  // namespace girg::cli
