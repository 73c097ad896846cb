#include "spectral/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spectral/approx.hpp"
#include "spectral/cbf.hpp"
#include "spectral/error.hpp"
#include "spectral/interpolation.hpp"
#include "spectral/io.hpp"
#include "spectral/normlab.hpp"
#include "spectral/report.hpp"
#include "spectral/transforms.hpp"

namespace spectral::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Artifact {
  std::string path;  // relative to the output directory
  std::string content;
};

struct OpOptions {
  std::string op = "dirichlet-interval";
  double L = kPi;
  std::vector<double> lengths{1.0, 1.0};
  int d = 2;

  void add(CLI::App* app) {
    app->add_option("--op", op, "operator")
        ->check(CLI::IsMember({"dirichlet-interval", "dirichlet-box", "torus", "torus-vector", "torus-stokes"}))
        ->capture_default_str();
    app->add_option("--L", L, "interval length")->capture_default_str();
    app->add_option("--lengths", lengths, "box side lengths")->capture_default_str();
    app->add_option("--d", d, "torus dimension")->capture_default_str();
  }

  OperatorSpec build() const {
    if (op == "dirichlet-interval") return OperatorSpec::dirichlet_laplacian(DomainSpec::interval(L));
    if (op == "dirichlet-box") return OperatorSpec::dirichlet_laplacian(DomainSpec::box(lengths));
    if (op == "torus") return OperatorSpec::torus_laplacian(DomainSpec::torus(d));
    if (op == "torus-vector") return OperatorSpec::torus_laplacian(DomainSpec::torus(d), d);
    return OperatorSpec::torus_stokes(DomainSpec::torus(d));
  }
};

struct FamilyOptions {
  std::string family = "random-smooth";
  double lambda_max = 64.0;
  int modes = 10;
  int samples = 1;

  void add(CLI::App* app) {
    app->add_option("--family", family, "sample family")
        ->check(CLI::IsMember({"random-smooth", "boundary-bump", "near-extremal"}))
        ->capture_default_str();
    app->add_option("--lambda-max", lambda_max, "mode budget")->capture_default_str();
    app->add_option("--modes", modes, "modes per random field")->capture_default_str();
    app->add_option("--samples", samples, "number of sampled fields")->capture_default_str();
  }

  lab::ExperimentConfig config(const OperatorSpec& op, std::uint64_t seed) const {
    lab::ExperimentConfig c;
    c.op = op;
    c.family = lab::parse_family(family);
    c.lambda_max = lambda_max;
    c.modes = modes;
    c.samples = samples;
    c.seed = seed;
    return c;
  }
};

std::string reports_csv(const std::vector<NormReport>& rows) {
  std::ostringstream os;
  write_reports_csv(os, rows);
  return os.str();
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return s;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ResourceLimitError("cannot write " + p.string());
  f << content;
  if (!f) throw ResourceLimitError("cannot write " + p.string());
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw ResourceLimitError("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral approximation and energy-equality experiments"};
  app.name("spectral");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "read options from a TOML/INI file");
  app.allow_config_extras(false);

  std::string out_dir = "spectral-out";
  std::uint64_t seed = 1;
  bool plot = false;
  app.add_option("--out", out_dir, "output directory")->envname(kOutEnv)->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_flag("--plot", plot, "also write SVG plots");

  // modes
  auto* modes = app.add_subcommand("modes", "list eigenpairs up to lambda_max");
  OpOptions modes_op;
  double modes_lambda = 10.0;
  modes_op.add(modes);
  modes->add_option("--lambda-max", modes_lambda, "eigenvalue cutoff")->capture_default_str();

  // approx
  auto* approx_cmd = app.add_subcommand("approx", "semigroup / Pi_theta convergence study");
  OpOptions approx_op;
  FamilyOptions approx_fam;
  std::string method = "both";
  std::vector<double> alphas{0.0, 0.5};
  std::vector<double> ps;
  int m_max = 30;
  approx_op.add(approx_cmd);
  approx_fam.add(approx_cmd);
  approx_cmd->add_option("--method", method, "semigroup, pi_theta or both")
      ->check(CLI::IsMember({"semigroup", "pi_theta", "both"}))
      ->capture_default_str();
  approx_cmd->add_option("--alpha", alphas, "D(A^alpha) exponents")->capture_default_str();
  approx_cmd->add_option("--p", ps, "L^p exponents")->capture_default_str();
  approx_cmd->add_option("--m-max", m_max, "theta = 2^-m for m = 1..m_max")->check(CLI::Range(1, 60))->capture_default_str();

  // interp
  auto* interp_cmd = app.add_subcommand("interp", "interpolation norms and I(theta)");
  OpOptions interp_op;
  FamilyOptions interp_fam;
  std::vector<double> thetas{0.5};
  bool check_itheta = false;
  bool reiteration = false;
  int points = 512;
  interp_op.add(interp_cmd);
  interp_fam.add(interp_cmd);
  interp_cmd->add_option("--theta", thetas, "interpolation parameters")->capture_default_str();
  interp_cmd->add_flag("--check-itheta", check_itheta, "compare I(theta) with quadrature only");
  interp_cmd->add_flag("--reiteration", reiteration, "add the reiteration ratio rows");
  interp_cmd->add_option("--points", points, "Simpson intervals in log t")->capture_default_str();

  // h00
  auto* h00_cmd = app.add_subcommand("h00", "boundary-weighted norm refinement table");
  int h00_n = 201;
  double h00_L = kPi;
  std::string h00_fn = "sin";
  int h00_levels = interp::kDefaultH00Levels;
  h00_cmd->add_option("--N", h00_n, "grid points")->capture_default_str();
  h00_cmd->add_option("--L", h00_L, "interval length")->capture_default_str();
  h00_cmd->add_option("--function", h00_fn, "sampled function")
      ->check(CLI::IsMember({"sin", "one", "zero", "bump", "sqrt"}))
      ->capture_default_str();
  h00_cmd->add_option("--levels", h00_levels, "refinement levels")->capture_default_str();

  // truncate
  auto* trunc_cmd = app.add_subcommand("truncate", "spherical vs cubic partial sums in L^p");
  lab::TruncationConfig tcfg;
  trunc_cmd->add_option("--d", tcfg.dim, "torus dimension")->capture_default_str();
  trunc_cmd->add_option("--p", tcfg.p, "L^p exponent")->capture_default_str();
  trunc_cmd->add_option("--n", tcfg.ns, "truncation orders")->capture_default_str();
  trunc_cmd->add_option("--samples", tcfg.samples, "fields per order")->capture_default_str();

  // cbf
  auto* cbf_cmd = app.add_subcommand("cbf", "Brinkman-Forchheimer run and energy ledger");
  cbf::CBFParams cp;
  bool tg = false;
  bool nse_path = false;
  bool checkpoints = false;
  int kmax = 3;
  double energy = 1.0;
  cbf_cmd->add_option("--d", cp.dim, "dimension")->capture_default_str();
  cbf_cmd->add_option("--mu", cp.mu, "viscosity")->capture_default_str();
  cbf_cmd->add_option("--beta", cp.beta, "absorption coefficient")->capture_default_str();
  cbf_cmd->add_option("--r", cp.r, "absorption exponent")->capture_default_str();
  cbf_cmd->add_option("--N", cp.N, "grid points per axis")->capture_default_str();
  cbf_cmd->add_option("--dt", cp.dt, "time step")->capture_default_str();
  cbf_cmd->add_option("--T", cp.T, "final time")->capture_default_str();
  cbf_cmd->add_option("--snapshot-every", cp.snapshot_every, "steps between snapshots")->capture_default_str();
  cbf_cmd->add_flag("--taylor-green", tg, "Taylor-Green initial data (2D)");
  cbf_cmd->add_option("--kmax", kmax, "band of the random initial data")->capture_default_str();
  cbf_cmd->add_option("--energy", energy, "initial kinetic energy of random data")->capture_default_str();
  cbf_cmd->add_flag("--nse-path", nse_path, "run without the absorption branch (beta = 0)");
  cbf_cmd->add_flag("--checkpoints", checkpoints, "dump every snapshot's coefficients");

  // report
  auto* report_cmd = app.add_subcommand("report", "table of constants and equivalence brackets");
  int report_fields = 10;
  report_cmd->add_option("--fields", report_fields, "fields in the Sobolev family")->capture_default_str();

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << "error code=" << code << " kind=" << kind << " message=\"" << one_line(msg) << "\"\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(kExitConfig, "config", e.what());
  }

  std::vector<Artifact> files;
  nlohmann::json extra = nlohmann::json::object();
  std::string sub;
  try {
    if (*modes) {
      sub = "modes";
      const auto op = modes_op.build();
      std::ostringstream os;
      os << "index";
      for (int a = 0; a < op.dim(); ++a) os << ",k" << a + 1;
      os << ",polarization,eigenvalue\n";
      int i = 0;
      for (const auto& ep : enumerate_modes(op, modes_lambda)) {
        os << i++;
        for (int a = 0; a < op.dim(); ++a) os << ',' << ep.index.k[static_cast<std::size_t>(a)];
        os << ',' << ep.index.pol << ',' << format_double(ep.eigenvalue) << '\n';
      }
      files.push_back({"modes.csv", os.str()});
    } else if (*approx_cmd) {
      sub = "approx";
      const auto cfg = approx_fam.config(approx_op.build(), seed);
      const auto family = lab::sample_family(cfg);
      std::vector<lab::NormTag> tags;
      for (double a : alphas) tags.push_back(lab::NormTag::fractional(a));
      for (double p : ps) tags.push_back(lab::NormTag::lp(p));
      std::vector<double> grid;
      for (int m = 1; m <= m_max; ++m) grid.push_back(std::ldexp(1.0, -m));
      std::vector<lab::Method> methods;
      if (method != "pi_theta") methods.push_back(lab::Method::Semigroup);
      if (method != "semigroup") methods.push_back(lab::Method::PiTheta);
      std::vector<NormReport> rows;
      std::vector<PlotSeries> series;
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (auto mth : methods) {
          for (auto r : lab::convergence_study(family[i], mth, tags, grid)) {
            r.params.emplace_back("sample", static_cast<double>(i));
            if (i == 0) {
              const std::string label = r.quantity + " " + r.metadata;
              auto it = std::find_if(series.begin(), series.end(), [&](const PlotSeries& s) { return s.label == label; });
              if (it == series.end()) {
                series.push_back({label, {}, {}});
                it = series.end() - 1;
              }
              it->x.push_back(r.param("theta"));
              it->y.push_back(r.ratio);
            }
            rows.push_back(std::move(r));
          }
        }
      }
      files.push_back({"approx.csv", reports_csv(rows)});
      if (plot) {
        files.push_back({"approx.svg", render_svg({"Relative error along dyadic theta", "theta", "relative error", true, true}, series)});
      }
    } else if (*interp_cmd) {
      sub = "interp";
      std::vector<NormReport> rows;
      if (check_itheta) {
        for (double th : thetas) {
          rows.push_back(NormReport::make("I_theta", {{"theta", th}}, interp::i_theta_quadrature(th), interp::i_theta(th)));
        }
      } else {
        const auto cfg = interp_fam.config(interp_op.build(), seed);
        const auto family = lab::sample_family(cfg);
        for (double th : thetas) {
          interp::InterpolationQuery q;
          q.theta = th;
          q.points = points;
          for (const auto& f : family) {
            rows.push_back(NormReport::make("interp_norm", {{"theta", th}}, interp::interpolation_norm(f, q),
                                            std::sqrt(interp::i_theta(th)) * approx::fractional_norm(f, th)));
            if (reiteration) {
              const auto r = interp::reiteration_check(f, th);
              rows.push_back(r.lower);
              rows.push_back(r.upper);
            }
          }
        }
      }
      std::ostringstream os;
      write_interpolation_csv(os, rows);
      files.push_back({"interp.csv", os.str()});
      if (plot) {
        PlotSeries s{"ratio", {}, {}};
        for (const auto& r : rows) {
          s.x.push_back(r.param("theta"));
          s.y.push_back(r.ratio);
        }
        files.push_back({"interp.svg", render_svg({"value / reference", "theta", "ratio", false, false}, std::vector{s})});
      }
    } else if (*h00_cmd) {
      sub = "h00";
      GridField g(DomainSpec::interval(h00_L), {h00_n, 1, 1}, 1);
      for (int i = 0; i < h00_n; ++i) {
        const double x = g.coordinate(0, i);
        double v = 0.0;
        if (h00_fn == "sin") v = std::sin(kPi * x / h00_L);
        if (h00_fn == "one") v = 1.0;
        if (h00_fn == "bump") v = std::pow(x * (h00_L - x) / (h00_L * h00_L), 2.0);
        if (h00_fn == "sqrt") v = std::sqrt(x * (h00_L - x)) / h00_L;
        g.at(static_cast<std::size_t>(i), 0) = v;
      }
      const auto res = interp::h00_weighted_norm(g, interp::BoundaryWeight::distance_like(g.domain()), h00_levels);
      std::ostringstream os;
      os << "function,level,value,divergent\n";
      PlotSeries s{h00_fn, {}, {}};
      for (std::size_t l = 0; l < res.refinements.size(); ++l) {
        os << h00_fn << ',' << l + 1 << ',' << format_double(res.refinements[l]) << ',' << (res.divergent ? 1 : 0) << '\n';
        s.x.push_back(static_cast<double>(l + 1));
        s.y.push_back(res.refinements[l]);
      }
      files.push_back({"h00.csv", os.str()});
      if (plot) files.push_back({"h00.svg", render_svg({"Weighted norm by refinement level", "level", "integral", false, false}, std::vector{s})});
    } else if (*trunc_cmd) {
      sub = "truncate";
      tcfg.seed = seed;
      auto rows = lab::truncation_trend(tcfg);
      const bool bounded = lab::cubic_sequence_bounded(rows);
      rows.push_back(NormReport::make("cubic_bounded", {{"d", tcfg.dim}, {"p", tcfg.p}}, bounded ? 1.0 : 0.0, 1.0,
                                      "max over n <= 1.2 x max over first three n"));
      files.push_back({"truncate.csv", reports_csv(rows)});
      if (plot) {
        std::vector<PlotSeries> series{{"spherical", {}, {}}, {"cubic", {}, {}}};
        for (const auto& r : rows) {
          const int k = r.quantity == "truncation_spherical" ? 0 : r.quantity == "truncation_cubic" ? 1 : -1;
          if (k < 0) continue;
          series[static_cast<std::size_t>(k)].x.push_back(r.param("n"));
          series[static_cast<std::size_t>(k)].y.push_back(r.value);
        }
        files.push_back({"truncate.svg", render_svg({"L^p ratio lower bounds", "n", "ratio", false, false}, series)});
      }
    } else if (*cbf_cmd) {
      sub = "cbf";
      cp.absorption_path = !nse_path;
      cp.validate();
      const auto init = tg ? cbf::taylor_green() : cbf::random_smooth_state(cp.dim, kmax, seed, energy);
      if (tg && cp.dim != 2) throw ConfigError("Taylor-Green data is 2D only");
      const auto traj = cbf::simulate(init, cp);
      const std::vector<cbf::EnergyLedger> ledger{cbf::energy_ledger(traj, traj.snapshots.front().t, traj.snapshots.back().t)};
      std::ostringstream lc;
      cbf::write_ledger_csv(lc, ledger);
      files.push_back({"ledger.csv", lc.str()});
      std::ostringstream ec;
      ec << "t,kinetic,enstrophy,absorption_integral\n";
      PlotSeries s{"kinetic energy", {}, {}};
      for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double e = std::pow(coefficient_l2_norm(traj.snapshots[i].u), 2.0);
        ec << format_double(traj.snapshots[i].t) << ',' << format_double(e) << ',' << format_double(traj.enstrophy[i])
           << ',' << format_double(traj.absorption[i]) << '\n';
        s.x.push_back(traj.snapshots[i].t);
        s.y.push_back(e);
      }
      files.push_back({"energy.csv", ec.str()});
      if (checkpoints) {
        extra["checkpoints"] = nlohmann::json::array();
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
          const long stepi = static_cast<long>(i) * cp.snapshot_every;
          std::ostringstream name;
          name << "checkpoints/step_" << std::setw(6) << std::setfill('0') << stepi << ".csv";
          std::ostringstream cc;
          write_spectral_csv(cc, traj.snapshots[i].u);
          files.push_back({name.str(), cc.str()});
          extra["checkpoints"].push_back({{"path", name.str()}, {"step", stepi}, {"t", traj.snapshots[i].t}});
        }
      }
      extra["params"] = {{"mu", cp.mu}, {"beta", cp.beta}, {"r", cp.r}, {"dim", cp.dim}, {"N", cp.N},
                         {"dt", cp.dt}, {"T", cp.T}, {"snapshot_every", cp.snapshot_every},
                         {"dealias_cutoff", cp.dealias_cutoff()}, {"absorption_path", cp.absorption_path}};
      if (plot) files.push_back({"energy.svg", render_svg({"Kinetic energy", "t", "||u||^2", false, true}, std::vector{s})});
    } else if (*report_cmd) {
      sub = "report";
      std::vector<NormReport> rows;
      for (int i = 1; i <= 9; ++i) {
        const double th = 0.1 * i;
        rows.push_back(NormReport::make("I_theta", {{"theta", th}}, interp::i_theta_quadrature(th), interp::i_theta(th)));
      }
      for (double th : {0.05, 0.25, 1.0}) {
        for (double k : {0.0, 0.5, 2.0}) {
          rows.push_back(NormReport::make("phi", {{"theta", th}, {"kappa", k}}, approx::phi(th, k), 0.0));
        }
      }
      for (double g : {0.0, 0.5, 1.0, 2.0}) rows.push_back(NormReport::make("c_gamma", {{"gamma", g}}, approx::c_gamma(g), 0.0));
      lab::ExperimentConfig cfg;
      cfg.op = OperatorSpec::dirichlet_laplacian(DomainSpec::interval(kPi));
      cfg.samples = report_fields;
      cfg.modes = 6;
      cfg.lambda_max = 100.0;
      cfg.seed = seed;
      for (auto& r : lab::sobolev_equivalence_study({0.0, 0.1, 0.25, 0.45, 0.5}, lab::sample_family(cfg))) rows.push_back(std::move(r));
      files.push_back({"report.csv", reports_csv(rows)});
    }

    // write artifacts and the manifest
    const std::filesystem::path dir(out_dir);
    nlohmann::json manifest;
    manifest["tool"] = "spectral";
    manifest["subcommand"] = sub;
    manifest["seed"] = seed;
    // echo the global options and the chosen subcommand's resolved options
    std::istringstream cfg_lines(app.config_to_str(true, false));
    std::string resolved;
    for (std::string line; std::getline(cfg_lines, line);) {
      const auto eq = line.find('=');
      const auto dot = line.find('.');
      if (dot == std::string::npos || dot > eq || line.compare(0, sub.size() + 1, sub + ".") == 0) {
        resolved += line + '\n';
      }
    }
    manifest["config"] = resolved;
    manifest["outputs"] = nlohmann::json::array();
    std::string digest_input;
    for (const auto& f : files) {
      write_file(dir / f.path, f.content);
      const std::string h = sha256_hex(f.content);
      manifest["outputs"].push_back({{"path", f.path}, {"sha256", h}, {"bytes", f.content.size()}});
      digest_input += f.path + '\0' + h + '\n';
    }
    manifest["content_hash"] = sha256_hex(digest_input);
    for (auto& [k, v] : extra.items()) manifest[k] = v;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    out << "ok subcommand=" << sub << " files=" << files.size() << " content_hash=" << manifest["content_hash"].get<std::string>()
        << " out=" << dir.string() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    return fail(kExitConfig, "config", e.what());
  } catch (const AliasingError& e) {
    return fail(kExitAccuracy, "aliasing", e.what());
  } catch (const AccuracyError& e) {
    return fail(kExitAccuracy, "accuracy", e.what());
  } catch (const ResourceLimitError& e) {
    return fail(kExitAccuracy, "resource", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitAccuracy, "resource", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitConfig, "config", e.what());
  }
}

}  // namespace spectral::cli
