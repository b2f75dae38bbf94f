#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polexp/errors.hpp"
#include "polexp/ivp_bench.hpp"
#include "polexp/linalg.hpp"
#include "polexp/matrix_eval.hpp"
#include "polexp/minimax.hpp"
#include "polexp/pole_optimizer.hpp"
#include "polexp/rate_function.hpp"
#include "svg.hpp"

namespace polexp::cli {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string format_2dp(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void maybe_write_svg(const std::string& path, const SvgPlot& plot) {
  if (path.empty()) return;
  std::ofstream out = open_output(path);
  write_svg(out, plot);
}

const double kCanonicalTmin[5] = {1.0, 1e-1, 1e-2, 1e-3, 1e-4};

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector file: " + path);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  return values;
}

}  // namespace

std::string format_sci(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", value);
  return buf;
}

void cmd_rate(double q, std::ostream& out) { out << format_sci(rate_h(q)) << '\n'; }

void cmd_poles(const PolesParams& params, std::ostream& out) {
  const TimeInterval interval(params.tmin, params.tmax);
  const PoleConfig pole = pole_location(params.n, interval);
  out << "qhat,sigma,rate\n";
  out << format_sci(pole.q) << ',' << format_sci(pole.sigma) << ','
      << format_sci(rate_g(pole.q, interval)) << '\n';
}

void cmd_table1(std::ostream& out) {
  out << "tmin,tmax,qhat,rate,qhat_2dp,rate_2dp\n";
  for (double tmin : kCanonicalTmin) {
    const TimeInterval interval(tmin, 1.0);
    const double qhat = find_qhat(interval);
    const double rate = rate_g(qhat, interval);
    out << format_sci(tmin) << ',' << format_sci(1.0) << ',' << format_sci(qhat) << ','
        << format_sci(rate) << ',' << format_2dp(round2(qhat)) << ',' << format_2dp(round2(rate))
        << '\n';
  }
}

void cmd_scan(const ScanParams& params, std::ostream& out) {
  const TimeInterval interval(params.tmin, params.tmax);
  if (params.gcount < 2) throw std::domain_error("scan: need --gcount >= 2");
  if (!(params.gmin > 0.0) || !(params.gmax > params.gmin)) {
    throw std::domain_error("scan: need 0 < gmin < gmax");
  }

  out << "gamma,q,rho_T\n";
  SvgSeries curve{"rho_T", {}, {}};
  const double la = std::log(params.gmin);
  const double lb = std::log(params.gmax);
  for (int i = 0; i < params.gcount; ++i) {
    const double gamma = std::exp(la + (lb - la) * i / (params.gcount - 1));
    const double q = 1.0 / (params.n * gamma);
    const ErrorProfile profile = time_uniform_error(params.n, q, interval);
    if (!profile.all_converged) {
      throw NumericalError("scan: Remez did not converge at gamma = " + std::to_string(gamma));
    }
    out << format_sci(gamma) << ',' << format_sci(q) << ',' << format_sci(profile.sup) << '\n';
    curve.xs.push_back(gamma);
    curve.ys.push_back(profile.sup);
  }
  maybe_write_svg(params.svg_path, SvgPlot{"time-uniform error vs gamma", true, true, {curve}});
}

void cmd_table2(const Table2Params& params, std::ostream& out) {
  out << "tmin,tmax,qhat,rho_hat,qstar,rho_star\n";
  for (int i = 1; i <= 4; ++i) {
    const TimeInterval interval(kCanonicalTmin[i], 1.0);
    const double qhat = find_qhat(interval);
    const ErrorProfile profile = time_uniform_error(params.n, qhat, interval);
    const QStarResult star = find_qstar(params.n, interval);
    if (!profile.all_converged || !star.all_converged) {
      throw NumericalError("table2: Remez did not converge");
    }
    out << format_sci(interval.t_min()) << ',' << format_sci(interval.t_max()) << ','
        << format_sci(qhat) << ',' << format_sci(profile.sup) << ',' << format_sci(star.q_star)
        << ',' << format_sci(star.rho_star) << '\n';
  }
}

void cmd_convergence(const ConvergenceParams& params, std::ostream& out) {
  if (params.nmax < 1) throw std::domain_error("convergence: need --nmax >= 1");
  std::vector<TimeInterval> intervals;
  if (params.tmin || params.tmax) {
    if (!params.tmin || !params.tmax) {
      throw std::domain_error("convergence: give both --tmin and --tmax or neither");
    }
    intervals.emplace_back(*params.tmin, *params.tmax);
  } else {
    for (double tmin : kCanonicalTmin) intervals.emplace_back(tmin, 1.0);
  }

  out << "tmin,tmax,n,rho_hat,rho_star,predicted\n";
  std::vector<SvgSeries> series;
  for (const TimeInterval& interval : intervals) {
    const double qhat = find_qhat(interval);
    const double rate = rate_g(qhat, interval);
    SvgSeries hat;
    {
      std::ostringstream name;
      name << "rho_hat tau=" << interval.ratio();
      hat.name = name.str();
    }
    for (int n = 0; n <= params.nmax; ++n) {
      const ErrorProfile profile = time_uniform_error(n, qhat, interval);
      if (!profile.all_converged) {
        throw NumericalError("convergence: Remez did not converge at n = " + std::to_string(n));
      }
      const double rho_star = n >= 1 ? find_qstar(n, interval).rho_star : 0.5;
      out << format_sci(interval.t_min()) << ',' << format_sci(interval.t_max()) << ',' << n << ','
          << format_sci(profile.sup) << ',' << format_sci(rho_star) << ','
          << format_sci(std::pow(rate, n)) << '\n';
      hat.xs.push_back(n);
      hat.ys.push_back(profile.sup);
    }
    series.push_back(std::move(hat));
  }
  maybe_write_svg(params.svg_path,
                  SvgPlot{"time-uniform error vs degree", false, true, std::move(series)});
}

void cmd_ivp(const IvpParams& params, std::ostream& out) {
  const TimeInterval interval(params.tmin, params.tmax);
  const IvpProblem problem = make_ivp_problem(params.grid);
  const std::vector<ExperimentRow> rows =
      run_experiment(problem, params.degrees, interval, params.times);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!params.out_path.empty()) {
    file = open_output(params.out_path);
    sink = &file;
  }
  *sink << "n,t,err_cheb,err_arnoldi,bound\n";
  for (const ExperimentRow& row : rows) {
    *sink << row.n << ',' << format_sci(row.t) << ',' << format_sci(row.err_cheb) << ','
          << format_sci(row.err_arnoldi) << ',' << format_sci(row.bound) << '\n';
  }

  if (!params.svg_path.empty()) {
    std::vector<SvgSeries> series;
    for (int n : params.degrees) {
      SvgSeries cheb, arnoldi, bound;
      cheb.name = "cheb n=" + std::to_string(n);
      arnoldi.name = "arnoldi n=" + std::to_string(n);
      bound.name = "bound n=" + std::to_string(n);
      for (const ExperimentRow& row : rows) {
        if (row.n != n) continue;
        cheb.xs.push_back(row.t);
        cheb.ys.push_back(row.err_cheb);
        arnoldi.xs.push_back(row.t);
        arnoldi.ys.push_back(row.err_arnoldi);
        bound.xs.push_back(row.t);
        bound.ys.push_back(row.bound);
      }
      series.push_back(std::move(cheb));
      series.push_back(std::move(arnoldi));
      series.push_back(std::move(bound));
    }
    maybe_write_svg(params.svg_path, SvgPlot{"IVP error curves", true, true, std::move(series)});
  }
}

void cmd_expv(const ExpvParams& params, std::ostream& out) {
  const TimeInterval interval(params.tmin, params.tmax);
  if (params.n < 1) throw std::domain_error("expv: need --n >= 1");
  const SpdOperator a = load_matrix_market(params.matrix_path);

  std::vector<double> b;
  if (params.b_path.empty()) {
    b.assign(static_cast<std::size_t>(a.dim()), 1.0);
  } else {
    b = read_vector_file(params.b_path);
    if (b.size() != static_cast<std::size_t>(a.dim())) {
      throw std::runtime_error("expv: vector length does not match matrix dimension");
    }
  }

  const PoleConfig pole = pole_location(params.n, interval);
  const std::vector<double> times = interval.log_grid(params.times);

  FamilyEvalResult result;
  if (params.method == "cheb") {
    result = cheb_family_eval(a, b, pole.sigma, params.n, times);
  } else if (params.method == "lanczos") {
    result = lanczos_family_eval(a, b, pole.sigma, params.n, times);
  } else {
    throw std::domain_error("expv: --method must be cheb or lanczos");
  }

  out << "t,norm2\n";
  for (std::size_t j = 0; j < result.times.size(); ++j) {
    double s = 0.0;
    for (double v : result.vectors[j]) s += v * v;
    out << format_sci(result.times[j]) << ',' << format_sci(std::sqrt(s)) << '\n';
  }

  if (!params.out_path.empty()) {
    std::ofstream file = open_output(params.out_path);
    file << "t";
    for (int i = 0; i < a.dim(); ++i) file << ",x" << i;
    file << '\n';
    for (std::size_t j = 0; j < result.times.size(); ++j) {
      file << format_sci(result.times[j]);
      for (double v : result.vectors[j]) file << ',' << format_sci(v);
      file << '\n';
    }
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Uniform-in-time rational approximation of exp(-tA)b with a concentrated real pole"};
  app.require_subcommand(1);

  double rate_q = 1.0;
  CLI::App* rate = app.add_subcommand("rate", "Evaluate the asymptotic rate function at q");
  rate->add_option("--q", rate_q, "pole scale q > 0")->required();

  PolesParams poles_params;
  CLI::App* poles = app.add_subcommand("poles", "Optimal pole for a time interval");
  poles->add_option("--tmin", poles_params.tmin, "interval start")->required();
  poles->add_option("--tmax", poles_params.tmax, "interval end")->required();
  poles->add_option("--n", poles_params.n, "degree")->check(CLI::PositiveNumber);

  CLI::App* table1 = app.add_subcommand("table1", "Optimal (qhat, rate) for the canonical intervals");

  ScanParams scan_params;
  CLI::App* scan = app.add_subcommand("scan", "Time-uniform error while sweeping gamma = 1/(n q)");
  scan->add_option("--tmin", scan_params.tmin)->required();
  scan->add_option("--tmax", scan_params.tmax)->required();
  scan->add_option("--n", scan_params.n)->check(CLI::PositiveNumber);
  scan->add_option("--gmin", scan_params.gmin)->required();
  scan->add_option("--gmax", scan_params.gmax)->required();
  scan->add_option("--gcount", scan_params.gcount);
  scan->add_option("--svg", scan_params.svg_path, "write an SVG plot here");

  Table2Params table2_params;
  CLI::App* table2 = app.add_subcommand("table2", "rho(qhat) vs rho(q*) for the canonical intervals");
  table2->add_option("--n", table2_params.n)->check(CLI::PositiveNumber);

  ConvergenceParams conv_params;
  double conv_tmin = 0.0, conv_tmax = 0.0;
  CLI::App* convergence = app.add_subcommand("convergence", "Error decay for degrees 0..nmax");
  convergence->add_option("--nmax", conv_params.nmax);
  CLI::Option* conv_tmin_opt = convergence->add_option("--tmin", conv_tmin);
  CLI::Option* conv_tmax_opt = convergence->add_option("--tmax", conv_tmax);
  convergence->add_option("--svg", conv_params.svg_path);

  IvpParams ivp_params;
  CLI::App* ivp = app.add_subcommand("ivp", "2D Laplacian initial-value benchmark");
  ivp->add_option("--degrees", ivp_params.degrees)->delimiter(',');
  ivp->add_option("--grid", ivp_params.grid)->check(CLI::Range(2, 1000));
  ivp->add_option("--tmin", ivp_params.tmin);
  ivp->add_option("--tmax", ivp_params.tmax);
  ivp->add_option("--times", ivp_params.times);
  ivp->add_option("--out", ivp_params.out_path);
  ivp->add_option("--svg", ivp_params.svg_path);

  ExpvParams expv_params;
  CLI::App* expv = app.add_subcommand("expv", "Apply exp(-tA)b to a Matrix Market matrix");
  expv->add_option("--matrix", expv_params.matrix_path, "Matrix Market file (real symmetric)")
      ->required();
  expv->add_option("--b", expv_params.b_path, "whitespace-separated vector file");
  expv->add_option("--n", expv_params.n)->check(CLI::PositiveNumber);
  expv->add_option("--tmin", expv_params.tmin);
  expv->add_option("--tmax", expv_params.tmax);
  expv->add_option("--times", expv_params.times);
  expv->add_option("--method", expv_params.method)->check(CLI::IsMember({"cheb", "lanczos"}));
  expv->add_option("--out", expv_params.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (rate->parsed()) {
      cmd_rate(rate_q, std::cout);
    } else if (poles->parsed()) {
      cmd_poles(poles_params, std::cout);
    } else if (table1->parsed()) {
      cmd_table1(std::cout);
    } else if (scan->parsed()) {
      cmd_scan(scan_params, std::cout);
    } else if (table2->parsed()) {
      cmd_table2(table2_params, std::cout);
    } else if (convergence->parsed()) {
      if (conv_tmin_opt->count() > 0) conv_params.tmin = conv_tmin;
      if (conv_tmax_opt->count() > 0) conv_params.tmax = conv_tmax;
      cmd_convergence(conv_params, std::cout);
    } else if (ivp->parsed()) {
      cmd_ivp(ivp_params, std::cout);
    } else if (expv->parsed()) {
      cmd_expv(expv_params, std::cout);
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

}  // namespace polexp::cli
