// Command-line front end: dimensions, kernel windows, ensemble sampling,
// window distributions, convergence sweeps, and limit curves.
//
// Exit codes: 0 success, 2 parse error, 3 domain error, 4 numeric failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpe/dpe.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0xD1CE;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "a..b" inclusive integer range
std::vector<long long> parse_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos)
    throw std::invalid_argument("range: expected a..b, got '" + text + "'");
  std::size_t used = 0;
  const long long a = std::stoll(text.substr(0, pos), &used);
  if (used != pos) throw std::invalid_argument("range: bad lower bound");
  const std::string hi = text.substr(pos + 2);
  const long long b = std::stoll(hi, &used);
  if (used != hi.size()) throw std::invalid_argument("range: bad upper bound");
  if (a > b) throw std::invalid_argument("range: lower bound above upper");
  std::vector<long long> out;
  for (long long v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<long long> parse_list(const std::string& text) {
  std::vector<long long> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stoll(token, &used));
    if (used != token.size())
      throw std::invalid_argument("list: bad entry '" + token + "'");
  }
  if (out.empty()) throw std::invalid_argument("list: empty");
  return out;
}

double parse_phi(const std::string& text) {
  if (text == "pi") return dpe::detail::kPi;
  if (text == "pi/2") return dpe::detail::kPi / 2.0;
  if (text == "pi/4") return dpe::detail::kPi / 4.0;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size())
    throw std::invalid_argument("phi: bad value '" + text + "'");
  return v;
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
  }
};

struct KernelFlags {
  std::string family;
  std::string phi = "pi/2";
  double s = 0.0;
  long long N = 1;
  double theta = 1.0;
  double p = 0.5;
  long long L = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "sine|hermite|charlier|krawtchouk")
        ->required();
    cmd->add_option("--phi", phi, "sine: angle in [0,pi]; accepts pi, pi/2");
    cmd->add_option("--s", s, "hermite: spectral threshold");
    cmd->add_option("--N", N, "charlier/krawtchouk: rank");
    cmd->add_option("--theta", theta, "charlier: weight parameter");
    cmd->add_option("--p", p, "krawtchouk: weight parameter");
    cmd->add_option("--L", L, "krawtchouk: lattice end");
  }

  std::unique_ptr<dpe::Kernel> build() const {
    if (family == "sine")
      return std::make_unique<dpe::SineKernel>(parse_phi(phi));
    if (family == "hermite") return std::make_unique<dpe::HermiteKernel>(s);
    if (family == "charlier")
      return std::make_unique<dpe::CharlierKernel>(N, theta);
    if (family == "krawtchouk")
      return std::make_unique<dpe::KrawtchoukKernel>(N, p, L);
    throw std::invalid_argument("unknown kernel family '" + family + "'");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"discrete polynomial ensembles: kernels, sampling, limits"};
  app.require_subcommand(1);

  // dims
  auto* dims = app.add_subcommand("dims", "symmetric/unitary group dimensions");
  std::string lambda_text;
  long long dims_N = -1;
  dims->add_option("--lambda", lambda_text,
                   "partition as comma-separated parts, e.g. 2,1");
  dims->add_option("--N", dims_N, "rows for the unitary dimension");

  // kernel
  auto* kernel = app.add_subcommand("kernel", "dump a kernel window as CSV");
  KernelFlags kflags;
  kflags.attach(kernel);
  std::string kwindow;
  Output kout;
  kernel->add_option("--window", kwindow, "site range a..b")->required();
  kernel->add_option("--out", kout.path, "output file (default stdout)");

  // sample
  auto* smp = app.add_subcommand("sample", "draw ensemble configurations");
  std::string sfamily;
  long long sN = 1, sL = -1, scount = 1;
  double stheta = 1.0, sp = 0.5;
  std::uint64_t seed = kDefaultSeed;
  Output sout;
  smp->add_option("--family", sfamily, "charlier|krawtchouk")->required();
  smp->add_option("--N", sN, "number of particles")->required();
  smp->add_option("--theta", stheta, "charlier parameter");
  smp->add_option("--p", sp, "krawtchouk parameter");
  smp->add_option("--L", sL, "krawtchouk lattice end (default 2N-1)");
  smp->add_option("--count", scount, "number of samples");
  smp->add_option("--seed", seed, "RNG seed (default 0xD1CE)");
  smp->add_option("--out", sout.path, "output file (default stdout)");

  // window distribution
  auto* win = app.add_subcommand("window", "finite-window distribution as JSON");
  KernelFlags wflags;
  wflags.attach(win);
  std::string wsites;
  Output wout;
  win->add_option("--window", wsites, "site range a..b (at most 20 sites)")
      ->required();
  win->add_option("--out", wout.path, "output file (default stdout)");

  // converge
  auto* conv = app.add_subcommand("converge", "kernel convergence sweep (JSON)");
  std::string regime;
  double cs = 0.0, cc = 0.0, cp = 0.5;
  std::string grid_text = "100,400,1600,6400";
  std::string cwindow;
  Output cout_;
  conv->add_option("--regime", regime, "edge|bulk")->required();
  conv->add_option("--s", cs, "edge: hermite threshold");
  conv->add_option("--c", cc, "bulk: position parameter");
  conv->add_option("--p", cp, "bulk: weight parameter");
  conv->add_option("--grid", grid_text, "comma-separated N grid");
  conv->add_option("--window", cwindow,
                   "edge sites a..b (default 0..10) / bulk offsets (default -5..5)");
  conv->add_option("--out", cout_.path, "output file (default stdout)");

  // shape
  auto* shp = app.add_subcommand("shape", "limit curve as CSV");
  std::string curve;
  double shp_p = 0.5;
  int points = 101;
  Output shout;
  shp->add_option("--curve", curve, "omega|mixf")->required();
  shp->add_option("--p", shp_p, "mixf: weight parameter");
  shp->add_option("--points", points, "grid resolution");
  shp->add_option("--out", shout.path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the parse diagnostic
    return rc == 0 ? 0 : 2;
  }

  if (*dims) {
    const dpe::Partition lambda = dpe::Partition::parse(lambda_text);
    std::string line = "dim=" + dim_sym(lambda).str();
    if (dims_N >= 0)
      line += " Dim=" + dim_un(lambda, dims_N).str();
    else if (lambda.length() == 0)
      line += " Dim=1";
    std::cout << line << "\n";
    return 0;
  }

  if (*kernel) {
    const auto K = kflags.build();
    const std::vector<long long> sites = parse_range(kwindow);
    std::string csv = "x,y,value\n";
    for (long long x : sites)
      for (long long y : sites)
        csv += std::to_string(x) + "," + std::to_string(y) + "," +
               g17(K->evaluate(x, y)) + "\n";
    kout.write(csv);
    return 0;
  }

  if (*smp) {
    std::unique_ptr<dpe::Kernel> K;
    if (sfamily == "charlier") {
      K = std::make_unique<dpe::CharlierKernel>(sN, stheta);
    } else if (sfamily == "krawtchouk") {
      if (sL < 0) sL = 2 * sN - 1;
      K = std::make_unique<dpe::KrawtchoukKernel>(sN, sp, sL);
    } else {
      throw std::invalid_argument("sample: family must be charlier|krawtchouk");
    }
    if (scount < 1) throw std::invalid_argument("sample: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::string text;
    for (long long i = 0; i < scount; ++i)
      text += dpe::sample(*K, rng).to_string() + "\n";
    sout.write(text);
    return 0;
  }

  if (*win) {
    const auto K = wflags.build();
    const auto dist = dpe::window_distribution(*K, parse_range(wsites));
    nlohmann::json j = nlohmann::json::object();
    const std::size_t n = dist.window.size();
    for (std::size_t mask = 0; mask < dist.probabilities.size(); ++mask) {
      std::string key;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) {
          if (!key.empty()) key += ',';
          key += std::to_string(dist.window[b]);
        }
      j[key] = dist.probabilities[mask];
    }
    wout.write(j.dump(2) + "\n");
    return 0;
  }

  if (*conv) {
    const std::vector<long long> grid = parse_list(grid_text);
    dpe::ConvergenceReport rep;
    if (regime == "edge") {
      const auto window = parse_range(cwindow.empty() ? "0..10" : cwindow);
      rep = dpe::charlier_edge_sweep(cs, grid, window);
    } else if (regime == "bulk") {
      const auto offsets = parse_range(cwindow.empty() ? "-5..5" : cwindow);
      rep = dpe::krawtchouk_bulk_sweep(cc, cp, grid, offsets);
    } else {
      throw std::invalid_argument("converge: regime must be edge|bulk");
    }
    cout_.write(rep.to_json() + "\n");
    return 0;
  }

  if (*shp) {
    dpe::LimitCurve c;
    if (curve == "omega") {
      c = dpe::omega_curve(points);
    } else if (curve == "mixf") {
      c = dpe::limit_shape_F(shp_p, points);
    } else {
      throw std::invalid_argument("shape: curve must be omega|mixf");
    }
    std::string csv = "u,v\n";
    for (std::size_t i = 0; i < c.u.size(); ++i)
      csv += g17(c.u[i]) + "," + g17(c.v[i]) + "\n";
    shout.write(csv);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  }
}
