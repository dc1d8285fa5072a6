#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qball/qball.hpp>

using namespace qball;

namespace {

struct RunConfig {
  double q = 0.5;
  int n = 2;
  int max_weight = 8;
  int quad_nodes = 0;
  double tol = 0;
  std::string format = "json";
  bool check = false;
  std::string out;

  int nodes() const { return quad_nodes > 0 ? quad_nodes : (n == 1 ? 2048 : 256); }
  void validate() const {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("--q must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("--n must be positive");
    if (max_weight < 0) throw std::invalid_argument("--max-weight must be nonnegative");
    if (quad_nodes < 0 || quad_nodes % 2) throw std::invalid_argument("--quad-nodes must be even");
    if (tol < 0) throw std::invalid_argument("--tol must be nonnegative");
    if (format != "json" && format != "csv") throw std::invalid_argument("--format must be json or csv");
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    double x = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad number: " + tok);
    v.push_back(x);
  }
  return v;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (double x : parse_list(s)) {
    if (x != std::floor(x)) throw std::invalid_argument("expected integers: " + s);
    v.push_back(static_cast<int>(x));
  }
  return v;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw schema_error("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("malformed JSON: ") + e.what());
  }
}

struct EvalArgs {
  double l = 0, l_im = 0, u = 1;
  std::string rho, lambda, z;
  bool principal = false;
  double rho_scalar = 0;
  int m = 0;
};

int cmd_eval(const std::string& what, const EvalArgs& a, const RunConfig& cfg) {
  QContext ctx(cfg.q);
  json j;
  j["what"] = what;
  j["q"] = cfg.q;
  cplx l(a.l, a.l_im);
  if (a.principal) l = cplx(-0.5, a.rho_scalar);
  if (what == "phi") {
    long k;
    bool grid = detail::grid_index(a.u, ctx, k);
    j["l"] = cjson(l);
    j["u"] = a.u;
    j["value"] = cjson(phi_one(l, a.u, ctx));
    j["formula"] = on_principal_line(l) && grid && k > 0 ? "generating function, principal series on the grid"
                                                          : "3phi2 series, ascending compensated sum";
  } else if (what == "jacobi") {
    if (a.m < 0) throw std::invalid_argument("--m must be nonnegative");
    LittleQJacobi jac(ctx);
    j["m"] = a.m;
    j["coefficients"] = polynomial_json(jac.coefficients(a.m));
    j["orthogonality_residual"] = jac.orthogonality_residual(a.m);
    j["formula"] = "monic 2phi1(q^{-2m}, q^{2m+2}; q^2; q^2, z)";
  } else if (what == "a") {
    j["l"] = cjson(l);
    j["value"] = cjson(a_eigen(l, ctx));
    j["formula"] = "(1-q^{-2l})(1-q^{2l+2})/(1-q^2)^2";
  } else if (what == "c") {
    j["l"] = cjson(l);
    j["value"] = cjson(c_function(l, ctx));
    j["formula"] = "Gamma_{q^2}(2l+1)/Gamma_{q^2}(l+1)^2";
  } else if (what == "kappa") {
    auto rho = parse_list(a.rho);
    if (rho.empty()) throw std::invalid_argument("--rho needs at least one value");
    j["rho"] = rho;
    j["value"] = kappa(rho, ctx);
    j["nominal_form"] = kappa_nominal(rho, ctx);
    j["formula"] = "(1-q^2)^{n^2} Phi_{-1/2+i rho}(q^{-2 delta})";
  } else if (what == "schur") {
    auto lam = Partition(parse_ints(a.lambda));
    auto zs = parse_list(a.z);
    j["lambda"] = partition_json(lam);
    j["z"] = zs;
    j["value"] = schur(lam, zs);
    j["formula"] = "det(z_i^{lambda_j+n-j}) / Vandermonde(z)";
  } else {
    throw std::invalid_argument("unknown eval target: " + what);
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    for (auto& [k, v] : j.items()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2));
  }
  return 0;
}

int cmd_transform(const std::string& dir, const std::string& in, const RunConfig& cfg) {
  json input = read_json(in);
  double q = 0;
  if (dir == "forward") {
    RadialFunction f = radial_from_json(input, &q);
    if (!(q > 0 && q < 1)) throw schema_error("q must lie in (0,1)");
    QContext ctx(q);
    RunConfig c = cfg;
    c.n = f.n();
    auto rule = simpson_rule(c.nodes(), ctx);
    const int window = f.max_weight() + 2;
    SphericalTransform T(f.n(), rule, window, ctx);
    auto fhat = T.forward(f);
    json j = to_json(fhat, q);
    int code = 0;
    if (cfg.check) {
      auto back = T.inverse(fhat, window);
      double d = 0;
      for (auto& [mu, v] : back.support()) d = std::max(d, std::abs(v - f(mu)));
      double tol = cfg.tol > 0 ? cfg.tol : (f.n() == 1 ? 1e-6 : 1e-5);
      j["roundtrip_defect"] = d;
      j["tolerance"] = tol;
      if (d > tol) code = 1;
    }
    emit(cfg, j.dump());
    return code;
  }
  if (dir == "inverse") {
    SpectralFunction fhat = spectral_from_json(input, &q);
    if (!(q > 0 && q < 1)) throw schema_error("q must lie in (0,1)");
    QContext ctx(q);
    auto ref = simpson_rule(fhat.M(), ctx);
    for (size_t i = 0; i < ref.nodes.size(); ++i)
      if (std::abs(ref.nodes[i] - fhat.nodes[i]) > 1e-12 * ctx.rho_max())
        throw schema_error("nodes are not the Simpson grid on [0, pi/h]");
    fhat.nodes = ref.nodes;
    SphericalTransform T(fhat.n, ref, cfg.max_weight, ctx);
    auto f = T.inverse(fhat, cfg.max_weight);
    json j = to_json(f, q);
    int code = 0;
    if (cfg.check) {
      auto again = T.forward(f);
      double d = 0;
      for (size_t s = 0; s < again.size(); ++s)
        if (!T.coincident(s)) d = std::max(d, std::abs(again.values[s] - fhat.values[s]));
      double tol = cfg.tol > 0 ? cfg.tol : (fhat.n == 1 ? 1e-6 : 1e-5);
      j["roundtrip_defect"] = d;
      j["tolerance"] = tol;
      if (d > tol) code = 1;
    }
    emit(cfg, cfg.format == "csv" ? radial_csv(f, ctx) : j.dump());
    return code;
  }
  throw std::invalid_argument("unknown direction: " + dir);
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
  VerifyConfig v;
  v.q = cfg.q;
  v.n = cfg.n;
  v.max_weight = cfg.max_weight;
  v.quad_nodes = cfg.quad_nodes;
  v.tol = cfg.tol;
  auto reports = run_suite(suite, v);
  bool ok = true;
  for (auto& r : reports) ok = ok && r.pass;
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "check,n,q,defect,tolerance,pass,params\n";
    for (auto& r : reports)
      os << r.check << ',' << r.n << ',' << fmt17(r.q) << ',' << fmt17(r.defect) << ',' << fmt17(r.tolerance) << ','
         << (r.pass ? "true" : "false") << ",\"" << r.params.dump() << "\"\n";
    emit(cfg, os.str());
  } else {
    json arr = json::array();
    for (auto& r : reports) arr.push_back(to_json(r));
    json j;
    j["suite"] = suite;
    j["pass"] = ok;
    j["checks"] = arr;
    emit(cfg, j.dump(2));
  }
  return ok ? 0 : 1;
}

int cmd_tabulate(const std::string& what, const RunConfig& cfg) {
  QContext ctx(cfg.q);
  const int n = cfg.n;
  auto parts = enumerate_partitions(n, cfg.max_weight);
  json rows = json::array();
  std::ostringstream csv;
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt17(v[i]);
    return s;
  };
  if (what == "measure") {
    csv << "lambda,grid_point,weight\n";
    for (auto& lam : parts) {
      auto u = grid_point(lam, ctx);
      double w = point_mass(lam, ctx);
      csv << partition_csv(lam) << ',' << join(u) << ',' << fmt17(w) << '\n';
      rows.push_back({{"lambda", partition_json(lam)}, {"grid_point", u}, {"weight", w}});
    }
  } else if (what == "spectrum") {
    csv << "lambda,sigma_point\n";
    for (auto& lam : parts) {
      auto s = sigma_point(lam, ctx);
      csv << partition_csv(lam) << ',' << join(s) << '\n';
      rows.push_back({{"lambda", partition_json(lam)}, {"sigma_point", s}});
    }
  } else if (what == "spherical") {
    auto samples = enumerate_partitions(n, std::min(cfg.max_weight, 2));
    csv << "lambda,eigen_tuple,P_constant";
    for (auto& mu : samples) csv << ",phi@" << partition_csv(mu);
    csv << '\n';
    for (auto& lam : parts) {
      std::vector<double> e;
      for (int k = 1; k <= n; ++k) e.push_back(eigen_tuple(lam, k, ctx));
      auto l = SphericalParameter::from_partition(lam);
      std::vector<double> vals;
      for (auto& mu : samples) vals.push_back(phi_multi_at(l, mu, ctx).real());
      auto z = Partition::zero(n);
      double constant = vals.front() / multivar_P(lam, grid_point(z, ctx), ctx);
      csv << partition_csv(lam) << ',' << join(e) << ',' << fmt17(constant);
      for (double v : vals) csv << ',' << fmt17(v);
      csv << '\n';
      json samp = json::array();
      for (size_t i = 0; i < samples.size(); ++i) samp.push_back({{"mu", partition_json(samples[i])}, {"phi", vals[i]}});
      rows.push_back({{"lambda", partition_json(lam)}, {"eigen_tuple", e}, {"P_constant", constant}, {"samples", samp}});
    }
  } else {
    throw std::invalid_argument("unknown table: " + what);
  }
  emit(cfg, cfg.format == "csv" ? csv.str() : rows.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial harmonic analysis on the quantum matrix ball"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--q", cfg.q, "deformation parameter in (0,1)");
  app.add_option("--n", cfg.n, "matrix size");
  app.add_option("--max-weight", cfg.max_weight, "partition window |lambda| <= W");
  app.add_option("--quad-nodes", cfg.quad_nodes, "Simpson subintervals per axis (even)");
  app.add_option("--tol", cfg.tol, "override check tolerances");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_flag("--check", cfg.check, "verify the roundtrip of a transform");
  app.add_option("--out", cfg.out, "output file (default stdout)");

  std::string what;
  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a special function");
  eval->add_option("what", what, "phi | jacobi | a | c | kappa | schur")->required();
  eval->add_option("--l", ea.l, "parameter l (real part)");
  eval->add_option("--l-im", ea.l_im, "imaginary part of l");
  auto* rho_opt = eval->add_option("--rho", ea.rho, "rho (phi, a, c: principal series l=-1/2+i rho; kappa: list)");
  eval->add_option("--u", ea.u, "argument u");
  eval->add_option("--m", ea.m, "degree");
  eval->add_option("--lambda", ea.lambda, "partition, comma separated");
  eval->add_option("--z", ea.z, "point, comma separated");

  std::string dir, in;
  auto* tr = app.add_subcommand("transform", "spherical transform of a JSON file");
  tr->add_option("direction", dir, "forward | inverse")->required();
  tr->add_option("--in", in, "input JSON")->required();

  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "eigen | orthogonality | trace | kappa | parseval | intertwine | cyclicity | all")
      ->required();

  std::string table;
  auto* tab = app.add_subcommand("tabulate", "emit a table");
  tab->add_option("what", table, "measure | spherical | spectrum")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.validate();
    if (eval->parsed()) {
      if (*rho_opt && what != "kappa") {
        auto r = parse_list(ea.rho);
        if (r.size() != 1) throw std::invalid_argument("--rho takes one value here");
        ea.principal = true;
        ea.rho_scalar = r[0];
      }
      return cmd_eval(what, ea, cfg);
    }
    if (tr->parsed()) return cmd_transform(dir, in, cfg);
    if (ver->parsed()) return cmd_verify(suite, cfg);
    if (tab->parsed()) return cmd_tabulate(table, cfg);
  } catch (const schema_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
