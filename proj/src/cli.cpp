#include "eisarch/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "eisarch/eiscoef.hpp"
#include "eisarch/error.hpp"
#include "eisarch/greenform.hpp"
#include "eisarch/omega.hpp"
#include "eisarch/parallel.hpp"
#include "eisarch/rational.hpp"
#include "eisarch/verify.hpp"
#include "eisarch/whittaker.hpp"

namespace eisarch::cli {
namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) bad(join(path, it.key()), "unknown key");
  }
}

const Json* find(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (const Json* v = find(j, key)) return *v;
  bad(join(path, key), "required key missing");
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(path, "expected a finite number");
  return x;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected a boolean");
  return j.get<bool>();
}

double opt_double(const Json& p, const char* key, const std::string& path, double def) {
  const Json* v = find(p, key);
  return v ? as_double(*v, join(path, key)) : def;
}

int opt_int(const Json& p, const char* key, const std::string& path, int def) {
  const Json* v = find(p, key);
  return v ? as_int(*v, join(path, key)) : def;
}

// number, or {"re": x, "im": y}
cplx as_cplx(const Json& j, const std::string& path) {
  if (j.is_number()) return as_double(j, path);
  if (j.is_object()) {
    check_keys(j, path, {"re", "im"});
    return {opt_double(j, "re", path, 0.0), opt_double(j, "im", path, 0.0)};
  }
  bad(path, "expected a number or {\"re\", \"im\"}");
}

// scalar or list of scalars
std::vector<cplx> as_cplx_list(const Json& j, const std::string& path) {
  std::vector<cplx> out;
  if (j.is_array()) {
    if (j.empty()) bad(path, "expected a non-empty list");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_cplx(j[i], index(path, i)));
  } else {
    out.push_back(as_cplx(j, path));
  }
  return out;
}

std::vector<double> as_double_list(const Json& j, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    if (j.empty()) bad(path, "expected a non-empty list");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_double(j[i], index(path, i)));
  } else {
    out.push_back(as_double(j, path));
  }
  return out;
}

Field as_field(const Json& p, const std::string& path) {
  const Json* v = find(p, "field");
  if (!v) return Field::Real;
  const std::string s = as_string(*v, join(path, "field"));
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  bad(join(path, "field"), "expected \"real\" or \"complex\"");
}

// A scalar is a 1x1 matrix; otherwise a square list of rows.
CMat as_cmat(const Json& j, const std::string& path, int max_n = 4) {
  if (j.is_number() || j.is_object()) {
    CMat m(1);
    m(0, 0) = as_cplx(j, path);
    return m;
  }
  if (!j.is_array() || j.empty()) bad(path, "expected a number or a square list of rows");
  const int n = int(j.size());
  if (n > max_n) bad(path, "matrix size exceeds " + std::to_string(max_n));
  CMat m(n);
  for (int i = 0; i < n; ++i) {
    const std::string rp = index(path, i);
    if (!j[i].is_array() || int(j[i].size()) != n) bad(rp, "expected a row of length " + std::to_string(n));
    for (int k = 0; k < n; ++k) m(i, k) = as_cplx(j[i][k], index(rp, k));
  }
  return m;
}

ConeMatrix as_cone(const Json& j, const std::string& path, Field field) {
  const CMat m = as_cmat(j, path);
  if (field == Field::Real)
    for (int i = 0; i < m.r; ++i)
      for (int k = 0; k < m.r; ++k)
        if (m(i, k).imag() != 0.0) bad(index(index(path, i), k), "complex entry in a real matrix");
  try {
    return ConeMatrix(field, m);
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

QuadConfig as_quad(const Json& p, const std::string& path) {
  QuadConfig q;
  const Json* v = find(p, "quad");
  if (!v) return q;
  const std::string qp = join(path, "quad");
  check_keys(*v, qp, {"nodes_diag", "nodes_offdiag", "tolerance"});
  q.nodes_diag = opt_int(*v, "nodes_diag", qp, 0);
  q.nodes_offdiag = opt_int(*v, "nodes_offdiag", qp, 0);
  q.tolerance = opt_double(*v, "tolerance", qp, q.tolerance);
  if (q.nodes_diag < 0 || q.nodes_offdiag < 0) bad(qp, "node counts must be >= 0");
  if (!(q.tolerance > 0.0)) bad(join(qp, "tolerance"), "must be positive");
  return q;
}

CaseParams as_case(const Json& p, const std::string& path, int r, int d = 1) {
  std::string kind = "orthogonal";
  if (const Json* v = find(p, "case")) kind = as_string(*v, join(path, "case"));
  const int m = as_int(need(p, "m", path), join(path, "m"));
  try {
    if (kind == "orthogonal") {
      if (find(p, "k_chi")) bad(join(path, "k_chi"), "only meaningful for the unitary case");
      return CaseParams::orthogonal(m, r, d);
    }
    if (kind == "unitary") return CaseParams::unitary(m, r, opt_int(p, "k_chi", path, m % 2), d);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  bad(join(path, "case"), "expected \"orthogonal\" or \"unitary\"");
}

Field case_field(const CaseParams& c) { return c.kind == CaseKind::Orthogonal ? Field::Real : Field::Complex; }

Json cplx_or_null(const std::optional<cplx>& z) { return z ? complex_json(*z) : Json(nullptr); }

std::string num(double x) { return format_double(x); }

struct Output {
  Json json;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// omega over the grid alpha x beta
Output cmd_omega(const Json& p) {
  const std::string path = "params";
  check_keys(p, path, {"r", "field", "g", "alpha", "beta", "quad"});
  const Field field = as_field(p, path);
  const ConeMatrix g = as_cone(need(p, "g", path), join(path, "g"), field);
  if (const Json* r = find(p, "r"))
    if (as_int(*r, join(path, "r")) != g.r()) bad(join(path, "r"), "does not match the size of g");
  const auto alphas = as_cplx_list(need(p, "alpha", path), join(path, "alpha"));
  const auto betas = as_cplx_list(need(p, "beta", path), join(path, "beta"));
  const QuadConfig quad = as_quad(p, path);
  require_pd(g, "g");

  const std::size_t n = alphas.size() * betas.size();
  std::vector<OmegaValue> vals(n);
  parallel_for(n, [&](std::size_t k) {
    OmegaRequest req{g, alphas[k / betas.size()], betas[k % betas.size()], quad};
    vals[k] = omega(req);
  });

  Output out;
  out.header = {"alpha_re", "alpha_im", "beta_re", "beta_im", "value_re", "value_im", "error_estimate", "method"};
  Json grid = Json::array();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = alphas[k / betas.size()], b = betas[k % betas.size()];
    const OmegaValue& v = vals[k];
    const std::string method = v.continued ? "continued" : "convergent";
    Json row;
    row["alpha"] = complex_json(a);
    row["beta"] = complex_json(b);
    row["value"] = complex_json(v.value);
    row["error_estimate"] = v.error_estimate;
    row["method"] = method;
    row["N"] = v.N;
    grid.push_back(row);
    out.rows.push_back({num(a.real()), num(a.imag()), num(b.real()), num(b.imag()), num(v.value.real()),
                        num(v.value.imag()), num(v.error_estimate), method});
  }
  if (n == 1) {
    out.json = grid[0];
  } else {
    out.json["r"] = g.r();
    out.json["field"] = field == Field::Real ? "real" : "complex";
    out.json["grid"] = grid;
  }
  return out;
}

Output cmd_whittaker(const Json& p) {
  const std::string path = "params";
  check_keys(p, path, {"case", "m", "k_chi", "T", "y", "s", "lambda", "h_s", "oracle", "quad"});
  const Json& Tj = need(p, "T", path);
  const int r = as_cmat(Tj, join(path, "T")).r;
  const CaseParams ctx = as_case(p, path, r);
  const Field field = case_field(ctx);
  const ConeMatrix T = as_cone(Tj, join(path, "T"), field);
  const ConeMatrix y = find(p, "y") ? as_cone(p["y"], join(path, "y"), field) : ConeMatrix::identity(r, field);
  if (y.r() != r) bad(join(path, "y"), "size differs from T");
  require_pd(y, "y");
  const std::vector<cplx> ss = find(p, "s") ? as_cplx_list(p["s"], join(path, "s")) : std::vector<cplx>{ctx.s0};
  const std::vector<double> lambdas =
      find(p, "lambda") ? as_double_list(p["lambda"], join(path, "lambda")) : std::vector<double>{1.0};
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (!(lambdas[i] > 0.0)) bad(index(join(path, "lambda"), i), "must be positive");
  const double h_s = opt_double(p, "h_s", path, 1e-3);
  const bool oracle_ok = r == 1 && ctx.kind == CaseKind::Orthogonal && ctx.m % 2 == 0;
  const bool want_oracle = find(p, "oracle") ? as_bool(p["oracle"], join(path, "oracle")) : oracle_ok;
  if (want_oracle && !oracle_ok) bad(join(path, "oracle"), "oracle needs r = 1, orthogonal, even m");
  WhittakerOptions opt;
  opt.quad = as_quad(p, path);

  std::optional<cplx> asym;
  if (T.det() > 0.0 && mu_spectrum(ConeMatrix::identity(r, field), T).n_neg == 0)
    asym = whittaker_deriv_asymptote(T, ctx);

  struct Row {
    WhittakerValue W;
    std::optional<WhittakerValue> Wd, oracle;
  };
  const std::size_t n = ss.size() * lambdas.size();
  std::vector<Row> rows(n);
  parallel_for(n, [&](std::size_t k) {
    const cplx s = ss[k / lambdas.size()];
    const ConeMatrix yl = y.scaled(lambdas[k % lambdas.size()]);
    Row& row = rows[k];
    row.W = normalized_whittaker(T, yl, s, ctx, opt);
    if (s == cplx(ctx.s0)) row.Wd = whittaker_s0_deriv(T, yl, ctx, h_s, opt);
    if (want_oracle) row.oracle = whittaker_oracle_r1(T(0, 0).real(), yl(0, 0).real(), s, ctx);
  });

  Output out;
  out.header = {"s_re",  "s_im",  "lambda",   "W_re",     "W_im",      "Wd_re",
                "Wd_im", "asym_re", "asym_im", "oracle_re", "oracle_im", "branch"};
  Json list = Json::array();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx s = ss[k / lambdas.size()];
    const double lam = lambdas[k % lambdas.size()];
    const Row& row = rows[k];
    const bool at_s0 = row.Wd.has_value();
    Json j;
    j["s"] = complex_json(s);
    j["lambda"] = lam;
    j["value"] = complex_json(row.W.value);
    j["error_estimate"] = row.W.error_estimate;
    j["branch"] = to_string(row.W.branch);
    j["deriv"] = at_s0 ? complex_json(row.Wd->value) : Json(nullptr);
    j["deriv_error"] = at_s0 ? Json(row.Wd->error_estimate) : Json(nullptr);
    j["asymptote"] = at_s0 ? cplx_or_null(asym) : Json(nullptr);
    j["oracle"] = row.oracle ? complex_json(row.oracle->value) : Json(nullptr);
    list.push_back(j);
    auto opt_re = [](bool has, cplx z) { return has ? num(z.real()) : std::string(); };
    auto opt_im = [](bool has, cplx z) { return has ? num(z.imag()) : std::string(); };
    const cplx wd = at_s0 ? row.Wd->value : cplx{};
    const cplx as = asym.value_or(cplx{});
    const cplx orc = row.oracle ? row.oracle->value : cplx{};
    out.rows.push_back({num(s.real()), num(s.imag()), num(lam), num(row.W.value.real()), num(row.W.value.imag()),
                        opt_re(at_s0, wd), opt_im(at_s0, wd), opt_re(at_s0 && asym, as), opt_im(at_s0 && asym, as),
                        opt_re(row.oracle.has_value(), orc), opt_im(row.oracle.has_value(), orc),
                        to_string(row.W.branch)});
  }
  out.json["case"] = ctx.describe();
  out.json["s0"] = ctx.s0;
  out.json["kappa"] = ctx.kappa;
  out.json["rows"] = list;
  return out;
}

Output cmd_green(const Json& p) {
  const std::string path = "params";
  check_keys(p, path, {"chart", "gram", "v", "rho", "h_grid", "grid", "point"});
  std::string chart = "o12";
  if (const Json* c = find(p, "chart")) chart = as_string(*c, join(path, "chart"));
  if (chart != "o12" && chart != "u11") bad(join(path, "chart"), "expected \"o12\" or \"u11\"");
  const Field field = chart == "o12" ? Field::Real : Field::Complex;
  const int dim = field == Field::Real ? 3 : 2;

  std::optional<HermitianSpace> Vs;
  if (const Json* gj = find(p, "gram")) {
    const CMat G = as_cmat(*gj, join(path, "gram"));
    if (G.r != dim) bad(join(path, "gram"), "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    try {
      Vs.emplace(field, G);
    } catch (const Error& e) {
      bad(join(path, "gram"), e.what());
    }
  } else {
    Vs.emplace(field == Field::Real ? HermitianSpace::o12() : HermitianSpace::u11());
  }
  const HermitianSpace& V = *Vs;

  const Json& vj = need(p, "v", path);
  const std::string vp = join(path, "v");
  if (!vj.is_array() || int(vj.size()) != dim) bad(vp, "expected a list of " + std::to_string(dim) + " coordinates");
  Vec coords{};
  for (int i = 0; i < dim; ++i) {
    coords[i] = as_cplx(vj[i], index(vp, i));
    if (field == Field::Real && coords[i].imag() != 0.0) bad(index(vp, i), "complex coordinate in the real case");
  }
  const SpaceVector v = space_vector(V, coords);

  const double rho = opt_double(p, "rho", path, 0.0);
  if (rho < 0.0) bad(join(path, "rho"), "must be >= 0");
  const double h_grid = opt_double(p, "h_grid", path, 2.5e-4);
  if (!(h_grid > 0.0 && h_grid < 0.1)) bad(join(path, "h_grid"), "must lie in (0, 0.1)");

  ChartGrid grid;
  if (const Json* g = find(p, "grid")) {
    const std::string gp = join(path, "grid");
    check_keys(*g, gp, {"n", "re_lo", "re_hi", "im_lo", "im_hi", "exclusion"});
    grid.n = opt_int(*g, "n", gp, grid.n);
    grid.re_lo = opt_double(*g, "re_lo", gp, 0.0);
    grid.re_hi = opt_double(*g, "re_hi", gp, 0.0);
    grid.im_lo = opt_double(*g, "im_lo", gp, 0.0);
    grid.im_hi = opt_double(*g, "im_hi", gp, 0.0);
    grid.exclusion = opt_double(*g, "exclusion", gp, 0.0);
    if (grid.n < 2 || grid.n > 401) bad(join(gp, "n"), "must lie in [2, 401]");
  }

  Output out;
  out.json["chart"] = chart;
  Json vjson = Json::array();
  for (int i = 0; i < dim; ++i) vjson.push_back(complex_json(coords[i]));
  out.json["v"] = vjson;
  out.json["qvv"] = v.qvv;
  Json div = Json::array();
  for (cplx w : divisor_in_chart(v, V)) div.push_back(complex_json(w));
  out.json["divisor"] = div;

  if (const Json* pt = find(p, "point")) {
    const std::string pp = join(path, "point");
    check_keys(*pt, pp, {"w", "t", "h_t"});
    const cplx w = as_cplx(need(*pt, "w", pp), join(pp, "w"));
    if (!V.in_chart(w)) bad(join(pp, "w"), "outside the chart domain");
    const double t = opt_double(*pt, "t", pp, 1.0);
    const double h_t = opt_double(*pt, "h_t", pp, 1e-3);
    if (!(t > 0.0)) bad(join(pp, "t"), "must be positive");
    const DomainPoint z = chart_point(V, w);
    const Majorant mj = majorant_and_norm(z, v, V);
    const KMForm km = km_form_chart(z, v, V, 1e-3);
    Json pj;
    pj["w"] = complex_json(w);
    pj["h"] = mj.h;
    pj["Qz"] = mj.Qz;
    pj["green"] = mj.h > 0.0 ? Json(green_rank1(z, v, V, rho)) : Json(nullptr);
    pj["phi2"] = km.phi2;
    pj["omega_E"] = km.omega_E;
    pj["t"] = t;
    pj["transgression_residual"] = transgression_check(z, v, V, t, 1e-3, h_t);
    out.json["point"] = pj;
  }

  if (rho != 0.0) {
    // Identity check is for rho = 0; report the Green value surface only.
    out.json["rho"] = rho;
  } else {
    const GreenReport rep = greens_identity_check(v, V, grid, h_grid);
    out.json["h_grid"] = h_grid;
    out.json["residual"] = rep.residual;
    out.json["residual_half"] = rep.residual_half;
    out.json["order"] = rep.order;
    out.json["points"] = rep.points;
    out.json["excluded"] = rep.excluded;
    out.json["exclusion"] = rep.exclusion;
    Json rows = Json::array();
    out.header = {"re(w)", "im(w)", "value", "residual"};
    for (const GreenRow& g : rep.rows) {
      Json rj;
      rj["w"] = complex_json(g.w);
      rj["value"] = g.value;
      rj["residual"] = g.residual;
      rows.push_back(rj);
      out.rows.push_back({num(g.w.real()), num(g.w.imag()), num(g.value), num(g.residual)});
    }
    out.json["rows"] = rows;
  }
  if (out.header.empty()) out.header = {"re(w)", "im(w)", "value", "residual"};
  return out;
}

FiniteWhittakerDatum as_datum(const Json& j, const std::string& path) {
  check_keys(j, path, {"value", "deriv", "label"});
  FiniteWhittakerDatum d;
  d.value_at_s0 = as_cplx(need(j, "value", path), join(path, "value"));
  d.deriv_at_s0 = as_cplx(need(j, "deriv", path), join(path, "deriv"));
  if (const Json* l = find(j, "label")) d.label = as_string(*l, join(path, "label"));
  return d;
}

// Exact entries: integers or strings "p/q" / finite decimals; {"re","im"} in the Hermitian case.
GaussRat as_gauss_rat(const Json& j, const std::string& path, bool herm) {
  auto part = [&](const Json& x, const std::string& pp) -> Rat {
    if (x.is_number_integer()) return Rat(x.get<long long>());
    if (x.is_string()) {
      try {
        return parse_rational(x.get<std::string>());
      } catch (const Error& e) {
        bad(pp, e.what());
      }
    }
    bad(pp, "expected an integer or an exact rational string");
  };
  if (j.is_object()) {
    if (!herm) bad(path, "complex entry in a real matrix");
    check_keys(j, path, {"re", "im"});
    GaussRat g;
    if (const Json* re = find(j, "re")) g.re = part(*re, join(path, "re"));
    if (const Json* im = find(j, "im")) g.im = part(*im, join(path, "im"));
    return g;
  }
  return GaussRat(part(j, path));
}

RatMatrix as_rat_matrix(const Json& j, const std::string& path, bool herm) {
  if (!j.is_array() || j.empty()) bad(path, "expected a square list of rows");
  const int n = int(j.size());
  if (n > 4) bad(path, "matrix size exceeds 4");
  RatMatrix T(n, herm);
  for (int i = 0; i < n; ++i) {
    const std::string rp = index(path, i);
    if (!j[i].is_array() || int(j[i].size()) != n) bad(rp, "expected a row of length " + std::to_string(n));
    for (int k = 0; k < n; ++k) T(i, k) = as_gauss_rat(j[i][k], index(rp, k), herm);
  }
  try {
    require_self_adjoint(T);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return T;
}

Json coeff_json(const CoeffResult& c) {
  Json j;
  j["beta"] = complex_json(c.beta);
  j["kappa"] = complex_json(c.kappa);
  j["C_T"] = complex_json(c.C_T);
  j["C_T_deriv"] = complex_json(c.C_T_deriv);
  j["residual"] = c.residual ? Json(*c.residual) : Json(nullptr);
  j["flags"] = c.flags;
  return j;
}

Output cmd_kappa(const Json& p) {
  const std::string path = "params";
  check_keys(p, path, {"case", "m", "k_chi", "d", "T", "y", "datum", "datum_doubleprime", "s", "lambda", "mode",
                       "quad"});
  std::string mode = "nondegenerate";
  if (const Json* mj = find(p, "mode")) mode = as_string(*mj, join(path, "mode"));
  const int d = opt_int(p, "d", path, 0);
  const FiniteWhittakerDatum datum = as_datum(need(p, "datum", path), join(path, "datum"));
  Output out;

  if (mode == "general") {
    for (const char* k : {"y", "s", "lambda", "quad"})
      if (find(p, k)) bad(join(path, k), "not used in general mode");
    std::string kind = "orthogonal";
    if (const Json* c = find(p, "case")) kind = as_string(*c, join(path, "case"));
    const RatMatrix T = as_rat_matrix(need(p, "T", path), join(path, "T"), kind == "unitary");
    const int dd = d == 0 ? 1 : d;
    if (dd < 1) bad(join(path, "d"), "must be >= 1");
    const CaseParams ctx = as_case(p, path, T.n, dd);
    std::optional<FiniteWhittakerDatum> dpp;
    if (const Json* dj = find(p, "datum_doubleprime")) dpp = as_datum(*dj, join(path, "datum_doubleprime"));
    const CoeffResult c = beta_kappa_general(T, ctx, dd, datum, dpp);
    out.json = coeff_json(c);
    // C_T needs the archimedean y; general mode reports the constants only.
    out.json["C_T"] = nullptr;
    out.json["C_T_deriv"] = nullptr;
    if (T.rank() > 0 && T.rank() < T.n) {
      const Reduction red = reduce_degenerate(T);
      Json rj;
      rj["rank"] = red.rank;
      rj["gamma"] = red.gamma.str();
      rj["gamma_inv"] = red.gamma_inv.str();
      rj["S"] = red.S.str();
      rj["det_S"] = red.det_S.str();
      rj["det_prime_T"] = red.det_prime_T.str();
      rj["discrepancy"] = red.discrepancy;
      out.json["reduction"] = rj;
    }
  } else if (mode == "nondegenerate") {
    if (find(p, "datum_doubleprime")) bad(join(path, "datum_doubleprime"), "only used in general mode");
    // T: one matrix per real place (list of matrices) or a single matrix.
    const Json& Tj = need(p, "T", path);
    const std::string tp = join(path, "T");
    std::vector<const Json*> Tlist;
    const bool per_place = Tj.is_array() && !Tj.empty() && Tj[0].is_array() && !Tj[0].empty() && Tj[0][0].is_array();
    if (per_place)
      for (const Json& t : Tj) Tlist.push_back(&t);
    else
      Tlist.push_back(&Tj);
    const int places = int(Tlist.size());
    const int dd = d == 0 ? places : d;
    if (dd != places) bad(join(path, "d"), "does not match the number of T matrices");
    const int r = as_cmat(*Tlist[0], per_place ? index(tp, 0) : tp).r;
    const CaseParams ctx = as_case(p, path, r, dd);
    const Field field = case_field(ctx);
    TotallyRealContext trc;
    trc.d = dd;
    for (int i = 0; i < places; ++i) trc.T.push_back(as_cone(*Tlist[i], per_place ? index(tp, i) : tp, field));
    if (const Json* yj = find(p, "y")) {
      const std::string yp = join(path, "y");
      const bool ylist = yj->is_array() && !yj->empty() && (*yj)[0].is_array() && !(*yj)[0].empty() &&
                         (*yj)[0][0].is_array();
      if (ylist) {
        if (int(yj->size()) != places) bad(yp, "expected one matrix per place");
        for (int i = 0; i < places; ++i) trc.y.push_back(as_cone((*yj)[i], index(yp, i), field));
      } else {
        for (int i = 0; i < places; ++i) trc.y.push_back(as_cone(*yj, yp, field));
      }
    } else {
      for (int i = 0; i < places; ++i) trc.y.push_back(ConeMatrix::identity(r, field));
    }
    try {
      trc.validate(r);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotTotallyPositive) throw;
      bad(path, e.what());
    }
    const cplx s = find(p, "s") ? as_cplx(p["s"], join(path, "s")) : cplx(ctx.s0);
    const double lambda = opt_double(p, "lambda", path, 1.0);
    if (!(lambda > 0.0)) bad(join(path, "lambda"), "must be positive");
    WhittakerOptions opt;
    opt.quad = as_quad(p, path);
    out.json = coeff_json(assemble_coefficient(ctx, trc, datum, s, lambda, opt));
  } else {
    bad(join(path, "mode"), "expected \"nondegenerate\" or \"general\"");
  }

  const Json& j = out.json;
  out.header = {"beta_re", "beta_im", "kappa_re", "kappa_im", "C_T_re", "C_T_im", "C_T_deriv_re", "C_T_deriv_im",
                "residual"};
  auto pr = [&](const char* k) {
    if (j[k].is_null()) return std::pair{std::string(), std::string()};
    return std::pair{num(j[k][0].get<double>()), num(j[k][1].get<double>())};
  };
  const auto [b0, b1] = pr("beta");
  const auto [k0, k1] = pr("kappa");
  const auto [c0, c1] = pr("C_T");
  const auto [d0, d1] = pr("C_T_deriv");
  out.rows.push_back({b0, b1, k0, k1, c0, c1, d0, d1,
                      j["residual"].is_null() ? std::string() : num(j["residual"].get<double>())});
  return out;
}

int cmd_verify(const Json& p, const RunConfig& cfg, std::ostream& out) {
  const std::string path = "params";
  check_keys(p, path, {"suite", "criteria"});
  std::string suite = "all";
  if (const Json* s = find(p, "suite")) suite = as_string(*s, join(path, "suite"));
  std::vector<int> ids;
  try {
    ids = suite_members(suite);
  } catch (const Error& e) {
    bad(join(path, "suite"), e.what());
  }
  if (const Json* c = find(p, "criteria")) {
    const std::string cp = join(path, "criteria");
    if (!c->is_array() || c->empty()) bad(cp, "expected a non-empty list of criterion numbers");
    std::vector<int> pick;
    for (std::size_t i = 0; i < c->size(); ++i) {
      const int n = as_int((*c)[i], index(cp, i));
      if (n < 1 || n > kCriterionCount) bad(index(cp, i), "no such criterion");
      if (std::find(ids.begin(), ids.end(), n) == ids.end()) bad(index(cp, i), "not in suite " + suite);
      pick.push_back(n);
    }
    ids = pick;
  }

  bool all = true;
  Json reports = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (int n : ids) {
    const CriterionReport rep = run_criterion(n);
    for (const std::string& line : report_lines(rep)) out << line << '\n';
    out.flush();
    all = all && rep.pass();
    Json rj;
    rj["criterion"] = rep.number;
    rj["title"] = rep.title;
    rj["pass"] = rep.pass();
    rj["seconds"] = rep.seconds;
    rj["runtime_limit_s"] = rep.runtime_limit_s;
    Json checks = Json::array();
    for (const Check& c : rep.checks) {
      Json cj;
      cj["id"] = c.id;
      cj["pass"] = c.pass;
      cj["detail"] = c.detail;
      checks.push_back(cj);
      rows.push_back({c.id, c.pass ? "PASS" : "FAIL", num(rep.seconds), "\"" + c.detail + "\""});
    }
    rj["checks"] = checks;
    reports.push_back(rj);
  }
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) bad("output", "cannot open " + cfg.output);
    if (cfg.format == "csv") {
      f << render_csv({"id", "result", "seconds", "detail"}, rows);
    } else {
      Json doc;
      doc["suite"] = suite;
      doc["pass"] = all;
      doc["criteria"] = reports;
      f << dump_json(doc) << '\n';
    }
  }
  return all ? kOk : kVerifyFailed;
}

void emit(const Output& o, const RunConfig& cfg, std::ostream& out) {
  const std::string text = cfg.format == "csv" ? render_csv(o.header, o.rows) : dump_json(o.json) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) bad("output", "cannot open " + cfg.output);
  f << text;
}

const std::set<std::string> kCommands = {"omega", "whittaker", "green", "kappa", "verify"};

}  // namespace

RunConfig parse_config(const Json& doc) {
  check_keys(doc, "config", {"command", "params", "output", "format"});
  RunConfig cfg;
  cfg.command = as_string(need(doc, "command", "config"), "config.command");
  if (!kCommands.count(cfg.command)) bad("config.command", "unknown command \"" + cfg.command + "\"");
  if (const Json* p = find(doc, "params")) {
    require_object(*p, "config.params");
    cfg.params = *p;
  }
  if (const Json* o = find(doc, "output")) cfg.output = as_string(*o, "config.output");
  if (const Json* f = find(doc, "format")) cfg.format = as_string(*f, "config.format");
  if (cfg.format != "json" && cfg.format != "csv") bad("config.format", "expected \"json\" or \"csv\"");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "csv") bad("format", "expected \"json\" or \"csv\"");
    if (cfg.command == "verify") return cmd_verify(cfg.params, cfg, out);
    Output o;
    if (cfg.command == "omega")
      o = cmd_omega(cfg.params);
    else if (cfg.command == "whittaker")
      o = cmd_whittaker(cfg.params);
    else if (cfg.command == "green")
      o = cmd_green(cfg.params);
    else if (cfg.command == "kappa")
      o = cmd_kappa(cfg.params);
    else
      bad("command", "unknown command \"" + cfg.command + "\"");
    emit(o, cfg, out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.achieved() >= 0.0) err << " (achieved " << format_double(e.achieved()) << ")";
    err << '\n';
    return e.is_convergence_failure() ? kNotConverged : kConfigError;
  } catch (const Json::exception& e) {
    err << "error: ConfigError: params: " << e.what() << '\n';
    return kConfigError;
  }
}

namespace {

// Inline flags are folded into a params object so both entry paths share validation.
struct Inline {
  std::vector<double> g, g_im, T, T_im, y, alpha, alpha_im, beta, beta_im, s, s_im, lambda, v, v_im;
  std::vector<std::string> T_exact;
  std::string field, case_kind, chart, suite, mode, label;
  int r = 0, m = 0, k_chi = 0, d = 0, nodes_diag = 0, nodes_offdiag = 0, grid_n = 0;
  std::vector<int> criteria;
  double tolerance = 0, h_s = 0, h_grid = 0, rho = 0, exclusion = 0, w_re = 0, w_im = 0, t = 0;
  double value = 0, value_im = 0, deriv = 0, deriv_im = 0, dpp_value = 0, dpp_deriv = 0;
  bool oracle = false;
};

Json cplx_entry(double re, double im) {
  if (im == 0.0) return re;
  Json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

Json matrix_from_flat(const std::vector<double>& re, const std::vector<double>& im, const std::string& flag) {
  if (!im.empty() && im.size() != re.size()) bad(flag, "imaginary part has a different length");
  const std::size_t n = std::size_t(std::llround(std::sqrt(double(re.size()))));
  if (n * n != re.size() || n == 0) bad(flag, "expected n*n entries in row-major order");
  auto at = [&](std::size_t k) { return cplx_entry(re[k], im.empty() ? 0.0 : im[k]); };
  if (n == 1) return at(0);
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(at(i * n + k));
    rows.push_back(row);
  }
  return rows;
}

Json list_from(const std::vector<double>& re, const std::vector<double>& im, const std::string& flag) {
  if (!im.empty() && im.size() != re.size()) bad(flag, "imaginary part has a different length");
  if (re.size() == 1) return cplx_entry(re[0], im.empty() ? 0.0 : im[0]);
  Json a = Json::array();
  for (std::size_t k = 0; k < re.size(); ++k) a.push_back(cplx_entry(re[k], im.empty() ? 0.0 : im[k]));
  return a;
}

bool given(CLI::App* app, const char* name) { return app->count(name) > 0; }

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Archimedean Whittaker, omega, Green form and Eisenstein coefficient tools"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string config_path, output, format = "json";
  app.add_option("--config", config_path, "JSON config {command, params, output, format}");
  app.add_option("--output", output, "output path (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  Inline in;
  auto add_quad = [&](CLI::App* sc) {
    sc->add_option("--nodes-diag", in.nodes_diag);
    sc->add_option("--nodes-offdiag", in.nodes_offdiag);
    sc->add_option("--tolerance", in.tolerance);
  };
  auto add_case = [&](CLI::App* sc) {
    sc->add_option("--case", in.case_kind)->check(CLI::IsMember({"orthogonal", "unitary"}));
    sc->add_option("--m", in.m);
    sc->add_option("--k-chi", in.k_chi);
  };

  CLI::App* om = app.add_subcommand("omega", "omega(g; alpha, beta) over an alpha x beta grid");
  om->add_option("--r", in.r);
  om->add_option("--field", in.field)->check(CLI::IsMember({"real", "complex"}));
  om->add_option("--g", in.g, "row-major entries")->expected(1, 16);
  om->add_option("--g-im", in.g_im)->expected(1, 16);
  om->add_option("--alpha", in.alpha)->expected(1, -1);
  om->add_option("--alpha-im", in.alpha_im)->expected(1, -1);
  om->add_option("--beta", in.beta)->expected(1, -1);
  om->add_option("--beta-im", in.beta_im)->expected(1, -1);
  add_quad(om);

  CLI::App* wh = app.add_subcommand("whittaker", "normalized Whittaker values, derivative, asymptote, oracle");
  add_case(wh);
  wh->add_option("--T", in.T)->expected(1, 16);
  wh->add_option("--T-im", in.T_im)->expected(1, 16);
  wh->add_option("--y", in.y)->expected(1, 16);
  wh->add_option("--s", in.s)->expected(1, -1);
  wh->add_option("--s-im", in.s_im)->expected(1, -1);
  wh->add_option("--lambda", in.lambda)->expected(1, -1);
  wh->add_option("--h-s", in.h_s);
  wh->add_option("--oracle", in.oracle);
  add_quad(wh);

  CLI::App* gr = app.add_subcommand("green", "rank-1 Green form checks on a chart");
  gr->add_option("--chart", in.chart)->check(CLI::IsMember({"o12", "u11"}));
  gr->add_option("--v", in.v)->expected(2, 3);
  gr->add_option("--v-im", in.v_im)->expected(2, 3);
  gr->add_option("--rho", in.rho);
  gr->add_option("--h-grid", in.h_grid);
  gr->add_option("--grid-n", in.grid_n);
  gr->add_option("--exclusion", in.exclusion);
  gr->add_option("--w-re", in.w_re);
  gr->add_option("--w-im", in.w_im);
  gr->add_option("--t", in.t);

  CLI::App* ka = app.add_subcommand("kappa", "Eisenstein coefficient constants");
  add_case(ka);
  ka->add_option("--mode", in.mode)->check(CLI::IsMember({"nondegenerate", "general"}));
  ka->add_option("--d", in.d);
  ka->add_option("--T", in.T)->expected(1, 16);
  ka->add_option("--T-exact", in.T_exact, "row-major exact entries (general mode)")->expected(1, 16);
  ka->add_option("--y", in.y)->expected(1, 16);
  ka->add_option("--s", in.s)->expected(1);
  ka->add_option("--lambda", in.lambda)->expected(1);
  ka->add_option("--datum-value", in.value);
  ka->add_option("--datum-value-im", in.value_im);
  ka->add_option("--datum-deriv", in.deriv);
  ka->add_option("--datum-deriv-im", in.deriv_im);
  ka->add_option("--datum-label", in.label);
  ka->add_option("--datum2-value", in.dpp_value);
  ka->add_option("--datum2-deriv", in.dpp_deriv);

  CLI::App* ve = app.add_subcommand("verify", "run the acceptance criteria");
  ve->add_option("--suite", in.suite)->check(CLI::IsMember({"all", "omega", "whittaker", "green", "kappa"}));
  ve->add_option("--criterion", in.criteria)->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) bad("--config", "cannot be combined with a subcommand");
      std::ifstream f(config_path, std::ios::binary);
      if (!f) bad("--config", "cannot read " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      Json doc;
      try {
        doc = Json::parse(ss.str());
      } catch (const Json::parse_error& e) {
        bad("config", std::string("malformed JSON at byte ") + std::to_string(e.byte));
      }
      cfg = parse_config(doc);
      if (given(&app, "--output")) cfg.output = output;
      if (given(&app, "--format")) cfg.format = format;
    } else {
      if (app.get_subcommands().empty()) bad("command", "expected a subcommand or --config");
      CLI::App* sc = app.get_subcommands().front();
      cfg.command = sc->get_name();
      cfg.output = output;
      cfg.format = format;
      Json& p = cfg.params;
      auto quad = [&](CLI::App* a) {
        Json q = Json::object();
        if (given(a, "--nodes-diag")) q["nodes_diag"] = in.nodes_diag;
        if (given(a, "--nodes-offdiag")) q["nodes_offdiag"] = in.nodes_offdiag;
        if (given(a, "--tolerance")) q["tolerance"] = in.tolerance;
        if (!q.empty()) p["quad"] = q;
      };
      auto case_ = [&](CLI::App* a) {
        if (given(a, "--case")) p["case"] = in.case_kind;
        if (given(a, "--m")) p["m"] = in.m;
        if (given(a, "--k-chi")) p["k_chi"] = in.k_chi;
      };
      if (sc == om) {
        if (given(om, "--r")) p["r"] = in.r;
        if (given(om, "--field")) p["field"] = in.field;
        if (given(om, "--g")) p["g"] = matrix_from_flat(in.g, in.g_im, "--g");
        if (given(om, "--alpha")) p["alpha"] = list_from(in.alpha, in.alpha_im, "--alpha-im");
        if (given(om, "--beta")) p["beta"] = list_from(in.beta, in.beta_im, "--beta-im");
        quad(om);
      } else if (sc == wh) {
        case_(wh);
        if (given(wh, "--T")) p["T"] = matrix_from_flat(in.T, in.T_im, "--T");
        if (given(wh, "--y")) p["y"] = matrix_from_flat(in.y, {}, "--y");
        if (given(wh, "--s")) p["s"] = list_from(in.s, in.s_im, "--s-im");
        if (given(wh, "--lambda")) p["lambda"] = list_from(in.lambda, {}, "--lambda");
        if (given(wh, "--h-s")) p["h_s"] = in.h_s;
        if (given(wh, "--oracle")) p["oracle"] = in.oracle;
        quad(wh);
      } else if (sc == gr) {
        if (given(gr, "--chart")) p["chart"] = in.chart;
        if (given(gr, "--v")) {
          if (!in.v_im.empty() && in.v_im.size() != in.v.size()) bad("--v-im", "length differs from --v");
          Json v = Json::array();
          for (std::size_t k = 0; k < in.v.size(); ++k) v.push_back(cplx_entry(in.v[k], in.v_im.empty() ? 0.0 : in.v_im[k]));
          p["v"] = v;
        }
        if (given(gr, "--rho")) p["rho"] = in.rho;
        if (given(gr, "--h-grid")) p["h_grid"] = in.h_grid;
        Json g = Json::object();
        if (given(gr, "--grid-n")) g["n"] = in.grid_n;
        if (given(gr, "--exclusion")) g["exclusion"] = in.exclusion;
        if (!g.empty()) p["grid"] = g;
        if (given(gr, "--w-re") || given(gr, "--w-im")) {
          Json pt;
          pt["w"] = cplx_entry(in.w_re, in.w_im);
          if (given(gr, "--t")) pt["t"] = in.t;
          p["point"] = pt;
        } else if (given(gr, "--t")) {
          bad("--t", "needs --w-re/--w-im");
        }
      } else if (sc == ka) {
        case_(ka);
        if (given(ka, "--mode")) p["mode"] = in.mode;
        if (given(ka, "--d")) p["d"] = in.d;
        if (given(ka, "--T")) p["T"] = matrix_from_flat(in.T, {}, "--T");
        if (given(ka, "--T-exact")) {
          const std::size_t n = std::size_t(std::llround(std::sqrt(double(in.T_exact.size()))));
          if (n * n != in.T_exact.size()) bad("--T-exact", "expected n*n entries in row-major order");
          Json rows = Json::array();
          for (std::size_t i = 0; i < n; ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < n; ++k) row.push_back(in.T_exact[i * n + k]);
            rows.push_back(row);
          }
          if (p.contains("T")) bad("--T-exact", "cannot be combined with --T");
          p["T"] = rows;
        }
        if (given(ka, "--y")) p["y"] = matrix_from_flat(in.y, {}, "--y");
        if (given(ka, "--s")) p["s"] = in.s[0];
        if (given(ka, "--lambda")) p["lambda"] = in.lambda[0];
        if (given(ka, "--datum-value") || given(ka, "--datum-deriv")) {
          Json dj;
          dj["value"] = cplx_entry(in.value, in.value_im);
          dj["deriv"] = cplx_entry(in.deriv, in.deriv_im);
          if (given(ka, "--datum-label")) dj["label"] = in.label;
          p["datum"] = dj;
        }
        if (given(ka, "--datum2-value") || given(ka, "--datum2-deriv")) {
          Json dj;
          dj["value"] = in.dpp_value;
          dj["deriv"] = in.dpp_deriv;
          p["datum_doubleprime"] = dj;
        }
      } else if (sc == ve) {
        if (given(ve, "--suite")) p["suite"] = in.suite;
        if (given(ve, "--criterion")) p["criteria"] = in.criteria;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace eisarch::cli
