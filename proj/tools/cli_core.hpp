#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json_io.hpp"

namespace ptorsion::cli {

using io::json;

struct RunOptions {
  std::int64_t precision = 20;
  std::int64_t order_bound = 6;
  std::uint64_t seed = 0;
  std::int64_t jobs = 1;
};

struct RunResult {
  std::optional<json> output;  // absent on invalid input or hard errors
  int exit_code = 0;
  std::string diagnostic;
};

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInvalid = 2;

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string render(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

using Reply = std::pair<json, int>;

inline std::int64_t precision_of(const json& in, const RunOptions& opt) {
  std::int64_t prec = opt.precision;
  if (io::has(in, "precision")) prec = io::get_int(in, "precision");
  if (io::has(in, "prec")) prec = io::get_int(in, "prec");
  if (prec < 1 || prec > 2000) throw InputError("precision must be between 1 and 2000");
  return prec;
}

inline std::int64_t order_bound_of(const json& in, const RunOptions& opt) {
  const auto m = io::get_int(in, "order_bound", opt.order_bound);
  if (m < 1 || m > 1000) throw InputError("order bound must be between 1 and 1000");
  return m;
}

inline json field_json(const io::Field& f) { return json{{"p", f->prime()}, {"f", f->degree()}}; }

// ---- padic_core ----

inline Reply teichmuller_cmd(const json& in, const RunOptions& opt) {
  const auto field = io::field_from(in);
  const auto prec = precision_of(in, opt);
  const auto rf = field->residue_field();
  const auto& xj = io::req(in, "xi");
  ResidueElement xi = xj.is_array() ? ResidueElement(rf, io::int_vec(xj, "xi"))
                                    : ResidueElement::from_index(rf, Int(io::as_int(xj, "xi")));
  if (xj.is_array())
    for (auto d : io::int_vec(xj, "xi"))
      if (d < 0 || d >= field->prime()) throw InputError("xi digit out of range");
  if (!xj.is_array() && (io::as_int(xj, "xi") < 0 || Int(io::as_int(xj, "xi")) >= rf->size()))
    throw InputError("xi index out of range");
  const auto w = teichmuller(field, xi, prec);
  json out{{"command", "teichmuller"}, {"p", field->prime()}, {"f", field->degree()}, {"prec", prec},
           {"xi", to_int64(xi.index())}, {"residue_order", to_int64(xi.order())}, {"value", io::scalar_json(w)}};
  const auto digits = w.unit_digits();
  if (field->degree() == 1) out["value_digits"] = digits.front();
  else out["value_digits"] = digits;
  return {out, kOk};
}

inline Reply exp_log_cmd(const json& in, const RunOptions& opt, bool is_exp) {
  const auto field = io::field_from(in);
  const auto prec = precision_of(in, opt);
  const auto x = io::scalar(io::req(in, "x"), field, prec);
  const auto y = is_exp ? padic_exp(x, prec) : padic_log(x, prec);
  json out{{"command", is_exp ? "exp" : "log"}, {"p", field->prime()}, {"f", field->degree()}, {"prec", prec},
           {"x", io::scalar_json(x)}, {"value", io::scalar_json(y)}};
  if (field->degree() == 1 && y.min_valuation() >= 0) {
    out["representative"] = io::representative_str(y);
    out["modulus_exp"] = y.abs_precision();
  }
  return {out, kOk};
}

// ---- tate_series ----

inline AnalyticSeries<UnramifiedScalar> series_input(const json& in, const io::Field& field, std::int64_t prec) {
  if (io::has(in, "series")) return io::series(in.at("series"), field, prec);
  std::map<Exponent, UnramifiedScalar> terms;
  std::int64_t k = 0;
  for (const auto& c : io::as_array(io::req(in, "coefficients"), "coefficients"))
    terms.emplace(Exponent{k++}, io::scalar(c, field, prec));
  PolyDisc<UnramifiedScalar> disc{1, io::get_int(in, "radius_exp", 0), {}};
  return AnalyticSeries<UnramifiedScalar>::polynomial(disc, std::move(terms));
}

inline Reply strassmann_cmd(const json& in, const RunOptions& opt) {
  const auto field = io::field_from(in);
  const auto prec = precision_of(in, opt);
  const auto s = series_input(in, field, prec);
  const auto n = strassmann_count(s);
  json out{{"command", "strassmann"}, {"count", n}, {"gauss_valuation", *s.gauss_valuation()},
           {"series", io::series_json(s)}};
  return {out, kOk};
}

inline Reply newton_cmd(const json& in, const RunOptions& opt) {
  const auto field = io::field_from(in);
  const auto prec = precision_of(in, opt);
  std::vector<UnramifiedScalar> coeffs;
  if (io::has(in, "coefficients")) {
    coeffs = io::scalar_vec(in.at("coefficients"), field, prec);
  } else {
    const auto s = io::series(io::req(in, "series"), field, prec);
    if (s.disc().dim != 1) throw InputError("Newton polygon needs a univariate series");
    for (const auto& [e, a] : s.terms()) {
      coeffs.resize(std::max<std::size_t>(coeffs.size(), static_cast<std::size_t>(e[0]) + 1),
                    UnramifiedScalar::zero(field, prec));
      coeffs[static_cast<std::size_t>(e[0])] = a;
    }
  }
  const auto m = io::get_int(in, "radius_exp", 0);
  const auto np = newton_polygon(coeffs);
  json segs = json::array();
  for (const auto& s : np.segments)
    segs.push_back({{"slope", io::rat_str(s.slope)}, {"length", s.length}, {"root_valuation", io::rat_str(-s.slope)}});
  json out{{"command", "newton"}, {"zero_order", np.zero_order}, {"degree", np.degree()}, {"segments", segs},
           {"radius_exp", m}, {"roots_in_disc", np.roots_with_valuation_at_least(m)}};
  return {out, kOk};
}

// ---- conic_dynamics ----

struct ConicInput {
  io::Field field;
  std::int64_t prec = 0;
  std::int64_t vars = 0;
  std::vector<LaurentPoly> polys;
  std::vector<std::int64_t> weights;
  UnramifiedScalar alpha = UnramifiedScalar::zero(UnramifiedField::make(2, 1), 1);
  std::vector<UnramifiedScalar> point;
  std::int64_t radius_exp = 0;
  json echo;
};

inline ConicInput conic_input(const json& in, const RunOptions& opt) {
  ConicInput c;
  const auto p = io::get_int(in, "p");
  if (p < 2 || !is_prime(p)) throw InputError("p must be prime");
  c.vars = io::get_int(in, "vars");
  if (c.vars < 1 || c.vars > 8) throw InputError("vars must be between 1 and 8");
  c.polys = io::laurent_list(io::req(in, "equations"), c.vars);
  if (c.polys.empty()) throw InputError("at least one equation is required");
  const auto m = coefficient_field(c.polys)->order();
  const auto f = lcm64(io::get_int(in, "f", 1), embedding_degree(p, m));
  if (f < 1 || f > 16) throw InputError("coefficient field needs too large a residue degree");
  c.field = UnramifiedField::make(p, f);
  c.prec = precision_of(in, opt);
  c.radius_exp = io::get_int(in, "radius_exp", 0);
  const auto& aj = io::req(in, "action");
  c.weights = io::has(aj, "weights") ? io::int_vec(aj.at("weights"), "weights")
                                     : std::vector<std::int64_t>(static_cast<std::size_t>(c.vars), 1);
  if (static_cast<std::int64_t>(c.weights.size()) != c.vars) throw InputError("weight vector has wrong length");
  const json alpha_j = io::has(aj, "alpha") ? aj.at("alpha") : json(p == 2 ? 5 : 1 + p);
  c.alpha = io::scalar(alpha_j, c.field, c.prec);
  c.point = io::scalar_vec(io::req(in, "point"), c.field, c.prec);
  if (static_cast<std::int64_t>(c.point.size()) != c.vars) throw InputError("point has wrong dimension");
  c.echo = in;
  c.echo["f"] = f;
  c.echo["precision"] = c.prec;
  c.echo.erase("prec");
  return c;
}

inline Reply conic_cmd(const json& in, const RunOptions& opt) {
  const auto c = conic_input(in, opt);
  const auto action = WeightedAction<UnramifiedScalar>::make(c.weights, c.alpha);
  PolyDisc<UnramifiedScalar> disc{c.vars, c.radius_exp, {}};
  const auto locus = locus_from_polynomials(disc, c.polys, c.field, c.prec);
  const auto bound = io::has(in, "bound") ? io::get_int(in, "bound")
                                          : std::max<std::int64_t>(1, orbit_bound(locus, action, c.point));
  const auto cert = conic_certificate(locus, action, c.point, bound);
  json out = io::conic_json(cert);
  out["command"] = "conic-check";
  out["input"] = c.echo;
  out["field"] = field_json(c.field);
  if (cert.failing_series) {
    const auto& vc = cert.per_series[*cert.failing_series];
    if (vc.failing_index) {
      const auto n = static_cast<std::size_t>(*vc.failing_index);
      out["failing_orbit_point"] = {{"series", *cert.failing_series},
                                    {"index", n},
                                    {"beta", io::scalar_json(vc.points[n])},
                                    {"point", io::scalars_json(action.apply(vc.points[n], c.point))},
                                    {"value", io::scalar_json(vc.values[n])}};
    }
  }
  int code = cert.certified ? kOk : kViolation;
  if (io::has(in, "linearity")) {
    const auto& lj = in.at("linearity");
    std::int64_t upper = 0;
    for (auto w : c.weights) upper += w > 1 ? 1 : 0;
    const auto target = io::has(lj, "target") ? io::laurent_list(lj.at("target"), upper) : std::vector<LaurentPoly>{};
    LinearityOptions lo;
    lo.samples = io::get_int(lj, "samples", 20);
    lo.seed = opt.seed;
    const auto rep = linearity_check(c.polys, c.weights, target, lo);
    json eig = json::object();
    for (const auto& [w, d] : rep.eigenspace_dims) eig[std::to_string(w)] = d;
    json lr{{"verdict", rep.verdict},
            {"method", rep.method},
            {"smooth", rep.smooth},
            {"num_equations", rep.num_equations},
            {"jacobian_rank", rep.tangent.jacobian_rank},
            {"tangent_dim", rep.tangent.dim},
            {"eigenspace_dims", eig},
            {"splitting_ok", rep.splitting_ok},
            {"image_dim", rep.image_dim},
            {"target_dim", rep.target_dim},
            {"surjective", rep.surjective},
            {"weighted_homogeneous", rep.weighted_homogeneous},
            {"samples_checked", rep.samples_checked},
            {"note", rep.note}};
    if (rep.sigma_stable) lr["sigma_stable"] = *rep.sigma_stable;
    if (rep.projection_in_target) lr["projection_in_target"] = *rep.projection_in_target;
    if (rep.counterexample) {
      json ce = json::array();
      for (const auto& x : *rep.counterexample) ce.push_back(io::cyclotomic_json(x));
      lr["counterexample"] = ce;
    }
    out["linearity"] = lr;
    if (rep.verdict == "fails_at_point") code = kViolation;
  }
  return {out, code};
}

// ---- torsion_coset_engine ----

inline Reply solve_cmd(const json& in, const RunOptions&) {
  const auto sys = io::system(in);
  const auto cosets = solve(sys);
  json out{{"command", "solve-binomial"}, {"input", io::system_json(sys)}, {"cosets", io::cosets_json(cosets)},
           {"num_components", cosets.size()}};
  return {out, kOk};
}

inline Reply enumerate_cmd(const json& in, const RunOptions& opt) {
  const auto sys = io::system(in);
  const auto m = order_bound_of(in, opt);
  json comps = json::array();
  std::int64_t count = 0;
  for (const auto& c : solve(sys)) {
    json pts = json::array();
    for (const auto& t : enumerate_torsion(c, m)) pts.push_back(io::qz_json(t));
    count += static_cast<std::int64_t>(pts.size());
    comps.push_back({{"coset", io::coset_json(c)}, {"points", pts}});
  }
  json echo = io::system_json(sys);
  echo["order_bound"] = m;
  json out{{"command", "enumerate-torsion"}, {"input", echo}, {"order_bound", m}, {"components", comps},
           {"count", count}};
  return {out, kOk};
}

inline std::pair<BinomialSystem, PipelineOptions> pipeline_input(const json& in, const RunOptions& opt, json& echo) {
  const auto sys = io::system(in);
  PipelineOptions po;
  po.p = io::get_int(in, "p", 3);
  if (po.p < 2 || !is_prime(po.p)) throw InputError("p must be prime");
  po.precision = precision_of(in, opt);
  if (io::has(in, "automorphism")) {
    po.automorphism = io::int_mat(in.at("automorphism"), "automorphism");
    if (static_cast<std::int64_t>(po.automorphism.size()) != sys.dim) throw InputError("automorphism has wrong size");
    for (const auto& row : po.automorphism)
      if (static_cast<std::int64_t>(row.size()) != sys.dim) throw InputError("automorphism has wrong size");
    unimodular_inverse(po.automorphism);
  }
  if (io::has(in, "weights")) po.weights = io::int_vec(in.at("weights"), "weights");
  po.alpha = io::get_int(in, "alpha", 0);
  po.seed = io::has(in, "seed") ? static_cast<std::uint64_t>(io::get_int(in, "seed")) : opt.seed;
  echo = io::system_json(sys);
  echo["p"] = po.p;
  echo["precision"] = po.precision;
  echo["seed"] = po.seed;
  if (!po.automorphism.empty()) echo["automorphism"] = po.automorphism;
  if (!po.weights.empty()) echo["weights"] = po.weights;
  if (po.alpha != 0) echo["alpha"] = po.alpha;
  return {sys, po};
}

inline Reply find_torsion_cmd(const json& in, const RunOptions& opt) {
  json echo;
  const auto [sys, po] = pipeline_input(in, opt, echo);
  const auto certs = torsion_certificate_pipeline(sys, po);
  json list = json::array();
  std::map<std::string, std::int64_t> summary{{"certified", 0}, {"refused", 0}, {"unavailable", 0}};
  for (const auto& c : certs) {
    list.push_back(io::certificate_json(c));
    ++summary[c.status];
  }
  json out{{"command", "find-torsion"}, {"input", echo}, {"certificates", list}, {"summary", summary}};
  return {out, summary["refused"] > 0 ? kViolation : kOk};
}

// ---- jumping_loci ----

inline TwistedComplex complex_input(const json& in) { return io::complex(io::req(in, "complex")); }

inline std::int64_t degree_arg(const json& in, const std::string& key) {
  const auto v = io::get_int(in, key);
  if (v < 0) throw InputError(key + " must be non-negative");
  return v;
}

inline Reply cohomology_cmd(const json& in, const RunOptions&) {
  const auto c = complex_input(in);
  const auto chi = io::has(in, "character") ? io::qz_vec(in.at("character"), "character")
                                            : std::vector<QZ>(static_cast<std::size_t>(c.vars()), QZ());
  const auto h = specialize(c, chi);
  json out{{"command", "cohomology"}, {"character", io::qz_json(chi)}, {"dims", c.dims()}, {"h", h},
           {"euler_characteristic", c.euler_characteristic()}};
  return {out, kOk};
}

inline json scan_json(const JumpingLocusSample& s, const TwistedComplex& c) {
  json hits = json::array();
  for (const auto& t : s.hits) hits.push_back(io::qz_json(t));
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back({{"character", io::qz_json(e.character)}, {"h", e.h}});
  return json{{"i", s.i},           {"j", s.j},         {"order_bound", s.order_bound},
              {"scanned", s.scanned}, {"hits", hits},     {"entries", entries},
              {"euler_invariant", s.euler_invariant}, {"euler_characteristic", c.euler_characteristic()}};
}

inline Reply scan_cmd(const json& in, const RunOptions& opt) {
  const auto c = complex_input(in);
  const auto i = degree_arg(in, "i");
  const auto j = degree_arg(in, "j");
  const auto m = order_bound_of(in, opt);
  const auto s = scan_torsion(c, i, j, m, opt.jobs);
  json out = scan_json(s, c);
  json echo = in;
  echo["order_bound"] = m;
  out["command"] = "jumping-scan";
  out["input"] = echo;
  return {out, s.euler_invariant ? kOk : kViolation};
}

inline json fitting_json(const FittingResult& r) {
  return json{{"size_limited", r.size_limited}, {"reason", r.reason}, {"minor_size", r.minor_size},
              {"generators", io::laurent_list_json(r.generators)}};
}

inline Reply fitting_cmd(const json& in, const RunOptions&) {
  const auto c = complex_input(in);
  const auto r = fitting_locus(c, degree_arg(in, "i"), degree_arg(in, "j"));
  json out = fitting_json(r);
  out["command"] = "fitting";
  return {out, r.size_limited ? kViolation : kOk};
}

inline Reply shape_cmd(const json& in, const RunOptions& opt) {
  json out{{"command", "shape-check"}};
  std::vector<LaurentPoly> gens;
  std::int64_t vars = 0;
  std::optional<TwistedComplex> cx;
  if (io::has(in, "generators")) {
    vars = io::get_int(in, "vars");
    if (vars < 1 || vars > 8) throw InputError("vars must be between 1 and 8");
    gens = io::laurent_list(in.at("generators"), vars);
  } else {
    cx = complex_input(in);
    vars = cx->vars();
    const auto r = fitting_locus(*cx, degree_arg(in, "i"), degree_arg(in, "j"));
    out["fitting"] = fitting_json(r);
    if (r.size_limited) {
      out["confirmed"] = false;
      out["verdict"] = "shape undetermined: size limit exceeded";
      return {out, kViolation};
    }
    gens = r.generators;
  }
  const auto rep = shape_check(gens, vars);
  out["confirmed"] = rep.confirmed;
  out["verdict"] = rep.verdict;
  out["cosets"] = io::cosets_json(rep.cosets);
  if (rep.system) out["system"] = io::system_json(*rep.system);
  int code = kOk;
  if (cx) {
    const auto m = order_bound_of(in, opt);
    const auto s = scan_torsion(*cx, degree_arg(in, "i"), degree_arg(in, "j"), m, opt.jobs);
    json hits = json::array();
    for (const auto& t : s.hits) hits.push_back(io::qz_json(t));
    json ev{{"order_bound", m}, {"scanned", s.scanned}, {"hits", hits}};
    if (rep.confirmed) {
      std::set<TorsionPoint> predicted;
      for (const auto& c : rep.cosets)
        for (const auto& t : enumerate_torsion(c, m)) predicted.insert(t);
      const std::set<TorsionPoint> found(s.hits.begin(), s.hits.end());
      ev["consistent"] = predicted == found;
      if (predicted != found) code = kViolation;
    }
    out["scan"] = ev;
  }
  return {out, code};
}

// ---- verification (independent re-derivation) ----

inline UnramifiedScalar eval_exact(const LaurentPoly& f, const std::vector<UnramifiedScalar>& x, const io::Field& field,
                                   std::int64_t prec) {
  auto sum = UnramifiedScalar::zero(field, prec);
  for (const auto& [e, c] : f.terms()) {
    auto term = embed_cyclotomic(c, field, prec);
    for (std::size_t i = 0; i < e.size(); ++i) term = term * x[i].pow(e[i]);
    sum = sum + term;
  }
  return sum;
}

inline std::vector<UnramifiedScalar> scale_point(const std::vector<std::int64_t>& w, const UnramifiedScalar& beta,
                                                 const std::vector<UnramifiedScalar>& x) {
  std::vector<UnramifiedScalar> y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto b = beta.is_zero() ? beta : beta.pow(w[i]);
    y.push_back(b * x[i]);
  }
  return y;
}

inline json report_json(const VerificationReport& r) {
  return json{{"ok", r.ok}, {"passed", r.passed}, {"failed", r.failed}};
}

inline VerificationReport verify_conic(const json& doc, const RunOptions& opt) {
  VerificationReport rep;
  const auto c = conic_input(io::req(doc, "input"), opt);
  bool on = true;
  for (const auto& f : c.polys) on = on && eval_exact(f, c.point, c.field, c.prec).is_zero();
  rep.check(on, "point satisfies every equation");
  const bool certified = io::req(doc, "certified").get<bool>();
  if (certified) {
    std::mt19937_64 rng(opt.seed ^ 0xa0761d6478bd642fULL);
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      const auto beta = UnramifiedScalar::from_integer(c.field, Int(static_cast<long>(rng() % 1000000)), c.prec);
      const auto y = scale_point(c.weights, beta, c.point);
      for (const auto& f : c.polys) ok = ok && eval_exact(f, y, c.field, c.prec).is_zero();
    }
    rep.check(ok, "orbit closure satisfies every equation at 100 random scalars");
    return rep;
  }
  rep.check(io::has(doc, "failing_orbit_point"), "refusal carries a failing orbit point");
  if (!io::has(doc, "failing_orbit_point")) return rep;
  const auto& fp = doc.at("failing_orbit_point");
  const auto s = io::get_int(fp, "series");
  rep.check(s >= 0 && s < static_cast<std::int64_t>(c.polys.size()), "failing equation index in range");
  if (!rep.ok) return rep;
  const auto beta = io::scalar(io::req(fp, "beta"), c.field, c.prec);
  const auto n = io::get_int(fp, "index");
  rep.check(n >= 0 && beta == c.alpha.pow(n), "failing scalar is the recorded power of alpha");
  const auto y = scale_point(c.weights, beta, c.point);
  rep.check(!eval_exact(c.polys[static_cast<std::size_t>(s)], y, c.field, c.prec).is_zero(),
            "equation is non-zero at the failing orbit point");
  return rep;
}

inline VerificationReport verify_solve(const json& doc, const RunOptions& opt) {
  VerificationReport rep;
  const auto sys = io::system(io::req(doc, "input"));
  std::vector<TorsionCoset> cosets;
  for (const auto& cj : io::as_array(io::req(doc, "cosets"), "cosets")) cosets.push_back(io::coset(cj, sys.dim));
  std::int64_t m = opt.order_bound;
  for (const auto& e : sys.equations) m = lcm64(m, e.rhs.order());
  for (const auto& c : cosets)
    for (const auto& z : c.translate) m = lcm64(m, z.order());
  std::int64_t size = 1;
  for (std::int64_t i = 0; i < sys.dim && size <= kMaxComponents; ++i) size *= m;
  if (size > kMaxComponents) m = opt.order_bound;
  bool agree = true;
  std::int64_t solutions = 0;
  for (const auto& t : torsion_grid(sys.dim, m)) {
    const bool in_sys = sys.satisfied_by(t);
    std::int64_t hits = 0;
    for (const auto& c : cosets) hits += contains(c, t) ? 1 : 0;
    agree = agree && (in_sys ? hits == 1 : hits == 0);
    solutions += in_sys ? 1 : 0;
  }
  rep.check(agree, "coset union matches brute force on the order-" + std::to_string(m) + " grid (disjointly)");
  bool saturated = true;
  for (const auto& c : cosets) {
    if (c.basis.empty()) continue;
    const auto s = smith_form(c.basis, static_cast<std::size_t>(sys.dim));
    for (std::int64_t k = 0; k < s.rank; ++k) saturated = saturated && s.diagonal[static_cast<std::size_t>(k)] == 1;
    saturated = saturated && s.rank == static_cast<std::int64_t>(c.basis.size());
  }
  rep.check(saturated, "every coset lattice is saturated and independent");
  return rep;
}

inline VerificationReport verify_scan(const json& doc, const RunOptions&) {
  VerificationReport rep;
  const auto& in = io::req(doc, "input");
  const auto c = complex_input(in);
  const auto i = degree_arg(in, "i");
  const auto j = degree_arg(in, "j");
  const auto m = io::get_int(in, "order_bound");
  const auto grid = torsion_grid(c.vars(), m);
  const auto& entries = io::as_array(io::req(doc, "entries"), "entries");
  rep.check(entries.size() == grid.size() && io::get_int(doc, "scanned") == static_cast<std::int64_t>(grid.size()),
            "every character of order dividing M was scanned");
  bool h_ok = entries.size() == grid.size();
  bool euler_ok = true;
  json hits = json::array();
  for (std::size_t k = 0; h_ok && k < grid.size(); ++k) {
    const auto& e = entries[k];
    h_ok = io::qz_vec(io::req(e, "character"), "character") == grid[k];
    const auto h = io::int_vec(io::req(e, "h"), "h");
    h_ok = h_ok && h == specialize(c, grid[k]);
    std::int64_t chi = 0;
    for (std::size_t t = 0; t < h.size(); ++t) chi += (t % 2 == 0 ? 1 : -1) * h[t];
    euler_ok = euler_ok && chi == c.euler_characteristic();
    if (h_ok && h[static_cast<std::size_t>(i)] > j) hits.push_back(io::qz_json(grid[k]));
  }
  rep.check(h_ok, "h-vectors reproduce");
  rep.check(euler_ok, "Euler characteristic is invariant");
  rep.check(hits == io::req(doc, "hits"), "hits are exactly the characters with h^i > j");
  return rep;
}

inline VerificationReport verify_find_torsion(const json& doc, const RunOptions& opt) {
  VerificationReport rep;
  json echo;
  const auto [sys, po] = pipeline_input(io::req(doc, "input"), opt, echo);
  const auto& certs = io::as_array(io::req(doc, "certificates"), "certificates");
  rep.check(certs.size() == solve(sys).size(), "one certificate per component");
  for (std::size_t k = 0; k < certs.size(); ++k) {
    const auto cert = io::certificate(certs[k], sys.dim);
    rep.check(cert.component == k, "certificate " + std::to_string(k) + " has its component index");
    const auto r = verify_certificate(cert, sys, po);
    for (const auto& s : r.passed) rep.check(true, "component " + std::to_string(k) + ": " + s);
    for (const auto& s : r.failed) rep.check(false, "component " + std::to_string(k) + ": " + s);
  }
  return rep;
}

inline Reply verify_cmd(const json& in, const RunOptions& opt) {
  const auto& cj = io::req(in, "command");
  if (!cj.is_string()) throw InputError("command must be a string");
  const auto name = cj.get<std::string>();
  VerificationReport rep;
  if (name == "find-torsion") rep = verify_find_torsion(in, opt);
  else if (name == "conic-check") rep = verify_conic(in, opt);
  else if (name == "solve-binomial") rep = verify_solve(in, opt);
  else if (name == "jumping-scan") rep = verify_scan(in, opt);
  else throw InputError("no verifier for command: " + name);
  json out = report_json(rep);
  out["command"] = "verify";
  out["verified_command"] = name;
  return {out, rep.ok ? kOk : kViolation};
}

Reply dispatch(const std::string& name, const json& in, const RunOptions& opt);

// ---- demo ----

inline std::vector<std::pair<std::string, json>> demo_jobs() {
  return {
      {"teichmuller", {{"p", 5}, {"xi", 2}, {"prec", 2}}},
      {"teichmuller", {{"p", 3}, {"f", 2}, {"xi", {1, 1}}, {"prec", 6}}},
      {"exp", {{"p", 5}, {"x", 5}, {"prec", 4}}},
      {"log", {{"p", 5}, {"x", 6}, {"prec", 8}}},
      {"strassmann",
       {{"p", 3},
        {"prec", 10},
        {"series",
         {{"disc", {{"dim", 1}, {"radius_exp", 0}}},
          {"terms", {{{"exp", {0}}, {"coeff", 3}}, {{"exp", {1}}, {"coeff", 1}}, {{"exp", {2}}, {"coeff", 9}}}},
          {"tail_exp", "none"}}}}},
      {"newton", {{"p", 3}, {"prec", 10}, {"coefficients", {9, 3, 1, 27}}}},
      {"conic-check",
       {{"p", 3},
        {"prec", 10},
        {"vars", 2},
        {"equations", {{{{"coeff", 1}, {"exp", {2, 0}}}, {{"coeff", -1}, {"exp", {0, 1}}}}}},
        {"action", {{"weights", {1, 2}}}},
        {"point", {3, 9}}}},
      {"conic-check",
       {{"p", 3},
        {"prec", 10},
        {"vars", 2},
        {"equations", {{{{"coeff", 1}, {"exp", {1, 0}}}}}},
        {"action", {{"weights", {1, 2}}}},
        {"point", {0, 9}},
        {"linearity", {{"samples", 10}}}}},
      {"conic-check",
       {{"p", 3},
        {"prec", 10},
        {"vars", 2},
        {"equations",
         {{{{"coeff", 1}, {"exp", {0, 1}}}, {{"coeff", -1}, {"exp", {2, 0}}}, {{"coeff", -1}, {"exp", {3, 0}}}}}},
        {"action", {{"weights", {1, 2}}}},
        {"point", {3, 36}}}},
      {"solve-binomial",
       {{"dim", 2},
        {"equations", {{{"exponents", {2, 0}}, {"rhs", "0/1"}}, {{"exponents", {1, 1}}, {"rhs", "1/2"}}}}}},
      {"enumerate-torsion",
       {{"dim", 2}, {"order_bound", 4}, {"equations", {{{"exponents", {1, 1}}, {"rhs", "1/2"}}}}}},
      {"find-torsion",
       {{"dim", 2},
        {"p", 5},
        {"precision", 8},
        {"automorphism", {{0, 1}, {1, 0}}},
        {"equations", {{{"exponents", {1, 1}}, {"rhs", "1/2"}}}}}},
      {"cohomology", {{"complex", {{"builtin", "torus"}}}}},
      {"cohomology", {{"complex", {{"builtin", "torus"}}}, {"character", {"1/3", "0/1"}}}},
      {"jumping-scan", {{"complex", {{"builtin", "torus"}}}, {"i", 1}, {"j", 0}, {"order_bound", 6}}},
      {"jumping-scan", {{"complex", {{"builtin", "wedge"}, {"n", 3}}}, {"i", 1}, {"j", 2}, {"order_bound", 6}}},
      {"fitting", {{"complex", {{"builtin", "circle"}}}, {"i", 0}, {"j", 0}}},
      {"fitting", {{"complex", {{"builtin", "torus"}}}, {"i", 1}, {"j", 0}}},
      {"shape-check", {{"complex", {{"builtin", "torus"}}}, {"i", 1}, {"j", 0}, {"order_bound", 6}}},
      {"shape-check",
       {{"vars", 2},
        {"generators", {{{{"coeff", 1}, {"exp", {1, 0}}}, {{"coeff", 1}, {"exp", {0, 1}}}, {{"coeff", -2}, {"exp", {0, 0}}}}}}}},
  };
}

inline Reply demo_cmd(const json&, const RunOptions& opt) {
  json runs = json::array();
  bool all_ok = true;
  for (const auto& [name, input] : demo_jobs()) {
    auto [output, code] = dispatch(name, input, opt);
    json run{{"command", name}, {"input", input}, {"exit_code", code}, {"output", output}};
    if (name == "find-torsion" || name == "conic-check" || name == "solve-binomial" || name == "jumping-scan") {
      auto [v, vcode] = verify_cmd(output, opt);
      run["verify"] = v;
      all_ok = all_ok && vcode == kOk;
    }
    runs.push_back(std::move(run));
  }
  json out{{"command", "demo"}, {"runs", runs}, {"all_verified", all_ok}};
  return {out, all_ok ? kOk : kViolation};
}

inline const std::map<std::string, std::function<Reply(const json&, const RunOptions&)>>& commands() {
  static const std::map<std::string, std::function<Reply(const json&, const RunOptions&)>> table{
      {"teichmuller", teichmuller_cmd},
      {"exp", [](const json& in, const RunOptions& o) { return exp_log_cmd(in, o, true); }},
      {"log", [](const json& in, const RunOptions& o) { return exp_log_cmd(in, o, false); }},
      {"strassmann", strassmann_cmd},
      {"newton", newton_cmd},
      {"conic-check", conic_cmd},
      {"solve-binomial", solve_cmd},
      {"enumerate-torsion", enumerate_cmd},
      {"find-torsion", find_torsion_cmd},
      {"cohomology", cohomology_cmd},
      {"jumping-scan", scan_cmd},
      {"fitting", fitting_cmd},
      {"shape-check", shape_cmd},
      {"verify", verify_cmd},
      {"demo", demo_cmd},
  };
  return table;
}

inline Reply dispatch(const std::string& name, const json& in, const RunOptions& opt) {
  const auto& table = commands();
  auto it = table.find(name);
  if (it == table.end()) throw InputError("unknown subcommand: " + name);
  return it->second(in, opt);
}

}  // namespace detail

inline std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : detail::commands()) names.push_back(k);
  return names;
}

/// Run one subcommand. Invalid input and domain errors yield exit 2 without output;
/// precision failures and hypothesis violations yield exit 1 without output.
inline RunResult run_command(const std::string& name, const json& input, const RunOptions& opt) {
  RunResult r;
  try {
    if (opt.jobs < 1) throw InputError("jobs must be >= 1");
    auto [out, code] = detail::dispatch(name, input, opt);
    r.output = std::move(out);
    r.exit_code = code;
  } catch (const InputError& e) {
    r = {std::nullopt, kInvalid, std::string("invalid input: ") + e.what()};
  } catch (const DomainError& e) {
    r = {std::nullopt, kInvalid, std::string("domain error: ") + e.what()};
  } catch (const json::exception& e) {
    r = {std::nullopt, kInvalid, std::string("invalid input: ") + e.what()};
  } catch (const PrecisionError& e) {
    r = {std::nullopt, kViolation, std::string("precision error: ") + e.what()};
  } catch (const HypothesisViolation& e) {
    r = {std::nullopt, kViolation, e.what()};
  }
  return r;
}

}  // namespace ptorsion::cli
