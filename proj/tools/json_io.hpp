#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptorsion/ptorsion.hpp"

namespace ptorsion::io {

using json = nlohmann::json;
using Field = std::shared_ptr<const UnramifiedField>;

// ---- primitive accessors ----

inline const json& req(const json& j, const std::string& key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field: " + key);
  return *it;
}

inline bool has(const json& j, const std::string& key) { return j.is_object() && j.contains(key); }

inline std::int64_t as_int(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) {
    if (j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      throw InputError(what + " is out of range");
    return static_cast<std::int64_t>(j.get<std::uint64_t>());
  }
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::int64_t get_int(const json& j, const std::string& key) { return as_int(req(j, key), key); }

inline std::int64_t get_int(const json& j, const std::string& key, std::int64_t fallback) {
  return has(j, key) ? as_int(j.at(key), key) : fallback;
}

inline const json& as_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  return j;
}

inline IntVec int_vec(const json& j, const std::string& what) {
  IntVec v;
  for (const auto& x : as_array(j, what)) v.push_back(as_int(x, what));
  return v;
}

inline IntMat int_mat(const json& j, const std::string& what) {
  IntMat m;
  for (const auto& row : as_array(j, what)) m.push_back(int_vec(row, what));
  return m;
}

inline Rat rational(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(as_int(j, what))));
  if (!j.is_string()) throw InputError(what + " must be an integer or an \"a/b\" string");
  return parse_rational(j.get<std::string>());
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

/// Q/Z value from "a/b" (any representative) or an integer.
inline QZ qz(const json& j, const std::string& what) {
  const Rat q = rational(j, what);
  const Int& den = q.get_den();
  if (!den.fits_slong_p()) throw InputError(what + " denominator too large");
  const Int num = q.get_num() % den;
  return QZ(to_int64(num), den.get_si());
}

inline std::vector<QZ> qz_vec(const json& j, const std::string& what) {
  std::vector<QZ> v;
  for (const auto& x : as_array(j, what)) v.push_back(qz(x, what));
  return v;
}

inline json qz_json(const std::vector<QZ>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(q.str());
  return a;
}

// ---- p-adic scalars ----

inline Field field_from(const json& j, std::int64_t default_f = 1) {
  const auto p = get_int(j, "p");
  if (p < 2 || !is_prime(p)) throw InputError("p must be prime");
  const auto f = get_int(j, "f", default_f);
  if (f < 1 || f > 16) throw InputError("f must be between 1 and 16");
  return UnramifiedField::make(p, f);
}

inline json scalar_json(const UnramifiedScalar& x) {
  json j;
  j["p"] = x.prime();
  j["f"] = x.degree();
  if (x.is_zero()) {
    j["v"] = "zero";
    j["abs_prec"] = x.abs_precision();
    j["rel_prec"] = 0;
    j["unit_digits"] = json::array();
  } else {
    j["v"] = x.valuation();
    j["rel_prec"] = x.rel_precision();
    const auto digits = x.unit_digits();
    if (x.degree() == 1) j["unit_digits"] = digits.front();
    else j["unit_digits"] = digits;
  }
  if (x.degree() > 1) j["modulus"] = x.field()->residue_field()->modulus();
  return j;
}

inline json scalars_json(const std::vector<UnramifiedScalar>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(scalar_json(x));
  return a;
}

inline Int digits_value(const json& digits, std::int64_t p, const std::string& what) {
  Int n = 0;
  const auto& arr = as_array(digits, what);
  for (auto it = arr.rbegin(); it != arr.rend(); ++it) {
    const auto d = as_int(*it, what);
    if (d < 0 || d >= p) throw InputError(what + ": digit out of range");
    n = n * p + d;
  }
  return n;
}

/// Integer, "a/b" string (truncated at absolute precision `prec`), or the structured
/// form emitted by scalar_json.
inline UnramifiedScalar scalar(const json& j, const Field& field, std::int64_t prec) {
  if (j.is_number() || j.is_string()) return UnramifiedScalar::from_rational(field, rational(j, "scalar"), prec);
  if (!j.is_object()) throw InputError("scalar must be a number, a string or an object");
  const auto p = field->prime();
  const auto f = field->degree();
  if (has(j, "p") && get_int(j, "p") != p) throw InputError("scalar has the wrong prime");
  if (has(j, "f") && get_int(j, "f") != f) throw InputError("scalar has the wrong degree");
  const auto& v = req(j, "v");
  if (v.is_string()) {
    if (v.get<std::string>() != "zero") throw InputError("scalar valuation must be an integer or \"zero\"");
    return UnramifiedScalar::zero(field, get_int(j, "abs_prec", prec));
  }
  const auto val = as_int(v, "v");
  const auto& digits = req(j, "unit_digits");
  std::vector<Int> unit;
  std::int64_t len = 0;
  if (f == 1) {
    unit.push_back(digits_value(digits, p, "unit_digits"));
    len = static_cast<std::int64_t>(digits.size());
  } else {
    if (!digits.is_array() || static_cast<std::int64_t>(digits.size()) != f)
      throw InputError("unit_digits needs one digit list per coefficient");
    for (const auto& c : digits) {
      unit.push_back(digits_value(c, p, "unit_digits"));
      len = std::max<std::int64_t>(len, static_cast<std::int64_t>(c.size()));
    }
  }
  const auto rel = get_int(j, "rel_prec", len);
  return UnramifiedScalar::from_parts(field, val, unit, rel);
}

inline std::vector<UnramifiedScalar> scalar_vec(const json& j, const Field& field, std::int64_t prec) {
  std::vector<UnramifiedScalar> v;
  for (const auto& x : as_array(j, "scalar list")) v.push_back(scalar(x, field, prec));
  return v;
}

/// Decimal representative of an integral element of Q_p, reduced mod p^{abs_prec}.
inline std::string representative_str(const UnramifiedScalar& x) {
  if (x.is_zero()) return "0";
  return x.representative().front().get_str();
}

// ---- series ----

inline json series_json(const AnalyticSeries<UnramifiedScalar>& s) {
  json j;
  const auto& d = s.disc();
  j["disc"] = {{"dim", d.dim}, {"radius_exp", d.radius_exp}};
  if (!d.center.empty()) j["disc"]["center"] = scalars_json(d.center);
  json terms = json::array();
  for (const auto& [e, a] : s.terms()) terms.push_back({{"exp", e}, {"coeff", scalar_json(a)}});
  j["terms"] = terms;
  if (s.tail_exp() >= kNoTail) j["tail_exp"] = "none";
  else j["tail_exp"] = s.tail_exp();
  return j;
}

inline AnalyticSeries<UnramifiedScalar> series(const json& j, const Field& field, std::int64_t prec) {
  PolyDisc<UnramifiedScalar> disc;
  const auto& dj = req(j, "disc");
  disc.dim = get_int(dj, "dim");
  disc.radius_exp = get_int(dj, "radius_exp", 0);
  if (has(dj, "center")) disc.center = scalar_vec(dj.at("center"), field, prec);
  std::map<Exponent, UnramifiedScalar> terms;
  for (const auto& t : as_array(req(j, "terms"), "terms")) {
    auto e = int_vec(req(t, "exp"), "exp");
    if (terms.count(e)) throw InputError("duplicate exponent in series");
    terms.emplace(std::move(e), scalar(req(t, "coeff"), field, prec));
  }
  std::int64_t tail = kNoTail;
  if (has(j, "tail_exp")) {
    const auto& tj = j.at("tail_exp");
    if (tj.is_string()) {
      if (tj.get<std::string>() != "none") throw InputError("tail_exp must be an integer or \"none\"");
    } else {
      tail = as_int(tj, "tail_exp");
    }
  }
  return AnalyticSeries<UnramifiedScalar>(std::move(disc), std::move(terms), tail);
}

// ---- cyclotomic and Laurent data ----

inline Cyclotomic cyclotomic(const json& j) {
  if (j.is_object() && has(j, "root")) {
    const auto q = qz(j.at("root"), "root");
    return Cyclotomic::root(CyclotomicField::make(q.order()), q);
  }
  if (j.is_object() && has(j, "cyclotomic")) {
    const auto& c = j.at("cyclotomic");
    const auto m = get_int(c, "order");
    if (m < 1 || m > 10000) throw InputError("cyclotomic order out of range");
    auto field = CyclotomicField::make(m);
    Cyclotomic sum(field);
    std::int64_t k = 0;
    for (const auto& x : as_array(req(c, "coeffs"), "coeffs")) {
      const Rat q = rational(x, "coeffs");
      if (q != 0) sum = sum + q * Cyclotomic::root(field, k);
      ++k;
    }
    return sum;
  }
  return Cyclotomic::rational(CyclotomicField::make(1), rational(j, "coeff"));
}

inline json cyclotomic_json(const Cyclotomic& c) {
  if (c.is_rational()) return rat_str(c.coeffs().front());
  if (auto e = c.root_exponent()) return json{{"root", e->str()}};
  json coeffs = json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(rat_str(q));
  return json{{"cyclotomic", {{"order", c.field()->order()}, {"coeffs", coeffs}}}};
}

inline LaurentPoly laurent(const json& terms, std::int64_t nvars) {
  std::vector<std::pair<LaurentExponent, Cyclotomic>> parsed;
  std::int64_t m = 1;
  for (const auto& t : as_array(terms, "Laurent polynomial")) {
    auto e = int_vec(req(t, "exp"), "exp");
    if (static_cast<std::int64_t>(e.size()) != nvars) throw InputError("exponent has wrong number of variables");
    auto c = cyclotomic(req(t, "coeff"));
    m = lcm64(m, c.field()->order());
    parsed.emplace_back(std::move(e), std::move(c));
  }
  auto field = CyclotomicField::make(m);
  LaurentPoly f(field, nvars);
  for (auto& [e, c] : parsed) f.add_term(e, c.lift(field));
  return f;
}

inline std::vector<LaurentPoly> laurent_list(const json& j, std::int64_t nvars) {
  std::vector<LaurentPoly> out;
  for (const auto& f : as_array(j, "polynomial list")) out.push_back(laurent(f, nvars));
  return out;
}

inline json laurent_json(const LaurentPoly& f) {
  json a = json::array();
  for (const auto& [e, c] : f.terms()) a.push_back({{"coeff", cyclotomic_json(c)}, {"exp", e}});
  return a;
}

inline json laurent_list_json(const std::vector<LaurentPoly>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(laurent_json(f));
  return a;
}

inline TwistedComplex complex(const json& j) {
  if (has(j, "builtin")) {
    const auto& b = j.at("builtin");
    if (!b.is_string()) throw InputError("builtin must be a string");
    const auto name = b.get<std::string>();
    if (name == "circle") return builtin::circle();
    if (name == "torus") return builtin::torus();
    if (name == "wedge") {
      const auto n = get_int(j, "n");
      if (n < 1 || n > 8) throw InputError("wedge needs 1 <= n <= 8");
      return builtin::wedge(n);
    }
    if (name == "surface") {
      const auto g = get_int(j, "genus");
      if (g < 1 || g > 4) throw InputError("surface needs 1 <= genus <= 4");
      return builtin::surface(g);
    }
    throw InputError("unknown builtin complex: " + name);
  }
  const auto vars = get_int(j, "vars");
  if (vars < 1 || vars > 8) throw InputError("vars must be between 1 and 8");
  std::vector<Matrix<LaurentPoly>> diffs;
  for (const auto& mj : as_array(req(j, "matrices"), "matrices")) {
    Matrix<LaurentPoly> m;
    for (const auto& row : as_array(mj, "matrix")) {
      std::vector<LaurentPoly> r;
      for (const auto& e : as_array(row, "matrix row")) r.push_back(laurent(e, vars));
      m.push_back(std::move(r));
    }
    diffs.push_back(std::move(m));
  }
  IntVec dims;
  if (has(j, "dims")) {
    dims = int_vec(j.at("dims"), "dims");
  } else {
    if (diffs.empty() || diffs.front().empty()) throw InputError("dims are required when they cannot be inferred");
    dims.push_back(static_cast<std::int64_t>(diffs.front().front().size()));
    for (const auto& m : diffs) dims.push_back(static_cast<std::int64_t>(m.size()));
  }
  for (auto n : dims)
    if (n < 0) throw InputError("module ranks must be non-negative");
  return TwistedComplex(vars, dims, std::move(diffs));
}

// ---- binomial systems and cosets ----

inline BinomialSystem system(const json& j) {
  const auto d = get_int(j, "dim");
  if (d < 1 || d > 8) throw InputError("dim must be between 1 and 8");
  std::vector<BinomialEquation> eqs;
  for (const auto& e : as_array(req(j, "equations"), "equations"))
    eqs.push_back({int_vec(req(e, "exponents"), "exponents"), qz(req(e, "rhs"), "rhs")});
  return BinomialSystem::make(d, std::move(eqs));
}

inline json system_json(const BinomialSystem& s) {
  json eqs = json::array();
  for (const auto& e : s.equations) eqs.push_back({{"exponents", e.exponents}, {"rhs", e.rhs.str()}});
  return json{{"dim", s.dim}, {"equations", eqs}};
}

inline json coset_json(const TorsionCoset& c) {
  json basis = json::array();
  for (const auto& row : c.basis) basis.push_back(row);
  return json{{"dim", c.dim()}, {"lattice_basis", basis}, {"translate", qz_json(c.translate)}};
}

inline json cosets_json(const std::vector<TorsionCoset>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(coset_json(c));
  return a;
}

inline TorsionCoset coset(const json& j, std::int64_t ambient) {
  TorsionCoset c;
  c.ambient = ambient;
  c.basis = int_mat(req(j, "lattice_basis"), "lattice_basis");
  c.translate = qz_vec(req(j, "translate"), "translate");
  if (c.basis.size() != c.translate.size()) throw InputError("one translate value per basis row");
  for (const auto& row : c.basis)
    if (static_cast<std::int64_t>(row.size()) != ambient) throw InputError("basis row has wrong length");
  if (has(j, "dim") && get_int(j, "dim") != c.dim()) throw InputError("coset dim is inconsistent with its basis");
  return c;
}

// ---- torsion-point certificates ----

inline json character_json(const ContinuousCharacter& chi) {
  return json{{"precision", chi.precision}, {"values", scalars_json(chi.free)}};
}

inline ContinuousCharacter character(const json& j, const Field& field) {
  const auto prec = get_int(j, "precision");
  return ContinuousCharacter::make(field, prec, scalar_vec(req(j, "values"), field, prec));
}

inline json vanish_json(const VanishCertificate<UnramifiedScalar>& v) {
  json j{{"certified", v.certified}, {"bound", v.bound}, {"precision", v.precision}, {"reason", v.reason},
         {"orbit_points", scalars_json(v.points)}, {"values", scalars_json(v.values)}};
  if (v.failing_index) j["failing_index"] = *v.failing_index;
  if (v.strassmann_bound) j["strassmann_bound"] = *v.strassmann_bound;
  return j;
}

inline json conic_json(const ConicCertificate<UnramifiedScalar>& c) {
  json per = json::array();
  for (const auto& v : c.per_series) per.push_back(vanish_json(v));
  json j{{"certified", c.certified}, {"bound", c.bound}, {"reason", c.reason}, {"per_series", per}};
  if (c.failing_series) j["failing_series"] = *c.failing_series;
  return j;
}

inline json certificate_json(const TorsionPointCertificate& c) {
  json j{{"component", c.component}, {"coset", coset_json(c.coset)}, {"torsion_point", qz_json(c.torsion_point)},
         {"order", c.order}, {"sigma_power", c.sigma_power}, {"status", c.status}, {"detail", c.detail}};
  if (c.padic) {
    const auto& w = *c.padic;
    json residue = json::array();
    for (const auto& r : w.residue) residue.push_back(to_int64(r.index()));
    json kernel = json::array();
    for (const auto& row : w.kernel) kernel.push_back(row);
    j["padic"] = {{"p", w.p},
                  {"f", w.teichmuller_part.field->degree()},
                  {"precision", w.precision},
                  {"residue", residue},
                  {"teichmuller_part", character_json(w.teichmuller_part)},
                  {"sample", character_json(w.sample)},
                  {"pro_p", character_json(w.pro_p)},
                  {"kernel", kernel},
                  {"sample_units", scalars_json(w.sample_units)},
                  {"contraction_exponent", w.contraction_exponent},
                  {"contraction_valuation", w.contraction_valuation},
                  {"log_point", scalars_json(w.log_point)},
                  {"series_degree", w.series_degree},
                  {"conic", conic_json(w.conic)}};
  }
  return j;
}

inline TorsionPointCertificate certificate(const json& j, std::int64_t ambient) {
  TorsionPointCertificate c;
  const auto comp = get_int(j, "component");
  if (comp < 0) throw InputError("component index must be non-negative");
  c.component = static_cast<std::size_t>(comp);
  c.coset = coset(req(j, "coset"), ambient);
  c.torsion_point = qz_vec(req(j, "torsion_point"), "torsion_point");
  if (static_cast<std::int64_t>(c.torsion_point.size()) != ambient) throw InputError("torsion point has wrong length");
  c.order = get_int(j, "order");
  c.sigma_power = get_int(j, "sigma_power");
  if (c.sigma_power < 1) throw InputError("sigma_power must be positive");
  c.status = req(j, "status").get<std::string>();
  c.detail = has(j, "detail") ? j.at("detail").get<std::string>() : "";
  if (has(j, "padic")) {
    const auto& pj = j.at("padic");
    const auto field = field_from(pj);
    PadicWitness w;
    w.p = field->prime();
    w.precision = get_int(pj, "precision");
    for (const auto& r : as_array(req(pj, "residue"), "residue"))
      w.residue.push_back(ResidueElement::from_index(field->residue_field(), Int(as_int(r, "residue"))));
    w.teichmuller_part = character(req(pj, "teichmuller_part"), field);
    w.sample = character(req(pj, "sample"), field);
    w.pro_p = character(req(pj, "pro_p"), field);
    w.kernel = int_mat(req(pj, "kernel"), "kernel");
    w.sample_units = scalar_vec(req(pj, "sample_units"), field, w.precision);
    w.contraction_exponent = get_int(pj, "contraction_exponent");
    w.contraction_valuation = get_int(pj, "contraction_valuation");
    w.log_point = scalar_vec(req(pj, "log_point"), field, w.precision);
    w.series_degree = get_int(pj, "series_degree");
    const auto& cj = req(pj, "conic");
    w.conic.certified = req(cj, "certified").get<bool>();
    w.conic.bound = get_int(cj, "bound");
    w.conic.reason = req(cj, "reason").get<std::string>();
    c.padic = std::move(w);
  }
  return c;
}

}  // namespace ptorsion::io
