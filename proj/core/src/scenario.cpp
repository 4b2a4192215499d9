#include "kframe/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kframe/error.hpp"

namespace kframe {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::string child(const std::string& path, const std::string& key) {
  // JSON pointer escaping
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}

std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& member(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

double as_real(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(where, "expected a number");
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

LinOp decode_matrix(const json& j, Index dim, bool complex_field, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a matrix (array of rows)");
  if (static_cast<Index>(j.size()) != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                where + ": expected " + std::to_string(dim) + " rows, got " + std::to_string(j.size()));
  }
  LinOp M(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = child(where, static_cast<std::size_t>(r));
    if (!row.is_array()) fail(rpath, "expected a row array");
    if (static_cast<Index>(row.size()) != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  rpath + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < dim; ++c) {
      const std::string epath = child(rpath, static_cast<std::size_t>(c));
      const Scalar z = decode_scalar(row[static_cast<std::size_t>(c)], epath);
      if (!complex_field && z.imag() != 0.0) fail(epath, "complex entry in a real scenario");
      M(r, c) = z;
    }
  }
  return M;
}

std::vector<LinOp> decode_matrix_list(const json& j, Index dim, bool complex_field,
                                      const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of matrices");
  std::vector<LinOp> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(decode_matrix(j[i], dim, complex_field, child(where, i)));
  }
  return out;
}

QuadratureSpec decode_measure(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  QuadratureSpec q;
  const json& kind = member(j, "kind", where);
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "simpson") q.kind = QuadratureKind::Simpson;
  else if (k == "midpoint") q.kind = QuadratureKind::Midpoint;
  else if (k == "explicit") q.kind = QuadratureKind::Explicit;
  else fail(child(where, "kind"), "expected simpson, midpoint or explicit");

  if (q.kind == QuadratureKind::Explicit) {
    auto reals = [&](const std::string& key) {
      const json& arr = member(j, key, where);
      if (!arr.is_array()) fail(child(where, key), "expected an array");
      std::vector<double> v;
      for (std::size_t i = 0; i < arr.size(); ++i) v.push_back(as_real(arr[i], child(child(where, key), i)));
      return v;
    };
    q.explicit_nodes = reals("nodes");
    q.explicit_weights = reals("weights");
    q.n = q.explicit_nodes.size();
  } else {
    const json& iv = member(j, "interval", where);
    if (!iv.is_array() || iv.size() != 2) fail(child(where, "interval"), "expected [lo, hi]");
    q.lo = as_real(iv[0], child(child(where, "interval"), 0));
    q.hi = as_real(iv[1], child(child(where, "interval"), 1));
    q.n = as_count(member(j, "n", where), child(where, "n"));
  }
  return q;
}

json encode_measure(const QuadratureSpec& q) {
  switch (q.kind) {
    case QuadratureKind::Explicit: {
      json nodes = json::array();
      json weights = json::array();
      for (double x : q.explicit_nodes) nodes.push_back(encode_real(x));
      for (double w : q.explicit_weights) weights.push_back(encode_real(w));
      return {{"kind", "explicit"}, {"nodes", nodes}, {"weights", weights}};
    }
    case QuadratureKind::Simpson:
    case QuadratureKind::Midpoint:
      return {{"kind", q.kind == QuadratureKind::Simpson ? "simpson" : "midpoint"},
              {"interval", {encode_real(q.lo), encode_real(q.hi)}},
              {"n", q.n}};
  }
  return {};
}

// Parameter keys that name other scenario entries.
enum class NameKind { Family, Operator, L2Operator };

struct NameKey {
  const char* key;
  NameKind kind;
};

constexpr NameKey kNameKeys[] = {
    {"family", NameKind::Family},   {"perturbed", NameKind::Family}, {"families", NameKind::Family},
    {"k", NameKind::Operator},      {"l", NameKind::Operator},       {"q", NameKind::Operator},
    {"t", NameKind::Operator},      {"l_map", NameKind::L2Operator},
};

void resolve_names(const Scenario& s, const CheckSpec& c, const std::string& where) {
  if (!c.params.is_object()) fail(child(where, "params"), "expected an object");
  for (const auto& [key, kind] : kNameKeys) {
    auto it = c.params.find(key);
    if (it == c.params.end()) continue;
    const std::string kpath = child(child(where, "params"), key);
    std::vector<std::pair<std::string, std::string>> names;
    if (it->is_string()) {
      names.emplace_back(it->get<std::string>(), kpath);
    } else if (it->is_array()) {
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string()) fail(child(kpath, i), "expected a name");
        names.emplace_back((*it)[i].get<std::string>(), child(kpath, i));
      }
    } else {
      fail(kpath, "expected a name or a list of names");
    }
    for (const auto& [name, npath] : names) {
      const bool found = kind == NameKind::Family     ? s.families.count(name) > 0
                         : kind == NameKind::Operator ? s.operators.count(name) > 0
                                                      : s.l2_operators.count(name) > 0;
      if (!found) throw Error(ErrorCode::UnresolvedName, npath + ": \"" + name + "\" is not defined");
    }
  }
  for (const char* key : {"a_seq", "b_seq"}) {
    auto it = c.params.find(key);
    if (it == c.params.end()) continue;
    const std::string kpath = child(child(where, "params"), key);
    if (!it->is_array()) fail(kpath, "expected an array of scalars");
    if (it->size() != s.space().size()) {
      throw Error(ErrorCode::DimensionMismatch, kpath + ": expected " +
                                                    std::to_string(s.space().size()) + " values, got " +
                                                    std::to_string(it->size()));
    }
  }
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json encode_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json encode_scalar(Scalar z, bool complex_field) {
  if (!complex_field) return encode_real(z.real());
  return json::array({encode_real(z.real()), encode_real(z.imag())});
}

json encode_matrix(const LinOp& M, bool complex_field) {
  json rows = json::array();
  for (Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < M.cols(); ++c) row.push_back(encode_scalar(M(r, c), complex_field));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode_vector(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(encode_scalar(v(i), true));
  return out;
}

Scalar decode_scalar(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) fail(where, "complex scalars are [re, im]");
    return {as_real(j[0], child(where, 0)), as_real(j[1], child(where, 1))};
  }
  return {as_real(j, where), 0.0};
}

bool Scenario::operator==(const Scenario& o) const {
  auto same_tol = [](const std::optional<ToleranceConfig>& a, const std::optional<ToleranceConfig>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->psd_tol == b->psd_tol && a->residual_tol == b->residual_tol && a->rank_tol == b->rank_tol;
  };
  return dim == o.dim && complex_field == o.complex_field && measure == o.measure &&
         families == o.families && operators == o.operators && l2_operators == o.l2_operators &&
         same_tol(tolerances, o.tolerances) && checks == o.checks;
}

MeasureSpace Scenario::space() const { return quadrature_build(measure); }

OperatorFamily Scenario::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end()) throw Error(ErrorCode::UnresolvedName, "family \"" + name + "\"");
  const MeasureSpace sp = space();
  if (it->second.is_polynomial) return evaluate_family(PolynomialFamily{it->second.polynomial}, sp);
  return OperatorFamily(sp, it->second.ops);
}

const LinOp& Scenario::op(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end()) throw Error(ErrorCode::UnresolvedName, "operator \"" + name + "\"");
  return it->second;
}

const LinOp& Scenario::l2_op(const std::string& name) const {
  auto it = l2_operators.find(name);
  if (it == l2_operators.end()) throw Error(ErrorCode::UnresolvedName, "l2 operator \"" + name + "\"");
  return it->second;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail("", "top level must be an object");

  Scenario s;
  const json& dim = member(doc, "dim", "");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) fail("/dim", "expected a positive integer");
  s.dim = dim.get<Index>();

  if (auto it = doc.find("field"); it != doc.end()) {
    if (*it == "complex") s.complex_field = true;
    else if (*it != "real") fail("/field", "expected real or complex");
  }

  s.measure = decode_measure(member(doc, "measure", ""), "/measure");
  std::size_t nodes = 0;
  try {
    nodes = s.space().size();
  } catch (const Error& e) {
    fail("/measure", e.what());
  }

  if (auto it = doc.find("families"); it != doc.end()) {
    if (!it->is_object()) fail("/families", "expected an object");
    for (const auto& [name, fj] : it->items()) {
      const std::string path = child("/families", name);
      if (!fj.is_object()) fail(path, "expected an object");
      FamilySpec f;
      if (fj.contains("polynomial")) {
        f.is_polynomial = true;
        f.polynomial = decode_matrix_list(fj["polynomial"], s.dim, s.complex_field, child(path, "polynomial"));
        if (f.polynomial.empty()) fail(child(path, "polynomial"), "needs at least one coefficient");
      } else {
        f.ops = decode_matrix_list(member(fj, "ops", path), s.dim, s.complex_field, child(path, "ops"));
        if (f.ops.size() != nodes) {
          throw Error(ErrorCode::DimensionMismatch, child(path, "ops") + ": expected " +
                                                        std::to_string(nodes) + " operators (one per node), got " +
                                                        std::to_string(f.ops.size()));
        }
      }
      s.families.emplace(name, std::move(f));
    }
  }

  if (auto it = doc.find("operators"); it != doc.end()) {
    if (!it->is_object()) fail("/operators", "expected an object");
    for (const auto& [name, mj] : it->items()) {
      s.operators.emplace(name, decode_matrix(mj, s.dim, s.complex_field, child("/operators", name)));
    }
  }

  if (auto it = doc.find("l2_operators"); it != doc.end()) {
    if (!it->is_object()) fail("/l2_operators", "expected an object");
    const Index big = static_cast<Index>(nodes) * s.dim;
    for (const auto& [name, mj] : it->items()) {
      s.l2_operators.emplace(name, decode_matrix(mj, big, s.complex_field, child("/l2_operators", name)));
    }
  }

  if (auto it = doc.find("tolerances"); it != doc.end()) {
    if (!it->is_object()) fail("/tolerances", "expected an object");
    ToleranceConfig cfg;
    if (it->contains("psd")) cfg.psd_tol = as_real((*it)["psd"], "/tolerances/psd");
    if (it->contains("residual")) cfg.residual_tol = as_real((*it)["residual"], "/tolerances/residual");
    if (it->contains("rank")) cfg.rank_tol = as_real((*it)["rank"], "/tolerances/rank");
    try {
      cfg.validate();
    } catch (const Error& e) {
      fail("/tolerances", e.what());
    }
    s.tolerances = cfg;
  }

  if (auto it = doc.find("checks"); it != doc.end()) {
    if (!it->is_array()) fail("/checks", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& cj = (*it)[i];
      const std::string path = child("/checks", i);
      if (!cj.is_object()) fail(path, "expected an object");
      CheckSpec c;
      const json& type = member(cj, "type", path);
      if (!type.is_string()) fail(child(path, "type"), "expected a string");
      c.type = type.get<std::string>();
      c.name = cj.value("name", c.type);
      if (cj.contains("params")) c.params = cj["params"];
      if (cj.contains("expect")) c.expect = cj["expect"];
      if (!c.expect.is_object()) fail(child(path, "expect"), "expected an object");
      resolve_names(s, c, path);
      s.checks.push_back(std::move(c));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["dim"] = s.dim;
  doc["field"] = s.complex_field ? "complex" : "real";
  doc["measure"] = encode_measure(s.measure);
  json families = json::object();
  for (const auto& [name, f] : s.families) {
    json fj;
    json mats = json::array();
    for (const auto& M : f.is_polynomial ? f.polynomial : f.ops) mats.push_back(encode_matrix(M, s.complex_field));
    fj[f.is_polynomial ? "polynomial" : "ops"] = std::move(mats);
    families[name] = std::move(fj);
  }
  doc["families"] = std::move(families);
  json ops = json::object();
  for (const auto& [name, M] : s.operators) ops[name] = encode_matrix(M, s.complex_field);
  doc["operators"] = std::move(ops);
  if (!s.l2_operators.empty()) {
    json l2 = json::object();
    for (const auto& [name, M] : s.l2_operators) l2[name] = encode_matrix(M, s.complex_field);
    doc["l2_operators"] = std::move(l2);
  }
  if (s.tolerances) {
    doc["tolerances"] = {{"psd", s.tolerances->psd_tol},
                         {"residual", s.tolerances->residual_tol},
                         {"rank", s.tolerances->rank_tol}};
  }
  json checks = json::array();
  for (const auto& c : s.checks) {
    json cj = {{"name", c.name}, {"type", c.type}, {"params", c.params}};
    if (!c.expect.empty()) cj["expect"] = c.expect;
    checks.push_back(std::move(cj));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

Scenario worked_example_scenario(double lambda) {
  Scenario s;
  s.dim = 2;
  s.measure = QuadratureSpec{QuadratureKind::Simpson, 0.0, 1.0, 3, {}, {}};
  LinOp slope = LinOp::Zero(2, 2);
  slope(0, 0) = 1.0;
  slope(1, 1) = 0.5;
  FamilySpec f;
  f.is_polynomial = true;
  f.polynomial = {LinOp::Zero(2, 2), slope};
  s.families["Lambda"] = f;
  LinOp K = LinOp::Zero(2, 2);
  K(0, 0) = lambda / 2.0;
  K(1, 1) = lambda / 4.0;
  s.operators["K"] = K;
  s.checks.push_back({"optimal_bounds",
                      "certify",
                      {{"family", "Lambda"}, {"k", "K"}},
                      {{"status", lambda == 0.0 ? "Degenerate" : "KFrame"},
                       {"B_opt", 1.0 / 3.0},
                       {"A_opt", encode_real(4.0 / (3.0 * lambda * lambda))},
                       {"tol", 1e-12}}});
  s.checks.push_back({"stated_chain",
                      "frame_inequality",
                      {{"family", "Lambda"}, {"k", "K"}, {"lower", 1.0}, {"upper", 1.0 / 3.0}},
                      {{"holds", true}}});
  return s;
}

}  // namespace kframe
