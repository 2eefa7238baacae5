#include "invpde/json_io.hpp"

#include "invpde/errors.hpp"

namespace invpde {

using nlohmann::json;

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& v, const char* key) {
  if (!v.is_object()) throw SchemaError("expected a JSON object");
  auto it = v.find(key);
  if (it == v.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> numbers(const json& v, const char* key) {
  const json& a = field(v, key);
  if (!a.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  return a.get<std::vector<double>>();
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const json& v, const char* key) {
  const json& rows = field(v, key);
  if (!rows.is_array() || rows.empty()) throw SchemaError(std::string("field '") + key + "' must be a nested array");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != c) throw SchemaError(std::string("ragged matrix '") + key + "'");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

json to_json(const GraphJet& j) {
  json v;
  v["chart"] = std::string(to_string(j.chart));
  v["n"] = j.n;
  v["order"] = j.order;
  v["base"] = j.base;
  v["u"] = j.u;
  v["grad"] = j.grad;
  if (j.hess) v["hess_lower"] = std::vector<double>(j.hess->lower().begin(), j.hess->lower().end());
  if (j.cubic) v["cubic_lex"] = std::vector<double>(j.cubic->lex().begin(), j.cubic->lex().end());
  return v;
}

GraphJet jet_from_json(const json& v) {
  return guarded("jet", [&] {
    GraphJet j;
    j.chart = chart_from_string(field(v, "chart").get<std::string>());
    j.n = field(v, "n").get<int>();
    j.order = field(v, "order").get<int>();
    if (j.n < 1 || j.n > kMaxVars) throw SchemaError("jet n must lie in [1, 8]");
    if (j.order < 1 || j.order > 3) throw SchemaError("jet order must be 1, 2 or 3");
    j.base = numbers(v, "base");
    j.u = field(v, "u").get<double>();
    j.grad = numbers(v, "grad");
    if (j.order >= 2) {
      const auto h = numbers(v, "hess_lower");
      if (h.size() != SymMatrix::storage_size(j.n)) throw SchemaError("hess_lower has the wrong length");
      j.hess = SymMatrix(j.n, h);
    }
    if (j.order >= 3) {
      const auto c = numbers(v, "cubic_lex");
      if (c.size() != SymCubic::storage_size(j.n)) throw SchemaError("cubic_lex has the wrong length");
      j.cubic = SymCubic(j.n, c);
    }
    if (j.base.size() != static_cast<std::size_t>(j.n) || j.grad.size() != static_cast<std::size_t>(j.n))
      throw SchemaError("base/grad length differs from n");
    return j;
  });
}

json to_json(const GroupElement& g) {
  json v;
  v["type"] = std::string(to_string(g.type));
  v["n"] = g.n;
  switch (g.type) {
    case Geometry::euclidean:
    case Geometry::affine:
      v["A"] = matrix_json(g.matrix);
      v["b"] = std::vector<double>(g.b.data(), g.b.data() + g.b.size());
      break;
    case Geometry::projective: v["P"] = matrix_json(g.matrix); break;
    case Geometry::conformal: v["C"] = matrix_json(g.matrix); break;
  }
  return v;
}

GroupElement element_from_json(const json& v) {
  return guarded("group element", [&] {
    const Geometry type = geometry_from_string(field(v, "type").get<std::string>());
    try {
      switch (type) {
        case Geometry::euclidean:
        case Geometry::affine: {
          const auto b = numbers(v, "b");
          Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
          return type == Geometry::euclidean ? GroupElement::euclidean(matrix_from(v, "A"), bv)
                                             : GroupElement::affine(matrix_from(v, "A"), bv);
        }
        case Geometry::projective: return GroupElement::projective(matrix_from(v, "P"));
        case Geometry::conformal: return GroupElement::conformal(matrix_from(v, "C"));
      }
    } catch (const InvalidElement& e) {
      throw SchemaError(e.what());
    }
    throw SchemaError("unreachable element type");
  });
}

json to_json(const InvariantExpr& e) {
  using K = InvariantExpr::Kind;
  json v;
  v["node"] = kind_name(e.kind());
  switch (e.kind()) {
    case K::constant: v["value"] = e.value(); break;
    case K::pick: break;
    case K::lam:
    case K::sigma:
    case K::tau:
    case K::tauring: v["index"] = e.index(); break;
    case K::pow:
      v["args"] = json::array({to_json(e.args()[0])});
      v["exponent"] = e.index();
      break;
    default: v["args"] = json::array({to_json(e.args()[0]), to_json(e.args()[1])}); break;
  }
  return v;
}

InvariantExpr expr_from_json(const json& v) {
  return guarded("expression", [&]() -> InvariantExpr {
    using K = InvariantExpr::Kind;
    const K k = kind_from_name(field(v, "node").get<std::string>());
    switch (k) {
      case K::constant: return InvariantExpr::constant(field(v, "value").get<double>());
      case K::pick: return InvariantExpr::pick();
      case K::lam: return InvariantExpr::lam(field(v, "index").get<int>());
      case K::sigma: return InvariantExpr::sigma(field(v, "index").get<int>());
      case K::tau: return InvariantExpr::tau(field(v, "index").get<int>());
      case K::tauring: return InvariantExpr::tauring(field(v, "index").get<int>());
      case K::pow: {
        const json& args = field(v, "args");
        if (!args.is_array() || args.size() != 1) throw InvalidExpr("pow takes one argument");
        return InvariantExpr::power(expr_from_json(args[0]), field(v, "exponent").get<int>());
      }
      default: {
        const json& args = field(v, "args");
        if (!args.is_array() || args.size() != 2) throw InvalidExpr(std::string(kind_name(k)) + " takes two arguments");
        return InvariantExpr::binary(k, expr_from_json(args[0]), expr_from_json(args[1]));
      }
    }
  });
}

json to_json(const PdeDescriptor& d) {
  json v;
  v["name"] = d.name;
  v["geometry"] = std::string(to_string(d.geometry));
  v["n"] = d.n;
  v["order"] = d.order;
  v["chart"] = std::string(to_string(d.chart));
  v["expr"] = to_json(d.expr);
  return v;
}

PdeDescriptor descriptor_from_json(const json& v) {
  return guarded("descriptor", [&] {
    const Geometry g = geometry_from_string(field(v, "geometry").get<std::string>());
    const int n = v.contains("n") ? v["n"].get<int>() : 2;
    const std::string name = v.contains("name") ? v["name"].get<std::string>() : "";
    PdeDescriptor d = build(g, n, expr_from_json(field(v, "expr")), name);
    if (v.contains("order") && v["order"].get<int>() != d.order)
      throw SchemaError("order " + std::to_string(v["order"].get<int>()) + " does not match the " +
                        std::string(to_string(g)) + " geometry");
    if (v.contains("chart") && chart_from_string(v["chart"].get<std::string>()) != d.chart)
      throw SchemaError("chart does not match the geometry");
    return d;
  });
}

json to_json(const ExpandedPolynomial& p) {
  json v;
  v["vars"] = p.vars;
  json monos = json::array();
  for (const auto& m : p.monomials) monos.push_back({{"exps", m.exps}, {"coef", m.coef}});
  v["monomials"] = monos;
  v["rho_power"] = p.rho_power;
  v["denominator"] = p.denominator;
  v["factor"] = p.factor;
  return v;
}

ExpandedPolynomial expansion_from_json(const json& v) {
  return guarded("expanded polynomial", [&] {
    ExpandedPolynomial p;
    p.vars = field(v, "vars").get<std::vector<std::string>>();
    for (const json& m : field(v, "monomials")) {
      ExpandedPolynomial::Monomial mono;
      mono.exps = field(m, "exps").get<std::vector<int>>();
      mono.coef = field(m, "coef").get<double>();
      if (mono.exps.size() != p.vars.size()) throw SchemaError("monomial exponent length differs from vars");
      p.monomials.push_back(std::move(mono));
    }
    p.rho_power = field(v, "rho_power").get<int>();
    if (v.contains("denominator")) p.denominator = v["denominator"].get<std::string>();
    if (v.contains("factor")) p.factor = v["factor"].get<double>();
    return p;
  });
}

json to_json(const Report& r) {
  json v;
  v["desc"] = r.desc_id;
  v["attempted"] = r.attempted;
  v["evaluated"] = r.evaluated;
  v["skipped"] = r.skipped;
  v["max_defect"] = r.max_defect;
  if (r.max_ratio_defect) v["max_ratio_defect"] = *r.max_ratio_defect;
  v["pass"] = r.pass;
  v["seed"] = r.seed;
  return v;
}

}  // namespace invpde
