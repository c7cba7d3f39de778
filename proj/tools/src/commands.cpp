#include "jetvar/cli/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace jetvar::cli {

namespace {

const Expr& lagrangian(const Model& model) {
  if (!model.lagrangian) throw DomainError("the model has no [lagrangian] section");
  return *model.lagrangian;
}

const TensorType& tensor(const Model& model) {
  if (!model.tensor) throw DomainError("the model has no [tensor_type] section");
  return *model.tensor;
}

const ProjectableField& field(const Model& model, const std::string& name) {
  if (name.empty()) throw UsageError("this command needs --field NAME");
  const ProjectableField* f = model.field(name);
  if (!f) throw UsageError("no field named '" + name + "' in the model");
  return *f;
}

const PolySection& section(const Model& model, const std::string& name) {
  if (name.empty()) throw UsageError("this command needs --section NAME");
  const PolySection* s = model.section(name);
  if (!s) throw UsageError("no section named '" + name + "' in the model");
  return *s;
}

const DiffForm& form(const Model& model, const std::string& name) {
  const DiffForm* f = model.form(name);
  if (!f) throw UsageError("no form named '" + name + "' in the model");
  return *f;
}

Node certificate_or_null(const JetContext& ctx, const Expr& L, std::vector<std::string>& warnings) {
  try {
    return null_certificate(ctx, L);
  } catch (const Error& err) {
    warnings.push_back(std::string("no certificate: ") + err.what());
    return Node();
  }
}

Node cmd_euler(const Model& m, const CommandOptions&, std::vector<std::string>&) {
  Node out;
  out["E"] = indexed(euler(m.context(), lagrangian(m)).E);
  return out;
}

Node cmd_lepage(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  Node out;
  out["method"] = o.method;
  if (o.method == "theta") {
    out["form"] = lepage_theta(m.context(), lagrangian(m));
  } else if (o.method == "delta") {
    out["form"] = lepage_delta(m.context(), lagrangian(m));
  } else {
    throw UsageError("--method must be theta or delta");
  }
  return out;
}

Node cmd_split(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  JetContext ctx = m.context();
  DiffForm rho = o.form.empty() ? lagrangian(m) * DiffForm::volume(m.base_dim) : form(m, o.form);
  CanonicalSplit s = canonical_split(ctx, rho);
  Node out;
  out["G"] = s.G;
  out["E"] = indexed(s.E.E);
  Node A = Node::object();
  bool lepagean = true;
  for (int k = 1; k <= m.base_dim; ++k) {
    std::vector<Expr> row;
    for (int nu = 1; nu <= m.fiber_dim; ++nu) {
      row.push_back(s.a(k, nu));
      lepagean = lepagean && s.a(k, nu).is_zero();
    }
    A[std::to_string(k)] = indexed(row);
  }
  out["A"] = A;
  out["lepagean"] = lepagean;
  return out;
}

Node cmd_nulltest(const Model& m, const CommandOptions&, std::vector<std::string>& warnings) {
  JetContext ctx = m.context();
  const Expr& L = lagrangian(m);
  EulerSystem E = euler(ctx, L);
  Node out;
  out["is_null"] = E.is_zero();
  out["E"] = indexed(E.E);
  if (E.is_zero()) {
    out["certificate"] = certificate_or_null(ctx, L, warnings);
  } else {
    Node offending = Node::array();
    for (int mu = 1; mu <= E.size(); ++mu)
      for (const auto& t : E[mu].terms()) offending.push_back(Expr::from_terms({t}));
    out["offending"] = offending;
  }
  return out;
}

Node cmd_makenull(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  if (o.form.empty()) throw UsageError("makenull needs --form NAME");
  Node out;
  out["L"] = null_from_form(m.context(), form(m, o.form));
  return out;
}

Node cmd_noether(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  NoetherResult r = noether_check(m.context(), lagrangian(m), field(m, o.field));
  Node out;
  out["invariant"] = r.invariant;
  out["residual"] = r.residual;
  return out;
}

Node cmd_invariance(const Model& m, const CommandOptions& o, std::vector<std::string>& warnings) {
  SymmetryVerdict v = generalized_invariance_check(m.context(), lagrangian(m), field(m, o.field));
  Node out;
  out["invariant"] = v.invariant;
  out["generalized_invariant"] = v.generalized_invariant;
  out["lie"] = v.lie;
  out["lie_euler"] = indexed(v.lie_euler.E);
  if (v.certificate) {
    out["certificate"] = *v.certificate;
  } else {
    out["certificate"] = Node();
    if (v.generalized_invariant) warnings.push_back("no certificate could be assembled for L_X");
  }
  return out;
}

Node cmd_current(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  ConservedCurrent c = conserved_current(m.context(), lagrangian(m), field(m, o.field));
  Node out;
  out["J"] = indexed(c.J);
  out["Q"] = indexed(c.Q);
  out["E"] = indexed(c.E.E);
  out["lie"] = c.lie;
  out["divergence"] = c.divergence;
  out["residual"] = c.residual;
  return out;
}

Node cmd_symmetric(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  std::vector<ProjectableField> V;
  for (const auto& name : o.fields) V.push_back(field(m, name));
  auto systems = symmetric_system(m.context(), lagrangian(m), V);
  Node list = Node::array();
  for (std::size_t k = 0; k < systems.size(); ++k) {
    Node entry;
    entry["source"] = k == 0 ? std::string("L") : o.fields[k - 1];
    entry["E"] = indexed(systems[k].E);
    entry["trivial"] = systems[k].is_zero();
    list.push_back(entry);
  }
  Node out;
  out["systems"] = list;
  return out;
}

Node cmd_covariance(const Model& m, const CommandOptions&, std::vector<std::string>&) {
  CovarianceTable t = covariance_system(m.context(), lagrangian(m), tensor(m));
  Node coefficients = Node::object();
  for (int C = 1; C <= t.m; ++C) coefficients[std::to_string(C)] = Node::object();
  for (const auto& [key, value] : t.coefficients) {
    const auto& [C, p, J] = key;
    coefficients[std::to_string(C)][to_string(Atom::function(t.xi[static_cast<std::size_t>(p - 1)], J))] = value;
  }
  Node out;
  out["covariant"] = t.is_zero();
  out["coefficients"] = coefficients;
  return out;
}

Node cmd_weakcritical(const Model& m, const CommandOptions&, std::vector<std::string>&) {
  Node out;
  out["W"] = indexed(weak_critical_system(m.context(), lagrangian(m), tensor(m)));
  return out;
}

Node cmd_residual(const Model& m, const CommandOptions& o, std::vector<std::string>&) {
  auto r = extremal_residual(m.context(), lagrangian(m), section(m, o.section));
  Node out;
  out["residual"] = indexed(r);
  out["extremal"] = std::all_of(r.begin(), r.end(), [](const Expr& e) { return e.is_zero(); });
  return out;
}

Node cmd_gradcheck(const Model& m, const CommandOptions& o, std::vector<std::string>& warnings) {
  const Expr& L = lagrangian(m);
  const PolySection& gamma = section(m, o.section);
  if (o.grid < 12) throw UsageError("--grid must be at least 12");
  JetContext ctx = m.context();
  GradientCheckReport r = discrete_action_gradient_check(ctx, L, gamma, {m.base_dim, o.grid});
  ConvergenceReport c = gradient_convergence(ctx, L, gamma, m.base_dim, {o.grid / 2, o.grid});
  Node out;
  out["grid"] = o.grid;
  out["max_relative_error"] = r.max_relative_error;
  out["scale"] = r.scale;
  out["compared_nodes"] = r.compared_nodes;
  out["vacuous"] = r.vacuous;
  if (c.errors.front() < 1e-10) {
    out["convergence_order"] = Node();
    if (!r.vacuous) warnings.push_back("the discretization is exact on this section; no convergence order to measure");
  } else {
    out["convergence_order"] = c.order;
  }
  if (r.vacuous) warnings.push_back("Euler expressions vanish along the section; the comparison is vacuous");
  return out;
}

using Handler = std::function<Node(const Model&, const CommandOptions&, std::vector<std::string>&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"euler", cmd_euler},         {"lepage", cmd_lepage},         {"split", cmd_split},
      {"nulltest", cmd_nulltest},   {"makenull", cmd_makenull},     {"noether", cmd_noether},
      {"invariance", cmd_invariance}, {"current", cmd_current},     {"symmetric", cmd_symmetric},
      {"covariance", cmd_covariance}, {"weakcritical", cmd_weakcritical}, {"residual", cmd_residual},
      {"gradcheck", cmd_gradcheck},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : handlers()) out.push_back(k);
    return out;
  }();
  return names;
}

Node run_command(const Model& model, const CommandOptions& options, std::vector<std::string>& warnings) {
  auto it = handlers().find(options.command);
  if (it == handlers().end()) throw UsageError("unknown command '" + options.command + "'");
  return it->second(model, options, warnings);
}

Node context_node(const Model& model) {
  Node out;
  out["base_dim"] = model.base_dim;
  out["fiber_dim"] = model.fiber_dim;
  out["order"] = model.order;
  Node functions = Node::object();
  for (const auto& f : model.functions) {
    Node args = Node::array();
    for (const auto& a : f->args) args.push_back(to_string(a));
    functions[f->name] = args;
  }
  out["functions"] = functions;
  if (model.tensor) {
    out["tensor_type"]["variance"] = model.tensor->signature();
    out["tensor_type"]["cov_sign"] = model.tensor->cov_sign();
  }
  return out;
}

std::string json_document(const Model& model, const Node& result, const std::vector<std::string>& warnings) {
  nlohmann::json doc;
  doc["context"] = to_json(context_node(model));
  doc["result"] = to_json(result);
  doc["warnings"] = warnings;
  return doc.dump(2) + "\n";
}

}  // namespace jetvar::cli
