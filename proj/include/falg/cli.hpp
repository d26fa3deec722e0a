#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "falg/free_algebroid.hpp"
#include "falg/morphism.hpp"
#include "falg/problem_spec.hpp"

namespace falg {

/// One report line: either an informational row or a checked identity.
struct ReportEntry {
  std::string label;
  std::string value;  // residual for checks
  bool is_check = false;
  bool ok = true;
};

struct ReportSection {
  std::string title;
  std::vector<ReportEntry> entries;

  void info(std::string label, std::string value) { entries.push_back({std::move(label), std::move(value), false, true}); }
  void check(std::string label, std::string residual) {
    const bool ok = residual == "0";
    entries.push_back({std::move(label), std::move(residual), true, ok});
  }
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<ReportSection> sections;

  ReportSection& section(std::string title) {
    sections.push_back({std::move(title), {}});
    return sections.back();
  }

  std::size_t checks() const {
    std::size_t n = 0;
    for (const auto& s : sections) n += std::count_if(s.entries.begin(), s.entries.end(), [](auto& e) { return e.is_check; });
    return n;
  }

  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& s : sections)
      n += std::count_if(s.entries.begin(), s.entries.end(), [](auto& e) { return e.is_check && !e.ok; });
    return n;
  }

  std::string text() const {
    std::string out = command;
    for (const auto& [k, v] : parameters) out += " " + k + "=" + v;
    out += "\n";
    for (const auto& s : sections) {
      if (!s.title.empty()) out += "== " + s.title + "\n";
      for (const auto& e : s.entries) {
        if (e.is_check) out += std::string(e.ok ? "[ok]   " : "[FAIL] ") + e.label + " = " + e.value + "\n";
        else out += e.label + ": " + e.value + "\n";
      }
    }
    if (checks() > 0) {
      if (violations() == 0) out += "result: pass (" + std::to_string(checks()) + " checks)\n";
      else out += "result: FAIL (" + std::to_string(violations()) + " of " + std::to_string(checks()) + " checks violated)\n";
    }
    return out;
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : sections) {
      nlohmann::ordered_json js;
      js["title"] = s.title;
      js["entries"] = nlohmann::ordered_json::array();
      for (const auto& e : s.entries) {
        nlohmann::ordered_json je;
        if (e.is_check) {
          je["identity"] = e.label;
          je["residual"] = e.value;
          je["ok"] = e.ok;
        } else {
          je["label"] = e.label;
          je["value"] = e.value;
        }
        js["entries"].push_back(std::move(je));
      }
      j["sections"].push_back(std::move(js));
    }
    j["checks"] = checks();
    j["violations"] = violations();
    j["result"] = checks() == 0 ? "info" : violations() == 0 ? "pass" : "fail";
    return j;
  }
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // text report, JSON document, or error message
};

struct CommandOptions {
  std::string command;
  std::vector<std::string> arguments;
  std::string spec_path;
  int depth = 0;  // 0: use the spec's depth
  std::string tensor;
  std::string target;
  std::string flavor;  // empty: command default
  bool json = false;
};

namespace detail {

inline Flavor flavor_or(const CommandOptions& o, Flavor fallback) {
  return o.flavor.empty() ? fallback : parse_flavor(o.flavor);
}

inline int depth_or(const CommandOptions& o, const ProblemSpec& p) { return o.depth > 0 ? o.depth : p.depth; }

inline std::string pair_label(const std::string& name, const Tree& u, const Tree& v) {
  return name + "(" + u.str() + "," + v.str() + ")";
}

inline void add_common(Report& r, const CommandOptions& o) {
  if (!o.spec_path.empty()) {
    std::string base = o.spec_path;
    if (auto slash = base.find_last_of('/'); slash != std::string::npos) base = base.substr(slash + 1);
    r.parameters.emplace_back("spec", base);
  }
}

inline Report cmd_validate(const ProblemSpec& p, const CommandOptions& o) {
  Report r{"validate", {}, {}};
  add_common(r, o);
  auto& overview = r.section("spec");
  std::string coords;
  for (const auto& c : p.chart.coordinates()) coords += (coords.empty() ? "" : ",") + c;
  overview.info("coordinates", coords);
  std::string gens;
  for (const auto& g : p.chart.generators()) gens += (gens.empty() ? "" : ",") + g.name;
  overview.info("generators", gens.empty() ? "none" : gens);
  overview.info("rank", std::to_string(p.bundle.rank()));
  for (std::size_t a = 0; a < p.bundle.rank(); ++a)
    overview.info("rho(e" + std::to_string(a + 1) + ")", render(p.bundle.anchor_field(a)));
  std::string conns;
  for (const auto& c : p.connections) conns += (conns.empty() ? "" : ",") + c.name;
  overview.info("connections", conns);
  std::string tensors;
  for (const auto& [name, t] : p.tensors) tensors += (tensors.empty() ? "" : ",") + name;
  overview.info("tensors", tensors.empty() ? "none" : tensors);
  overview.info("depth", std::to_string(p.depth));

  for (const auto& [name, target] : p.targets) {
    auto& s = r.section("target " + name + " axioms");
    for (const auto& c : check_lie_algebroid_axioms(target).checks) s.check(c.identity, c.residual);
  }

  for (const auto& [name, m] : p.morphisms) {
    auto& s = r.section("morphism to " + name);
    const FiniteLieAlgebroid& target = p.targets.at(name);
    const Connection& conn = p.connections[m.connection].connection;
    for (std::size_t a = 0; a < p.bundle.rank(); ++a) {
      const std::string e = "e" + std::to_string(a + 1);
      s.check("rho_A(phi(" + e + ")) - rho(" + e + ")", render(target.anchor(m.images[a]) - p.bundle.anchor_field(a)));
      for (std::size_t i = 0; i < p.chart.dimension(); ++i) {
        ESection lhs(target.rank());
        for (std::size_t b = 0; b < p.bundle.rank(); ++b) lhs += conn.gamma(i, a, b) * m.images[b];
        const ESection rhs = covariant_derivative(target.connection(), i, m.images[a]);
        s.check("phi(nabla_" + p.chart.coordinates()[i] + " " + e + ") - nabla_" + p.chart.coordinates()[i] +
                    " phi(" + e + ")",
                render(p.chart, lhs - rhs));
      }
    }
  }
  return r;
}

inline Report cmd_dims(const CommandOptions& o) {
  if (o.arguments.size() > 3) throw invalid_input("usage: dims m D flavor");
  auto number = [](const std::string& s, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 1) throw invalid_input(std::string(what) + " must be a positive integer, got '" + s + "'");
    return v;
  };
  if (o.arguments.empty()) throw invalid_input("usage: dims m D flavor");
  const int m = number(o.arguments[0], "m");
  const int d = o.arguments.size() > 1 ? number(o.arguments[1], "D") : (o.depth > 0 ? o.depth : 3);
  const Flavor f = o.arguments.size() > 2 ? parse_flavor(o.arguments[2]) : flavor_or(o, Flavor::lie);
  if (m > 16) throw invalid_input("m must be at most 16");
  Report r{"dims", {{"m", std::to_string(m)}, {"D", std::to_string(d)}, {"flavor", to_string(f)}}, {}};
  auto& s = r.section("");
  for (int k = 1; k <= d; ++k) s.info("degree " + std::to_string(k), std::to_string(graded_dimension(m, k, f)));
  return r;
}

inline Report cmd_expand(const ProblemSpec& p, const CommandOptions& o) {
  const int depth = depth_or(o, p);
  const Flavor f = flavor_or(o, Flavor::lie);
  Report r{"expand", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("depth", std::to_string(depth));
  r.parameters.emplace_back("flavor", to_string(f));
  FreeAlgebroid alg(p.bundle, f, depth);
  const auto basis = alg.basis(depth);
  auto& anchors = r.section("anchors");
  for (const auto& t : basis) anchors.info(t.str(), render(alg.anchor(t)));
  for (const auto& c : p.connections) {
    CartanExtension ext(alg, c.connection);
    auto& s = r.section("connection " + c.name);
    for (const auto& t : basis) s.info("nabla " + t.str(), render(alg.chart(), ext.derivative(t)));
  }
  return r;
}

inline Report cmd_check_cartan(const ProblemSpec& p, const CommandOptions& o) {
  const int depth = depth_or(o, p);
  const Flavor f = flavor_or(o, Flavor::lie);
  Report r{"check-cartan", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("depth", std::to_string(depth));
  r.parameters.emplace_back("flavor", to_string(f));
  FreeAlgebroid alg(p.bundle, f, depth);
  for (const auto& c : p.connections) {
    CartanExtension ext(alg, c.connection);
    auto& s = r.section("free extension, connection " + c.name);
    for (const auto& res : compatibility_sweep(ext, depth))
      s.check(pair_label("S", res.left, res.right), render(alg.chart(), res.residual));
  }
  for (const auto& [name, target] : p.targets) {
    const CompatibilityTensor sections = compatibility_tensor_sections(target);
    const CompatibilityTensor curv = compatibility_tensor_curvature(target);
    auto& s = r.section("target " + name);
    for (std::size_t a = 0; a < target.rank(); ++a)
      for (std::size_t b = a + 1; b < target.rank(); ++b) {
        const std::string pair = "(e" + std::to_string(a + 1) + ",e" + std::to_string(b + 1) + ")";
        s.check("S" + pair, render_pair(target.chart(), sections, a, b));
      }
    CompatibilityTensor diff(target.rank(), target.dimension());
    for (std::size_t a = 0; a < target.rank(); ++a)
      for (std::size_t b = 0; b < target.rank(); ++b)
        for (std::size_t i = 0; i < target.dimension(); ++i)
          for (std::size_t c = 0; c < target.rank(); ++c) diff(a, b, i, c) = sections(a, b, i, c) - curv(a, b, i, c);
    for (std::size_t a = 0; a < target.rank(); ++a)
      for (std::size_t b = a + 1; b < target.rank(); ++b) {
        const std::string pair = "(e" + std::to_string(a + 1) + ",e" + std::to_string(b + 1) + ")";
        s.check("S_sections" + pair + " - S_curvature" + pair, render_pair(target.chart(), diff, a, b));
      }
  }
  return r;
}

inline Report cmd_check_jacobi(const ProblemSpec& p, const CommandOptions& o) {
  const int depth = depth_or(o, p);
  const Flavor f = flavor_or(o, Flavor::almost);
  Report r{"check-jacobi", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("depth", std::to_string(depth));
  r.parameters.emplace_back("flavor", to_string(f));
  FreeAlgebroid alg(p.bundle, f, depth);
  if (f == Flavor::lie) {
    // The Jacobiator of canonical monomials in normal form.
    auto& s = r.section("jacobiator normal form");
    const auto basis = alg.basis(std::max(depth - 2, 1));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        for (std::size_t k = j + 1; k < basis.size(); ++k) {
          if (basis[i].degree() + basis[j].degree() + basis[k].degree() > depth) continue;
          const auto mono = [](const Tree& t) { return FreeSection::monomial(t); };
          const FreeSection a = mono(basis[i]), b = mono(basis[j]), c = mono(basis[k]);
          const FreeSection jac = alg.bracket(a, alg.bracket(b, c)) + alg.bracket(b, alg.bracket(c, a)) +
                                  alg.bracket(c, alg.bracket(a, b));
          s.check("Jac(" + basis[i].str() + "," + basis[j].str() + "," + basis[k].str() + ")", render(alg.chart(), jac));
        }
  }
  for (const auto& c : p.connections) {
    CartanExtension ext(alg, c.connection);
    auto& s = r.section("covariant constancy, connection " + c.name);
    for (const auto& res : check_jacobiator_covariant_constancy(ext, depth))
      s.check("nabla Jac(" + res.first.str() + "," + res.second.str() + "," + res.third.str() + ") - cycl",
              render(alg.chart(), res.residual));
  }
  return r;
}

inline const std::string& require_tensor_name(const CommandOptions& o) {
  if (o.tensor.empty()) throw invalid_input(o.command + " needs --tensor NAME");
  return o.tensor;
}

inline Report cmd_check_compat(const ProblemSpec& p, const CommandOptions& o) {
  const std::string& name = require_tensor_name(o);
  const NamedTensor& t = p.tensor(name);
  Report r{"check-compat", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("tensor", name);
  std::vector<Connection> slots;
  std::string names;
  for (std::size_t c : t.connections) {
    slots.push_back(p.connections[c].connection);
    names += (names.empty() ? "" : ",") + p.connections[c].name;
  }
  auto& s = r.section("combined E-connection on " + name);
  s.info(name, render(t.tensor));
  s.info("slot connections", names.empty() ? "none" : names);
  const CompatibilityReport rep = check_compatibility(p.bundle, slots, t.tensor);
  for (std::size_t a = 0; a < rep.residuals.size(); ++a)
    s.check("E-nabla_e" + std::to_string(a + 1) + " " + name, render(rep.residuals[a]));
  return r;
}

inline Report cmd_check_invariance(const ProblemSpec& p, const CommandOptions& o) {
  const std::string& name = require_tensor_name(o);
  const NamedTensor& t = p.tensor(name);
  const int depth = depth_or(o, p);
  const Flavor f = flavor_or(o, Flavor::lie);
  Report r{"check-invariance", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("tensor", name);
  r.parameters.emplace_back("depth", std::to_string(depth));
  r.parameters.emplace_back("flavor", to_string(f));
  FreeAlgebroid alg(p.bundle, f, depth);
  std::vector<std::unique_ptr<CartanExtension>> exts;
  for (const auto& c : p.connections) exts.push_back(std::make_unique<CartanExtension>(alg, c.connection));
  std::vector<CartanExtension*> slots;
  for (std::size_t c : t.connections) slots.push_back(exts[c].get());
  auto& s = r.section("representation on " + name);
  for (const auto& xi : alg.basis(depth)) {
    const FreeSection x = FreeSection::monomial(xi);
    const TensorField v = t.tensor.rank() == 0
                              ? TensorField::scalar(p.chart, apply_vector(alg.anchor(x), t.tensor[0]))
                              : fr_representation_apply(slots, x, t.tensor);
    s.check("E-nabla_" + xi.str() + " " + name, render(v));
  }
  return r;
}

inline Report cmd_morphism(const ProblemSpec& p, const CommandOptions& o) {
  if (o.target.empty()) throw invalid_input("morphism needs --target NAME");
  const FiniteLieAlgebroid& target = p.target(o.target);
  auto it = p.morphisms.find(o.target);
  if (it == p.morphisms.end()) throw invalid_input("no morphism declared for target '" + o.target + "'");
  const int depth = depth_or(o, p);
  const Flavor f = flavor_or(o, Flavor::lie);
  Report r{"morphism", {}, {}};
  add_common(r, o);
  r.parameters.emplace_back("target", o.target);
  r.parameters.emplace_back("depth", std::to_string(depth));
  r.parameters.emplace_back("flavor", to_string(f));
  FreeAlgebroid alg(p.bundle, f, depth);
  const Connection& source = p.connections[it->second.connection].connection;
  CartanExtension ext(alg, source);
  MorphismExtension phi({p.bundle, source, target, it->second.images}, ext);
  const auto basis = alg.basis(depth);

  auto& table = r.section("images");
  for (const auto& t : basis) table.info("phi~(" + t.str() + ")", render(p.chart, phi.image(t)));

  auto& post = r.section("postconditions");
  for (const auto& t : basis) {
    const MorphismCheck c = phi.check(FreeSection::monomial(t));
    post.check("rho_A(phi~(" + t.str() + ")) - rho(" + t.str() + ")", render(c.anchor_residual));
    for (std::size_t i = 0; i < c.connection_residuals.size(); ++i) {
      const std::string& x = p.chart.coordinates()[i];
      post.check("phi~(nabla_" + x + " " + t.str() + ") - nabla_" + x + " phi~(" + t.str() + ")",
                 render(p.chart, c.connection_residuals[i]));
    }
  }

  auto& hom = r.section("bracket compatibility");
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      if (basis[a].degree() + basis[b].degree() > depth) continue;
      const FreeSection u = FreeSection::monomial(basis[a]), v = FreeSection::monomial(basis[b]);
      const ESection lhs = phi.image(alg.bracket(u, v));
      const ESection rhs = target.bracket(phi.image(u), phi.image(v));
      hom.check("phi~([" + basis[a].str() + "," + basis[b].str() + "]) - [phi~(" + basis[a].str() + "),phi~(" +
                    basis[b].str() + ")]",
                render(p.chart, lhs - rhs));
    }
  return r;
}

inline Report dispatch(const CommandOptions& o) {
  if (o.command == "dims") return cmd_dims(o);
  static const std::vector<std::string> known = {"validate",     "expand",       "check-cartan",    "check-jacobi",
                                                 "check-compat", "check-invariance", "morphism"};
  if (std::find(known.begin(), known.end(), o.command) == known.end())
    throw invalid_input("unknown command '" + o.command + "'");
  if (!o.arguments.empty()) throw invalid_input(o.command + " takes no positional arguments");
  if (o.spec_path.empty()) throw invalid_input(o.command + " needs --spec FILE");
  const ProblemSpec p = load_problem_file(o.spec_path);
  if (o.command == "validate") return cmd_validate(p, o);
  if (o.command == "expand") return cmd_expand(p, o);
  if (o.command == "check-cartan") return cmd_check_cartan(p, o);
  if (o.command == "check-jacobi") return cmd_check_jacobi(p, o);
  if (o.command == "check-compat") return cmd_check_compat(p, o);
  if (o.command == "check-invariance") return cmd_check_invariance(p, o);
  return cmd_morphism(p, o);
}

inline CommandResult error_result(const CommandOptions& o, const std::string& message) {
  if (o.json) {
    nlohmann::ordered_json j;
    j["command"] = o.command;
    j["result"] = "error";
    j["error"] = message;
    return {2, j.dump(2) + "\n"};
  }
  return {2, "error: " + message + "\n"};
}

}  // namespace detail

/// Runs one command. Exit code 0: every checked identity holds; 1: some
/// residual is nonzero; 2: input error.
inline CommandResult run_command(const CommandOptions& o) {
  try {
    const Report r = detail::dispatch(o);
    const int code = r.violations() == 0 ? 0 : 1;
    return {code, o.json ? r.json().dump(2) + "\n" : r.text()};
  } catch (const error& e) {
    return detail::error_result(o, e.what());
  }
}

/// Parses `falg <command> [args...] [--spec FILE] [--depth D] [--tensor NAME]
/// [--target NAME] [--flavor almost|lie] [--json]` and runs it.
inline CommandResult run_command(const std::vector<std::string>& argv) {
  CommandOptions o;
  CLI::App app{"Free Cartan-Lie algebroid calculator", "falg"};
  app.add_option("command", o.command, "validate | dims | expand | check-cartan | check-jacobi | check-compat | "
                                        "check-invariance | morphism")
      ->required();
  app.add_option("arguments", o.arguments, "positional arguments (dims: m D flavor)");
  app.add_option("--spec", o.spec_path, "problem spec JSON file");
  app.add_option("--depth", o.depth, "bracket depth bound D")->check(CLI::PositiveNumber);
  app.add_option("--tensor", o.tensor, "tensor name");
  app.add_option("--target", o.target, "target algebroid name");
  app.add_option("--flavor", o.flavor, "almost | lie")->check(CLI::IsMember({"almost", "lie"}));
  app.add_flag("--json", o.json, "emit a JSON report");
  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help()};
  } catch (const CLI::ParseError& e) {
    return {2, "error: " + std::string(e.what()) + "\n" + app.help()};
  }
  return run_command(o);
}

}  // namespace falg
