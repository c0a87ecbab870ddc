#pragma once

// Batch front end: runs one command on parsed problem files and produces a
// plain-text and a JSON report.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "eqdef/problem.hpp"
#include "eqdef/ramify.hpp"

namespace eqdef::cli {

enum ExitCode : int { kSuccess = 0, kInternal = 1, kObstructed = 2, kInputError = 3 };

struct Invocation {
  std::string command;
  std::vector<std::string> inputs;  // file contents, in command-line order
  std::optional<long> truncate;
  unsigned order = 1;
  bool enumerate = false;
  long d = 0, m = 2;
  std::uint64_t p = 0;  // 0 selects ℚ
};

struct Report {
  nlohmann::json data;
  std::vector<std::string> lines;
  int exit_code = kSuccess;
  std::string error;

  void line(const std::string& s) { lines.push_back(s); }
  std::string text() const {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }
  std::string json() const { return data.dump(2) + "\n"; }
};

inline std::string field_name(const Field& k) { return k.is_rational() ? "Q" : "F" + std::to_string(k.characteristic()); }

inline std::string render_element(const FreeModuleElement& v) {
  if (v.size() == 1) return render(v[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render(v[i]);
  return s + ")";
}

inline std::string render_derivation(const FreeModuleElement& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render(v[i]);
  return s + "]";
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return v.empty() ? "(none)" : s;
}

inline std::string join_ideal(const std::vector<std::string>& gens) {
  std::string s;
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "; " : "") + gens[i];
  return s;
}

inline std::string render_basis_monomial(const RingPtr& ring, std::size_t rank, const BasisMonomial& b) {
  std::string m = render_monomial(*ring, b.mono);
  if (rank == 1) return m.empty() ? "1" : m;
  return "e" + std::to_string(b.pos + 1) + (m.empty() ? "" : "*" + m);
}

/// The problem wired into the pipeline.
struct Session {
  ProblemFile file;
  AffinePresentation presentation;
  GroupAction group;
  ContextPtr context;
  long truncation = 0;
  std::string ambient;

  static long default_truncation(const ProblemFile& pf) {
    long deg = 0;
    for (const auto& f : pf.ideal) deg = std::max(deg, f.degree());
    for (const auto& g : pf.generators)
      for (const auto& p : g.images) deg = std::max(deg, p.degree());
    return std::max(2L, 2 * deg);
  }

  static long option_long(const ProblemFile& pf, const std::string& key, long fallback) {
    auto it = pf.options.find(key);
    if (it == pf.options.end()) return fallback;
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || v < 0) throw std::invalid_argument("option `" + key + "` needs a non-negative integer");
    return v;
  }

  static Session open(ProblemFile pf, std::optional<long> truncate) {
    Session s;
    std::vector<Substitution> gens;
    for (const auto& g : pf.generators) gens.push_back(g.images);
    const long bound = option_long(pf, "group_bound", 1024);
    if (bound < 1) throw std::invalid_argument("option `group_bound` must be positive");
    s.group = close_group(pf.ring, gens, static_cast<std::size_t>(bound));
    s.presentation = AffinePresentation::make(pf.ring, pf.ideal);
    s.truncation = truncate ? *truncate : option_long(pf, "truncate", default_truncation(pf));
    if (s.truncation < 0) throw std::invalid_argument("truncation must be non-negative");
    auto it = pf.options.find("ambient");
    s.ambient = it == pf.options.end() ? "auto" : it->second;
    if (s.ambient == "small") {
      s.context = make_context(small_ambient(s.presentation, s.group));
    } else if (s.ambient == "regular") {
      s.context = make_context(regular_rep_embedding(s.presentation, s.group));
    } else if (s.ambient == "auto") {
      s.context = make_context(default_ambient(s.presentation, s.group));
    } else {
      throw std::invalid_argument("option `ambient` must be auto, small or regular");
    }
    s.ambient = to_string(s.context->ambient.kind);
    s.file = std::move(pf);
    return s;
  }

  /// Values of a 1-cochain at the named group generators.
  std::vector<std::string> render_cochain(const CohomologyClass& c) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < file.generators.size(); ++i)
      out.push_back(file.generators[i].name + ": " + render_element(c.values[group.generators()[i]]));
    return out;
  }

  /// A deformation file on the same problem, in this session's ambient.
  Deformation deformation(const ProblemFile& pf) const {
    if (render_problem_header(pf) != render_problem_header(file))
      throw std::invalid_argument("deformation files disagree on field, variables, ideal or group");
    unsigned order = static_cast<unsigned>(option_long(pf, "order", pf.order()));
    if (order < pf.order()) throw std::invalid_argument("option `order` is below the highest power of eps");
    auto small = context->ambient.kind == AmbientKind::small ? context : make_context(small_ambient(presentation, group));
    std::vector<Series> series;
    for (const auto& f : pf.series) {
      Series t;
      for (const auto& c : f) t.push_back(Polynomial::from_terms(presentation.ring, {c.terms().begin(), c.terms().end()}));
      series.push_back(std::move(t));
    }
    auto d = Deformation::make(small, order, std::move(series));
    if (!d.is_equivariant()) throw std::invalid_argument("deformation is not equivariant");
    return small == context ? d : transport(d, context);
  }

 private:
  static std::string render_problem_header(const ProblemFile& pf) {
    ProblemFile base = pf;
    base.deformation = false;
    base.options.clear();
    base.series.clear();
    return render_problem(base);
  }
};

inline void common_fields(Report& r, const std::string& command) {
  r.data = {{"command", command},      {"field", nullptr},         {"group_order", nullptr},
            {"t0_dim", nullptr},       {"t1_dim", nullptr},        {"t1_equivariant_dim", nullptr},
            {"obstruction_dim", nullptr}, {"certified", nullptr},  {"lifts", nullptr},
            {"witness", nullptr}};
  r.line("command: " + command);
}

inline void session_fields(Report& r, const Session& s) {
  r.data["field"] = field_name(s.file.field);
  r.data["group_order"] = s.group.order();
  r.data["truncation"] = s.truncation;
  r.data["ambient"] = s.ambient;
  r.line("field: " + field_name(s.file.field));
  r.line("group order: " + std::to_string(s.group.order()) + (s.group.is_tame() ? " (tame)" : " (wild)"));
  r.line("ambient: " + s.ambient);
  r.line("truncation: " + std::to_string(s.truncation));
}

inline std::string certification(bool exact, long slice) { return exact ? "exact" : "slice:" + std::to_string(slice); }

inline Report run_check(const ProblemFile& pf) {
  Report r;
  common_fields(r, "check");
  std::vector<Substitution> gens;
  for (const auto& g : pf.generators) gens.push_back(g.images);
  auto group = close_group(pf.ring, gens, static_cast<std::size_t>(Session::option_long(pf, "group_bound", 1024)));
  auto cert = is_regular_sequence(pf.ring, pf.ideal);
  bool stable = verify_stability(buchberger(pf.ring, pf.ideal), group);
  r.data["field"] = field_name(pf.field);
  r.data["group_order"] = group.order();
  r.data["tame"] = group.is_tame();
  r.data["stable"] = stable;
  r.data["regular_sequence"] = cert.regular;
  r.data["dimension"] = cert.dimension;
  r.line("field: " + field_name(pf.field));
  r.line("group order: " + std::to_string(group.order()) + (group.is_tame() ? " (tame)" : " (wild)"));
  r.line(std::string("ideal stable: ") + (stable ? "yes" : "no"));
  r.line(std::string("regular sequence: ") + (cert.regular ? "yes" : "no") + " (dimension " +
         std::to_string(cert.dimension) + ")");
  if (!stable || !cert.regular) r.exit_code = kInputError;
  return r;
}

inline Report run_tangent(const Session& s) {
  Report r;
  common_fields(r, "tangent");
  session_fields(r, s);
  auto t = tangent_spaces(s.presentation, s.group, *s.context, s.truncation);
  std::vector<std::string> t0, t1, t1g;
  for (const auto& v : t.t0) t0.push_back(render_derivation(v));
  for (const auto& b : t.t1.basis) t1.push_back(render_basis_monomial(s.presentation.ring, s.presentation.codim(), b));
  for (const auto& v : t.t1_equivariant) t1g.push_back(render_element(v));
  r.data["t0_dim"] = t.t0.size();
  r.data["t0_basis"] = t0;
  r.data["t1_dim"] = t.t1.dimension();
  r.data["t1_finite"] = t.t1.finite;
  r.data["t1_basis"] = t1;
  r.data["t1_equivariant_dim"] = t.t1_equivariant.size();
  r.data["t1_equivariant_basis"] = t1g;
  r.data["certified"] = certification(t.exact, t.slice);
  r.line("T0_G dim (degree <= " + std::to_string(s.truncation) + "): " + std::to_string(t.t0.size()));
  r.line("T0_G basis: " + join(t0));
  r.line("T1 dim: " + std::to_string(t.t1.dimension()) +
         (t.t1.finite ? "" : " (infinite; degree <= " + std::to_string(t.t1.bound) + ")"));
  r.line("T1 basis: " + join(t1));
  r.line("T1_G dim: " + std::to_string(t.t1_equivariant.size()));
  r.line("T1_G basis: " + join(t1g));
  r.line("certified: " + certification(t.exact, t.slice));
  return r;
}

inline Report run_obstruction(const Session& s) {
  Report r;
  common_fields(r, "obstruction");
  session_fields(r, s);
  auto o = obstruction_space(s.group, *s.context, s.truncation);
  nlohmann::json reps = nlohmann::json::array();
  r.data["obstruction_dim"] = o.dimension;
  r.data["certified"] = certification(o.exact, o.slice);
  r.line("obstruction dim: " + std::to_string(o.dimension));
  for (std::size_t i = 0; i < o.representatives.size(); ++i) {
    auto vals = s.render_cochain(o.representatives[i]);
    reps.push_back(vals);
    r.line("class " + std::to_string(i + 1) + ": " + join(vals));
  }
  r.data["representatives"] = reps;
  r.line("certified: " + certification(o.exact, o.slice));
  return r;
}

inline Report run_lift(const Session& s, unsigned order, bool enumerate) {
  Report r;
  common_fields(r, "lift");
  session_fields(r, s);
  auto t1g = tangent_spaces(s.presentation, s.group, *s.context, s.truncation).t1_equivariant;
  r.data["t1_equivariant_dim"] = t1g.size();
  r.data["order"] = order;
  r.line("order: " + std::to_string(order));
  nlohmann::json steps = nlohmann::json::array();
  auto d = Deformation::trivial(s.context, 0);
  for (unsigned t = 1; t <= order; ++t) {
    auto step = lift_step(d, s.truncation);
    nlohmann::json js = {{"order", t}};
    if (!step.lift) {
      auto vals = s.render_cochain(*step.obstruction);
      js["obstructed"] = true;
      js["obstruction"] = vals;
      steps.push_back(js);
      r.line("step " + std::to_string(t) + ": obstructed; class " + join(vals));
      r.exit_code = kObstructed;
      break;
    }
    d = *step.lift;
    js["obstructed"] = false;
    js["deformation"] = d.render();
    r.line("step " + std::to_string(t) + ": " + join_ideal(d.render()));
    if (enumerate) {
      auto all = enumerate_lifts(d, t1g);
      std::vector<std::string> rs;
      for (const auto& x : all) rs.push_back(join_ideal(x.render()));
      js["count"] = all.size();
      js["lifts"] = rs;
      r.line(s.file.field.is_rational() ? "  sample lifts, T1_G coefficients in {0, 1}: " + std::to_string(all.size())
                                        : "  lifts up to isomorphism: " + std::to_string(all.size()));
      for (const auto& x : rs) r.line("    " + x);
    }
    steps.push_back(js);
  }
  r.data["lifts"] = steps;
  r.data["certified"] = certification(s.group.is_tame(), s.truncation);
  return r;
}

inline Report run_iso(const Session& s, const ProblemFile& f1, const ProblemFile& f2) {
  Report r;
  common_fields(r, "iso");
  session_fields(r, s);
  auto d1 = s.deformation(f1), d2 = s.deformation(f2);
  if (d1.order() != d2.order()) throw std::invalid_argument("deformations have different orders");
  auto w = iso_witness(d1, d2, s.truncation);
  nlohmann::json js = {{"exists", w.has_value()}, {"slice", s.truncation}};
  r.line("order: " + std::to_string(d1.order()));
  if (w) {
    js["values"] = render_derivation(w->values);
    r.line("witness: " + render_derivation(w->values));
  } else {
    r.line("witness: none at slice " + std::to_string(s.truncation));
  }
  r.data["witness"] = js;
  r.data["certified"] = "slice:" + std::to_string(s.truncation);
  return r;
}

inline Report run_ramify(long d, long m, std::uint64_t p) {
  Report r;
  common_fields(r, "ramify");
  const Field k = p == 0 ? Field::rationals() : Field::prime(p);
  const long v = local_ext1_invariants(d, m, k);
  r.data["field"] = field_name(k);
  r.data["group_order"] = m;
  r.data["d"] = d;
  r.data["m"] = m;
  r.data["ext1_invariant_dim"] = v;
  r.data["certified"] = "exact";
  r.line("field: " + field_name(k));
  r.line("stabilizer order: " + std::to_string(m));
  r.line("different: " + std::to_string(d));
  r.line("Ext1 invariant dim: " + std::to_string(v));
  return r;
}

/// Runs one invocation; input errors become exit code 3 with a diagnostic.
inline Report run(const Invocation& inv) {
  auto fail = [&](int code, const std::string& msg) {
    Report r;
    common_fields(r, inv.command);
    r.exit_code = code;
    r.error = msg;
    r.data["error"] = msg;
    r.line("error: " + msg);
    return r;
  };
  auto expect_inputs = [&](std::size_t n) {
    if (inv.inputs.size() != n)
      throw std::invalid_argument("`" + inv.command + "` takes " + std::to_string(n) + " problem file" + (n == 1 ? "" : "s"));
  };
  try {
    if (inv.command == "ramify") {
      expect_inputs(0);
      return run_ramify(inv.d, inv.m, inv.p);
    }
    if (inv.command == "iso") {
      expect_inputs(2);
      auto f1 = parse_problem(inv.inputs[0], true), f2 = parse_problem(inv.inputs[1], true);
      ProblemFile base = f1;
      base.series.clear();
      for (const auto& f : base.ideal) base.series.push_back({f});
      base.deformation = false;
      base.options.erase("order");
      return run_iso(Session::open(base, inv.truncate), f1, f2);
    }
    expect_inputs(1);
    auto pf = parse_problem(inv.inputs[0]);
    if (inv.command == "check") return run_check(pf);
    auto s = Session::open(pf, inv.truncate);
    if (inv.command == "tangent") return run_tangent(s);
    if (inv.command == "obstruction") return run_obstruction(s);
    if (inv.command == "lift") return run_lift(s, inv.order, inv.enumerate);
    throw std::invalid_argument("unknown command `" + inv.command + "`");
  } catch (const ParseError& e) {
    return fail(kInputError, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kInputError, e.what());
  } catch (const GroupError& e) {
    return fail(kInputError, e.what());
  } catch (const PresentationError& e) {
    return fail(kInputError, e.what());
  } catch (const ContextError& e) {
    return fail(kInputError, e.what());
  } catch (const ArithmeticError& e) {
    return fail(kInputError, e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, e.what());
  }
}

}  // namespace eqdef::cli
