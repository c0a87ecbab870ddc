#pragma once

// Line-oriented problem files:
//
//   field Q | field F <p>
//   vars <ident>+
//   ideal: <poly> (; <poly>)*
//   gen <name>: <var> -> <poly> (, <var> -> <poly>)*
//   option <key> = <value>
//
// `#` starts a comment. In deformation files the ideal may use the reserved
// parameter `eps`.

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eqdef/deform.hpp"
#include "eqdef/parse.hpp"

namespace eqdef {

struct GeneratorSpec {
  std::string name;
  Substitution images;
};

struct ProblemFile {
  Field field = Field::rationals();
  RingPtr ring;
  std::vector<Polynomial> ideal;  // ε set to 0
  std::vector<Series> series;     // coefficients of ε^t, deformation files only
  std::vector<GeneratorSpec> generators;
  std::map<std::string, std::string> options;
  bool deformation = false;

  unsigned order() const {
    std::size_t n = 0;
    for (const auto& s : series) n = std::max(n, s.size());
    return n == 0 ? 0 : static_cast<unsigned>(n - 1);
  }
};

inline const std::string kEpsilon = "eps";

inline const std::set<std::string>& known_options() {
  static const std::set<std::string> keys{"truncate", "ambient", "group_bound", "order"};
  return keys;
}

namespace detail {

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline std::size_t skip_space(const std::string& s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

/// [begin, end) with surrounding blanks removed.
inline std::pair<std::size_t, std::size_t> trimmed(const std::string& s, std::size_t begin, std::size_t end) {
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return {begin, end};
}

inline std::vector<std::pair<std::size_t, std::size_t>> split(const std::string& s, std::size_t begin, std::size_t end,
                                                              char sep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = begin;
  for (std::size_t i = begin; i <= end; ++i)
    if (i == end || s[i] == sep) {
      out.push_back(trimmed(s, start, i));
      start = i + 1;
    }
  return out;
}

/// ε-expansion of a polynomial in vars + eps.
inline Series split_epsilon(const Polynomial& f, const RingPtr& base) {
  const std::size_t e = base->nvars();
  Series s;
  for (const auto& t : f.terms()) {
    const std::size_t k = t.mono[e];
    if (s.size() <= k) s.resize(k + 1, Polynomial(base));
    Monomial m(e);
    for (std::size_t i = 0; i < e; ++i) m.exp[i] = t.mono[i];
    s[k] += Polynomial::term(base, t.coeff, m);
  }
  if (s.empty()) s.push_back(Polynomial(base));
  return s;
}

}  // namespace detail

/// Parses a problem file; `deformation` admits `eps` in ideal generators.
inline ProblemFile parse_problem(const std::string& text, bool deformation = false) {
  ProblemFile pf;
  pf.deformation = deformation;
  bool have_field = false;
  std::set<std::string> gen_names;
  RingPtr eps_ring;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto [b, e] = detail::trimmed(line, 0, line.size());
    if (b == e) continue;
    auto err = [&](const std::string& msg, std::size_t col) { return ParseError(msg, lineno, col + 1); };
    std::size_t kw_end = b;
    while (kw_end < e && (std::isalnum(static_cast<unsigned char>(line[kw_end])) || line[kw_end] == '_')) ++kw_end;
    const std::string kw = line.substr(b, kw_end - b);

    if (kw == "field") {
      if (have_field) throw err("field declared twice", b);
      auto [fb, fe] = detail::trimmed(line, kw_end, e);
      std::istringstream words(line.substr(fb, fe - fb));
      std::string name, p, extra;
      words >> name >> p >> extra;
      if (name == "Q" && p.empty()) {
        pf.field = Field::rationals();
      } else if (name == "F" && !p.empty() && extra.empty()) {
        const std::size_t at = line.find(p, fb + 1);
        if (p.find_first_not_of("0123456789") != std::string::npos || p.size() > 9)
          throw err("expected a prime after `field F`", at);
        const auto q = std::stoull(p);
        if (!is_prime(q)) throw err("field characteristic " + p + " is not prime", at);
        pf.field = Field::prime(q);
      } else {
        throw err("expected `field Q` or `field F <p>`", fb);
      }
      have_field = true;
    } else if (kw == "vars") {
      if (!have_field) throw err("`vars` before `field`", b);
      if (pf.ring) throw err("variables declared twice", b);
      std::vector<std::string> names;
      std::size_t i = kw_end;
      while ((i = detail::skip_space(line, i)) < e) {
        std::size_t j = i;
        while (j < e && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        std::string v = line.substr(i, j - i);
        if (!detail::is_identifier(v)) throw err("invalid variable name `" + v + "`", i);
        if (v == kEpsilon) throw err("`eps` is reserved for the deformation parameter", i);
        if (std::find(names.begin(), names.end(), v) != names.end()) throw err("duplicate variable `" + v + "`", i);
        names.push_back(v);
        i = j;
      }
      pf.ring = Ring::make(pf.field, names);
      auto with_eps = names;
      with_eps.push_back(kEpsilon);
      eps_ring = Ring::make(pf.field, with_eps);
    } else if (kw == "ideal") {
      if (!pf.ring) throw err("`ideal` before `vars`", b);
      std::size_t colon = detail::skip_space(line, kw_end);
      if (colon >= e || line[colon] != ':') throw err("expected `:` after `ideal`", colon);
      for (auto [pb, pe] : detail::split(line, colon + 1, e, ';')) {
        if (pb == pe) throw err("empty ideal generator", pb);
        const std::string src = line.substr(pb, pe - pb);
        if (deformation) {
          auto s = detail::split_epsilon(parse_polynomial(eps_ring, src, lineno, pb), pf.ring);
          pf.ideal.push_back(s[0]);
          pf.series.push_back(std::move(s));
        } else {
          pf.ideal.push_back(parse_polynomial(pf.ring, src, lineno, pb));
          pf.series.push_back({pf.ideal.back()});
        }
      }
    } else if (kw == "gen") {
      if (!pf.ring) throw err("`gen` before `vars`", b);
      std::size_t colon = line.find(':', kw_end);
      if (colon == std::string::npos || colon >= e) throw err("expected `gen <name>: ...`", kw_end);
      auto [nb, ne] = detail::trimmed(line, kw_end, colon);
      std::string name = line.substr(nb, ne - nb);
      if (!detail::is_identifier(name)) throw err("invalid generator name `" + name + "`", nb);
      if (!gen_names.insert(name).second) throw err("duplicate generator `" + name + "`", nb);
      GeneratorSpec g{name, identity_substitution(pf.ring)};
      std::set<std::size_t> seen;
      for (auto [ib, ie] : detail::split(line, colon + 1, e, ',')) {
        auto arrow = line.find("->", ib);
        if (arrow == std::string::npos || arrow >= ie) throw err("expected `<var> -> <poly>`", ib);
        auto [vb, ve] = detail::trimmed(line, ib, arrow);
        std::string v = line.substr(vb, ve - vb);
        auto idx = pf.ring->index_of(v);
        if (!idx) throw err("unknown variable `" + v + "`", vb);
        if (!seen.insert(*idx).second) throw err("variable `" + v + "` mapped twice", vb);
        auto [pb, pe] = detail::trimmed(line, arrow + 2, ie);
        if (pb == pe) throw err("missing image for `" + v + "`", arrow + 2);
        g.images[*idx] = parse_polynomial(pf.ring, line.substr(pb, pe - pb), lineno, pb);
      }
      pf.generators.push_back(std::move(g));
    } else if (kw == "option") {
      auto eq = line.find('=', kw_end);
      if (eq == std::string::npos || eq >= e) throw err("expected `option <key> = <value>`", kw_end);
      auto [kb, ke] = detail::trimmed(line, kw_end, eq);
      auto [vb, ve] = detail::trimmed(line, eq + 1, e);
      std::string key = line.substr(kb, ke - kb), value = line.substr(vb, ve - vb);
      if (!known_options().count(key)) throw err("unknown option `" + key + "`", kb);
      if (value.empty()) throw err("missing value for option `" + key + "`", eq + 1);
      if (pf.options.count(key)) throw err("option `" + key + "` set twice", kb);
      pf.options[key] = value;
    } else {
      throw err("unknown directive `" + (kw.empty() ? line.substr(b, 1) : kw) + "`", b);
    }
  }
  if (!have_field) throw ParseError("missing `field` declaration", lineno + 1, 1);
  if (!pf.ring) throw ParseError("missing `vars` declaration", lineno + 1, 1);
  return pf;
}

namespace detail {

inline std::string render_series(const Series& s, const RingPtr& ring) {
  std::vector<std::string> names = ring->names();
  names.push_back(kEpsilon);
  auto eps_ring = Ring::make(ring->field(), names);
  Polynomial total(eps_ring);
  for (std::size_t t = 0; t < s.size(); ++t)
    for (const auto& term : s[t].terms()) {
      Monomial m(names.size());
      for (std::size_t i = 0; i < ring->nvars(); ++i) m.exp[i] = term.mono[i];
      m.exp.back() = static_cast<std::uint32_t>(t);
      total += Polynomial::term(eps_ring, term.coeff, m);
    }
  return render(total);
}

}  // namespace detail

/// Canonical text of a problem file; parsing it gives back the same problem.
inline std::string render_problem(const ProblemFile& pf) {
  std::ostringstream out;
  out << "field " << (pf.field.is_rational() ? "Q" : "F " + std::to_string(pf.field.characteristic())) << "\n";
  out << "vars";
  for (const auto& v : pf.ring->names()) out << " " << v;
  out << "\n";
  if (!pf.ideal.empty()) {
    out << "ideal: ";
    for (std::size_t j = 0; j < pf.ideal.size(); ++j) {
      if (j) out << "; ";
      out << (pf.deformation ? detail::render_series(pf.series[j], pf.ring) : render(pf.ideal[j]));
    }
    out << "\n";
  }
  for (const auto& g : pf.generators) {
    out << "gen " << g.name << ":";
    bool first = true;
    for (std::size_t i = 0; i < g.images.size(); ++i) {
      if (g.images[i] == Polynomial::variable(pf.ring, i) && !(first && i + 1 == g.images.size())) continue;
      out << (first ? " " : ", ") << pf.ring->names()[i] << " -> " << render(g.images[i]);
      first = false;
    }
    out << "\n";
  }
  for (const auto& [k, v] : pf.options) out << "option " << k << " = " << v << "\n";
  return out.str();
}

}  // namespace eqdef
