// Copyright 2026 The sitrw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sitrw/domain_file.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "sitrw/error.hpp"

namespace sitrw {

namespace {

struct Line {
  int number = 0;
  // Offset of `text` within the raw line.
  std::size_t offset = 0;
  std::string_view text;
  bool indented = false;
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    if (lead) *lead = s.size();
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class FileParser {
 public:
  explicit FileParser(std::string_view text) { split(text); }

  DomainFile run() {
    std::vector<const Line*> deferred;
    std::vector<const Line*> fluent_lines;
    const Line* fluents_header = nullptr;
    const Line* chi_line = nullptr;
    const Line* prec_line = nullptr;
    const Line* domain_line = nullptr;
    bool in_fluents = false;

    for (const Line& ln : lines_) {
      if (ln.indented && in_fluents) {
        fluent_lines.push_back(&ln);
        continue;
      }
      in_fluents = false;
      std::string_view key = ln.text;
      if (starts(key, "domain:")) {
        once(domain_line, ln);
      } else if (starts(key, "signature:")) {
        declare(ln, value_of(ln, "signature:"));
      } else if (starts(key, "prec:")) {
        once(prec_line, ln);
      } else if (starts(key, "fluents:")) {
        once(fluents_header, ln);
        if (!trim(value_of(ln, "fluents:").second).empty()) {
          fail(ErrorCode::kParseError, ln, 0, "fluents take indented lines");
        }
        in_fluents = true;
      } else if (starts(key, "chi:")) {
        once(chi_line, ln);
      } else if (starts(key, "states:")) {
        auto [col, v] = value_of(ln, "states:");
        if (trim(v) != "enumerate") {
          fail(ErrorCode::kParseError, ln, col, "states must be 'enumerate'");
        }
      } else if (starts(key, "rule ") || starts(key, "equiv ") ||
                 starts(key, "start:") || starts(key, "goal:")) {
        deferred.push_back(&ln);
      } else {
        fail(ErrorCode::kParseError, ln, 0, "unknown directive");
      }
    }

    DomainFile out;
    if (domain_line) load_domain(*domain_line, out);
    if (!prec_line) {
      throw ParseError(ErrorCode::kMissingPrec, 1, 1, "no prec: line");
    }
    {
      auto [col, v] = value_of(*prec_line, "prec:");
      try {
        precedence_ = Precedence::parse(v, signature_, true);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(e.code(), *prec_line, col, strip(e));
      }
    }
    if (out.has_theory()) {
      check_fluents(out, fluents_header, fluent_lines);
      check_chi(out, chi_line);
    } else if (fluents_header || chi_line) {
      fail(ErrorCode::kParseError, fluents_header ? *fluents_header : *chi_line,
           0, "fluents and chi need a domain line");
    }

    RuleSet rules;
    for (const Line* ln : deferred) {
      std::string_view t = ln->text;
      if (starts(t, "rule ")) {
        parse_rule(*ln, rules);
      } else if (starts(t, "equiv ")) {
        parse_equiv(*ln, rules);
      } else {
        const char* key = starts(t, "start:") ? "start:" : "goal:";
        auto& slot = key[0] == 's' ? out.start : out.goal;
        if (slot) fail(ErrorCode::kParseError, *ln, 0, "repeated line");
        auto [col, v] = value_of(*ln, key);
        Term term = term_at(*ln, col, v);
        if (!term.ground()) {
          fail(ErrorCode::kParseError, *ln, col, "term must be ground");
        }
        slot = term;
      }
    }

    out.encoding.signature = signature_;
    out.encoding.precedence = precedence_;
    out.encoding.rules = std::move(rules);
    return out;
  }

 private:
  void split(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view raw = text.substr(
          pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++number;
      // Comments end the line outside quoted templates.
      bool quoted = false;
      std::size_t cut = raw.size();
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') quoted = !quoted;
        if (raw[i] == '#' && !quoted) {
          cut = i;
          break;
        }
      }
      raw = raw.substr(0, cut);
      std::size_t lead = 0;
      std::string_view body = trim(raw, &lead);
      if (!body.empty()) {
        lines_.push_back(Line{number, lead, body, lead > 0});
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  static bool starts(std::string_view s, std::string_view p) {
    return s.substr(0, p.size()) == p;
  }

  // Column (0-based within the body) and text after the key.
  static std::pair<std::size_t, std::string_view> value_of(
      const Line& ln, std::string_view key) {
    std::string_view rest = ln.text.substr(key.size());
    std::size_t lead = 0;
    std::string_view v = trim(rest, &lead);
    return {key.size() + lead, v};
  }

  static std::string strip(const Error& e) {
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) return pe->detail();
    std::string msg = e.what();
    std::size_t colon = msg.find(": ");
    return colon == std::string::npos ? msg : msg.substr(colon + 2);
  }

  [[noreturn]] static void fail(ErrorCode code, const Line& ln, std::size_t col,
                                const std::string& msg) {
    throw ParseError(code, ln.number, static_cast<int>(ln.offset + col) + 1,
                     msg);
  }

  void once(const Line*& slot, const Line& ln) {
    if (slot) fail(ErrorCode::kParseError, ln, 0, "repeated line");
    slot = &ln;
  }

  void declare(const Line& ln, std::pair<std::size_t, std::string_view> v) {
    std::string_view body = v.second;
    std::size_t base = v.first;
    std::size_t i = 0;
    for (std::string_view w : words(body)) {
      i = body.find(w, i);
      std::size_t col = base + i;
      std::size_t slash = w.rfind('/');
      std::uint32_t arity = 0;
      std::string_view name = slash == std::string_view::npos ? w : w.substr(0, slash);
      bool ok = slash != std::string_view::npos && !name.empty();
      for (char c : name) {
        ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      }
      if (ok) {
        std::string_view digits = w.substr(slash + 1);
        auto [p, ec] = std::from_chars(digits.data(),
                                       digits.data() + digits.size(), arity);
        ok = ec == std::errc() && p == digits.data() + digits.size();
      }
      if (!ok) fail(ErrorCode::kParseError, ln, col, "expected name/arity");
      try {
        signature_.declare(name, arity);
      } catch (const Error& e) {
        fail(e.code(), ln, col, strip(e));
      }
      i += w.size();
    }
  }

  void load_domain(const Line& ln, DomainFile& out) {
    auto [col, v] = value_of(ln, "domain:");
    auto ws = words(v);
    if (ws.empty()) fail(ErrorCode::kParseError, ln, col, "missing domain name");
    DomainSpec spec;
    spec.name = std::string(ws[0]);
    std::size_t at = 0;
    for (std::size_t k = 1; k < ws.size(); ++k) {
      at = v.find(ws[k], at);
      std::string_view w = ws[k];
      std::size_t eq = w.find('=');
      if (eq == std::string_view::npos) {
        fail(ErrorCode::kParseError, ln, col + at, "expected key=value");
      }
      std::string_view key = w.substr(0, eq);
      std::string_view val = w.substr(eq + 1);
      if (key == "variant") {
        spec.variant = std::string(val);
        continue;
      }
      int num = 0;
      auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), num);
      if (ec != std::errc() || p != val.data() + val.size()) {
        fail(ErrorCode::kParseError, ln, col + at + eq + 1, "expected integer");
      }
      if (key == "n") {
        spec.n = num;
      } else if (key == "positions") {
        spec.positions = num;
      } else if (key == "towers") {
        spec.towers = num;
      } else {
        fail(ErrorCode::kParseError, ln, col + at, "unknown key");
      }
    }
    Domain d;
    try {
      d = make_domain(spec);
    } catch (const Error& e) {
      fail(e.code(), ln, col, strip(e));
    }
    for (SymbolId s : d.encoding.signature.symbols()) {
      auto mine = signature_.find(symbol_name(s));
      if (!mine) {
        fail(ErrorCode::kUnknownSymbol, ln, col,
             "domain symbol " + symbol_name(s) + " not declared");
      }
      if (*mine != s) {
        fail(ErrorCode::kArityMismatch, ln, col,
             "domain symbol " + symbol_name(s) + " declared with another arity");
      }
    }
    out.spec = spec;
    out.encoding = d.encoding;
  }

  void check_fluents(const DomainFile& out, const Line* header,
                     const std::vector<const Line*>& lines) {
    if (!header) return;
    const auto& want = out.encoding.theory->fluents();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto ws = words(lines[i]->text);
      bool ok = i < want.size() && ws[0] == want[i].name &&
                ws.size() == want[i].values.size() + 1;
      for (std::size_t k = 1; ok && k < ws.size(); ++k) {
        ok = ws[k] == want[i].values[k - 1];
      }
      if (!ok) {
        fail(ErrorCode::kParseError, *lines[i], 0,
             "fluent does not match the domain");
      }
    }
    if (lines.size() != want.size()) {
      fail(ErrorCode::kParseError, *header, 0,
           "expected " + std::to_string(want.size()) + " fluents");
    }
  }

  void check_chi(const DomainFile& out, const Line* ln) {
    if (!ln) return;
    auto [col, v] = value_of(*ln, "chi:");
    const GroundTheory& th = *out.encoding.theory;
    if (v == "all") {
      std::size_t product = 1;
      for (const auto& f : th.fluents()) product *= f.values.size();
      if (product != th.states().size()) {
        fail(ErrorCode::kParseError, *ln, col,
             "domain constrains its states; use builtin:" + out.spec->name);
      }
      return;
    }
    if (v != "builtin:" + out.spec->name) {
      fail(ErrorCode::kParseError, *ln, col, "expected all or builtin:" +
                                                 out.spec->name);
    }
  }

  Term term_at(const Line& ln, std::size_t col, std::string_view text) const {
    try {
      return parse_term(text, signature_);
    } catch (const ParseError& e) {
      fail(e.code(), ln, col + static_cast<std::size_t>(e.column()) - 1,
           e.detail());
    }
  }

  // Splits "<lhs> <arrow> <rhs>" and parses both sides.
  std::pair<Term, Term> sides(const Line& ln, std::size_t col,
                              std::string_view text, std::string_view arrow,
                              std::size_t* rhs_col) const {
    std::size_t a = text.find(arrow);
    if (a == std::string_view::npos) {
      fail(ErrorCode::kParseError, ln, col,
           "expected '" + std::string(arrow) + "'");
    }
    std::size_t ll = 0;
    std::size_t rl = 0;
    std::string_view l = trim(text.substr(0, a), &ll);
    std::string_view r = trim(text.substr(a + arrow.size()), &rl);
    *rhs_col = col + a + arrow.size() + rl;
    return {term_at(ln, col + ll, l), term_at(ln, *rhs_col, r)};
  }

  void parse_rule(const Line& ln, RuleSet& rules) const {
    std::size_t col = 5;
    std::string_view rest = ln.text.substr(col);
    std::optional<std::string> label;
    std::size_t lead = 0;
    rest = trim(rest, &lead);
    col += lead;
    if (starts(rest, "action ")) {
      std::size_t q = rest.find_first_not_of(' ', 7);
      if (q == std::string_view::npos || rest[q] != '"') {
        fail(ErrorCode::kParseError, ln, col + 7, "expected quoted template");
      }
      std::size_t end = rest.find('"', q + 1);
      if (end == std::string_view::npos) {
        fail(ErrorCode::kParseError, ln, col + q, "unterminated template");
      }
      label = std::string(rest.substr(q + 1, end - q - 1));
      std::string_view after = rest.substr(end + 1);
      std::string_view t = trim(after, &lead);
      col += end + 1 + lead;
      rest = t;
    }
    std::size_t rhs_col = 0;
    auto [l, r] = sides(ln, col, rest, "->", &rhs_col);
    try {
      rules.add_rule(l, r, RuleKind::kAction, label);
    } catch (const Error& e) {
      fail(e.code(), ln, rhs_col, strip(e));
    }
  }

  void parse_equiv(const Line& ln, RuleSet& rules) const {
    std::size_t lead = 0;
    std::string_view rest = trim(ln.text.substr(6), &lead);
    std::size_t col = 6 + lead;
    std::size_t rhs_col = 0;
    auto [l, r] = sides(ln, col, rest, "<->", &rhs_col);
    try {
      rules.add_equation(l, r, RuleKind::kRearrangement);
    } catch (const Error& e) {
      fail(e.code(), ln, rhs_col, strip(e));
    }
  }

  std::vector<Line> lines_;
  Signature signature_;
  Precedence precedence_;
};

}  // namespace

DomainFile parse_domain_file(std::string_view text) {
  return FileParser(text).run();
}

std::string emit_domain_file(const DomainFile& file) {
  const Encoding& enc = file.encoding;
  std::ostringstream out;
  if (file.spec) out << "domain: " << file.spec->to_string() << "\n";
  out << "signature: " << enc.signature.to_string() << "\n";
  out << "prec: " << enc.precedence.to_string() << "\n";
  if (file.has_theory()) {
    const GroundTheory& th = *enc.theory;
    out << "fluents:\n";
    std::size_t product = 1;
    for (const auto& f : th.fluents()) {
      out << "  " << f.name;
      for (const auto& v : f.values) out << " " << v;
      out << "\n";
      product *= f.values.size();
    }
    out << "chi: "
        << (product == th.states().size() ? std::string("all")
                                          : "builtin:" + file.spec->name)
        << "\n";
    out << "states: enumerate\n";
  }
  // Interleave by id so ids survive a round trip.
  const auto& rules = enc.rules.rules();
  const auto& eqs = enc.rules.equations();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < rules.size() || j < eqs.size()) {
    if (j == eqs.size() || (i < rules.size() && rules[i].id < eqs[j].id)) {
      const RewriteRule& r = rules[i++];
      out << "rule ";
      if (r.label) out << "action \"" << *r.label << "\" ";
      out << r.lhs.to_string() << " -> " << r.rhs.to_string() << "\n";
    } else {
      const RuleEquation& e = eqs[j++];
      out << "equiv " << e.left.to_string() << " <-> " << e.right.to_string()
          << "\n";
    }
  }
  if (file.start) out << "start: " << file.start->to_string() << "\n";
  if (file.goal) out << "goal: " << file.goal->to_string() << "\n";
  return out.str();
}

std::string emit_domain_file(const Domain& domain) {
  DomainFile f;
  f.spec = domain.spec;
  f.encoding = domain.encoding;
  f.start = domain.start;
  f.goal = domain.goal;
  return emit_domain_file(f);
}

}  // namespace sitrw
