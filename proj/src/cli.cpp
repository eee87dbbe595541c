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

#include "sitrw/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sitrw/domain_file.hpp"
#include "sitrw/error.hpp"
#include "sitrw/oracle.hpp"
#include "sitrw/planner.hpp"
#include "sitrw/synthesis.hpp"

namespace sitrw::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DomainFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_domain_file(text.str());
  } catch (const ParseError& e) {
    throw ParseError(e.code(), e.line(), e.column(), path + ": " + e.detail());
  }
}

void need_theory(const DomainFile& f, const std::string& command) {
  if (!f.has_theory()) {
    throw Error(ErrorCode::kParseError,
                command + " needs a domain: line in the file");
  }
}

void need_endpoints(const DomainFile& f, const std::string& command) {
  need_theory(f, command);
  if (!f.start || !f.goal) {
    throw Error(ErrorCode::kParseError,
                command + " needs start: and goal: lines");
  }
}

void print_actions(std::ostream& out, const std::vector<ActionId>& actions) {
  for (const auto& a : actions) out << "action " << a.to_string() << "\n";
  out << "plan_length " << actions.size() << "\n";
}

void print_rules(std::ostream& out, const RuleSet& rules) {
  DomainFile only;
  only.encoding.rules = rules;
  // Reuse the file emitter for the rule lines alone.
  std::istringstream text(emit_domain_file(only));
  std::string line;
  while (std::getline(text, line)) {
    if (line.starts_with("rule ") || line.starts_with("equiv ")) {
      out << line << "\n";
    }
  }
}

struct PlanArgs {
  std::string file;
  bool trace = false;
  bool no_optimize = false;
  std::size_t max_cps = CompletionConfig{}.max_cps;
  std::size_t max_term_size = CompletionConfig{}.max_term_size;
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  DomainFile f = load(a.file);
  need_endpoints(f, "plan");
  CompletionConfig cfg;
  cfg.max_cps = a.max_cps;
  cfg.max_term_size = a.max_term_size;
  Planner planner(f.encoding, cfg);
  PlanResult r = planner.plan_terms(*f.start, *f.goal, {!a.no_optimize});
  if (r.status == PlanStatus::kNoPlan) {
    out << "no_plan\n";
    return kExitNegative;
  }
  print_actions(out, r.plan->actions);
  if (a.trace) {
    out << "witness_length " << r.plan->witness.size() << "\n";
    for (const auto& st : r.plan->witness) {
      out << "step " << st.before.to_string() << " => "
          << st.after.to_string();
      if (st.kind == RuleKind::kAction) {
        out << " action " << label_action(f.encoding, st).to_string();
      } else {
        out << " rearrange";
      }
      out << "\n";
    }
  }
  return kExitOk;
}

struct CompleteArgs {
  std::string file;
  std::size_t max_cps = CompletionConfig{}.max_cps;
  std::size_t max_term_size = CompletionConfig{}.max_term_size;
};

int cmd_complete(const CompleteArgs& a, std::ostream& out) {
  DomainFile f = load(a.file);
  std::vector<EquationInput> inputs;
  if (auto lifted = lifted_equations(f.encoding.rules)) {
    inputs = std::move(*lifted);
  } else if (f.has_theory()) {
    inputs = ground_equations(f.encoding);
  } else {
    throw Error(ErrorCode::kParseError,
                "rules with differing variables need a domain: line");
  }
  CompletionConfig cfg;
  cfg.max_cps = a.max_cps;
  cfg.max_term_size = a.max_term_size;
  CompletionResult r = complete(inputs, f.encoding.precedence, cfg);
  for (const Equation* e : r.rules()) {
    out << "rule " << e->left.to_string() << " -> " << e->right.to_string()
        << "\n";
  }
  for (const Equation* e : r.equations()) {
    out << "equiv " << e->left.to_string() << " <-> " << e->right.to_string()
        << "\n";
  }
  out << "status " << (r.saturated() ? "saturated" : "budget-exhausted")
      << "\n";
  out << "cps_generated " << r.stats.cps_generated << "\n";
  out << "cps_kept " << r.stats.cps_kept << "\n";
  out << "rewrite_ops " << r.stats.rewrite_ops << "\n";
  return r.saturated() ? kExitOk : kExitInconclusive;
}

int cmd_synth(const std::string& file, int level, std::ostream& out) {
  DomainFile f = load(file);
  need_theory(f, "synth");
  SynthesizedRules r = level == 0   ? build_r0(f.encoding)
                       : level == 1 ? build_r1(f.encoding)
                                    : build_r2(f.encoding, build_r0(f.encoding));
  print_rules(out, r.rules);
  out << "rule_count " << r.rules.rules().size() << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& file, std::ostream& out) {
  DomainFile f = load(file);
  need_endpoints(f, "oracle");
  const Encoding& enc = f.encoding;
  auto actions =
      bfs_plan(*enc.theory, enc.sigma(*f.start), enc.sigma(*f.goal));
  if (!actions) {
    out << "no_plan\n";
    return kExitNegative;
  }
  print_actions(out, *actions);
  return kExitOk;
}

int cmd_check(const std::string& file, std::ostream& out) {
  DomainFile f = load(file);
  need_theory(f, "check");
  RepresentationReport rep = check_representation(f.encoding);
  for (const auto& ax : rep.axioms) {
    out << (ax.passed ? "PASS " : "FAIL ") << ax.name;
    if (!ax.passed) out << ": " << ax.witness;
    out << "\n";
  }
  return rep.all_passed() ? kExitOk : kExitNegative;
}

int cmd_domain(const DomainSpec& spec, const std::string& emit,
               std::ostream& out) {
  Domain d = make_domain(spec);
  std::string text = emit_domain_file(d);
  if (emit.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(emit, std::ios::binary);
  if (!file) throw Usage("cannot write " + emit);
  file << text;
  return file ? kExitOk : kExitUsage;
}

int cmd_check_support(const std::string& file, const std::string& term,
                      std::ostream& out) {
  DomainFile f = load(file);
  need_theory(f, "check-support");
  Term t = f.encoding.signature.parse(term);
  SampleIndex index(f.encoding);
  SupportResult r = is_action_support(index, t);
  out << (r.holds ? "true" : "false") << "\n";
  for (const auto& c : r.certificates) {
    out << "certificate " << c.context.to_string() << " " << c.support.to_string()
        << " -> " << c.target.to_string() << " action " << c.action.to_string()
        << "\n";
  }
  if (!r.holds) out << "witness " << r.witness << "\n";
  return r.holds ? kExitOk : kExitNegative;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExhausted:
      return kExitInconclusive;
    case ErrorCode::kUsage:
      return kExitUsage;
    default:
      return kExitParse;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Planning by rewriting over situation-calculus encodings",
               "sitrw"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan from start: to goal:");
  plan->add_option("file", plan_args.file)->required();
  plan->add_flag("--trace", plan_args.trace, "Print the witness steps");
  plan->add_flag("--no-optimize", plan_args.no_optimize,
                 "Keep the plan read from the proof");
  plan->add_option("--max-cps", plan_args.max_cps);
  plan->add_option("--max-term-size", plan_args.max_term_size);

  CompleteArgs complete_args;
  auto* comp = app.add_subcommand("complete", "Run unfailing completion");
  comp->add_option("file", complete_args.file)->required();
  comp->add_option("--max-cps", complete_args.max_cps);
  comp->add_option("--max-term-size", complete_args.max_term_size);

  std::string synth_file;
  int level = 2;
  auto* synth = app.add_subcommand("synth", "Synthesize rewrite rules");
  synth->add_option("file", synth_file)->required();
  synth->add_option("--level", level)->check(CLI::Range(0, 2));

  std::string oracle_file;
  auto* oracle = app.add_subcommand("oracle", "Shortest plan by search");
  oracle->add_option("file", oracle_file)->required();

  std::string check_file;
  auto* check = app.add_subcommand("check", "Check the representation axioms");
  check->add_option("file", check_file)->required();

  DomainSpec spec;
  std::string emit;
  auto* dom = app.add_subcommand("domain", "Write a built-in domain file");
  dom->add_option("name", spec.name)->required();
  dom->add_option("--n", spec.n);
  dom->add_option("--variant", spec.variant);
  dom->add_option("--positions", spec.positions);
  dom->add_option("--towers", spec.towers);
  dom->add_option("--emit", emit, "Output path; stdout when omitted");

  std::string support_file;
  std::string support_term;
  auto* support =
      app.add_subcommand("check-support", "Test a term for action support");
  support->add_option("file", support_file)->required();
  support->add_option("term", support_term)->required();

  std::vector<const char*> argv{"sitrw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(plan_args, out);
    if (*comp) return cmd_complete(complete_args, out);
    if (*synth) return cmd_synth(synth_file, level, out);
    if (*oracle) return cmd_oracle(oracle_file, out);
    if (*check) return cmd_check(check_file, out);
    if (*dom) return cmd_domain(spec, emit, out);
    return cmd_check_support(support_file, support_term, out);
  } catch (const Usage& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  }
}

}  // namespace sitrw::cli
