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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "sitrw/error.hpp"
#include "sitrw/term.hpp"

namespace sitrw {
namespace {

class TermTest : public ::testing::Test {
 protected:
  Signature sig{{"f", 2}, {"g", 1}, {"h", 1}, {"a", 0}, {"b", 0},
                {"on", 0}, {"off", 0}};
  Term t(std::string_view s) const { return sig.parse(s); }
};

TEST_F(TermTest, SizeFollowsRecurrence) {
  EXPECT_EQ(size(t("on")), 1u);
  EXPECT_EQ(size(t("f(on,off)")), 3u);
  EXPECT_EQ(size(t("f(g(a),?x)")), 4u);
  EXPECT_EQ(size(t("?x")), 1u);
}

TEST_F(TermTest, ParseAndPrintRoundTrip) {
  for (const char* s : {"f(g(a),?x)", "on", "?y", "f(f(a,b),h(?z))"}) {
    EXPECT_EQ(t(s).to_string(), s);
  }
  EXPECT_EQ(t("  f ( a , b ) ").to_string(), "f(a,b)");
}

TEST_F(TermTest, ParseErrorsCarryColumn) {
  try {
    t("f(a,zz)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSymbol);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 5);
  }
  try {
    t("f(a)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArityMismatch);
  }
  EXPECT_THROW(t("f(a,b"), ParseError);
  EXPECT_THROW(t("f(a,b))"), ParseError);
  EXPECT_THROW(t(""), ParseError);
}

TEST_F(TermTest, ApplyChecksArity) {
  try {
    Term::apply(sig.at("f"), {t("a")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArityMismatch);
  }
}

TEST_F(TermTest, SubtermAndReplace) {
  EXPECT_EQ(subterm_at(t("f(off,on)"), Position{{1}}), t("off"));
  EXPECT_EQ(replace_at(t("f(off,on)"), Position{{1}}, t("on")), t("f(on,on)"));
  EXPECT_EQ(replace_at(t("f(a,b)"), Position{}, t("g(a)")), t("g(a)"));
  try {
    subterm_at(t("f(a,b)"), Position{{3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPosition);
  }
  EXPECT_THROW(replace_at(t("a"), Position{{1}}, t("b")), Error);
}

TEST_F(TermTest, PositionLawsOnAllPositions) {
  const Term u = t("h(?w)");
  for (const char* s : {"f(g(a),f(?x,b))", "f(f(a,a),f(b,g(g(on))))", "a"}) {
    Term x = t(s);
    for (const Position& p : positions(x)) {
      EXPECT_EQ(replace_at(x, p, subterm_at(x, p)), x);
      EXPECT_EQ(subterm_at(replace_at(x, p, u), p), u);
      EXPECT_EQ(size(replace_at(x, p, u)),
                size(x) - size(subterm_at(x, p)) + size(u));
    }
  }
}

TEST_F(TermTest, PositionOrders) {
  Term x = t("f(g(a),b)");
  std::vector<std::string> pre, post;
  for (auto& p : positions(x)) pre.push_back(p.dotted());
  for (auto& p : positions_innermost(x)) post.push_back(p.dotted());
  EXPECT_EQ(pre, (std::vector<std::string>{"root", "1", "1.1", "2"}));
  EXPECT_EQ(post, (std::vector<std::string>{"1.1", "1", "2", "root"}));
  EXPECT_EQ(Position({{1, 2}}).to_string(), "[1,2]");
  EXPECT_TRUE(Position({{1}}).is_prefix_of(Position({{1, 2}})));
  EXPECT_FALSE(Position({{2}}).is_prefix_of(Position({{1, 2}})));
}

TEST_F(TermTest, ApplySubstitution) {
  Substitution th;
  th.bind(intern_variable("x"), t("off"));
  EXPECT_EQ(apply_subst(t("f(?x,on)"), th), t("f(off,on)"));
  EXPECT_EQ(apply_subst(t("?x"), Substitution{}), t("?x"));
  Substitution th2;
  th2.bind(intern_variable("x"), t("h(a)"));
  EXPECT_EQ(apply_subst(t("f(?x,?x)"), th2), t("f(h(a),h(a))"));
  EXPECT_EQ(th.to_string(), "{?x -> off}");
}

TEST_F(TermTest, Matching) {
  auto m = match_lhs(t("f(?x,on)"), t("f(off,on)"));
  ASSERT_TRUE(m);
  EXPECT_EQ(*m->lookup(intern_variable("x")), t("off"));
  EXPECT_FALSE(match_lhs(t("f(?x,?x)"), t("f(a,b)")));
  auto e = match_lhs(t("off"), t("off"));
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->empty());
  // Subject variables behave as constants.
  EXPECT_FALSE(match(t("f(a,?x)"), t("f(?x,?x)")));
  EXPECT_TRUE(match(t("f(?y,?y)"), t("f(?x,?x)")));
}

TEST_F(TermTest, UnifyExamples) {
  auto u = unify(t("f(?x,on)"), t("f(off,?y)"));
  ASSERT_TRUE(u);
  EXPECT_EQ(*u->lookup(intern_variable("x")), t("off"));
  EXPECT_EQ(*u->lookup(intern_variable("y")), t("on"));
  EXPECT_FALSE(unify(t("?x"), t("g(?x)")));
  EXPECT_FALSE(unify(t("g(?x)"), t("h(?y)")));
  EXPECT_FALSE(unify(t("f(?x,?y)"), t("f(g(?y),g(?x))")));
}

TEST_F(TermTest, RenameApart) {
  std::set<VarId> taken{intern_variable("x")};
  EXPECT_EQ(rename_apart(t("g(?x)"), taken), t("g(?x0)"));
  EXPECT_EQ(rename_apart(t("f(a,b)"), taken), t("f(a,b)"));
  EXPECT_EQ(rename_apart(t("f(?x,?x)"), taken), t("f(?x0,?x0)"));
  Term r = rename_apart(t("f(?x,?y)"), taken);
  EXPECT_TRUE(is_variant(r, t("f(?x,?y)")));
  for (VarId v : variables(r)) EXPECT_FALSE(taken.contains(v));
}

TEST_F(TermTest, Variants) {
  EXPECT_TRUE(is_variant(t("f(?x,?y)"), t("f(?y,?x)")));
  EXPECT_FALSE(is_variant(t("f(?x,?x)"), t("f(?x,?y)")));
  EXPECT_FALSE(is_variant(t("f(?x,?y)"), t("f(?x,?x)")));
}

TEST_F(TermTest, Contexts) {
  Term x = t("f(g(a),b)");
  Term c = make_context(x, Position{{1, 1}});
  EXPECT_EQ(c.to_string(), "f(g([]),b)");
  EXPECT_EQ(*hole_position(c), Position({{1, 1}}));
  EXPECT_EQ(plug(c, t("b")), t("f(g(b),b)"));
  EXPECT_THROW(plug(x, t("a")), Error);
}

TEST_F(TermTest, StableTotalTermOrder) {
  EXPECT_EQ(compare_terms(t("f(a,b)"), t("f(a,b)")), 0);
  EXPECT_NE(compare_terms(t("f(a,b)"), t("f(b,a)")), 0);
  EXPECT_EQ(compare_terms(t("a"), t("b")), -compare_terms(t("b"), t("a")));
}

// Brute-force oracle: every ground unifier drawn from a bounded term space
// must factor through the computed unifier, and a failed unification must
// have no ground unifier at all.
class UnifyOracle : public TermTest {
 protected:
  std::vector<Term> ground_terms(int depth) const {
    std::vector<Term> out{t("a"), t("b")};
    for (int d = 0; d < depth; ++d) {
      std::vector<Term> next = out;
      for (const Term& x : out) next.push_back(Term::apply(sig.at("g"), {x}));
      for (const Term& x : out) {
        for (const Term& y : out) {
          next.push_back(Term::apply(sig.at("f"), {x, y}));
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      out = std::move(next);
    }
    return out;
  }

  std::vector<Term> shapes() const {
    std::vector<Term> out;
    std::vector<Term> leaves{t("a"), t("?x"), t("?y")};
    for (const Term& l : leaves) out.push_back(l);
    for (const Term& l : leaves) out.push_back(Term::apply(sig.at("g"), {l}));
    for (const Term& l : leaves) {
      for (const Term& r : leaves) {
        out.push_back(Term::apply(sig.at("f"), {l, r}));
        out.push_back(Term::apply(
            sig.at("f"), {Term::apply(sig.at("g"), {l}), r}));
      }
    }
    return out;
  }
};

TEST_F(UnifyOracle, MostGeneralAgainstEnumeration) {
  const VarId x = intern_variable("x");
  const VarId y = intern_variable("y");
  const auto grounds = ground_terms(2);
  const SymbolId pair = intern_symbol("pair", 2);
  std::size_t unifiable = 0;
  for (const Term& s : shapes()) {
    for (const Term& u : shapes()) {
      auto mgu = unify(s, u);
      if (mgu) {
        ++unifiable;
        EXPECT_EQ(apply_subst(s, *mgu), apply_subst(u, *mgu));
        for (const auto& [v, r] : mgu->bindings()) {
          EXPECT_FALSE(occurs(v, r)) << s.to_string() << " " << u.to_string();
        }
        EXPECT_EQ(apply_subst(apply_subst(s, *mgu), *mgu),
                  apply_subst(s, *mgu));
      }
      Term gen = Term::apply(pair, {apply_subst(t("?x"), mgu.value_or(Substitution{})),
                                    apply_subst(t("?y"), mgu.value_or(Substitution{}))});
      for (const Term& gx : grounds) {
        for (const Term& gy : grounds) {
          Substitution g;
          g.bind(x, gx);
          g.bind(y, gy);
          if (!(apply_subst(s, g) == apply_subst(u, g))) continue;
          ASSERT_TRUE(mgu) << "missed unifier for " << s.to_string() << " = "
                           << u.to_string();
          EXPECT_TRUE(match(gen, Term::apply(pair, {gx, gy})))
              << "unifier not most general for " << s.to_string() << " = "
              << u.to_string();
        }
      }
    }
  }
  EXPECT_GT(unifiable, 50u);
}

TEST_F(TermTest, RandomMatchProducesInstance) {
  std::mt19937 rng(7);
  const std::vector<std::string> leaves{"a", "b", "?x", "?y", "?z"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    int k = depth == 0 ? 0 : static_cast<int>(rng() % 3);
    if (k == 0) return leaves[rng() % leaves.size()];
    if (k == 1) return "g(" + gen(depth - 1) + ")";
    return "f(" + gen(depth - 1) + "," + gen(depth - 1) + ")";
  };
  for (int i = 0; i < 2000; ++i) {
    Term p = t(gen(3));
    Substitution g;
    for (const char* v : {"x", "y", "z"}) {
      std::string s = gen(2);
      std::erase(s, '?');
      for (auto& c : s) {
        if (c == 'x' || c == 'y' || c == 'z') c = 'a';
      }
      g.bind(intern_variable(v), t(s));
    }
    Term subject = apply_subst(p, g);
    auto m = match(p, subject);
    ASSERT_TRUE(m);
    EXPECT_EQ(apply_subst(p, *m), subject);
  }
}

}  // namespace
}  // namespace sitrw
