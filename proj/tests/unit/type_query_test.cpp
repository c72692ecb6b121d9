#include <gtest/gtest.h>

#include <algorithm>

#include "docforge/error.hpp"
#include "docforge/relations.hpp"
#include "docforge/search.hpp"
#include "docforge/type_query.hpp"
#include "docforge/unify.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace docforge {
namespace {

TypeExpr V(const char* n) { return TypeExpr::var(n); }
TypeExpr N(const char* n, std::vector<TypeExpr> a = {}) { return TypeExpr::named(n, std::move(a)); }

const FunctionDef& fn(const ApiGraph& g, const std::string& name) {
  return *std::find_if(g.functions.begin(), g.functions.end(),
                       [&](const FunctionDef& f) { return f.name == name; });
}

FunctionShape target(const ApiGraph& g, const std::string& name) {
  return normalize(desugar_method(fn(g, name), g), g, Side::declaration);
}

FunctionShape shape_query(const std::string& text, const ApiGraph& g) {
  return std::get<FunctionShape>(normalize(parse_type_query(text, g.aliases), g));
}

TEST(ParseTypeQuery, ListSugar) {
  const auto q = std::get<FunctionShape>(parse_type_query("[a] -> int"));
  ASSERT_EQ(q.params.size(), 1u);
  EXPECT_EQ(q.params[0].type, N("List", {V("a")}));
  EXPECT_EQ(q.ret, N("int"));
}

TEST(ParseTypeQuery, BareVariable) {
  EXPECT_EQ(std::get<TypeExpr>(parse_type_query("a")), V("a"));
}

TEST(ParseTypeQuery, NestedWithSugaredReturn) {
  const auto q = std::get<FunctionShape>(parse_type_query("List<Set<b>> -> [b]"));
  ASSERT_EQ(q.params.size(), 1u);
  EXPECT_EQ(q.params[0].type, N("List", {N("Set", {V("b")})}));
  EXPECT_EQ(q.ret, N("List", {V("b")}));
}

TEST(ParseTypeQuery, OtherForms) {
  const auto a = std::get<FunctionShape>(parse_type_query("a, b -> c"));
  EXPECT_EQ(a.params.size(), 2u);
  const auto b = std::get<FunctionShape>(parse_type_query("(a) -> int"));
  EXPECT_EQ(b.params.size(), 1u);
  const auto c = std::get<FunctionShape>(parse_type_query("(x: Int, Bool) -> Unit"));
  EXPECT_EQ(c.params[0].type, N("Int"));
  EXPECT_EQ(c.params[1].type, N("Bool"));
  const auto d = std::get<FunctionShape>(parse_type_query("() -> Int"));
  EXPECT_TRUE(d.params.empty());
  EXPECT_THROW(parse_type_query("a ->"), ParseError);
}

TEST(ParseTypeQuery, Aliases) {
  const std::map<std::string, std::string> aliases = {{"[]", "Vec"}, {"Str", "String"}};
  const auto q = std::get<FunctionShape>(parse_type_query("[Str] -> Str", aliases));
  EXPECT_EQ(q.params[0].type, N("Vec", {N("String")}));
  EXPECT_EQ(q.ret, N("String"));
}

TEST(Normalize, CaseInsensitivePrimitive) {
  const auto g = testing::load_fixture();
  EXPECT_EQ(normalize(N("int"), g), N("Int"));
  EXPECT_EQ(normalize(N("list", {V("a")}), g), N("List", {V("a")}));
  EXPECT_EQ(normalize(N("Unknown"), g), N("Unknown"));
}

TEST(Normalize, DeclarationSideRenamesVariables) {
  const auto g = testing::load_fixture();
  EXPECT_EQ(normalize(N("List", {V("T")}), g, Side::declaration), N("List", {V("v0")}));
  EXPECT_EQ(normalize(N("P", {V("U"), V("T"), V("U")}), g, Side::declaration),
            N("P", {V("v0"), V("v1"), V("v0")}));
}

TEST(Normalize, AmbiguousName) {
  ApiGraph g;
  g.modules.push_back({{"m"}, std::nullopt});
  for (const char* name : {"Map", "MAP"}) {
    TypeDef t;
    t.name = name;
    t.module = {"m"};
    g.types.push_back(t);
  }
  try {
    normalize(N("map"), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ambiguous_name);
  }
  EXPECT_EQ(normalize(N("MAP"), g), N("MAP"));
}

TEST(SignatureMatch, ListLen) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  const auto m = signature_match(shape_query("[a] -> int", g), target(g, "len"), {}, rel);
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.penalty, 1);
  EXPECT_FALSE(m.permutation_used);
  EXPECT_EQ(m.subtype_hops, 0);
}

TEST(SignatureMatch, ArityMismatch) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  EXPECT_FALSE(signature_match(shape_query("[a] -> int", g), target(g, "indexOf"), {}, rel).matched);
}

TEST(SignatureMatch, OneHopToInterface) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  const FunctionShape t{{{"self", N("Iterable", {V("v0")})}}, N("Int")};
  const auto m = signature_match(shape_query("List<a> -> b", g), t, {}, rel);
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.penalty, 5);
  EXPECT_EQ(m.subtype_hops, 1);
  MatchOptions no_hops;
  no_hops.max_subtype_hops = 0;
  EXPECT_FALSE(signature_match(shape_query("List<a> -> b", g), t, no_hops, rel).matched);
}

TEST(SignatureMatch, PermutationCostsTwo) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  const FunctionShape t{{{"x", N("Int")}, {"y", N("Bool")}}, N("Unit")};
  const auto m = signature_match(shape_query("Bool, Int -> Unit", g), t, {}, rel);
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.penalty, 2);
  EXPECT_TRUE(m.permutation_used);
  EXPECT_EQ(m.permutation, (std::vector<std::size_t>{1, 0}));
  MatchOptions fixed;
  fixed.allow_permutation = false;
  EXPECT_FALSE(signature_match(shape_query("Bool, Int -> Unit", g), t, fixed, rel).matched);
}

TEST(SignatureMatch, ReturnSpecializes) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  // SortedSet<v0> returned where Set<a> is asked for: one hop.
  const FunctionShape t{{}, N("SortedSet", {V("v0")})};
  const auto m = signature_match(shape_query("() -> Set<a>", g), t, {}, rel);
  EXPECT_TRUE(m.matched);
  EXPECT_EQ(m.penalty, 4);
}

TEST(SupertypeClosure, ListReachesIterable) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  const auto c = supertype_closure(N("List", {V("a")}), 1, rel);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], std::make_pair(N("List", {V("a")}), 0));
  EXPECT_EQ(c[1], std::make_pair(N("Iterable", {V("a")}), 1));
  EXPECT_EQ(supertype_closure(V("a"), 3, rel).size(), 1u);
}

MatchOptions options(bool permute, int hops) {
  MatchOptions o;
  o.allow_permutation = permute;
  o.max_subtype_hops = hops;
  return o;
}

// Property: with permutation and hops disabled the match is plain
// component-wise unification and the penalty is its binding count.
TEST(SignatureMatchProperty, ReducesToComponentwiseUnify) {
  testing::Rng rng(51);
  const auto corpus = testing::signature_corpus(rng, 120);
  const auto rel = build_relation_index(corpus);
  const auto queries = testing::random_queries(rng, corpus, 60);
  int matched = 0;
  for (const auto& q : queries) {
    for (const auto& f : corpus.functions) {
      const auto t = normalize(desugar_method(f, corpus), corpus, Side::declaration);
      const auto m = signature_match(q, t, options(false, 0), rel);
      bool ok = q.params.size() == t.params.size();
      oracle::Subst s;
      for (std::size_t i = 0; ok && i < q.params.size(); ++i) ok = oracle::unify(q.params[i].type, t.params[i].type, s);
      ok = ok && oracle::unify(q.ret, t.ret, s);
      ASSERT_EQ(m.matched, ok) << render(q) << " vs " << render(t);
      if (ok) {
        ++matched;
        EXPECT_EQ(m.penalty, static_cast<int>(s.size()));
      }
    }
  }
  EXPECT_GT(matched, 20);
}

TEST(SignatureMatchProperty, RenamingQueryVariablesIsInvisible) {
  testing::Rng rng(52);
  const auto corpus = testing::signature_corpus(rng, 100);
  const auto rel = build_relation_index(corpus);
  const auto queries = testing::random_queries(rng, corpus, 40);
  const std::map<std::string, std::string> renaming = {
      {"a", "q"}, {"b", "a"}, {"c", "z"}, {"d", "b"}, {"e", "x"}};
  int cases = 0;
  for (const auto& q : queries) {
    const auto r = testing::rename_vars(q, renaming);
    for (const auto& f : corpus.functions) {
      const auto t = normalize(desugar_method(f, corpus), corpus, Side::declaration);
      const auto m1 = signature_match(q, t, {}, rel);
      const auto m2 = signature_match(r, t, {}, rel);
      ASSERT_EQ(m1.matched, m2.matched);
      EXPECT_EQ(m1.penalty, m2.penalty);
      ++cases;
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(SignatureMatchProperty, AgreesWithBruteForceOnFixture) {
  const auto g = testing::load_fixture();
  const auto rel = build_relation_index(g);
  testing::Rng rng(53);
  auto queries = testing::random_queries(rng, g, 200);
  for (const char* text : {"[a] -> int", "(a) -> int", "Set<a> -> List<a>", "List<a> -> b",
                           "(a) -> b", "a, b -> c", "Fn1<a, Bool> -> Int"}) {
    queries.push_back(shape_query(text, g));
  }
  for (const auto& q : queries) {
    for (const auto* f : all_functions(g)) {
      for (int hops : {0, 1, 2}) {
        for (bool permute : {false, true}) {
          const auto t = normalize(desugar_method(*f, g), g, Side::declaration);
          const auto mine = signature_match(q, t, options(permute, hops), rel);
          const auto ref = oracle::brute_force_match(q, oracle::desugar(*f, g), g, permute, hops);
          ASSERT_EQ(mine.matched, ref.matched) << render(q) << " vs " << qualified_name(*f);
          if (ref.matched) EXPECT_EQ(mine.penalty, ref.penalty) << render(q) << " vs " << qualified_name(*f);
        }
      }
    }
  }
}

TEST(SignatureMatchProperty, TypeSearchAgreesWithBruteForceOnCorpus) {
  testing::Rng rng(54);
  const auto corpus = testing::signature_corpus(rng, 200);
  const auto rel = build_relation_index(corpus);
  const auto queries = testing::random_queries(rng, corpus, 50);
  std::size_t nonempty = 0;
  for (const auto& q : queries) {
    for (int hops : {0, 1, 2}) {
      const auto results = type_search(corpus, rel, TypeQuery{q}, options(true, hops), {}, 0);
      std::vector<std::pair<int, std::string>> got;
      for (const auto& r : results) got.emplace_back(r.penalty, r.id);
      EXPECT_EQ(got, oracle::brute_force_type_search(q, corpus, true, hops)) << render(q);
      nonempty += got.empty() ? 0 : 1;
    }
  }
  EXPECT_GT(nonempty, 30u);
}

}  // namespace
}  // namespace docforge
