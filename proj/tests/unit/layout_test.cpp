#include <gtest/gtest.h>

#include <algorithm>

#include "docforge/error.hpp"
#include "docforge/layout.hpp"
#include "docforge/signature.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace docforge {
namespace {

using Names = std::vector<std::string>;

Names cell_names(const MatrixRow& row) {
  Names out;
  for (const auto& c : row.cells) out.push_back(c.name);
  return out;
}

std::vector<std::pair<std::string, Names>> partition(const MethodMatrix& m) {
  std::vector<std::pair<std::string, Names>> out;
  for (const auto& row : m.rows) out.emplace_back(row.label, cell_names(row));
  return out;
}

using Partition = std::vector<std::pair<std::string, Names>>;

TEST(Matrix, ListByFirstArgument) {
  const auto m = build_method_matrix(testing::load_fixture(), "List", Grouping::first_arg);
  EXPECT_EQ(partition(m), (Partition{{"(none)", {"len", "toSet"}},
                                     {"Fn1<T, Bool>", {"indexOf"}},
                                     {"Set<T>", {"fromSet"}},
                                     {"T", {"push"}}}));
  EXPECT_EQ(m.rows[0].cells[0].target, "collections::List::len");
  EXPECT_EQ(m.rows[0].cells[0].signature, "(ro) () -> Int");
}

TEST(Matrix, ListByReceiver) {
  const auto m = build_method_matrix(testing::load_fixture(), "List", Grouping::receiver);
  EXPECT_EQ(partition(m), (Partition{{"mutating", {"push"}},
                                     {"readonly", {"indexOf", "len", "toSet"}},
                                     {"static", {"fromSet"}}}));
}

TEST(Matrix, ListByReturn) {
  const auto m = build_method_matrix(testing::load_fixture(), "List", Grouping::return_type);
  EXPECT_EQ(partition(m), (Partition{{"Int", {"indexOf", "len"}},
                                     {"List<T>", {"fromSet"}},
                                     {"Set<T>", {"toSet"}},
                                     {"Unit", {"push"}}}));
}

TEST(Matrix, AnnotationGroupsWithUngroupedLast) {
  const auto g = testing::load_fixture("diamond.json");
  EXPECT_EQ(partition(build_method_matrix(g, "Shape", Grouping::annotation)),
            (Partition{{"metrics", {"area", "perimeter"}}, {"render", {"fill"}}}));
  EXPECT_EQ(partition(build_method_matrix(g, "Polygon", Grouping::annotation)),
            (Partition{{"ungrouped", {"vertices"}}}));
}

TEST(Matrix, NoMethods) {
  const auto m = build_method_matrix(testing::load_fixture(), "SortedSet", Grouping::first_arg);
  EXPECT_TRUE(m.rows.empty());
  EXPECT_EQ(render_matrix_text(m), "");
}

TEST(Matrix, UnknownSubject) {
  const auto g = testing::load_fixture();
  for (const char* subject : {"Nope", "Iterable", "Int"}) {
    try {
      build_method_matrix(g, subject, Grouping::first_arg);
      ADD_FAILURE() << subject;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::unknown_subject);
    }
  }
}

TEST(Matrix, PrivateMethodsHiddenByDefault) {
  auto g = testing::load_fixture();
  for (auto& f : g.functions) {
    if (f.name == "push") f.visibility = Visibility::private_;
  }
  const auto m = build_method_matrix(g, "List", Grouping::receiver);
  EXPECT_EQ(m.rows.front().label, "readonly");
  const auto all = build_method_matrix(g, "List", Grouping::receiver, true);
  EXPECT_EQ(all.rows.front().label, "mutating");
}

TEST(RenderMatrix, ListAtDefaultWidth) {
  const auto m = build_method_matrix(testing::load_fixture(), "List", Grouping::first_arg);
  const std::string expected =
      "(none)\n"
      "  len  (ro) () -> Int                         toSet  (ro) () -> Set<T>\n"
      "Fn1<T, Bool>\n"
      "  indexOf  (ro) (pred: Fn1<T, Bool>) -> Int\n"
      "Set<T>\n"
      "  fromSet  (static) (s: Set<T>) -> List<T>\n"
      "T\n"
      "  push  (mut) (item: T) -> Unit\n";
  EXPECT_EQ(render_matrix_text(m), expected);
}

TEST(RenderMatrix, NarrowWidthNeverTruncates) {
  const auto m = build_method_matrix(testing::load_fixture(), "List", Grouping::first_arg);
  const auto text = render_matrix_text(m, 10);
  EXPECT_NE(text.find("  len  (ro) () -> Int\n  toSet  (ro) () -> Set<T>\n"), std::string::npos);
  EXPECT_NE(text.find("  indexOf  (ro) (pred: Fn1<T, Bool>) -> Int\n"), std::string::npos);
}

TEST(CompactSignature, Markers) {
  const auto g = testing::load_fixture("diamond.json");
  for (const auto& f : g.functions) {
    const auto sig = compact_signature(f);
    if (f.name == "parse") EXPECT_EQ(sig, "(text: String) -> Shape");
    if (f.name == "fill") EXPECT_EQ(sig, "(mut) (color: Color) -> Unit");
  }
  EXPECT_EQ(strip_receiver_marker("(own) () -> Int"), "() -> Int");
  EXPECT_EQ(strip_receiver_marker("() -> Int"), "() -> Int");
}

std::multiset<std::string> public_methods(const ApiGraph& g, const std::string& subject) {
  std::multiset<std::string> out;
  for (const auto& f : g.functions) {
    if (f.owner == subject && f.is_public()) out.insert(qualified_name(f));
  }
  return out;
}

// Property over random graphs: every grouping partitions the public method
// set (annotation may repeat multi-tag methods) and every cell signature
// re-parses.
TEST(MatrixProperty, GroupingsPartitionTheMethodSet) {
  testing::Rng rng(81);
  int subjects = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_graph(rng);
    for (const auto& t : g.types) {
      const auto expected = public_methods(g, t.name);
      for (auto grouping : {Grouping::first_arg, Grouping::receiver, Grouping::return_type}) {
        std::multiset<std::string> seen;
        for (const auto& row : build_method_matrix(g, t.name, grouping).rows) {
          EXPECT_FALSE(row.cells.empty());
          for (const auto& c : row.cells) seen.insert(c.target);
        }
        EXPECT_EQ(seen, expected);
      }
      std::multiset<std::string> annotated;
      std::multiset<std::string> with_tags;
      for (const auto& f : g.functions) {
        if (f.owner != t.name || !f.is_public()) continue;
        const std::set<std::string> tags(f.groups.begin(), f.groups.end());
        for (std::size_t k = 0; k < std::max<std::size_t>(1, tags.size()); ++k) with_tags.insert(qualified_name(f));
      }
      for (const auto& row : build_method_matrix(g, t.name, Grouping::annotation).rows) {
        for (const auto& c : row.cells) annotated.insert(c.target);
      }
      EXPECT_EQ(annotated, with_tags);
      ++subjects;
    }
  }
  EXPECT_GT(subjects, 200);
}

TEST(MatrixProperty, CellSignaturesReparse) {
  testing::Rng rng(82);
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_graph(rng);
    for (const auto& t : g.types) {
      for (const auto& row : build_method_matrix(g, t.name, Grouping::receiver, true).rows) {
        for (const auto& c : row.cells) {
          const auto& f = *std::find_if(g.functions.begin(), g.functions.end(),
                                        [&](const FunctionDef& x) { return qualified_name(x) == c.target; });
          FunctionShape parsed;
          ASSERT_NO_THROW(parsed = parse_signature(strip_receiver_marker(c.signature))) << c.signature;
          // Type parameters come back as bare names; compare rendered text.
          EXPECT_EQ(render(parsed), render(FunctionShape{f.params, f.ret}));
        }
      }
    }
  }
}

}  // namespace
}  // namespace docforge
