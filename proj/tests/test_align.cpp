#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "dbeval/align.hpp"
#include "support/lcs_oracle.hpp"

using namespace dbeval;

namespace {

SourceDocument doc_from(const std::vector<std::string>& lines) {
  return document_from_lines(lines);
}

// Runs the production alignment and the reference solver on plain line lists
// and compares the full match sets.
void check_against_oracle(const std::vector<std::string>& orig_lines,
                          const std::vector<std::string>& var_lines) {
  SourceDocument o = doc_from(orig_lines);
  SourceDocument v = doc_from(var_lines);
  Alignment al = align_to_original(o, v);

  // The documents here contain only unit lines, so positions map 1:1.
  auto expected = lcs_oracle::best_common_subsequence(orig_lines, var_lines);
  std::vector<std::pair<int, int>> got;
  for (int pos = 1; pos <= v.line_count(); ++pos) {
    if (al.kind(pos) == Alignment::Kind::Matched) {
      got.emplace_back(al.original_of(pos) - 1, pos - 1);
    }
  }
  std::vector<std::pair<int, int>> want;
  for (std::size_t k = 0; k < expected.orig.size(); ++k) {
    want.emplace_back(expected.orig[k], expected.var[k]);
  }
  CHECK(got == want);
}

}  // namespace

TEST_CASE("self-alignment is the identity with zero foreign lines") {
  SourceDocument d = doc_from({"int a;", "int b;", "a = b;", "return a;"});
  Alignment al = align_to_original(d, d);
  CHECK(al.foreign_count == 0);
  for (int pos = 1; pos <= d.line_count(); ++pos) {
    CHECK(al.original_of(pos) == pos);
  }
}

TEST_CASE("pure deletion maps remaining lines to their own indices") {
  std::vector<std::string> orig = {"l1;", "l2;", "l3;", "l4;", "l5;", "l6;", "l7;", "l8;"};
  std::vector<std::string> var = {"l1;", "l2;", "l4;", "l5;", "l6;", "l8;"};  // dropped 3 and 7
  SourceDocument o = doc_from(orig), v = doc_from(var);
  Alignment al = align_to_original(o, v);
  CHECK(al.foreign_count == 0);
  CHECK(al.original_of(1) == 1);
  CHECK(al.original_of(2) == 2);
  CHECK(al.original_of(3) == 4);
  CHECK(al.original_of(6) == 8);
  CHECK_FALSE(al.retained(3));
  CHECK_FALSE(al.retained(7));
}

TEST_CASE("duplicate lines resolve to the earliest original occurrence") {
  std::vector<std::string> orig = {"a;", "i++;", "b;", "i++;", "c;"};
  std::vector<std::string> var = {"i++;"};
  SourceDocument o = doc_from(orig), v = doc_from(var);
  Alignment al = align_to_original(o, v);
  CHECK(al.original_of(1) == 2);
  check_against_oracle(orig, var);
}

TEST_CASE("crossing content prefers earliest original indices") {
  check_against_oracle({"a;", "b;"}, {"b;", "a;"});
  check_against_oracle({"x;", "a;", "b;", "a;"}, {"a;", "x;", "a;"});
}

TEST_CASE("foreign insertions are flagged and excluded") {
  std::vector<std::string> orig = {"a;", "b;", "c;"};
  std::vector<std::string> var = {"a;", "new1;", "b;", "new2;", "c;"};
  SourceDocument o = doc_from(orig), v = doc_from(var);
  Alignment al = align_to_original(o, v);
  CHECK(al.foreign_count == 2);
  CHECK(al.kind(2) == Alignment::Kind::Foreign);
  CHECK(al.kind(4) == Alignment::Kind::Foreign);
}

TEST_CASE("comments and blanks are not alignment units") {
  SourceDocument o = doc_from({"a;", "/* note */", "b;"});
  SourceDocument v = doc_from({"a;", "", "b;"});
  Alignment al = align_to_original(o, v);
  CHECK(al.kind(2) == Alignment::Kind::NotUnit);
  CHECK(al.original_of(1) == 1);
  CHECK(al.original_of(3) == 3);
  CHECK(al.foreign_count == 0);
}

TEST_CASE("empty inputs produce empty alignments") {
  SourceDocument empty = doc_from({});
  SourceDocument some = doc_from({"a;"});
  Alignment a1 = align_to_original(some, empty);
  CHECK(a1.matched_count == 0);
  Alignment a2 = align_to_original(empty, some);
  CHECK(a2.matched_count == 0);
  CHECK(a2.foreign_count == 1);
}

TEST_CASE("randomized pairs agree with the reference solver") {
  std::mt19937 rng(20240811u);
  const std::vector<std::string> alphabet = {"a;", "b;", "c;", "d;", "}",
                                             "{",  "x = 1;", "y = 2;"};
  for (int trial = 0; trial < 120; ++trial) {
    std::uniform_int_distribution<int> len_dist(0, 24);
    int n = len_dist(rng);
    std::vector<std::string> orig;
    for (int i = 0; i < n; ++i) {
      orig.push_back(alphabet[rng() % alphabet.size()]);
    }
    // Variant: random subsequence plus random foreign noise and duplicates.
    std::vector<std::string> var;
    for (int i = 0; i < n; ++i) {
      if (rng() % 100 < 65) var.push_back(orig[i]);
      if (rng() % 100 < 15) var.push_back("foreign" + std::to_string(rng() % 4) + ";");
      if (rng() % 100 < 10 && !var.empty()) var.push_back(var.back());
    }
    check_against_oracle(orig, var);
  }
}

TEST_CASE("project_units at loc counts matched units plus foreign") {
  SourceDocument o = doc_from({"a;", "b;", "c;", "d;"});
  SourceDocument v = doc_from({"a;", "zzz;", "c;"});
  Alignment al = align_to_original(o, v);
  UnitSet u = project_units(o, v, al, Granularity::Loc);
  CHECK(u.line_units == std::vector<int>{1, 3});
  CHECK(u.foreign_count == 1);
  CHECK(u.size() + static_cast<std::size_t>(u.foreign_count) == v.unit_count());
}

TEST_CASE("monotonicity: deleting variant lines never grows the unit set") {
  std::vector<std::string> orig = {"a;", "b;", "c;", "d;", "e;", "f;"};
  std::vector<std::string> var = {"a;", "b;", "c;", "e;", "f;"};
  std::vector<std::string> var2 = {"a;", "c;", "f;"};  // subset of var
  SourceDocument o = doc_from(orig);
  SourceDocument v1 = doc_from(var), v2 = doc_from(var2);
  UnitSet u1 = project_units(o, v1, align_to_original(o, v1), Granularity::Loc);
  UnitSet u2 = project_units(o, v2, align_to_original(o, v2), Granularity::Loc);
  for (int unit : u2.line_units) {
    CHECK(std::find(u1.line_units.begin(), u1.line_units.end(), unit) != u1.line_units.end());
  }
}

TEST_CASE("base_units at loc excludes comments and blanks") {
  SourceDocument o = doc_from({"a;", "/* c */", "", "b;", "#include <x.h>"});
  UnitSet u = base_units(o, Granularity::Loc);
  CHECK(u.line_units == std::vector<int>{1, 4, 5});
  CHECK(u.foreign_count == 0);
}

TEST_CASE("function-granularity projection canonicalizes specialized clones") {
  SourceDocument o = doc_from({
      "static int quote(int a)", "{", "  return a;", "}",
      "int main(void)", "{", "  return quote(1);", "}",
  });
  // Dotted clone names only occur in symbol lists; in-source clones use the
  // underscore spelling.
  SourceDocument v = doc_from({
      "static int quote_spec_1(int a)", "{", "  return a;", "}",
      "int main(void)", "{", "  return quote(1);", "}",
  });
  Alignment al = align_to_original(o, v);
  UnitSet u = project_units(o, v, al, Granularity::Func);
  CHECK(u.name_units == std::vector<std::string>{"main", "quote"});
  CHECK(u.foreign_count == 0);
}

TEST_CASE("function-granularity foreign names are counted not merged") {
  SourceDocument o = doc_from({"int main(void)", "{", "  return 0;", "}"});
  SourceDocument v = doc_from({
      "static int brand_new(void)", "{", "  return 9;", "}",
      "int main(void)", "{", "  return 0;", "}",
  });
  UnitSet u = project_units(o, v, align_to_original(o, v), Granularity::Func);
  CHECK(u.name_units == std::vector<std::string>{"main"});
  CHECK(u.foreign_count == 1);
}

TEST_CASE("base_units at func lists defined functions") {
  SourceDocument o = doc_from({
      "int f(void) ;",
      "int f(void)", "{", "  return 1;", "}",
      "static void g(int a)", "{", "  (void)a;", "}",
      "int main(void)", "{", "  return f();", "}",
  });
  UnitSet u = base_units(o, Granularity::Func);
  CHECK(u.name_units == std::vector<std::string>{"f", "g", "main"});
}
