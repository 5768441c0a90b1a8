#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "dbeval/corpus.hpp"
#include "dbeval/detectors.hpp"

using namespace dbeval;

namespace {

std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(DBEVAL_FIXTURE_DIR) / rel;
}

struct LoadedPair {
  SourceAnalysis original;
  SourceAnalysis variant;
  Alignment alignment;

  DiffInput input() const { return {&original, &variant, &alignment}; }
};

LoadedPair load_pair(const std::string& name) {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/" + name + "_orig.c")));
  p.variant = analyze(ingest_source(fixture("detectors/" + name + "_var.c")));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  return p;
}

RemovedFlag flag(char short_name, const char* long_name) {
  RemovedFlag f;
  f.long_name = long_name;
  f.short_name = short_name;
  f.code = static_cast<int>(short_name);
  return f;
}

// All issue ids fired by the full detector battery on one pair.
std::set<std::string> fired_ids(const LoadedPair& p, const std::vector<RemovedFlag>& flags) {
  DetectorConfig config = DetectorConfig::defaults();
  GetoptMap map;
  if (!flags.empty()) map = build_getopt_map(p.original);
  std::map<std::string, DiffInput> variants = {{"tool", p.input()}};
  IssueReport report = run_all(config, p.original, map, flags, variants);
  std::set<std::string> ids;
  for (const Finding& f : report.findings_by_tool.at("tool")) ids.insert(issue_id(f.issue));
  return ids;
}

}  // namespace

TEST_CASE("fixture suite: each pair triggers exactly its designated class") {
  struct Case {
    const char* name;
    std::set<std::string> expected;
    std::vector<RemovedFlag> flags;
  };
  const std::vector<Case> cases = {
      {"msort_queue", {"I4"}, {}},
      {"mkfile_error", {"I5-env"}, {}},
      {"filter_usage", {"I5-input"}, {}},
      {"clock_hour", {"I6"}, {}},
      {"remove_main", {"I6"}, {}},
      {"mkfile_strtoul", {"I6"}, {}},
      {"pack_unlink", {"I2"}, {flag('z', "compress")}},
      {"clock_reference", {"I2"}, {flag('r', "reference")}},
      {"walk_read", {"I1d"}, {}},
      {"msort_nesting", {"I1b"}, {}},
      {"pack_loop", {"I1c"}, {}},
      {"classify_case", {"I7"}, {}},
      {"walk_merge", {"I1a"}, {}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    LoadedPair p = load_pair(c.name);
    std::set<std::string> ids = fired_ids(p, c.flags);
    CHECK(ids == c.expected);
  }
}

TEST_CASE("self-comparison yields zero findings") {
  for (const char* name : {"msort_queue", "walk_merge", "pack_unlink"}) {
    CAPTURE(name);
    LoadedPair p;
    p.original = analyze(ingest_source(fixture(std::string("detectors/") + name + "_orig.c")));
    p.variant = analyze(ingest_source(fixture(std::string("detectors/") + name + "_orig.c")));
    p.alignment = align_to_original(p.original.doc, p.variant.doc);
    std::vector<RemovedFlag> flags;
    if (std::string(name) == "pack_unlink") flags.push_back(flag('z', "compress"));
    CHECK(fired_ids(p, flags).empty());
  }
}

TEST_CASE("branch merge: clean branch removal is not a merge") {
  LoadedPair p = load_pair("walk_read");  // whole guard if/else removed
  CHECK(detect_branch_merge(p.input()).empty());
}

TEST_CASE("branch merge finding is anchored and high confidence") {
  LoadedPair p = load_pair("walk_merge");
  auto findings = detect_branch_merge(p.input());
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].issue == IssueClass::I1a);
  CHECK(findings[0].function == "restore_cwd");
  CHECK(findings[0].confidence == Confidence::High);
  REQUIRE_FALSE(findings[0].lines.empty());
  // cited lines exist in the original
  for (const LineSpan& s : findings[0].lines) {
    CHECK(s.begin >= 1);
    CHECK(s.end <= p.original.doc.line_count());
  }
}

TEST_CASE("forced nesting localizes the first re-parented line") {
  LoadedPair p = load_pair("msort_nesting");
  auto findings = detect_forced_nesting(p.input());
  REQUIRE(findings.size() == 1);
  // the surviving sequential_sort(lines); call
  int line = findings[0].lines.front().begin;
  CHECK(p.original.doc.record(line).normalized == "sequential_sort(lines);");
}

TEST_CASE("pure deletions that keep brace pairings produce no nesting findings") {
  LoadedPair p = load_pair("clock_hour");
  CHECK(detect_forced_nesting(p.input()).empty());
}

TEST_CASE("loop break removal is high confidence on constant-true loops") {
  LoadedPair p = load_pair("pack_loop");
  auto findings = detect_block_splits(p.input());
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].confidence == Confidence::High);
  CHECK(findings[0].evidence.find("primary break") != std::string::npos);
}

TEST_CASE("partial exit removal downgrades to heuristic") {
  // Same loop, but only one of two exits removed.
  SourceDocument orig = document_from_text(
      "static void scan(struct S *s)\n"
      "{\n"
      "  int i ;\n"
      "  i = 0;\n"
      "  while (1) {\n"
      "    if (! (i < 10)) {\n"
      "      goto out;\n"
      "    }\n"
      "    if (s->stop[i]) {\n"
      "      goto out;\n"
      "    }\n"
      "    i ++;\n"
      "  }\n"
      "  out: ;\n"
      "}\n"
      "int main(void)\n"
      "{\n"
      "  scan((struct S *)0);\n"
      "  return 0;\n"
      "}\n");
  // remove the first exit (lines 6..8)
  std::vector<std::string> raw = orig.raw_lines;
  raw.erase(raw.begin() + 5, raw.begin() + 8);
  SourceDocument var = document_from_lines(raw);
  SourceAnalysis oa = analyze(std::move(orig));
  SourceAnalysis va = analyze(std::move(var));
  Alignment al = align_to_original(oa.doc, va.doc);
  DiffInput in{&oa, &va, &al};
  auto findings = detect_block_splits(in);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].confidence == Confidence::Heuristic);
}

TEST_CASE("fully removed loops produce no split finding") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/pack_loop_orig.c")));
  // variant: drop the whole make_maps body loop
  std::vector<std::string> raw = p.original.doc.raw_lines;
  raw.erase(raw.begin() + 5, raw.begin() + 17);  // while(1) ... while_break: ;
  p.variant = analyze(document_from_lines(raw));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  CHECK(detect_block_splits(p.input()).empty());
}

TEST_CASE("guard removal requires the body to survive") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/walk_read_orig.c")));
  // variant removes the guard AND the body: plain function stub
  std::vector<std::string> raw;
  for (const std::string& l : p.original.doc.raw_lines) raw.push_back(l);
  raw.erase(raw.begin() + 4, raw.begin() + 15);  // everything inside fts_read
  p.variant = analyze(document_from_lines(raw));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  CHECK(detect_guard_removal(p.input(), DetectorConfig::defaults()).empty());
}

TEST_CASE("retained guards are not guard-removal findings") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/walk_read_orig.c")));
  p.variant = analyze(ingest_source(fixture("detectors/walk_read_orig.c")));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  CHECK(detect_guard_removal(p.input(), DetectorConfig::defaults()).empty());
}

TEST_CASE("residual paths: fully deleted case blocks are clean") {
  // The reduction pipeline removes the whole compression feature; what is left
  // has no residual trace of the flag.
  SourceDocument orig = ingest_source(fixture("detectors/pack_unlink_orig.c"));
  PipelineResult res = assist_pipeline(orig, {flag('z', "compress")}, FlagTable{});
  LoadedPair p;
  p.original = analyze(std::move(orig));
  p.variant = analyze(std::move(res.reduced));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  DetectorConfig config = DetectorConfig::defaults();
  GetoptMap map = build_getopt_map(p.original);
  auto findings =
      detect_residual_paths(p.input(), config, map, {flag('z', "compress")}, nullptr);
  CHECK(findings.empty());
}

TEST_CASE("residual paths report partial feature regions as high confidence") {
  LoadedPair p = load_pair("pack_unlink");
  DetectorConfig config = DetectorConfig::defaults();
  GetoptMap map = build_getopt_map(p.original);
  auto findings =
      detect_residual_paths(p.input(), config, map, {flag('z', "compress")}, nullptr);
  REQUIRE_FALSE(findings.empty());
  bool saw_high_partial = false;
  for (const Finding& f : findings) {
    if (f.confidence == Confidence::High &&
        f.evidence.find("partially removed") != std::string::npos) {
      saw_high_partial = true;
    }
  }
  CHECK(saw_high_partial);
}

TEST_CASE("residual detector warns and skips without an option map") {
  LoadedPair p = load_pair("clock_hour");
  Diagnostics diags;
  GetoptMap empty_map;
  auto findings = detect_residual_paths(p.input(), DetectorConfig::defaults(), empty_map,
                                        {flag('x', "none")}, &diags);
  CHECK(findings.empty());
  CHECK(diags.contains("skipped"));
}

TEST_CASE("sync removal: whole function removal is clean") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/msort_queue_orig.c")));
  std::vector<std::string> raw = p.original.doc.raw_lines;
  raw.erase(raw.begin() + 7, raw.begin() + 15);  // all of queue_insert
  p.variant = analyze(document_from_lines(raw));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  auto findings = detect_sync_removal(p.input(), DetectorConfig::defaults());
  CHECK(findings.empty());
}

TEST_CASE("sync removal: whole critical section removal fires only the signal rule") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/msort_queue_orig.c")));
  std::vector<std::string> raw = p.original.doc.raw_lines;
  raw.erase(raw.begin() + 9, raw.begin() + 14);  // lock..signal, body included
  p.variant = analyze(document_from_lines(raw));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  auto findings = detect_sync_removal(p.input(), DetectorConfig::defaults());
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].confidence == Confidence::Heuristic);
  CHECK(findings[0].evidence.find("paired") != std::string::npos);
}

TEST_CASE("error handler fully retained is clean") {
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/mkfile_error_orig.c")));
  p.variant = analyze(ingest_source(fixture("detectors/mkfile_error_orig.c")));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  CHECK(detect_error_handler_removal(p.input(), DetectorConfig::defaults()).empty());
}

TEST_CASE("error handler classification distinguishes env from input") {
  LoadedPair env = load_pair("mkfile_error");
  auto env_findings = detect_error_handler_removal(env.input(), DetectorConfig::defaults());
  REQUIRE_FALSE(env_findings.empty());
  CHECK(env_findings[0].issue == IssueClass::I5Env);

  LoadedPair input = load_pair("filter_usage");
  auto input_findings = detect_error_handler_removal(input.input(), DetectorConfig::defaults());
  REQUIRE_FALSE(input_findings.empty());
  CHECK(input_findings[0].issue == IssueClass::I5Input);
  CHECK(input_findings[0].evidence.find("terminating handler removed") != std::string::npos);
}

TEST_CASE("uninitialized use names the variable and function") {
  LoadedPair p = load_pair("clock_hour");
  auto findings = detect_uninitialized_use(p.input());
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].function == "to_hour");
  CHECK(findings[0].evidence.find("'tmp___2'") != std::string::npos);

  LoadedPair q = load_pair("remove_main");
  auto f2 = detect_uninitialized_use(q.input());
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].evidence.find("'x'") != std::string::npos);

  LoadedPair r = load_pair("mkfile_strtoul");
  auto f3 = detect_uninitialized_use(r.input());
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].evidence.find("'p'") != std::string::npos);
}

TEST_CASE("syntactic breakage wraps integrity findings against the variant") {
  LoadedPair p = load_pair("classify_case");
  auto findings = detect_syntactic_breakage(p.variant);
  REQUIRE_FALSE(findings.empty());
  for (const Finding& f : findings) {
    CHECK(f.issue == IssueClass::I7);
    CHECK(f.anchor == Finding::Anchor::Variant);
    for (const LineSpan& s : f.lines) {
      CHECK(s.begin >= 1);
      CHECK(s.end <= p.variant.doc.line_count());
    }
  }
}

TEST_CASE("unbalanced variant brace count is an I7 finding") {
  SourceAnalysis orig = analyze(document_from_text("int f(void)\n{\n  return 0;\n}\n"));
  SourceAnalysis var = analyze(document_from_text("int f(void)\n{\n  return 0;\n}\n}\n"));
  auto findings = detect_syntactic_breakage(var);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].issue == IssueClass::I7);
  (void)orig;
}

TEST_CASE("run_all isolates detectors and orders findings deterministically") {
  LoadedPair p = load_pair("msort_queue");
  DetectorConfig config = DetectorConfig::defaults();
  std::map<std::string, DiffInput> variants = {{"blade", p.input()}};
  IssueReport r1 = run_all(config, p.original, GetoptMap{}, {}, variants);
  IssueReport r2 = run_all(config, p.original, GetoptMap{}, {}, variants);
  REQUIRE(r1.findings_by_tool.count("blade") == 1);
  REQUIRE(r1.findings_by_tool.at("blade").size() == r2.findings_by_tool.at("blade").size());
  for (std::size_t i = 0; i < r1.findings_by_tool.at("blade").size(); ++i) {
    CHECK(r1.findings_by_tool.at("blade")[i].evidence ==
          r2.findings_by_tool.at("blade")[i].evidence);
  }
  CHECK(r1.matrix.at("I4").at("blade"));
  CHECK_FALSE(r1.matrix.at("I6").at("blade"));
}

TEST_CASE("disabled issue groups do not run") {
  LoadedPair p = load_pair("msort_queue");
  DetectorConfig config = DetectorConfig::defaults();
  config.enabled = {"I6"};
  std::map<std::string, DiffInput> variants = {{"blade", p.input()}};
  IssueReport r = run_all(config, p.original, GetoptMap{}, {}, variants);
  CHECK(r.findings_by_tool.at("blade").empty());
}

TEST_CASE("matrix rows are populated by the tools the fixtures emulate") {
  // Fixture corpus labeled per tool; the matrix gains a mark per designated row.
  struct Labeled {
    const char* name;
    const char* tool;
    const char* group;
  };
  const std::vector<Labeled> labeled = {
      {"msort_queue", "blade", "I4"},   {"mkfile_error", "cov", "I5"},
      {"filter_usage", "razor", "I5"},  {"clock_hour", "blade", "I6"},
      {"remove_main", "chisel", "I6"},  {"msort_nesting", "razor", "I1"},
      {"pack_loop", "blade", "I1"},     {"classify_case", "cov", "I7"},
      {"walk_merge", "blade", "I1"},
  };
  for (const Labeled& l : labeled) {
    CAPTURE(l.name);
    LoadedPair p = load_pair(l.name);
    DetectorConfig config = DetectorConfig::defaults();
    std::map<std::string, DiffInput> variants = {{l.tool, p.input()}};
    IssueReport r = run_all(config, p.original, GetoptMap{}, {}, variants);
    CHECK(r.matrix.at(l.group).at(l.tool));
  }
}

TEST_CASE("detector config round-trips through JSON with validation") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "dbeval_detcfg_test.json";
  {
    std::ofstream out(tmp);
    out << R"({"error_fns": ["fatal"], "sync_pairs": [["lk", "unlk"]],)"
        << R"( "signal_wait_pairs": [["sig", "wt"]], "enabled": ["I4"]})";
  }
  DetectorConfig c = load_detector_config(tmp);
  CHECK(c.error_fns == std::set<std::string>{"fatal"});
  REQUIRE(c.sync_pairs.size() == 1);
  CHECK(c.sync_pairs[0].first == "lk");
  CHECK(c.issue_enabled("I4"));
  CHECK_FALSE(c.issue_enabled("I5"));
  {
    std::ofstream out(tmp);
    out << R"({"sync_pairs": [["same", "same"]]})";
  }
  CHECK_THROWS_AS(load_detector_config(tmp), InputError);
  fs::remove(tmp);
}

TEST_CASE("an empty variant yields no detector findings") {
  // Detectors need retained context; total removal is a metric-level signal.
  LoadedPair p;
  p.original = analyze(ingest_source(fixture("detectors/msort_queue_orig.c")));
  p.variant = analyze(document_from_text(""));
  p.alignment = align_to_original(p.original.doc, p.variant.doc);
  CHECK(fired_ids(p, {}).empty());
}
