#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dbeval/align.hpp"
#include "dbeval/source_model.hpp"

namespace dbeval {

// One command-line option whose feature the ground truth removed.
struct RemovedFlag {
  std::string long_name;
  std::optional<char> short_name;
  std::optional<int> code;  // getopt dispatch value
};

enum class VariantKind { Source, SymbolList, Failed };
enum class FailureMarker { Timeout, CompileError };

std::string variant_kind_name(VariantKind k);
std::string failure_marker_name(FailureMarker m);

struct VariantInput {
  VariantKind kind = VariantKind::Source;
  std::optional<std::string> path;  // relative to the manifest
  std::optional<FailureMarker> failure_marker;
};

struct ProgramTriple {
  std::string name;
  std::string original;
  std::string ground_truth;
  std::optional<std::string> alt_ground_truth;  // second annotator, enables kappa
  std::string retained_functionality;
  std::vector<RemovedFlag> removed_flags;
  std::vector<Granularity> granularities;
  std::map<std::string, VariantInput> variants;  // tool name -> input
};

struct EvaluationManifest {
  std::vector<ProgramTriple> entries;
  std::optional<std::string> detector_config;
  std::string output_dir;
  std::filesystem::path base_dir;  // directory of the manifest file; not serialized

  std::filesystem::path resolve(const std::string& relative) const {
    std::filesystem::path p(relative);
    return p.is_absolute() ? p : base_dir / p;
  }
};

// Loads and fully validates a manifest. Duplicate program names, missing
// referenced files, inconsistent failed-variant markers, and short/code
// mismatches are all reported with the entry name and offending field.
EvaluationManifest load_manifest(const std::filesystem::path& path);

void save_manifest(const EvaluationManifest& manifest, const std::filesystem::path& path);

// Reads a file as one merged C translation unit and normalizes it.
SourceDocument ingest_source(const std::filesystem::path& path, Diagnostics* diags = nullptr);

// Newline-delimited symbols with '#' comments; duplicates collapse after
// canonicalization. An effectively empty list warns and returns an empty set.
UnitSet ingest_symbol_list(const std::filesystem::path& path, Diagnostics* diags = nullptr,
                           const std::vector<std::string>& rules = default_strip_rules());

}  // namespace dbeval
