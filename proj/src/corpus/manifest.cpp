#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "dbeval/corpus.hpp"

namespace dbeval {

using ordered_json = nlohmann::ordered_json;

std::string variant_kind_name(VariantKind k) {
  switch (k) {
    case VariantKind::Source: return "source";
    case VariantKind::SymbolList: return "symbol-list";
    case VariantKind::Failed: return "failed";
  }
  return "unknown";
}

std::string failure_marker_name(FailureMarker m) {
  return m == FailureMarker::Timeout ? "T" : "C";
}

namespace {

VariantKind variant_kind_from_name(const std::string& s, const std::string& where) {
  if (s == "source") return VariantKind::Source;
  if (s == "symbol-list") return VariantKind::SymbolList;
  if (s == "failed") return VariantKind::Failed;
  throw ManifestError(where + ": unknown variant kind '" + s + "'");
}

FailureMarker failure_marker_from_name(const std::string& s, const std::string& where) {
  if (s == "T") return FailureMarker::Timeout;
  if (s == "C") return FailureMarker::CompileError;
  throw ManifestError(where + ": unknown failure marker '" + s + "' (expected T or C)");
}

void require_file(const EvaluationManifest& m, const std::string& rel, const std::string& where) {
  std::filesystem::path p = m.resolve(rel);
  if (!std::filesystem::exists(p)) {
    throw ManifestError(where + ": referenced path '" + rel + "' does not exist (resolved to " +
                        p.string() + ")");
  }
}

ProgramTriple parse_entry(const ordered_json& j, std::size_t index) {
  std::string where = "entry #" + std::to_string(index + 1);
  if (!j.is_object()) throw ManifestError(where + ": not an object");
  ProgramTriple t;
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty()) {
    throw ManifestError(where + ": missing or empty field 'name'");
  }
  t.name = j["name"].get<std::string>();
  where = "entry '" + t.name + "'";

  auto get_string = [&](const char* field) {
    if (!j.contains(field) || !j[field].is_string()) {
      throw ManifestError(where + ": missing field '" + field + "'");
    }
    return j[field].get<std::string>();
  };
  t.original = get_string("original");
  t.ground_truth = get_string("ground_truth");
  if (j.contains("alt_ground_truth")) {
    t.alt_ground_truth = j["alt_ground_truth"].get<std::string>();
  }
  if (j.contains("retained_functionality")) {
    t.retained_functionality = j["retained_functionality"].get<std::string>();
  }

  if (j.contains("removed_flags")) {
    for (const auto& f : j["removed_flags"]) {
      RemovedFlag flag;
      if (f.contains("long")) flag.long_name = f["long"].get<std::string>();
      if (f.contains("short")) {
        std::string s = f["short"].get<std::string>();
        if (s.size() != 1) {
          throw ManifestError(where + ": removed_flags 'short' must be one character, got '" +
                              s + "'");
        }
        flag.short_name = s[0];
      }
      if (f.contains("code")) flag.code = f["code"].get<int>();
      if (flag.short_name && flag.code && *flag.code != static_cast<int>(*flag.short_name)) {
        throw ManifestError(where + ": removed flag '" + flag.long_name + "': code " +
                            std::to_string(*flag.code) + " is not the ASCII code of '" +
                            std::string(1, *flag.short_name) + "'");
      }
      if (!flag.short_name && !flag.code && flag.long_name.empty()) {
        throw ManifestError(where + ": removed_flags entry has no long, short, or code");
      }
      t.removed_flags.push_back(std::move(flag));
    }
  }

  if (!j.contains("granularities") || !j["granularities"].is_array() ||
      j["granularities"].empty()) {
    throw ManifestError(where + ": at least one granularity must be declared");
  }
  for (const auto& g : j["granularities"]) {
    t.granularities.push_back(granularity_from_name(g.get<std::string>()));
  }

  if (j.contains("variants")) {
    if (!j["variants"].is_object()) throw ManifestError(where + ": 'variants' must be an object");
    for (const auto& [tool, v] : j["variants"].items()) {
      VariantInput in;
      std::string vwhere = where + ", variant '" + tool + "'";
      if (!v.contains("kind")) throw ManifestError(vwhere + ": missing field 'kind'");
      in.kind = variant_kind_from_name(v["kind"].get<std::string>(), vwhere);
      if (v.contains("path")) in.path = v["path"].get<std::string>();
      if (v.contains("failure_marker")) {
        in.failure_marker = failure_marker_from_name(v["failure_marker"].get<std::string>(), vwhere);
      }
      bool failed = in.kind == VariantKind::Failed;
      if (failed != in.failure_marker.has_value() || failed == in.path.has_value()) {
        throw ManifestError(vwhere + ": kind=failed requires failure_marker and no path; "
                            "other kinds require a path and no marker");
      }
      t.variants.emplace(tool, std::move(in));
    }
  }
  return t;
}

ordered_json entry_to_json(const ProgramTriple& t) {
  ordered_json j;
  j["name"] = t.name;
  j["original"] = t.original;
  j["ground_truth"] = t.ground_truth;
  if (t.alt_ground_truth) j["alt_ground_truth"] = *t.alt_ground_truth;
  j["retained_functionality"] = t.retained_functionality;
  j["removed_flags"] = ordered_json::array();
  for (const auto& f : t.removed_flags) {
    ordered_json fj;
    fj["long"] = f.long_name;
    if (f.short_name) fj["short"] = std::string(1, *f.short_name);
    if (f.code) fj["code"] = *f.code;
    j["removed_flags"].push_back(fj);
  }
  j["granularities"] = ordered_json::array();
  for (Granularity g : t.granularities) j["granularities"].push_back(granularity_name(g));
  j["variants"] = ordered_json::object();
  for (const auto& [tool, v] : t.variants) {
    ordered_json vj;
    vj["kind"] = variant_kind_name(v.kind);
    if (v.path) vj["path"] = *v.path;
    if (v.failure_marker) vj["failure_marker"] = failure_marker_name(*v.failure_marker);
    j["variants"][tool] = vj;
  }
  return j;
}

}  // namespace

EvaluationManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest '" + path.string() + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }

  EvaluationManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (j.contains("detector_config")) m.detector_config = j["detector_config"].get<std::string>();
  if (j.contains("output_dir")) m.output_dir = j["output_dir"].get<std::string>();
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ManifestError("manifest '" + path.string() + "' has no 'entries' array");
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    ProgramTriple t = parse_entry(j["entries"][i], i);
    if (!seen.insert(t.name).second) {
      throw ManifestError("duplicate program name '" + t.name + "' in manifest");
    }
    m.entries.push_back(std::move(t));
  }

  // Resolve every referenced path up front so failures surface at load time.
  for (const auto& t : m.entries) {
    std::string where = "entry '" + t.name + "'";
    require_file(m, t.original, where + ", field 'original'");
    require_file(m, t.ground_truth, where + ", field 'ground_truth'");
    if (t.alt_ground_truth) require_file(m, *t.alt_ground_truth, where + ", field 'alt_ground_truth'");
    for (const auto& [tool, v] : t.variants) {
      if (v.path) require_file(m, *v.path, where + ", variant '" + tool + "'");
    }
  }
  if (m.detector_config) require_file(m, *m.detector_config, "field 'detector_config'");
  return m;
}

void save_manifest(const EvaluationManifest& manifest, const std::filesystem::path& path) {
  ordered_json j;
  j["entries"] = ordered_json::array();
  for (const auto& t : manifest.entries) j["entries"].push_back(entry_to_json(t));
  if (manifest.detector_config) j["detector_config"] = *manifest.detector_config;
  j["output_dir"] = manifest.output_dir;

  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace dbeval
