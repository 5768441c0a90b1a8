#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dbeval/detectors.hpp"

namespace dbeval {

DetectorConfig DetectorConfig::defaults() {
  DetectorConfig c;
  c.error_fns = {"error", "exit", "abort", "usage", "perror", "quote", "gettext"};
  c.terminating_fns = {"exit", "usage", "abort", "_exit"};
  c.sync_pairs = {{"pthread_mutex_lock", "pthread_mutex_unlock"},
                  {"pthread_spin_lock", "pthread_spin_unlock"}};
  c.signal_wait_pairs = {{"pthread_cond_signal", "pthread_cond_wait"},
                         {"pthread_cond_broadcast", "pthread_cond_wait"}};
  c.enabled = {"I1", "I2", "I4", "I5", "I6", "I7"};
  return c;
}

DetectorConfig load_detector_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open detector config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("detector config '" + path.string() + "' is not valid JSON: " + e.what());
  }

  DetectorConfig c = DetectorConfig::defaults();
  if (j.contains("error_fns")) {
    c.error_fns.clear();
    for (const auto& f : j["error_fns"]) c.error_fns.insert(f.get<std::string>());
  }
  if (j.contains("terminating_fns")) {
    c.terminating_fns.clear();
    for (const auto& f : j["terminating_fns"]) c.terminating_fns.insert(f.get<std::string>());
  }
  auto load_pairs = [&j](const char* key, std::vector<std::pair<std::string, std::string>>* out) {
    if (!j.contains(key)) return;
    out->clear();
    for (const auto& p : j[key]) {
      if (!p.is_array() || p.size() != 2) {
        throw InputError(std::string("detector config: each entry of '") + key +
                         "' must be a [from, to] pair");
      }
      std::string a = p[0].get<std::string>();
      std::string b = p[1].get<std::string>();
      if (a == b) {
        throw InputError(std::string("detector config: '") + key +
                         "' pair must name two distinct functions, got '" + a + "'");
      }
      out->emplace_back(std::move(a), std::move(b));
    }
  };
  load_pairs("sync_pairs", &c.sync_pairs);
  load_pairs("signal_wait_pairs", &c.signal_wait_pairs);
  if (j.contains("enabled")) {
    c.enabled.clear();
    for (const auto& e : j["enabled"]) c.enabled.insert(e.get<std::string>());
  }
  return c;
}

std::string issue_id(IssueClass c) {
  switch (c) {
    case IssueClass::I1a: return "I1a";
    case IssueClass::I1b: return "I1b";
    case IssueClass::I1c: return "I1c";
    case IssueClass::I1d: return "I1d";
    case IssueClass::I2: return "I2";
    case IssueClass::I4: return "I4";
    case IssueClass::I5Env: return "I5-env";
    case IssueClass::I5Input: return "I5-input";
    case IssueClass::I6: return "I6";
    case IssueClass::I7: return "I7";
  }
  return "?";
}

std::string issue_group(IssueClass c) {
  switch (c) {
    case IssueClass::I1a:
    case IssueClass::I1b:
    case IssueClass::I1c:
    case IssueClass::I1d: return "I1";
    case IssueClass::I2: return "I2";
    case IssueClass::I4: return "I4";
    case IssueClass::I5Env:
    case IssueClass::I5Input: return "I5";
    case IssueClass::I6: return "I6";
    case IssueClass::I7: return "I7";
  }
  return "?";
}

std::string issue_group_title(const std::string& group) {
  if (group == "I1") return "Failures in Logical Integrity";
  if (group == "I2") return "Residual Path Vulnerabilities";
  if (group == "I4") return "Thread Synchronization";
  if (group == "I5") return "Unpredictable Error Handling";
  if (group == "I6") return "Variable State Management";
  if (group == "I7") return "Debloated Program Not Compiling";
  return group;
}

const std::vector<std::string>& issue_groups() {
  static const std::vector<std::string> groups = {"I1", "I2", "I4", "I5", "I6", "I7"};
  return groups;
}

std::string confidence_name(Confidence c) {
  return c == Confidence::High ? "high" : "heuristic";
}

void sort_findings(std::vector<Finding>* findings) {
  std::sort(findings->begin(), findings->end(), [](const Finding& a, const Finding& b) {
    std::string ia = issue_id(a.issue), ib = issue_id(b.issue);
    if (ia != ib) return ia < ib;
    if (a.function != b.function) return a.function < b.function;
    int la = a.lines.empty() ? 0 : a.lines.front().begin;
    int lb = b.lines.empty() ? 0 : b.lines.front().begin;
    if (la != lb) return la < lb;
    return a.evidence < b.evidence;
  });
}

}  // namespace dbeval
