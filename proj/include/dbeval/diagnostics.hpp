#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dbeval {

// Non-fatal messages emitted by ingestion, analysis, and transformation
// passes. Callers that do not care pass nullptr.
class Diagnostics {
 public:
  enum class Level { Info, Warning };

  struct Entry {
    Level level;
    std::string message;
  };

  void info(std::string message) { entries_.push_back({Level::Info, std::move(message)}); }
  void warn(std::string message) { entries_.push_back({Level::Warning, std::move(message)}); }

  const std::vector<Entry>& entries() const { return entries_; }

  std::size_t warning_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_) {
      if (e.level == Level::Warning) ++n;
    }
    return n;
  }

  bool contains(const std::string& needle) const {
    for (const auto& e : entries_) {
      if (e.message.find(needle) != std::string::npos) return true;
    }
    return false;
  }

 private:
  std::vector<Entry> entries_;
};

inline void diag_warn(Diagnostics* diags, std::string message) {
  if (diags) diags->warn(std::move(message));
}

inline void diag_info(Diagnostics* diags, std::string message) {
  if (diags) diags->info(std::move(message));
}

// Error hierarchy. InputError covers unreadable or malformed user inputs
// (exit code 3 at the CLI); InternalError covers violated internal
// expectations (exit code 4).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ManifestError : public InputError {
 public:
  using InputError::InputError;
};

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dbeval
