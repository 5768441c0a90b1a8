#include <algorithm>
#include <cctype>

#include "dbeval/source_model.hpp"

namespace dbeval {

std::uint64_t content_hash(std::string_view text) {
  // FNV-1a, 64-bit: stable across runs and platforms.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> split_lines(std::string_view text, Diagnostics* diags) {
  std::vector<std::string> out;
  std::string cur;
  long replaced = 0;
  int line_no = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      out.push_back(std::move(cur));
      cur.clear();
      ++line_no;
      continue;
    }
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;  // CRLF
      out.push_back(std::move(cur));
      cur.clear();
      ++line_no;
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      if (replaced < 5) {
        diag_warn(diags, "non-ASCII byte replaced with '?' at line " + std::to_string(line_no));
      }
      ++replaced;
      cur.push_back('?');
      continue;
    }
    cur.push_back(c);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  if (replaced >= 5) {
    diag_warn(diags, std::to_string(replaced) + " non-ASCII bytes replaced in total");
  }
  return out;
}

namespace {

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

SourceDocument normalize(SourceDocument doc, Diagnostics* diags) {
  doc.lines.assign(doc.raw_lines.size(), LineRecord{});

  bool in_block_comment = false;
  for (std::size_t li = 0; li < doc.raw_lines.size(); ++li) {
    const std::string& raw = doc.raw_lines[li];
    LineRecord& rec = doc.lines[li];
    rec.index = static_cast<int>(li) + 1;

    std::string kept;
    kept.reserve(raw.size());
    bool saw_comment = in_block_comment;

    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (in_block_comment) {
        if (c == '*' && i + 1 < raw.size() && raw[i + 1] == '/') {
          in_block_comment = false;
          i += 2;
        } else {
          ++i;
        }
        continue;
      }
      if (c == '/' && i + 1 < raw.size() && raw[i + 1] == '/') {
        saw_comment = true;
        break;  // rest of line is comment
      }
      if (c == '/' && i + 1 < raw.size() && raw[i + 1] == '*') {
        saw_comment = true;
        in_block_comment = true;
        i += 2;
        continue;
      }
      if (c == '"' || c == '\'') {
        char quote = c;
        kept.push_back(c);
        ++i;
        while (i < raw.size()) {
          char d = raw[i];
          kept.push_back(d);
          ++i;
          if (d == '\\' && i < raw.size()) {
            kept.push_back(raw[i]);
            ++i;
            continue;
          }
          if (d == quote) break;
        }
        continue;  // unterminated literal ends at EOL
      }
      kept.push_back(c);
      ++i;
    }

    std::string normalized = collapse_whitespace(kept);
    if (normalized.empty()) {
      rec.cls = saw_comment ? LineClass::Comment : LineClass::Blank;
      rec.normalized.clear();
    } else if (normalized[0] == '#') {
      rec.cls = LineClass::Preprocessor;
      rec.normalized = std::move(normalized);
    } else {
      rec.cls = LineClass::Code;
      rec.normalized = std::move(normalized);
    }
    rec.content_key = content_hash(rec.normalized);
  }

  if (in_block_comment) {
    diag_warn(diags, "unterminated block comment at end of file");
  }
  return doc;
}

SourceDocument document_from_lines(std::vector<std::string> raw, Diagnostics* diags) {
  SourceDocument doc;
  doc.raw_lines = std::move(raw);
  return normalize(std::move(doc), diags);
}

SourceDocument document_from_text(std::string_view text, Diagnostics* diags) {
  return document_from_lines(split_lines(text, diags), diags);
}

}  // namespace dbeval
