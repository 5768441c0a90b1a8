#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "dbeval/report.hpp"

namespace dbeval {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pct_cell(double pct) { return std::to_string(round_half_up(pct)) + "%"; }

struct Cell3 {
  std::string frm, frt, f1;
};

Cell3 cell_of(const ReportRow& row) {
  if (!row.result) return {"-", "-", "-"};
  const MetricResult& r = *row.result;
  switch (r.status) {
    case EvalStatus::SkippedTimeout: return {"T", "T", "T"};
    case EvalStatus::SkippedCompileError: return {"C", "C", "C"};
    case EvalStatus::Ok:
      return {pct_cell(r.frm_pct), pct_cell(r.frt_pct),
              std::to_string(percent_of_fraction(r.f1)) + "%"};
  }
  return {"-", "-", "-"};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Column width in characters, not bytes (the matrix uses a multi-byte bullet).
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string render_text(const Table& t) {
  std::vector<std::size_t> widths(t.header.size(), 0);
  auto widen = [&widths](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], display_width(row[i]));
    }
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i];
      for (std::size_t pad = display_width(row[i]); pad < widths[i]; ++pad) os << ' ';
    }
    os << '\n';
  };
  emit(t.header);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& r : t.rows) emit(r);
  return os.str();
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  auto emit = [&os](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  };
  emit(t.header);
  for (const auto& r : t.rows) emit(r);
  return os.str();
}

std::string render_markdown(const Table& t) {
  std::ostringstream os;
  auto emit = [&os](const std::vector<std::string>& row) {
    os << "| ";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << " | ";
      os << row[i];
    }
    os << " |\n";
  };
  emit(t.header);
  std::vector<std::string> rule(t.header.size(), "---");
  emit(rule);
  for (const auto& r : t.rows) emit(r);
  return os.str();
}

std::string render_table(const Table& t, TableFormat format) {
  switch (format) {
    case TableFormat::Text: return render_text(t);
    case TableFormat::Csv: return render_csv(t);
    case TableFormat::Markdown: return render_markdown(t);
  }
  return {};
}

}  // namespace

std::string render_metrics_table(const RunReport& report, TableFormat format) {
  std::ostringstream os;
  for (Granularity g : {Granularity::Loc, Granularity::Func}) {
    // Tools present at this granularity, in sorted order.
    std::set<std::string> tool_set;
    for (const ReportRow& row : report.metrics) {
      if (row.granularity == g) tool_set.insert(row.tool);
    }
    if (tool_set.empty()) continue;
    std::vector<std::string> tools(tool_set.begin(), tool_set.end());

    Table t;
    t.header.push_back("program");
    for (const std::string& tool : tools) {
      t.header.push_back(tool + " FRm");
      t.header.push_back(tool + " FRt");
      t.header.push_back(tool + " F1");
    }
    for (const std::string& program : report.programs) {
      std::vector<std::string> row{program};
      bool any = false;
      for (const std::string& tool : tools) {
        const ReportRow* found = nullptr;
        for (const ReportRow& r : report.metrics) {
          if (r.program == program && r.tool == tool && r.granularity == g) {
            found = &r;
            break;
          }
        }
        if (found) any = true;
        Cell3 c = found ? cell_of(*found) : Cell3{"-", "-", "-"};
        row.push_back(c.frm);
        row.push_back(c.frt);
        row.push_back(c.f1);
      }
      if (any) t.rows.push_back(std::move(row));
    }
    // Average row from the aggregated results.
    std::vector<std::string> avg_row{"Average"};
    for (const std::string& tool : tools) {
      const ToolAverage* found = nullptr;
      for (const ToolAverage& a : report.averages) {
        if (a.tool == tool && a.granularity == g) {
          found = &a;
          break;
        }
      }
      if (found && found->frm_pct) {
        avg_row.push_back(pct_cell(*found->frm_pct));
        avg_row.push_back(pct_cell(*found->frt_pct));
        avg_row.push_back(std::to_string(percent_of_fraction(*found->f1)) + "%");
      } else {
        // no Ok cell anywhere for this tool
        avg_row.push_back("\u2014");
        avg_row.push_back("\u2014");
        avg_row.push_back("\u2014");
      }
    }
    t.rows.push_back(std::move(avg_row));

    if (format != TableFormat::Csv) {
      os << (g == Granularity::Loc ? "False removal / false retention / F1, line granularity"
                                   : "False removal / false retention / F1, function granularity")
         << "\n\n";
    } else {
      os << "granularity," << granularity_name(g) << '\n';
    }
    os << render_table(t, format) << '\n';
  }
  std::string s = os.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string render_issue_matrix(const RunReport& report) {
  Table t;
  t.header.push_back("observed issues");
  for (const std::string& tool : report.tools) t.header.push_back(tool);
  for (const std::string& group : issue_groups()) {
    std::vector<std::string> row{group + " " + issue_group_title(group)};
    auto it = report.issue_matrix.find(group);
    for (const std::string& tool : report.tools) {
      bool fired = false;
      if (it != report.issue_matrix.end()) {
        auto jt = it->second.find(tool);
        fired = jt != it->second.end() && jt->second;
      }
      row.push_back(fired ? "•" : "-");
    }
    t.rows.push_back(std::move(row));
  }
  std::string out = render_text(t);
  out += "\nNote: unsafe intermediate states during a debloating tool's own execution are a "
         "property of the tool run, not of its output artifact, and are outside this matrix.\n";
  return out;
}

std::string render_findings(const RunReport& report) {
  std::ostringstream os;
  for (const ProgramIssues& pi : report.issues) {
    for (const auto& [tool, findings] : pi.report.findings_by_tool) {
      for (const Finding& f : findings) {
        os << pi.program << '/' << tool << "  " << issue_id(f.issue) << " ["
           << confidence_name(f.confidence) << "] ";
        if (!f.function.empty()) os << f.function << ' ';
        os << "(" << (f.anchor == Finding::Anchor::Original ? "original" : "variant")
           << " lines ";
        for (std::size_t i = 0; i < f.lines.size(); ++i) {
          if (i) os << ',';
          os << f.lines[i].begin;
          if (f.lines[i].end != f.lines[i].begin) os << '-' << f.lines[i].end;
        }
        os << "): " << f.evidence << '\n';
      }
    }
    for (const std::string& note : pi.report.notes) {
      os << pi.program << "  note: " << note << '\n';
    }
  }
  return os.str();
}

std::string render_agreement_table(const RunReport& report) {
  Table t;
  t.header = {"program", "kappa", "p_o", "p_e", "units"};
  for (const AgreementResult& a : report.agreement) {
    t.rows.push_back({a.program, fixed4(a.kappa), fixed4(a.p_o), fixed4(a.p_e),
                      std::to_string(a.n_units)});
  }
  std::string out = render_text(t);
  if (report.agreement_summary.mean_of_programs) {
    out += "\nmean of per-program kappas: " +
           fixed4(*report.agreement_summary.mean_of_programs) + '\n';
  }
  if (report.agreement_summary.pooled_kappa) {
    out += "pooled kappa over " + std::to_string(report.agreement_summary.pooled_units) +
           " units: " + fixed4(*report.agreement_summary.pooled_kappa) + '\n';
  }
  return out;
}

}  // namespace dbeval
