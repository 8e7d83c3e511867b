#include "msplot/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>

#include "msplot/error.hpp"

namespace msplot {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (!trim(line).empty()) fn(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::string line_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error(Errc::ParseError, "not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    std::vector<std::string> row;
    for (auto f : split_fields(line)) row.emplace_back(f);
    rows.push_back(std::move(row));
  });
  return rows;
}

FunctionalSample parse_long_csv(std::string_view text) {
  bool have_header = false;
  std::size_t p = 0;
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> curve_index;
  std::vector<std::map<double, std::vector<double>>> curves;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "curve_id" || fields[1] != "t")
        throw Error(Errc::ParseError, line_error(line_no, "header must be curve_id,t,dim_1,...,dim_p"));
      for (std::size_t k = 2; k < fields.size(); ++k)
        if (fields[k] != "dim_" + std::to_string(k - 1))
          throw Error(Errc::ParseError, line_error(line_no, "expected column dim_" + std::to_string(k - 1)));
      p = fields.size() - 2;
      have_header = true;
      return;
    }
    if (fields.size() != p + 2)
      throw Error(Errc::ParseError, line_error(line_no, "expected " + std::to_string(p + 2) + " columns, found " +
                                                            std::to_string(fields.size())));
    if (fields[0].empty()) throw Error(Errc::ParseError, line_error(line_no, "empty curve_id"));
    double t = 0.0;
    std::vector<double> values(p);
    try {
      t = parse_double(fields[1]);
      for (std::size_t k = 0; k < p; ++k) values[k] = parse_double(fields[k + 2]);
    } catch (const Error& e) {
      throw Error(Errc::ParseError, line_error(line_no, e.what()));
    }
    if (!std::isfinite(t)) throw Error(Errc::ParseError, line_error(line_no, "t must be finite"));
    const std::string id(fields[0]);
    auto [it, inserted] = curve_index.try_emplace(id, curves.size());
    if (inserted) {
      ids.push_back(id);
      curves.emplace_back();
    }
    if (!curves[it->second].emplace(t, std::move(values)).second)
      throw Error(Errc::ParseError, line_error(line_no, "duplicate t for curve '" + id + "'"));
  });

  if (!have_header) throw Error(Errc::ParseError, "missing header row");
  if (curves.empty()) throw Error(Errc::ParseError, "no data rows");

  const auto& first = curves.front();
  for (std::size_t c = 1; c < curves.size(); ++c) {
    const bool same = curves[c].size() == first.size() &&
                      std::equal(curves[c].begin(), curves[c].end(), first.begin(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!same)
      throw Error(Errc::RaggedGrid, "curve '" + ids[c] + "' is not observed on the same t values as curve '" +
                                        ids.front() + "'");
  }

  const auto n = static_cast<Index>(curves.size());
  const auto m = static_cast<Index>(first.size());
  if (m < 2) throw Error(Errc::InvalidGrid, "each curve needs at least 2 grid points");
  Eigen::VectorXd t(m);
  Index j = 0;
  for (const auto& [tv, _] : first) t(j++) = tv;

  std::vector<Eigen::MatrixXd> comps(p, Eigen::MatrixXd(n, m));
  for (Index i = 0; i < n; ++i) {
    j = 0;
    for (const auto& [tv, values] : curves[static_cast<std::size_t>(i)]) {
      for (std::size_t k = 0; k < p; ++k) comps[k](i, j) = values[k];
      ++j;
    }
  }
  return validate(std::move(comps), equal_weight_grid(t), std::move(ids));
}

std::string write_long_csv(const FunctionalSample& sample) {
  std::string out = "curve_id,t";
  for (Index k = 0; k < sample.dims(); ++k) out += ",dim_" + std::to_string(k + 1);
  out += '\n';
  for (Index i = 0; i < sample.curves(); ++i) {
    for (Index j = 0; j < sample.points(); ++j) {
      out += sample.ids()[static_cast<std::size_t>(i)];
      out += ',';
      out += format_double(sample.grid().points(j, 0));
      for (Index k = 0; k < sample.dims(); ++k) {
        out += ',';
        out += format_double(sample(i, j, k));
      }
      out += '\n';
    }
  }
  return out;
}

std::string write_truth_csv(const std::vector<std::string>& ids, const std::vector<bool>& truth) {
  if (ids.size() != truth.size()) throw Error(Errc::ShapeMismatch, "ids and truth differ in length");
  std::string out = "curve_id,outlier\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out += ids[i] + (truth[i] ? ",1\n" : ",0\n");
  return out;
}

std::vector<bool> parse_truth_csv(std::string_view text, const std::vector<std::string>& ids) {
  const auto rows = split_csv(text);
  if (rows.empty() || rows.front().size() != 2 || rows.front()[0] != "curve_id" || rows.front()[1] != "outlier")
    throw Error(Errc::ParseError, "truth header must be curve_id,outlier");
  std::unordered_map<std::string, bool> label;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 2 || (row[1] != "0" && row[1] != "1"))
      throw Error(Errc::ParseError, "truth row " + std::to_string(r + 1) + " must be <id>,0|1");
    label[row[0]] = row[1] == "1";
  }
  std::vector<bool> truth;
  for (const auto& id : ids) {
    const auto it = label.find(id);
    if (it == label.end()) throw Error(Errc::ShapeMismatch, "no truth label for curve '" + id + "'");
    truth.push_back(it->second);
  }
  return truth;
}

std::string write_result_csv(const std::vector<std::string>& ids, const Detection& detection) {
  const auto& s = detection.summary;
  const auto& r = detection.result;
  std::string out = "curve_id";
  for (Index k = 0; k < s.dims(); ++k) out += ",mo_" + std::to_string(k + 1);
  out += ",vo,fo,srmd,flagged\n";
  for (Index i = 0; i < s.curves(); ++i) {
    out += ids[static_cast<std::size_t>(i)];
    for (Index k = 0; k < s.dims(); ++k) out += ',' + format_double(s.mo(i, k));
    out += ',' + format_double(s.vo(i));
    out += ',' + format_double(s.fo(i));
    out += ',';
    if (r.method == DetectMethod::srmd_f) out += format_double(r.srmd(i));
    out += r.flags[static_cast<std::size_t>(i)] ? ",1\n" : ",0\n";
  }
  return out;
}

std::string write_rates_csv(const RateSummary& summary) {
  std::string out = "rep,p_c,p_f\n";
  for (std::size_t r = 0; r < summary.p_c.size(); ++r)
    out += std::to_string(r) + ',' + format_double(summary.p_c[r]) + ',' + format_double(summary.p_f[r]) + '\n';
  return out;
}

std::string write_rate_summary_csv(const RateSummary& summary) {
  std::string out = "statistic,value\n";
  auto row = [&](const std::string& name, const std::string& value) { out += name + ',' + value + '\n'; };
  row("reps", std::to_string(summary.p_c.size()));
  row("p_c_mean", format_double(summary.correct.mean));
  row("p_c_median", format_double(summary.correct.median));
  row("p_c_q1", format_double(summary.correct.q1));
  row("p_c_q3", format_double(summary.correct.q3));
  row("p_f_mean", format_double(summary.false_.mean));
  row("p_f_median", format_double(summary.false_.median));
  row("p_f_q1", format_double(summary.false_.q1));
  row("p_f_q3", format_double(summary.false_.q3));
  // vacuous p_c = 1 when a replication has no true outliers
  row("empty_truth_p_c", "1");
  return out;
}

}  // namespace msplot
