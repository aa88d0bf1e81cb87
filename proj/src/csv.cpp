#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "glogit/errors.hpp"
#include "glogit/io.hpp"

namespace glogit {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

// Splits one line on commas; `starts` receives the 1-based column of each
// field.
std::vector<std::string_view> split(std::string_view line,
                                    std::vector<std::size_t>& starts) {
  std::vector<std::string_view> fields;
  starts.clear();
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    starts.push_back(begin + 1);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return fields;
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines;  // source line of each row
};

Table read_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  Table table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> starts;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto fields = split(view, starts);
    if (!have_header) {
      for (const auto& f : fields) {
        table.header.push_back(unquote(f));
        if (table.header.back().empty()) {
          throw ParseError(path.string() + ": empty column name in header", line_no,
                           starts[table.header.size() - 1]);
        }
      }
      have_header = true;
      continue;
    }
    const std::size_t row = table.rows.size() + 1;
    if (fields.size() != table.header.size()) {
      std::ostringstream os;
      os << path.string() << ": row " << row << " (line " << line_no << ") has "
         << fields.size() << " fields, expected " << table.header.size();
      throw ParseError(os.str(), line_no);
    }
    std::vector<double> values(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_number(fields[j], values[j])) {
        std::ostringstream os;
        os << path.string() << ": row " << row << " (line " << line_no
           << "), column '" << table.header[j] << "': non-numeric value '"
           << trim(fields[j]) << "'";
        throw ParseError(os.str(), line_no, starts[j]);
      }
    }
    table.rows.push_back(std::move(values));
    table.lines.push_back(line_no);
  }
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  if (!have_header) throw DataError(path.string() + ": empty file");
  return table;
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + path.parent_path().string() +
                    "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Dataset read_csv(const fs::path& path, const std::string& response) {
  Table table = read_table(path);
  const auto it = std::find(table.header.begin(), table.header.end(), response);
  if (it == table.header.end()) {
    throw DataError(path.string() + ": no response column '" + response + "'");
  }
  if (table.rows.empty()) throw DataError(path.string() + ": dataset has no rows");
  const auto resp = static_cast<std::size_t>(it - table.header.begin());

  Dataset data;
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto k = static_cast<Eigen::Index>(table.header.size() - 1);
  data.x.resize(n, k);
  data.y.resize(table.rows.size());
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j != resp) data.names.push_back(table.header[j]);
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const double yv = row[resp];
    if (yv != 0.0 && yv != 1.0) {
      std::ostringstream os;
      os << path.string() << ": row " << i + 1 << " (line " << table.lines[i]
         << "), column '" << response << "': response must be 0 or 1, got "
         << format_double(yv);
      throw DataError(os.str());
    }
    data.y[i] = static_cast<int>(yv);
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != resp) data.x(static_cast<Eigen::Index>(i), c++) = row[j];
    }
  }
  return data;
}

void write_dataset_csv(const fs::path& path, const Dataset& data) {
  auto out = open_for_write(path);
  out << "y";
  for (const auto& name : data.names) out << ',' << name;
  out << '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << data.y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < data.k(); ++j) out << ',' << format_double(data.x(i, j));
    out << '\n';
  }
  finish(out, path);
}

void write_chain_csv(const fs::path& path, const Chain& chain) {
  auto out = open_for_write(path);
  out << "iter";
  for (const auto& name : chain.param_names) out << ',' << name;
  out << '\n';
  for (Eigen::Index r = 0; r < chain.size(); ++r) {
    out << chain.iters[static_cast<std::size_t>(r)];
    for (Eigen::Index j = 0; j < chain.draws.cols(); ++j) {
      out << ',' << format_double(chain.draws(r, j));
    }
    out << '\n';
  }
  finish(out, path);
}

Chain read_chain_csv(const fs::path& path) {
  Table table = read_table(path);
  const auto& h = table.header;
  if (h.size() < 3 || h.front() != "iter" || h.back() != "p") {
    throw ParseError(path.string() +
                         ": chain header must be iter,<beta columns>,p",
                     1);
  }
  if (table.rows.empty()) throw DataError(path.string() + ": chain has no draws");
  Chain chain;
  chain.param_names.assign(h.begin() + 1, h.end());
  const auto rows = static_cast<Eigen::Index>(table.rows.size());
  chain.draws.resize(rows, static_cast<Eigen::Index>(h.size() - 1));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double it = table.rows[i][0];
    if (it != std::floor(it) || it < 0) {
      throw ParseError(path.string() + ": iter must be a non-negative integer",
                       table.lines[i], 1);
    }
    const long iter = static_cast<long>(it);
    if (!chain.iters.empty() && iter <= chain.iters.back()) {
      throw ParseError(path.string() + ": iter values must be strictly increasing",
                       table.lines[i], 1);
    }
    chain.iters.push_back(iter);
    for (std::size_t j = 1; j < h.size(); ++j) {
      chain.draws(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) =
          table.rows[i][j];
    }
  }
  return chain;
}

void write_summary_csv(const fs::path& path, const PosteriorSummary& summary) {
  auto out = open_for_write(path);
  out << "parameter,label,mean,sd,q2.5,median,q97.5,geweke_z,ess\n";
  for (const auto& p : summary.params) {
    out << p.name << ',' << p.label << ',' << format_double(p.mean) << ','
        << format_double(p.sd) << ',' << format_double(p.q025) << ','
        << format_double(p.q500) << ',' << format_double(p.q975) << ','
        << format_double(p.geweke_z) << ',' << format_double(p.ess) << '\n';
  }
  finish(out, path);
}

std::string format_summary_table(const PosteriorSummary& summary) {
  std::size_t name_w = std::string("parameter").size();
  std::size_t label_w = std::string("label").size();
  for (const auto& p : summary.params) {
    name_w = std::max(name_w, p.name.size());
    label_w = std::max(label_w, p.label.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_w)) << "parameter" << "  "
     << std::setw(static_cast<int>(label_w)) << "label" << std::right;
  for (const char* col : {"mean", "sd", "2.5%", "50%", "97.5%", "geweke_z", "ess"}) {
    os << "  " << std::setw(10) << col;
  }
  os << '\n';
  os << std::fixed;
  for (const auto& p : summary.params) {
    os << std::left << std::setw(static_cast<int>(name_w)) << p.name << "  "
       << std::setw(static_cast<int>(label_w)) << p.label << std::right
       << std::setprecision(4);
    for (double v : {p.mean, p.sd, p.q025, p.q500, p.q975, p.geweke_z}) {
      os << "  " << std::setw(10) << v;
    }
    os << "  " << std::setw(10) << std::setprecision(1) << p.ess << '\n';
  }
  return os.str();
}

void write_summary_txt(const fs::path& path, const PosteriorSummary& summary) {
  write_text_file(path, format_summary_table(summary));
}

void write_diagnostics(const Chain& chain, long max_lag, const fs::path& dir) {
  const auto n = static_cast<std::size_t>(chain.size());
  const auto cols = chain.draws.cols();
  std::vector<std::vector<double>> series(static_cast<std::size_t>(cols),
                                          std::vector<double>(n));
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      series[static_cast<std::size_t>(j)][i] = chain.draws(static_cast<Eigen::Index>(i), j);
    }
  }
  std::vector<std::vector<double>> acfs, pacfs;
  for (const auto& s : series) {
    acfs.push_back(acf(s, max_lag));
    pacfs.push_back(pacf(s, max_lag));
  }

  {
    const fs::path path = dir / "geweke.csv";
    auto out = open_for_write(path);
    out << "parameter,z,pass\n";
    for (std::size_t j = 0; j < series.size(); ++j) {
      const double z = static_cast<long>(n) >= kGewekeMinLength
                           ? geweke_z(series[j])
                           : std::numeric_limits<double>::quiet_NaN();
      out << chain.param_names[j] << ',' << format_double(z) << ',';
      if (std::isnan(z)) {
        out << "NA";
      } else {
        out << (std::fabs(z) < kGewekeCritical ? "true" : "false");
      }
      out << '\n';
    }
    finish(out, path);
  }
  for (const auto& [name, table] : {std::pair{"acf.csv", &acfs}, std::pair{"pacf.csv", &pacfs}}) {
    const fs::path path = dir / name;
    auto out = open_for_write(path);
    out << "lag";
    for (const auto& pn : chain.param_names) out << ',' << pn;
    out << '\n';
    for (long lag = 0; lag <= max_lag; ++lag) {
      out << lag;
      for (const auto& col : *table) out << ',' << format_double(col[static_cast<std::size_t>(lag)]);
      out << '\n';
    }
    finish(out, path);
  }
}

void write_text_file(const fs::path& path, const std::string& contents) {
  auto out = open_for_write(path);
  out << contents;
  finish(out, path);
}

std::uint64_t file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace glogit
